#include "spinlie/roots.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace spinlie {

RootVec RootVec::operator-() const {
    RootVec r = *this;
    for (auto& x : r.d) x = -x;
    return r;
}

RootVec RootVec::operator+(const RootVec& o) const {
    RootVec r = *this;
    for (std::size_t i = 0; i < d.size(); ++i) r.d[i] += o.d[i];
    return r;
}

long long pair_ip(const RootVec& a, const RootVec& b) {
    long long dot = 0;
    for (std::size_t i = 0; i < a.d.size(); ++i) dot += (long long)a.d[i] * b.d[i];
    if (dot % 4 != 0) throw std::domain_error("pair_ip: non-integral pairing");
    return dot / 4;
}

namespace {

std::vector<RootVec> enumerate_d(int r) {
    std::vector<RootVec> out;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int si : {2, -2})
                for (int sj : {2, -2}) {
                    RootVec v;
                    v.d.assign(r, 0);
                    v.d[i] = si;
                    v.d[j] = sj;
                    out.push_back(std::move(v));
                }
    return out;
}

std::vector<RootVec> enumerate_e8() {
    std::vector<RootVec> out = enumerate_d(8);           // Phi~_0: 112
    for (unsigned mask = 0; mask < 256; ++mask) {        // Phi~_1: 128
        if (__builtin_popcount(mask) % 2 != 0) continue;  // even number of minus signs
        RootVec v;
        v.d.assign(8, 1);
        for (int i = 0; i < 8; ++i)
            if (mask & (1u << i)) v.d[i] = -1;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<RootVec> simple_roots(RSType type, int r) {
    std::vector<RootVec> s;
    if (type == RSType::D) {
        for (int i = 0; i + 1 < r; ++i) {
            RootVec v;
            v.d.assign(r, 0);
            v.d[i] = 2;
            v.d[i + 1] = -2;
            s.push_back(std::move(v));
        }
        RootVec v;
        v.d.assign(r, 0);
        v.d[r - 2] = 2;
        v.d[r - 1] = 2;
        s.push_back(std::move(v));
    } else {
        // Bourbaki E8: alpha_1 = (e1 + e8 - e2 - ... - e7)/2, alpha_2 = e1 + e2,
        // alpha_k = e_{k-1} - e_{k-2} for k = 3..8
        RootVec a1;
        a1.d = {1, -1, -1, -1, -1, -1, -1, 1};
        s.push_back(a1);
        RootVec a2;
        a2.d.assign(8, 0);
        a2.d[0] = 2;
        a2.d[1] = 2;
        s.push_back(a2);
        for (int k = 3; k <= 8; ++k) {
            RootVec v;
            v.d.assign(8, 0);
            v.d[k - 2] = 2;
            v.d[k - 3] = -2;
            s.push_back(std::move(v));
        }
    }
    return s;
}

}  // namespace

RootSystem RootSystem::build(RSType type, int rank) {
    if (type == RSType::D && rank < 3)
        throw std::invalid_argument("RootSystem: D_r needs r >= 3");
    if (type == RSType::E8 && rank != 8)
        throw std::invalid_argument("RootSystem: E8 has rank 8");

    RootSystem rs;
    rs.type_ = type;
    rs.rank_ = rank;
    auto all = type == RSType::D ? enumerate_d(rank) : enumerate_e8();
    auto simple = simple_roots(type, rank);

    // simple-root coordinates of every root, via the adjugate of the basis
    IntMatrix sb(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) sb.set(i, j, simple[i].d[j]);
    rs.sb_adj_ = adjugate(sb.transpose());
    rs.sb_det_ = det(sb.transpose());
    const IntMatrix& sb_adj = rs.sb_adj_;
    const bigint& sb_det = rs.sb_det_;

    struct Entry {
        RootVec v;
        std::vector<int> coords;
        int height;
    };
    std::vector<Entry> entries;
    for (auto& v : all) {
        std::vector<int> coords(rank);
        int h = 0;
        for (int k = 0; k < rank; ++k) {
            bigint num = 0;
            for (int j = 0; j < rank; ++j) num += sb_adj.get(k, j) * v.d[j];
            if (num % sb_det != 0) throw std::logic_error("RootSystem: non-integral root coords");
            coords[k] = (num / sb_det).convert_to<int>();
            h += coords[k];
        }
        entries.push_back({std::move(v), std::move(coords), h});
    }
    // positives first, by (height, doubled lex); negatives mirror the order
    std::vector<Entry> pos;
    for (auto& e : entries)
        if (e.height > 0) pos.push_back(std::move(e));
    std::sort(pos.begin(), pos.end(), [](const Entry& a, const Entry& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.v.d < b.v.d;
    });
    std::size_t np = pos.size();
    if (2 * np != entries.size()) throw std::logic_error("RootSystem: positive/negative split");
    rs.roots_.reserve(2 * np);
    rs.coords_.reserve(2 * np);
    rs.height_.reserve(2 * np);
    for (auto& e : pos) {
        rs.roots_.push_back(e.v);
        rs.coords_.push_back(e.coords);
        rs.height_.push_back(e.height);
    }
    for (std::size_t i = 0; i < np; ++i) {
        rs.roots_.push_back(-rs.roots_[i]);
        std::vector<int> c = rs.coords_[i];
        for (auto& x : c) x = -x;
        rs.coords_.push_back(std::move(c));
        rs.height_.push_back(-rs.height_[i]);
    }
    for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.index_[rs.roots_[i].d] = i;

    rs.simple_.resize(rank);
    for (int k = 0; k < rank; ++k) {
        auto it = rs.index_.find(simple[k].d);
        if (it == rs.index_.end()) throw std::logic_error("RootSystem: simple root missing");
        rs.simple_[k] = it->second;
    }

    rs.cartan_ = IntMatrix(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            rs.cartan_.set(i, j, pair_ip(simple[i], simple[j]));  // simply laced: (a|b) = <a,b^v>

    // weight lattice = dual of the root lattice (doubled): W_d * S_d^T = 4 I
    IntMatrix st = sb.transpose();
    IntMatrix adj = adjugate(st);
    bigint d0 = det(st);
    rs.weight_basis_ = IntMatrix(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
            bigint num = 4 * adj.get(i, j);  // row i of 4 * (S_d^T)^{-1}
            if (num % d0 != 0) throw std::logic_error("RootSystem: weight basis not half-integral");
            rs.weight_basis_.set(i, j, (num / d0).convert_to<int>());
        }
    rs.wb_adj_ = adjugate(rs.weight_basis_.transpose());
    rs.wb_det_ = det(rs.weight_basis_.transpose());
    return rs;
}

std::optional<std::size_t> RootSystem::sum_index(std::size_t a, std::size_t b) const {
    return index_of(roots_[a] + roots_[b]);
}

std::optional<std::size_t> RootSystem::index_of(const RootVec& v) const {
    auto it = index_.find(v.d);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> RootSystem::weight_coords(const RootVec& v) const {
    std::vector<int> coords(rank_);
    for (int k = 0; k < rank_; ++k) {
        bigint num = 0;
        for (int j = 0; j < rank_; ++j) num += wb_adj_.get(k, j) * v.d[j];
        if (num % wb_det_ != 0) throw std::domain_error("weight_coords: not in the weight lattice");
        coords[k] = (num / wb_det_).convert_to<int>();
    }
    return coords;
}

std::vector<int> RootSystem::root_coords(const RootVec& v) const {
    std::vector<int> coords(rank_);
    for (int k = 0; k < rank_; ++k) {
        bigint num = 0;
        for (int j = 0; j < rank_; ++j) num += sb_adj_.get(k, j) * v.d[j];
        if (num % sb_det_ != 0) throw std::domain_error("root_coords: not in the root lattice");
        coords[k] = (num / sb_det_).convert_to<int>();
    }
    return coords;
}

RootVec SignedPerm::apply(const RootVec& v) const {
    RootVec out;
    out.d.assign(v.d.size(), 0);
    for (std::size_t i = 0; i < v.d.size(); ++i) out.d[perm[i]] = sign[i] * v.d[i];
    return out;
}

SignedPerm SignedPerm::compose(const SignedPerm& o) const {
    // (this∘o)(eps_i) = this(o.sign[i] eps_{o.perm[i]})
    SignedPerm r;
    r.perm.resize(perm.size());
    r.sign.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        r.perm[i] = perm[o.perm[i]];
        r.sign[i] = o.sign[i] * sign[o.perm[i]];
    }
    return r;
}

SignedPerm SignedPerm::inverse() const {
    SignedPerm r;
    r.perm.resize(perm.size());
    r.sign.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        r.perm[perm[i]] = int(i);
        r.sign[perm[i]] = sign[i];
    }
    return r;
}

bool SignedPerm::is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != int(i) || sign[i] != 1) return false;
    return true;
}

SignedPerm SignedPerm::identity(int r) {
    SignedPerm s;
    s.perm.resize(r);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.sign.assign(r, 1);
    return s;
}

void for_each_weyl_d(int r, const std::function<void(const SignedPerm&)>& fn) {
    if (r > 8) throw std::invalid_argument("for_each_weyl_d: r > 8 rejected");
    SignedPerm s = SignedPerm::identity(r);
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    do {
        s.perm = p;
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            if (__builtin_popcount(mask) % 2 != 0) continue;  // even sign flips
            for (int i = 0; i < r; ++i) s.sign[i] = (mask & (1u << i)) ? -1 : 1;
            fn(s);
        }
    } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace spinlie
