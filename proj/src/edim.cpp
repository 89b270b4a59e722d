#include "spinlie/edim.hpp"

#include <sstream>
#include <stdexcept>

namespace spinlie {

namespace {

constexpr int kMaxN = 1000000;  // sanity guard: 2^{(n-1)/2} is huge but exact

bigint pow2(long long e) { return bigint(1) << unsigned(e); }

void check_n(int n, int lo) {
    if (n < lo) throw std::invalid_argument("essential dimension: n too small");
    if (n > kMaxN) throw std::invalid_argument("essential dimension: n exceeds the sanity cap");
}

}  // namespace

bigint dim_group(int n) {
    check_n(n, 3);
    long long r = n / 2;
    if (n % 2 == 0) return bigint(r) * (2 * r - 1);
    return 2 * bigint(r) * r + r;
}

bigint dim_halfspin(int n) {
    check_n(n, 3);
    return n % 2 == 0 ? pow2(n / 2 - 1) : pow2(n / 2);
}

EdResult ed_spin(int n) {
    check_n(n, 5);
    EdResult res;
    res.n = n;
    res.kind = EdKind::Spin;
    res.in_formula_domain = n > 14;
    bigint half = bigint(n) * (n - 1) / 2;
    switch (n % 4) {
        case 1:
        case 3:
            res.branch = "n = 1,3 mod 4";
            res.value = pow2((n - 1) / 2) - half;
            break;
        case 2:
            res.branch = "n = 2 mod 4";
            res.value = pow2((n - 2) / 2) - half;
            break;
        case 0: {
            res.branch = "n = 0 mod 4";
            int m = n & -n;  // largest power of 2 dividing n
            res.two_m = m;
            res.value = pow2((n - 2) / 2) - half + m;
            break;
        }
    }
    return res;
}

EdResult ed_hspin(int n) {
    check_n(n, 20);
    if (n % 4 != 0)
        throw std::invalid_argument("ed_hspin: defined for n = 0 mod 4 only");
    EdResult res;
    res.n = n;
    res.kind = EdKind::HSpin;
    res.branch = "n = 0 mod 4";
    res.value = pow2((n - 2) / 2) - bigint(n) * (n - 1) / 2;
    return res;
}

bool spin_inequality_holds(int n) {
    check_n(n, 3);
    // 3/4 dim V + (dim G - r) < dim V  <=>  4 (dim G - r) < dim V
    bigint v = n % 2 == 0 ? pow2(n / 2 - 1) : pow2(n / 2);
    return 4 * (dim_group(n) - n / 2) < v;
}

std::string ed_table_text(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("ed_table_text: empty range");
    std::ostringstream out;
    out << "  n  ed(Spin_n)";
    bool any_hspin = false;
    for (int n = lo; n <= hi; ++n)
        if (n >= 20 && n % 4 == 0) any_hspin = true;
    if (any_hspin) out << "  ed(HSpin_n)";
    out << "\n";
    for (int n = lo; n <= hi; ++n) {
        auto s = ed_spin(n);
        out << (n < 10 ? "  " : n < 100 ? " " : "") << n << "  " << s.value;
        if (!s.in_formula_domain) out << " (tabulated range)";
        if (any_hspin && n >= 20 && n % 4 == 0) out << "  " << ed_hspin(n).value;
        out << "\n";
    }
    return out.str();
}

std::string ed_table_csv(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("ed_table_csv: empty range");
    std::ostringstream out;
    out << "n,ed_spin,branch,two_m,ed_hspin\n";
    for (int n = lo; n <= hi; ++n) {
        auto s = ed_spin(n);
        out << n << "," << s.value << "," << s.branch << "," << s.two_m << ",";
        if (n >= 20 && n % 4 == 0) out << ed_hspin(n).value;
        out << "\n";
    }
    return out.str();
}

}  // namespace spinlie
