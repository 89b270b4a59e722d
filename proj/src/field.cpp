#include "spinlie/field.hpp"

namespace spinlie {
namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Carry-less multiply mod poly (degree e, leading bit set).
unsigned clmul_mod(unsigned a, unsigned b, unsigned poly, int e) {
    unsigned r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (1u << e)) a ^= poly;
    }
    return r;
}

// Remainder of polynomial division over GF(2).
unsigned poly_mod(unsigned a, unsigned m) {
    int dm = 31;
    while (dm >= 0 && !(m & (1u << dm))) --dm;
    for (int d = 31; d >= dm; --d)
        if (a & (1u << d)) a ^= m << (d - dm);
    return a;
}

bool poly_irreducible(unsigned poly, int e) {
    // trial division by everything of degree 1..e/2
    for (int d = 1; 2 * d <= e; ++d)
        for (unsigned f = 1u << d; f < (2u << d); ++f)
            if (poly_mod(poly, f) == 0) return false;
    return true;
}

unsigned default_poly(int e) {
    for (unsigned poly = (1u << e) + 1; poly < (2u << e); poly += 2)
        if (poly_irreducible(poly, e)) return poly;
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FieldSpec FieldSpec::prime(int p) {
    if (!is_prime(p) || p > 251)
        throw std::invalid_argument("FieldSpec: characteristic must be prime and <= 251");
    return FieldSpec{p, 1, 0};
}

FieldSpec FieldSpec::gf2ext(int e, unsigned poly) {
    if (e < 1 || e > 8)
        throw std::invalid_argument("FieldSpec: extension degree must be in 1..8");
    if (e == 1) return FieldSpec{2, 1, 0};
    if (poly == 0) poly = default_poly(e);
    return FieldSpec{2, e, poly};
}

std::string FieldSpec::name() const {
    unsigned q = 1;
    for (int i = 0; i < e; ++i) q *= unsigned(p);
    return "GF(" + std::to_string(q) + ")";
}

Field::Field(FieldSpec spec) : spec_(spec) {
    if (!is_prime(spec_.p) || spec_.p > 251)
        throw std::invalid_argument("Field: bad characteristic");
    if (spec_.e < 1 || (spec_.e > 1 && spec_.p != 2) || spec_.e > 8)
        throw std::invalid_argument("Field: extensions only for p = 2, e <= 8");
    q_ = 1;
    for (int i = 0; i < spec_.e; ++i) q_ *= unsigned(spec_.p);
    if (spec_.e > 1) {
        if (spec_.poly == 0) spec_.poly = default_poly(spec_.e);
        if ((spec_.poly >> spec_.e) != 1u || !poly_irreducible(spec_.poly, spec_.e))
            throw std::invalid_argument("Field: polynomial is not irreducible of degree e");
        // find a multiplicative generator and build log/antilog tables
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        for (unsigned g = 2; g < q_; ++g) {
            unsigned x = 1, n = 0;
            bool gen = true;
            std::vector<fe> ex(q_ - 1);
            do {
                ex[n++] = fe(x);
                x = clmul_mod(x, g, spec_.poly, spec_.e);
            } while (x != 1 && n < q_);
            if (n != q_ - 1) gen = false;
            if (gen) {
                exp_ = std::move(ex);
                for (unsigned i = 0; i < q_ - 1; ++i) log_[exp_[i]] = fe(i);
                break;
            }
        }
        if (exp_.empty() || exp_[0] != 1)
            throw std::logic_error("Field: no generator found");
    }
}

fe Field::inv(fe a) const {
    if (a == 0) throw std::domain_error("Field::inv: division by zero in " + name());
    if (spec_.e > 1) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, spec_.p - 2);
}

fe Field::pow(fe a, long long n) const {
    if (a == 0) {
        if (n < 0) throw std::domain_error("Field::pow: zero to negative power");
        return n == 0 ? fe(1) : fe(0);
    }
    long long m = long(q_) - 1;
    long long k = n % m;
    if (k < 0) k += m;
    fe r = 1, b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

fe Field::sqrt(fe a) const {
    if (spec_.p != 2) throw std::domain_error("Field::sqrt: only in characteristic 2");
    fe r = a;
    for (int i = 1; i < spec_.e; ++i) r = mul(r, r);  // a^(2^(e-1))
    return r;
}

fe Field::from_int(long long n) const {
    // reduction into the prime subfield
    long long m = n % spec_.p;
    if (m < 0) m += spec_.p;
    return fe(m);
}

std::vector<fe> Field::elements() const {
    std::vector<fe> v(q_);
    for (unsigned i = 0; i < q_; ++i) v[i] = fe(i);
    return v;
}

}  // namespace spinlie
