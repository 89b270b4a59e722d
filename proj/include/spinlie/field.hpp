// field.hpp -- arithmetic in GF(p) (p prime <= 251) and GF(2^e) (e <= 8).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinlie {

using fe = std::uint8_t;  // canonical field element: 0..p-1, or bitmask mod poly

// Characteristic, extension degree and (for e > 1) the modulus polynomial.
// Extensions are supported only for p = 2; the polynomial is verified
// irreducible at construction (exhaustive trial division, feasible for e <= 8).
struct FieldSpec {
    int p = 2;
    int e = 1;
    unsigned poly = 0;  // bitmask incl. leading term; 0 means "pick default"

    static FieldSpec prime(int p);
    static FieldSpec gf2ext(int e, unsigned poly = 0);

    bool operator==(const FieldSpec&) const = default;
    std::string name() const;  // "GF(7)", "GF(16)", ...
};

class Field {
public:
    explicit Field(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }
    int e() const { return spec_.e; }
    unsigned order() const { return q_; }
    std::string name() const { return spec_.name(); }

    fe add(fe a, fe b) const {
        if (spec_.p == 2) return a ^ b;
        int s = a + b;
        return fe(s >= spec_.p ? s - spec_.p : s);
    }
    fe sub(fe a, fe b) const {
        if (spec_.p == 2) return a ^ b;
        int s = a - b;
        return fe(s < 0 ? s + spec_.p : s);
    }
    fe neg(fe a) const { return spec_.p == 2 ? a : (a ? fe(spec_.p - a) : 0); }
    fe mul(fe a, fe b) const {
        if (!a || !b) return 0;
        if (spec_.e > 1) return exp_[(log_[a] + log_[b]) % (q_ - 1)];
        return fe((unsigned(a) * b) % spec_.p);
    }
    fe inv(fe a) const;           // throws on a == 0
    fe div(fe a, fe b) const { return mul(a, inv(b)); }
    fe pow(fe a, long long n) const;
    fe sqrt(fe a) const;          // p = 2 only: squaring is bijective
    fe from_int(long long n) const;  // reduce an integer into GF(p) (e = 1)

    // Canonical embedding GF(2) -> GF(2^e): 0 -> 0, 1 -> 1 (prime subfield).
    bool is_zero(fe a) const { return a == 0; }
    fe one() const { return 1; }

    std::vector<fe> elements() const;  // all q elements, canonical order

private:
    FieldSpec spec_;
    unsigned q_ = 0;
    std::vector<fe> exp_, log_;  // e > 1 only
};

}  // namespace spinlie
