// edim.hpp -- closed-form essential dimension of Spin_n and HSpin_n.
#pragma once

#include <string>

#include "spinlie/intmatrix.hpp"  // bigint

namespace spinlie {

enum class EdKind { Spin, HSpin };

struct EdResult {
    int n = 0;
    EdKind kind = EdKind::Spin;
    bigint value;
    std::string branch;     // which n mod 4 case applied
    bigint two_m;           // the 2^m term (largest power of 2 dividing n); 0 if unused
    bool in_formula_domain = true;  // false for n <= 14 (tabulated externally)
};

// ed(Spin_n) = ed_2(Spin_n):
//   2^{(n-1)/2} - n(n-1)/2                n = 1, 3 mod 4
//   2^{(n-2)/2} - n(n-1)/2                n = 2 mod 4
//   2^{(n-2)/2} - n(n-1)/2 + 2^m          n = 0 mod 4, 2^m || n
// Valid for n > 14; smaller n (>= 5) is computed but flagged.
EdResult ed_spin(int n);

// ed(HSpin_n) = 2^{(n-2)/2} - n(n-1)/2 for n >= 20, n = 0 mod 4.
EdResult ed_hspin(int n);

bigint dim_group(int n);      // dim Spin_n = r(2r-1) or 2r^2+r
bigint dim_halfspin(int n);   // 2^{r-1} if n = 2r, 2^r if n = 2r+1

// 4 (dim Spin_n - rank) < dim V for the (half-)spin module -- the inequality
// that makes the generic stabilizer finite for large n
bool spin_inequality_holds(int n);

// aligned table / CSV over an inclusive range of n
std::string ed_table_text(int lo, int hi);
std::string ed_table_csv(int lo, int hi);

}  // namespace spinlie
