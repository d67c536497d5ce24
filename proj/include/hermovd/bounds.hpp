#pragma once

#include <string>
#include <vector>

#include "hermovd/bigint.hpp"
#include "hermovd/gf.hpp"

namespace hermovd {

// Exact evaluation of the Blokhuis-Moorhouse obstruction
//   F(n,p) = (1/p^n) [ C(n+p-1,n)^2 - C(n+p-2,n)^2 ]
//          = C(n+p-2,n-1)^2 (n+2p-2) / (n p^n);
// F(n,p) >= 1 is necessary for H(n,q^2), q = p^d, to contain an ovoid.
// Both forms are evaluated and cross-checked on every call.
Rat bound_F(u64 n, u64 p);

// Largest odd n with F(n,p) >= 1, using the monotone tail to stop.
u64 np_largest(u64 p);

struct BoundRow {
    u64 p = 0;
    u64 n_p = 0;
};

// One row per prime p <= pmax.
std::vector<BoundRow> np_table(u64 pmax = 45);

// f_p(n) = n^3 + (2p-3) n^2 - 3(p-1) n - 2p^2 + 3p - 1; its sign drives the
// monotonicity of F in n.
i64 fp_poly(i64 n, i64 p);

// The closed forms f_p((p+1)/2) = (p-1)(5p^2-18p+1)/8 (p odd) and
// f_p(p+1) = p(3p^2-p+2), plus the positivity claims behind them.
bool fp_monotonicity_checks(i64 p);

// Largest divisor of x^k - 1 coprime to every x^i - 1, 1 <= i < k.
u128 primitive_part(u64 x, u32 k);

std::string u128_to_string(u128 v);

struct KloostermanCount {
    u64 count = 0;       // #{z : z^{q^n+1} = 1, Tr_{F_{q^{2n}}/F_{q^2}}(z) = 1}
    double lower_bound = 0;  // q^{n-2} - q^{-2} - 2(q^2-1) q^{n/2-2}
    bool bound_applies = false;
    bool bound_satisfied = true;
};

// Counting oracle for the q even, n >= 5 solution-count lemma; iterates the
// order-(q^n+1) subgroup.
KloostermanCount kloosterman_count(const FieldCtx& ctx);

// True iff no x in <omega> \ F_{q^2} has Tr_{F_{q^6}/F_{q^2}}(x) = 1 (n = 3).
bool trace_one_holds(const FieldCtx& ctx);

}  // namespace hermovd
