#include "hermovd/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace hermovd {

Rat bound_F(u64 n, u64 p) {
    if (n < 1 || !is_prime_u64(p)) throw std::invalid_argument("need n >= 1, p prime");
    BigUint pn = pow_big(p, n);

    // difference form
    BigUint x = binomial_big(n + p - 1, n);
    BigUint y = binomial_big(n + p - 2, n);
    Rat diff_form(x.mul(x).sub(y.mul(y)), pn);

    // factored form
    BigUint c = binomial_big(n + p - 2, n - 1);
    BigUint num = c.mul(c).mul_small(static_cast<u32>(n + 2 * p - 2));
    Rat factored(num, pn.mul_small(static_cast<u32>(n)));

    if (!(diff_form == factored))
        throw std::logic_error("the two F(n,p) forms disagree");
    return factored;
}

u64 np_largest(u64 p) {
    // F is strictly decreasing in n once n >= (p+1)/2 (p > 3) or n >= p+1
    // (p <= 3), so the first sub-1 value past the threshold is final.
    const u64 threshold = p > 3 ? (p + 1) / 2 : p + 1;
    u64 best = 0;
    for (u64 n = 1;; n += 2) {
        bool ok = bound_F(n, p).at_least_one();
        if (ok) best = n;
        if (!ok && n >= threshold) return best;
        if (n > 4 * p + 64) throw std::logic_error("np scan did not terminate");
    }
}

std::vector<BoundRow> np_table(u64 pmax) {
    std::vector<BoundRow> rows;
    for (u64 p = 2; p <= pmax; ++p)
        if (is_prime_u64(p)) rows.push_back({p, np_largest(p)});
    return rows;
}

i64 fp_poly(i64 n, i64 p) {
    return n * n * n + (2 * p - 3) * n * n - 3 * (p - 1) * n - 2 * p * p + 3 * p - 1;
}

bool fp_monotonicity_checks(i64 p) {
    if (fp_poly(p + 1, p) != p * (3 * p * p - p + 2)) return false;
    if (p % 2 == 1) {
        i64 lhs = 8 * fp_poly((p + 1) / 2, p);
        i64 rhs = (p - 1) * (5 * p * p - 18 * p + 1);
        if (lhs != rhs) return false;
        if (p > 3 && lhs <= 0) return false;
    }
    if (fp_poly(p + 1, p) <= 0) return false;
    return true;
}

namespace {

u128 gcd_u128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 pow_u128(u64 x, u32 k) {
    u128 r = 1;
    for (u32 i = 0; i < k; ++i) {
        if (r > (~u128(0)) / x) throw BudgetError("x^k overflows 128 bits");
        r *= x;
    }
    return r;
}

}  // namespace

u128 primitive_part(u64 x, u32 k) {
    if (x < 2 || k < 2) throw std::invalid_argument("need x, k >= 2");
    u128 part = pow_u128(x, k) - 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (u32 i = 1; i < k; ++i) {
            u128 xi = pow_u128(x, i) - 1;
            u128 g = gcd_u128(part, xi);
            if (g > 1) {
                part /= g;
                changed = true;
            }
        }
    }
    return part;
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s += static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

KloostermanCount kloosterman_count(const FieldCtx& ctx) {
    const Params& par = ctx.params();
    if (par.p != 2 || par.n < 5)
        throw std::invalid_argument("counting oracle needs q even and n >= 5");
    KloostermanCount out;
    const Fe one = ctx.one();
    const u32 twod = 2 * par.d;
    for (u64 i = 0; i < ctx.qn1(); ++i) {
        if (ctx.trace_matrix(twod).apply(ctx.omega_pow(i), ctx.p()) == one)
            ++out.count;
    }
    const double q = static_cast<double>(ctx.q());
    const double n = static_cast<double>(par.n);
    out.lower_bound = std::pow(q, n - 2) - std::pow(q, -2.0) -
                      2.0 * (q * q - 1.0) * std::pow(q, n / 2.0 - 2.0);
    out.bound_applies = out.lower_bound > 0;
    if (out.bound_applies)
        out.bound_satisfied = static_cast<double>(out.count) >= out.lower_bound;
    return out;
}

bool trace_one_holds(const FieldCtx& ctx) {
    if (ctx.params().n != 3)
        throw std::invalid_argument("trace-one oracle is stated for n = 3");
    const u32 twod = 2 * ctx.params().d;
    for (u64 i = 0; i < ctx.qn1(); ++i) {
        const Fe& z = ctx.omega_pow(i);
        if (ctx.in_subfield(z, twod)) continue;
        if (ctx.trace_matrix(twod).apply(z, ctx.p()) == ctx.one()) return false;
    }
    return true;
}

}  // namespace hermovd
