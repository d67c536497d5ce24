#include "hermovd/numbers.hpp"

namespace hermovd {

u64 powmod_u64(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
        if (n % p == 0) return n == p;
    }
    for (u64 f = 11; f * f <= n; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f) continue;
        int e = 0;
        while (n % f == 0) {
            n /= f;
            ++e;
        }
        out.emplace_back(f, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 checked_pow_u64(u64 base, u32 exp, u64 limit) {
    u64 r = 1;
    for (u32 i = 0; i < exp; ++i) {
        if (r > limit / base)
            throw BudgetError("power overflows the configured budget");
        r *= base;
    }
    return r;
}

u64 order_mod(u64 a, u64 m, u64 group_order,
              const std::vector<std::pair<u64, int>>& group_order_factors) {
    u64 ord = group_order;
    for (const auto& [p, e] : group_order_factors) {
        for (int i = 0; i < e; ++i) {
            if (ord % p == 0 && powmod_u64(a, ord / p, m) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

}  // namespace hermovd
