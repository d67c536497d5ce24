#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hermovd {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Raised when an enumeration or field size exceeds the configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);
bool is_prime_u64(u64 n);

// prime factorization by trial division; n must be >= 1
std::vector<std::pair<u64, int>> factorize_u64(u64 n);

// base^exp, throwing BudgetError if the result would exceed `limit`
u64 checked_pow_u64(u64 base, u32 exp, u64 limit);

// multiplicative order of `a` mod m given the factorization of `group_order`
u64 order_mod(u64 a, u64 m, u64 group_order,
              const std::vector<std::pair<u64, int>>& group_order_factors);

}  // namespace hermovd
