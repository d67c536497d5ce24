#pragma once

#include <string>
#include <vector>

#include "hermovd/numbers.hpp"

namespace hermovd {

// Unsigned big integer, base 2^32 little-endian limbs, normalized.
// Covers what the bound evaluation needs: exact products, differences,
// comparisons and division by machine words.
class BigUint {
  public:
    BigUint() = default;
    explicit BigUint(u64 v);

    bool is_zero() const { return limbs_.empty(); }
    static int cmp(const BigUint& a, const BigUint& b);
    friend bool operator==(const BigUint& a, const BigUint& b) { return cmp(a, b) == 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

    BigUint add(const BigUint& o) const;
    BigUint sub(const BigUint& o) const;  // requires *this >= o
    BigUint mul(const BigUint& o) const;
    BigUint mul_small(u32 v) const;
    // quotient in place semantics: returns quotient, sets rem
    BigUint divmod_small(u32 v, u32& rem) const;
    bool divisible_by(u32 v) const;

    std::string to_string() const;

  private:
    void normalize();
    std::vector<u32> limbs_;
};

// Exact nonnegative rational with a smooth denominator (all prime factors
// below 256); kept reduced.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(BigUint num, BigUint den);
    Rat(u64 num, u64 den) : Rat(BigUint(num), BigUint(den)) {}

    const BigUint& num() const { return num_; }
    const BigUint& den() const { return den_; }

    // sign of a - b
    static int cmp(const Rat& a, const Rat& b);
    bool operator<(const Rat& o) const { return cmp(*this, o) < 0; }
    bool operator==(const Rat& o) const { return cmp(*this, o) == 0; }
    bool at_least_one() const { return BigUint::cmp(num_, den_) >= 0; }

    std::string to_string() const;

  private:
    void reduce();
    BigUint num_, den_;
};

BigUint binomial_big(u64 a, u64 b);
BigUint pow_big(u64 base, u64 exp);

}  // namespace hermovd
