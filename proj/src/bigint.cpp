#include "hermovd/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace hermovd {

BigUint::BigUint(u64 v) {
    while (v) {
        limbs_.push_back(static_cast<u32>(v));
        v >>= 32;
    }
}

void BigUint::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint BigUint::add(const BigUint& o) const {
    BigUint r;
    const size_t n = std::max(limbs_.size(), o.limbs_.size());
    r.limbs_.resize(n + 1, 0);
    u64 carry = 0;
    for (size_t i = 0; i < n; ++i) {
        u64 s = carry;
        if (i < limbs_.size()) s += limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        r.limbs_[i] = static_cast<u32>(s);
        carry = s >> 32;
    }
    r.limbs_[n] = static_cast<u32>(carry);
    r.normalize();
    return r;
}

BigUint BigUint::sub(const BigUint& o) const {
    if (cmp(*this, o) < 0) throw std::invalid_argument("BigUint underflow");
    BigUint r;
    r.limbs_.resize(limbs_.size(), 0);
    u64 borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u64 x = limbs_[i];
        u64 y = borrow + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        if (x >= y) {
            r.limbs_[i] = static_cast<u32>(x - y);
            borrow = 0;
        } else {
            r.limbs_[i] = static_cast<u32>((u64(1) << 32) + x - y);
            borrow = 1;
        }
    }
    r.normalize();
    return r;
}

BigUint BigUint::mul(const BigUint& o) const {
    if (is_zero() || o.is_zero()) return BigUint();
    BigUint r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u64 carry = 0;
        for (size_t j = 0; j < o.limbs_.size(); ++j) {
            u64 cur = u64(limbs_[i]) * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u32>(cur);
            carry = cur >> 32;
        }
        size_t k = i + o.limbs_.size();
        while (carry) {
            u64 cur = u64(r.limbs_[k]) + carry;
            r.limbs_[k] = static_cast<u32>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.normalize();
    return r;
}

BigUint BigUint::mul_small(u32 v) const {
    if (v == 0 || is_zero()) return BigUint();
    BigUint r;
    r.limbs_.resize(limbs_.size() + 1, 0);
    u64 carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u64 cur = u64(limbs_[i]) * v + carry;
        r.limbs_[i] = static_cast<u32>(cur);
        carry = cur >> 32;
    }
    r.limbs_[limbs_.size()] = static_cast<u32>(carry);
    r.normalize();
    return r;
}

BigUint BigUint::divmod_small(u32 v, u32& rem) const {
    if (v == 0) throw std::invalid_argument("division by zero");
    BigUint q;
    q.limbs_.resize(limbs_.size(), 0);
    u64 r = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        u64 cur = (r << 32) | limbs_[i];
        q.limbs_[i] = static_cast<u32>(cur / v);
        r = cur % v;
    }
    rem = static_cast<u32>(r);
    q.normalize();
    return q;
}

bool BigUint::divisible_by(u32 v) const {
    u32 rem = 0;
    divmod_small(v, rem);
    return rem == 0;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::vector<u32> chunks;
    BigUint cur = *this;
    while (!cur.is_zero()) {
        u32 rem = 0;
        cur = cur.divmod_small(1000000000u, rem);
        chunks.push_back(rem);
    }
    std::string s = std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

Rat::Rat(BigUint num, BigUint den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    reduce();
}

void Rat::reduce() {
    if (num_.is_zero()) {
        den_ = BigUint(1);
        return;
    }
    for (u32 r = 2; r < 256; ++r) {
        if (!is_prime_u64(r)) continue;
        for (;;) {
            u32 rn = 0, rd = 0;
            BigUint qn = num_.divmod_small(r, rn);
            if (rn != 0) break;
            BigUint qd = den_.divmod_small(r, rd);
            if (rd != 0) break;
            num_ = qn;
            den_ = qd;
        }
    }
}

int Rat::cmp(const Rat& a, const Rat& b) {
    return BigUint::cmp(a.num_.mul(b.den_), b.num_.mul(a.den_));
}

std::string Rat::to_string() const {
    if (den_ == BigUint(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

BigUint binomial_big(u64 a, u64 b) {
    if (b > a) return BigUint();
    if (b > a - b) b = a - b;
    BigUint r(1);
    for (u64 i = 1; i <= b; ++i) {
        r = r.mul_small(static_cast<u32>(a - b + i));
        u32 rem = 0;
        r = r.divmod_small(static_cast<u32>(i), rem);
        if (rem != 0) throw std::logic_error("binomial product not divisible");
    }
    return r;
}

BigUint pow_big(u64 base, u64 exp) {
    BigUint r(1);
    BigUint b(base);
    while (exp) {
        if (exp & 1) r = r.mul(b);
        b = b.mul(b);
        exp >>= 1;
    }
    return r;
}

}  // namespace hermovd
