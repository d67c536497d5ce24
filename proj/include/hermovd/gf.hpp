#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermovd/numbers.hpp"

namespace hermovd {

// Coefficient-vector arithmetic for the tower
//   F_p c F_q c F_{q^2} c F_{q^n} c F_{q^{2n}},  q = p^d, n odd,
// realized inside the single field F_{p^{2nd}} = F_p[X]/(modulus).
//
// The modulus is pinned to the lexicographically least (by ascending-degree
// coefficient sequence) monic primitive polynomial of degree 2nd over F_p,
// so every context with the same parameters is identical. All constructions
// downstream are invariant under this choice up to projective equivalence.

inline constexpr u32 kMaxDeg = 64;

struct Params {
    u32 p = 0;  // prime
    u32 d = 0;  // q = p^d
    u32 n = 0;  // odd, >= 3

    u64 q() const;          // p^d
    u32 deg() const { return 2 * n * d; }
    u64 qn_plus_1() const;  // q^n + 1
    void validate() const;  // throws std::invalid_argument / BudgetError
};

// Element of F_{p^{2nd}}: coefficients mod p, ascending degree, zero-padded.
struct Fe {
    std::array<u8, kMaxDeg> c{};
    friend bool operator==(const Fe&, const Fe&) = default;
};

// Dense matrix over F_p, row-major. Used for Frobenius and trace maps.
struct FpMatrix {
    u32 n = 0;
    std::vector<u8> a;

    static FpMatrix identity(u32 n);
    u8 at(u32 r, u32 c) const { return a[r * n + c]; }
    u8& at(u32 r, u32 c) { return a[r * n + c]; }
    Fe apply(const Fe& v, u32 p) const;
    FpMatrix mul(const FpMatrix& o, u32 p) const;
};

struct CtxOptions {
    // Discrete-log acceleration tables are built when p^{2nd} is strictly
    // below this threshold; results are bit-identical either way.
    u64 zech_threshold = u64(1) << 20;
};

// x = f * omega^i * omega0^eps with f in F_{q^n}^*.
struct CosetDecomposition {
    Fe f;
    u64 i = 0;
    int eps = 0;
};

class FieldCtx {
  public:
    static FieldCtx build(const Params& params, const CtxOptions& opt = {});

    const Params& params() const { return par_; }
    u32 p() const { return par_.p; }
    u32 deg() const { return deg_; }
    u64 q() const { return q_; }
    u64 order() const { return order_; }  // p^{2nd} - 1
    u64 qn1() const { return qn1_; }      // q^n + 1
    const std::vector<u8>& modulus() const { return modulus_; }
    bool zech_enabled() const { return !zech_log_.empty(); }

    const Fe& zero() const { return zero_; }
    const Fe& one() const { return one_; }
    const Fe& g() const { return g_; }
    const Fe& omega() const { return omega_; }
    const Fe& omega0() const { return omega0_; }

    bool is_zero(const Fe& a) const { return a == zero_; }
    Fe from_int(u64 v) const;  // v mod p as a constant

    Fe add(const Fe& a, const Fe& b) const;
    Fe sub(const Fe& a, const Fe& b) const;
    Fe neg(const Fe& a) const;
    Fe mul(const Fe& a, const Fe& b) const;
    Fe inv(const Fe& a) const;  // throws on 0
    Fe pow(const Fe& a, u64 e) const;

    // a^(p^i); additive and multiplicative, identity at i = 0 mod 2nd
    Fe frobenius(const Fe& a, u64 i) const;

    // Relative trace from the degree-src subfield to the degree-dst subfield.
    // Requires dst | src | 2nd and a in the degree-src subfield.
    Fe trace(const Fe& a, u32 src_degree, u32 dst_degree) const;

    bool in_subfield(const Fe& a, u32 degree) const;

    // Coefficients read as base-p digits, ascending.
    u64 encode(const Fe& a) const;
    Fe decode(u64 v) const;

    // Generator of the degree-e subfield's multiplicative group.
    Fe subfield_generator(u32 e) const;

    // Least-encoding root in this field of a monic irreducible polynomial
    // over F_p whose degree divides 2nd (coefficients ascending, monic).
    Fe embed_root(const std::vector<u32>& minpoly) const;

    CosetDecomposition coset_decompose(const Fe& x) const;

    // omega^i for 0 <= i < q^n+1, table-backed; index taken mod q^n+1.
    const Fe& omega_pow(u64 i) const;
    std::optional<u64> omega_dlog(const Fe& x) const;

    // Multiplicative order of a nonzero element.
    u64 elt_mult_order(const Fe& a) const;

    // Nonzero elements of F_{q^2}, for projective canonicalization of
    // points with zero first coordinate. Throws BudgetError when q^2 is
    // above the materialization cap.
    const std::vector<Fe>& fq2_units() const;

    const FpMatrix& frobenius_matrix(u32 i) const { return frob_[i % deg_]; }
    // Full-field trace onto the degree-dst subfield as one matrix.
    const FpMatrix& trace_matrix(u32 dst_degree) const;

    // p^i mod (q^n+1), i < 2nd
    u64 p_pow_mod_qn1(u64 i) const { return p_mod_qn1_[i % deg_]; }

  private:
    FieldCtx() = default;

    Fe mul_poly(const Fe& a, const Fe& b) const;
    Fe inv_poly(const Fe& a) const;

    Params par_;
    u32 deg_ = 0;
    u64 q_ = 0, order_ = 0, qn1_ = 0;
    std::vector<u8> modulus_;
    Fe zero_, one_, g_, omega_, omega0_;
    std::vector<FpMatrix> frob_;
    std::map<u32, FpMatrix> trace_from_top_;
    std::vector<Fe> omega_pow_;
    std::vector<std::pair<u64, u32>> omega_index_;  // (encoding, exponent), sorted
    std::vector<u64> p_mod_qn1_;
    std::vector<Fe> fq2_units_;
    std::vector<std::pair<u64, int>> order_factors_;

    // discrete-log acceleration (small fields only)
    std::vector<u32> zech_log_;      // indexed by encoding; order_ sentinel for 0
    std::vector<u64> zech_antilog_;  // g^i as encoding
};

std::string fe_to_string(const FieldCtx& ctx, const Fe& a);

}  // namespace hermovd
