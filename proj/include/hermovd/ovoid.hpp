#pragma once

#include <optional>
#include <vector>

#include "hermovd/group.hpp"

namespace hermovd {

// Sorted canonical point set with all points singular and distinct.
struct PointSet {
    std::vector<ProjPoint> pts;

    bool contains(const FieldCtx& ctx, const ProjPoint& P) const;
    std::optional<u64> index_of(const FieldCtx& ctx, const ProjPoint& P) const;
    std::vector<PointKey> keys(const FieldCtx& ctx) const;
};

PointSet make_point_set(const FieldCtx& ctx, std::vector<ProjPoint> pts);

struct TransitiveHint {
    SubgroupSpec spec;
    ProjPoint base;
};

struct Certificate {
    bool valid = false;
    u64 size = 0;
    u64 expected_size = 0;  // q^n + 1
    std::optional<std::pair<u64, u64>> first_failure;  // least perpendicular pair
    bool transitive_fast_path_used = false;
    std::optional<u64> stabilizer_order_in_G;
};

enum class ExecMode { Serial, OpenMP };

// Ovoid check: |S| = q^n+1 and no two distinct points perpendicular.
// With a hint, S is confirmed to be the orbit of `base` under the spec's
// subgroup and only pairs through the base point are tested; both paths
// agree because every element of G is a semi-similitude of the form.
Certificate verify_ovoid(const FieldCtx& ctx, const PointSet& S,
                         const TransitiveHint* hint = nullptr,
                         ExecMode mode = ExecMode::OpenMP, int workers = 0);

struct ProfileOptions {
    bool exhaustive = false;
    u64 sample_count = 100;
    u64 rng_seed = 0x5eedULL;
    int workers = 0;
};

struct ProfileViolation {
    PointKey point;
    u64 count = 0;
    u64 expected = 0;
};

struct ProfileReport {
    u64 checked_in_ovoid = 0;
    u64 checked_outside = 0;
    u64 expected_outside = 0;  // q^{n-2} + 1
    std::vector<ProfileViolation> violations;
    bool all_match() const { return violations.empty(); }
};

// |P^perp cap O| over singular points P: 1 on O, q^{n-2}+1 off it.
ProfileReport intersection_profile(const FieldCtx& ctx, const PointSet& O,
                                   const ProfileOptions& opt = {});

struct ConstructedOvoid {
    PointSet points;
    TransitiveHint hint;
};

// Orbit of <(1,1)> under G = <rho, phi>; q even, n = 3.
ConstructedOvoid construct_singer_type(const FieldCtx& ctx);

// The two H(3,8^2) ovoids: orbits of <(1,gamma^39)> under <rho^9, rho^j phi^2>
// (j resolved among the Frobenius-conjugate offsets) and of <(1,gamma^109)>
// under <rho^9, phi>, where gamma is the least root of X^9 + X^4 + 1.
ConstructedOvoid construct_q8(const FieldCtx& ctx, int variant);

// Payne-Thas derivation: remove the q+1 points of O on the secant line and
// add the singular points of its perp.
PointSet derive(const FieldCtx& ctx, const PointSet& O, const ProjLine& line);

// T = {<(0,t)> : t in F_{q^n}^*, Tr_{F_{q^n}/F_q}(t^2) = 0},
// of size (q^{n-1}-1)/(q-1).
std::vector<ProjPoint> t_set(const FieldCtx& ctx);

// The s-fold union frak(O) = U rho^i(O) equals U phi^{ik}(S_y) as multisets
// when O is the orbit of <(1,y)> under <rho^s, rho^j phi^k>.
bool frak_O_multisets_equal(const FieldCtx& ctx, const PointSet& O,
                            const SubgroupSpec& spec, const Fe& y);

// sum_i |R_t^perp cap phi^{ik}(S_y)|; the block lemma pins it to
// s (q^{n-2}+1) for R_t in T.
u64 frak_O_block_sum(const FieldCtx& ctx, const SubgroupSpec& spec, const Fe& y,
                     const ProjPoint& Rt);

}  // namespace hermovd
