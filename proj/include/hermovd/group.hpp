#pragma once

#include <vector>

#include "hermovd/geometry.hpp"

namespace hermovd {

// The group G = <rho, phi> of order 2nd(q^n+1), acting on H(n,q^2) by
//   rho: (a,x) -> (a, omega x)        phi: (a,x) -> (a^p, x^p),
// with phi rho phi^{-1} = rho^p. Elements are kept in the normal form
// rho^j phi^i.
struct GroupElt {
    u64 j = 0;  // rho exponent, mod q^n+1
    u32 i = 0;  // phi exponent, mod 2nd
    friend bool operator==(const GroupElt&, const GroupElt&) = default;
};

inline GroupElt identity_elt() { return {}; }
inline GroupElt rho_elt() { return {1, 0}; }
inline GroupElt phi_elt() { return {0, 1}; }

u64 group_order(const FieldCtx& ctx);  // 2nd (q^n+1)

GroupElt compose(const FieldCtx& ctx, const GroupElt& g, const GroupElt& h);
GroupElt inverse(const FieldCtx& ctx, const GroupElt& g);
u64 elt_order(const FieldCtx& ctx, const GroupElt& g);
inline u32 eta(const GroupElt& g) { return g.i; }  // phi-exponent homomorphism

// (rho^l phi^k)^i = rho^{l (p^{ki}-1)/(p^k-1)} phi^{ki}; the quotient is the
// geometric series 1 + p^k + ... + p^{k(i-1)} reduced mod q^n+1.
u64 power_rho_exponent(const FieldCtx& ctx, u64 l, u32 k, u64 i);

GroupElt elt_power(const FieldCtx& ctx, const GroupElt& g, u64 e);

ProjPoint act(const FieldCtx& ctx, const GroupElt& g, const ProjPoint& P);

std::vector<GroupElt> all_group_elements(const FieldCtx& ctx);

// H = <rho^s, rho^j phi^k> with mks = 2nd, s | q^n+1 and
// (p^{2nd}-1)/(p^k-1) * j = 0 (mod s).
struct SubgroupSpec {
    u64 s = 1;
    u32 k = 1;
    u64 j = 0;
    u64 m = 0;  // derived: 2nd = mks
    friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

SubgroupSpec make_subgroup_spec(const FieldCtx& ctx, u64 s, u32 k, u64 j);
bool subgroup_spec_valid(const FieldCtx& ctx, u64 s, u32 k, u64 j);
std::vector<GroupElt> subgroup_elements(const FieldCtx& ctx, const SubgroupSpec& spec);

std::vector<ProjPoint> orbit(const FieldCtx& ctx,
                             const std::vector<GroupElt>& elements,
                             const ProjPoint& P);
std::vector<ProjPoint> orbit_of_spec(const FieldCtx& ctx, const SubgroupSpec& spec,
                                     const ProjPoint& P);

// Singer orbit S_y of <(1,y)> under <rho>, and its partition into the
// (q^n+1)/(q+1) scalar blocks L_{i,y} of size q+1.
struct SingerOrbit {
    Fe y;
    std::vector<ProjPoint> points;  // index i holds <(1, omega^i y)>
};

SingerOrbit singer_orbit(const FieldCtx& ctx, const Fe& y);
std::vector<std::vector<ProjPoint>> singer_blocks(const FieldCtx& ctx,
                                                  const SingerOrbit& orbit);

struct StabilizerResult {
    u64 order = 0;
    std::vector<GroupElt> generators;
};

// Exact stabilizer of a point set inside G, by enumeration of G.
StabilizerResult set_stabilizer_in_G(const FieldCtx& ctx,
                                     const std::vector<ProjPoint>& pts,
                                     u64 cap = 1000000, int workers = 0);

}  // namespace hermovd
