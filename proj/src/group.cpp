#include "hermovd/group.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace hermovd {

namespace {

int resolve_workers(int workers) {
    return workers > 0 ? workers : omp_get_max_threads();
}

// 1 + r + ... + r^{e-1} mod m
u64 geometric_sum_mod(u64 r, u64 e, u64 m) {
    if (e == 0) return 0;
    if (e == 1) return 1 % m;
    u64 half = geometric_sum_mod(r, e / 2, m);
    u64 rh = powmod_u64(r, e / 2, m);
    u64 s = mulmod_u64(half, (1 + rh) % m, m);
    if (e & 1) {
        // r^{e-1}
        s = (s + powmod_u64(r, e - 1, m)) % m;
        // the doubling above covered exponents 0..e-2 only when e is odd
    }
    return s;
}

}  // namespace

u64 group_order(const FieldCtx& ctx) { return u64(ctx.deg()) * ctx.qn1(); }

GroupElt compose(const FieldCtx& ctx, const GroupElt& g, const GroupElt& h) {
    GroupElt r;
    r.j = (g.j + mulmod_u64(h.j, ctx.p_pow_mod_qn1(g.i), ctx.qn1())) % ctx.qn1();
    r.i = (g.i + h.i) % ctx.deg();
    return r;
}

GroupElt inverse(const FieldCtx& ctx, const GroupElt& g) {
    GroupElt r;
    r.i = (ctx.deg() - g.i) % ctx.deg();
    r.j = mulmod_u64((ctx.qn1() - g.j % ctx.qn1()) % ctx.qn1(),
                     ctx.p_pow_mod_qn1(r.i), ctx.qn1());
    return r;
}

u64 power_rho_exponent(const FieldCtx& ctx, u64 l, u32 k, u64 i) {
    u64 r = powmod_u64(ctx.p(), k, ctx.qn1());
    return mulmod_u64(l % ctx.qn1(), geometric_sum_mod(r, i, ctx.qn1()), ctx.qn1());
}

GroupElt elt_power(const FieldCtx& ctx, const GroupElt& g, u64 e) {
    GroupElt r;
    r.j = power_rho_exponent(ctx, g.j, g.i, e);
    r.i = static_cast<u32>((u64(g.i) * (e % ctx.deg())) % ctx.deg());
    return r;
}

u64 elt_order(const FieldCtx& ctx, const GroupElt& g) {
    if (g.i == 0) {
        if (g.j == 0) return 1;
        return ctx.qn1() / gcd_u64(g.j, ctx.qn1());
    }
    u64 t0 = ctx.deg() / gcd_u64(g.i, ctx.deg());
    GroupElt w = elt_power(ctx, g, t0);
    if (w.i != 0) throw std::logic_error("power landed outside <rho>");
    if (w.j == 0) return t0;
    return t0 * (ctx.qn1() / gcd_u64(w.j, ctx.qn1()));
}

ProjPoint act(const FieldCtx& ctx, const GroupElt& g, const ProjPoint& P) {
    Fe a = ctx.frobenius(P.a, g.i);
    Fe x = ctx.mul(ctx.omega_pow(g.j), ctx.frobenius(P.x, g.i));
    return canonicalize(ctx, a, x);
}

std::vector<GroupElt> all_group_elements(const FieldCtx& ctx) {
    std::vector<GroupElt> out;
    out.reserve(group_order(ctx));
    for (u32 i = 0; i < ctx.deg(); ++i)
        for (u64 j = 0; j < ctx.qn1(); ++j) out.push_back({j, i});
    return out;
}

bool subgroup_spec_valid(const FieldCtx& ctx, u64 s, u32 k, u64 j) {
    if (s == 0 || ctx.qn1() % s != 0) return false;
    if (k == 0 || ctx.deg() % k != 0) return false;
    if (ctx.deg() % (u64(k) * s) != 0) return false;  // m must be integral
    if (j >= s) return false;
    u64 quotient = ctx.order() / (checked_pow_u64(ctx.p(), k, u64(1) << 62) - 1);
    return mulmod_u64(quotient % s, j % s, s) % s == 0;
}

SubgroupSpec make_subgroup_spec(const FieldCtx& ctx, u64 s, u32 k, u64 j) {
    if (!subgroup_spec_valid(ctx, s, k, j))
        throw std::invalid_argument("invalid subgroup parameters (s,k,j)");
    SubgroupSpec spec;
    spec.s = s;
    spec.k = k;
    spec.j = j;
    spec.m = ctx.deg() / (u64(k) * s);
    return spec;
}

std::vector<GroupElt> subgroup_elements(const FieldCtx& ctx, const SubgroupSpec& spec) {
    if (!subgroup_spec_valid(ctx, spec.s, spec.k, spec.j))
        throw std::invalid_argument("invalid subgroup parameters (s,k,j)");
    std::vector<GroupElt> out;
    const u64 rho_count = ctx.qn1() / spec.s;
    const u32 phi_count = ctx.deg() / spec.k;
    out.reserve(rho_count * phi_count);
    for (u32 u = 0; u < phi_count; ++u) {
        u64 ju = power_rho_exponent(ctx, spec.j, spec.k, u);
        for (u64 a = 0; a < rho_count; ++a)
            out.push_back({(a * spec.s + ju) % ctx.qn1(), spec.k * u});
    }
    return out;
}

std::vector<ProjPoint> orbit(const FieldCtx& ctx,
                             const std::vector<GroupElt>& elements,
                             const ProjPoint& P) {
    std::vector<ProjPoint> pts;
    pts.reserve(elements.size());
    for (const GroupElt& g : elements) pts.push_back(act(ctx, g, P));
    std::sort(pts.begin(), pts.end(), [&](const ProjPoint& A, const ProjPoint& B) {
        return point_less(ctx, A, B);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<ProjPoint> orbit_of_spec(const FieldCtx& ctx, const SubgroupSpec& spec,
                                     const ProjPoint& P) {
    return orbit(ctx, subgroup_elements(ctx, spec), P);
}

SingerOrbit singer_orbit(const FieldCtx& ctx, const Fe& y) {
    ProjPoint base{ctx.one(), y};
    if (!is_singular(ctx, base))
        throw std::invalid_argument("Singer orbit base point must be singular");
    SingerOrbit orb;
    orb.y = y;
    orb.points.reserve(ctx.qn1());
    for (u64 i = 0; i < ctx.qn1(); ++i)
        orb.points.push_back(ProjPoint{ctx.one(), ctx.mul(ctx.omega_pow(i), y)});
    return orb;
}

std::vector<std::vector<ProjPoint>> singer_blocks(const FieldCtx& ctx,
                                                  const SingerOrbit& orbit) {
    const u64 q1 = ctx.q() + 1;
    const u64 block_count = ctx.qn1() / q1;
    std::vector<std::vector<ProjPoint>> blocks(block_count);
    for (u64 i = 0; i < block_count; ++i) {
        blocks[i].reserve(q1);
        for (u64 j = 0; j <= ctx.q(); ++j)
            blocks[i].push_back(orbit.points[(i + j * block_count) % ctx.qn1()]);
    }
    return blocks;
}

StabilizerResult set_stabilizer_in_G(const FieldCtx& ctx,
                                     const std::vector<ProjPoint>& pts,
                                     u64 cap, int workers) {
    if (group_order(ctx) > cap)
        throw BudgetError("group too large for stabilizer enumeration");
    std::vector<PointKey> keys;
    keys.reserve(pts.size());
    for (const ProjPoint& P : pts) keys.push_back(point_key(ctx, P));
    std::sort(keys.begin(), keys.end());

    const u64 total = group_order(ctx);
    const int nt = resolve_workers(workers);
    std::vector<std::vector<GroupElt>> found(nt);
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
    for (i64 idx = 0; idx < static_cast<i64>(total); ++idx) {
        GroupElt g{u64(idx) % ctx.qn1(), static_cast<u32>(u64(idx) / ctx.qn1())};
        bool ok = true;
        for (const ProjPoint& P : pts) {
            PointKey k = point_key(ctx, act(ctx, g, P));
            if (!std::binary_search(keys.begin(), keys.end(), k)) {
                ok = false;
                break;
            }
        }
        if (ok) found[omp_get_thread_num()].push_back(g);
    }
    std::vector<GroupElt> stab;
    for (auto& v : found) stab.insert(stab.end(), v.begin(), v.end());
    std::sort(stab.begin(), stab.end(), [](const GroupElt& a, const GroupElt& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });

    StabilizerResult res;
    res.order = stab.size();
    u64 s = ctx.qn1();
    for (const GroupElt& g : stab)
        if (g.i == 0 && g.j != 0) s = std::min(s, g.j);
    if (s != ctx.qn1()) res.generators.push_back({s, 0});
    for (const GroupElt& g : stab) {
        if (g.i != 0) {
            res.generators.push_back(g);  // least phi-level, least rho offset
            break;
        }
    }
    return res;
}

}  // namespace hermovd
