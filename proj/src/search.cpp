#include "hermovd/search.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace hermovd {

namespace {

int resolve_workers(int workers) {
    return workers > 0 ? workers : omp_get_max_threads();
}

u64 two_part(u64 m) {
    u64 e = 1;
    while (m % 2 == 0) {
        e *= 2;
        m /= 2;
    }
    return e;
}

}  // namespace

std::vector<SubgroupSpec> enumerate_params(const FieldCtx& ctx, bool include_s1,
                                           const PruneFlags& prune) {
    const Params& par = ctx.params();
    const u32 deg = ctx.deg();
    const u64 q = ctx.q();
    const u64 s_cap = gcd_u64(deg, ctx.qn1());
    std::vector<SubgroupSpec> out;

    for (u64 s = 1; s <= s_cap; ++s) {
        if (s_cap % s != 0) continue;
        if (s == 1 && !include_s1) continue;
        if (s > 1 && prune.parity) {
            if (par.p == 2 && s % 2 == 0) continue;  // q^n+1 is odd anyway
            if (par.p != 2 && s % 4 == 0) continue;
        }
        if (s > 1 && prune.gcd_bound && par.n == 3) {
            if (par.p == 2 && par.d >= 4 && s >= q + 1) continue;
            bool exceptional = (par.p == 3 || par.p == 5 || par.p == 11) && par.d == 1;
            if (par.p != 2 && !exceptional && 2 * s >= q + 1) continue;
        }
        for (u32 k = 1; k <= deg; ++k) {
            if (deg % k != 0) continue;
            if (deg % (u64(k) * s) != 0) continue;
            const u64 m = deg / (u64(k) * s);
            if (s > 1 && prune.s_lower_bounds && par.p != 2) {
                if (m % 2 == 1 || s % 2 == 1) {
                    u64 bound = par.n == 3 ? (q + 1) / 2 : q;
                    if (s < bound) continue;
                } else {
                    u64 e = two_part(m);
                    if (par.d % e == 0) {
                        u64 pde = checked_pow_u64(par.p, par.d / u32(e), u64(1) << 62);
                        u64 bound = par.n == 3 ? pde + 1 : 2 * pde;
                        if (s < bound) continue;
                    }
                }
            }
            // j runs over the residues with (p^{2nd}-1)/(p^k-1) j = 0 (mod s)
            for (u64 j = 0; j < s; ++j)
                if (subgroup_spec_valid(ctx, s, k, j))
                    out.push_back(make_subgroup_spec(ctx, s, k, j));
        }
    }
    return out;
}

namespace {

struct RawSeed {
    Fe y;  // the stored seed value
    Fe x;  // F_{q^n} part (equals y when eps = 0)
    int eps = 0;
};

std::vector<RawSeed> singular_seeds(const FieldCtx& ctx) {
    const Params& par = ctx.params();
    const u32 nd = par.n * par.d;
    const u64 sub_size = checked_pow_u64(par.p, nd, u64(1) << 62);
    std::vector<RawSeed> raw;
    Fe h = ctx.subfield_generator(nd);
    Fe x = ctx.one();
    for (u64 e = 0; e + 1 < sub_size; ++e) {
        if (ctx.is_zero(herm_value(ctx, ctx.one(), x))) raw.push_back({x, x, 0});
        if (par.p != 2) {
            Fe y = ctx.mul(x, ctx.omega0());
            if (ctx.is_zero(herm_value(ctx, ctx.one(), y))) raw.push_back({y, x, 1});
        }
        x = ctx.mul(x, h);
    }
    return raw;
}

}  // namespace

std::vector<SeedInfo> enumerate_seeds_raw(const FieldCtx& ctx) {
    std::vector<SeedInfo> out;
    for (const RawSeed& r : singular_seeds(ctx)) out.push_back({r.y, r.eps});
    std::sort(out.begin(), out.end(), [&](const SeedInfo& a, const SeedInfo& b) {
        return std::pair(a.eps, ctx.encode(a.y)) < std::pair(b.eps, ctx.encode(b.y));
    });
    return out;
}

SeedEnumeration enumerate_seeds(const FieldCtx& ctx) {
    const Params& par = ctx.params();
    const u32 deg = ctx.deg();
    std::vector<RawSeed> raw = singular_seeds(ctx);

    // F_{q^n} parts of omega_0^{p^b - 1}; the seed classes under the G-action
    // y ~ omega^a y^{p^b} reduce to sign-and-Frobenius twists of the x part.
    std::vector<Fe> f0(deg, ctx.one());
    if (par.p != 2) {
        for (u32 b = 0; b < deg; ++b) {
            u64 pb = checked_pow_u64(par.p, b, u64(1) << 62);
            f0[b] = ctx.coset_decompose(ctx.pow(ctx.omega0(), pb - 1)).f;
        }
    }

    SeedEnumeration result;
    result.raw_count = raw.size();
    for (const RawSeed& r : raw) {
        u64 self = ctx.encode(r.y);
        u64 best = self;
        for (u32 b = 0; b < deg && best >= self; ++b) {
            Fe t = ctx.frobenius(r.x, b);
            if (r.eps) t = ctx.mul(t, f0[b]);
            Fe cand = r.eps ? ctx.mul(t, ctx.omega0()) : t;
            best = std::min(best, ctx.encode(cand));
            if (par.p != 2) {
                Fe cand2 = ctx.neg(cand);
                best = std::min(best, ctx.encode(cand2));
            }
        }
        if (best == self) result.reduced.push_back({r.y, r.eps});
    }
    std::sort(result.reduced.begin(), result.reduced.end(),
              [&](const SeedInfo& a, const SeedInfo& b) {
                  return std::pair(a.eps, ctx.encode(a.y)) <
                         std::pair(b.eps, ctx.encode(b.y));
              });
    return result;
}

namespace {

enum class PairOutcome { Skipped, OrbitWrongSize, NotOvoid, Found };

PairOutcome process_pair(const FieldCtx& ctx, const SubgroupSpec& spec,
                         const SeedInfo& seed, const PruneFlags& prune) {
    const Params& par = ctx.params();
    const u32 deg = ctx.deg();
    const u32 nd = deg / 2;
    const u64 qn1 = ctx.qn1();

    // q even lower bound: for 2^d >= nd and s <= q only the Singer-type
    // ovoid survives, and its seed class is y = 1
    if (prune.s_lower_bounds && par.p == 2 && spec.s > 1 && ctx.q() >= nd &&
        spec.s <= ctx.q() && !(seed.eps == 0 && seed.y == ctx.one()))
        return PairOutcome::Skipped;

    const u32 phi_count = deg / spec.k;
    const u64 rho_count = qn1 / spec.s;

    // point stabilizer of <(1,y)> in H: at phi-level ku the only candidate
    // is omega^c = y^{1-p^{ku}}
    Fe yinv = ctx.inv(seed.y);
    std::vector<u64> fix_at(phi_count, qn1);  // qn1 = no fixing element
    std::vector<u64> ju(phi_count);
    u64 stab = 0;
    for (u32 u = 0; u < phi_count; ++u) {
        ju[u] = power_rho_exponent(ctx, spec.j, spec.k, u);
        Fe z = ctx.mul(seed.y, ctx.frobenius(yinv, u64(spec.k) * u));
        auto c = ctx.omega_dlog(z);
        if (!c) continue;
        fix_at[u] = *c;
        if (*c % spec.s == ju[u] % spec.s) ++stab;
    }
    const u64 order_h = rho_count * phi_count;
    if (order_h / stab != qn1 || order_h % stab != 0)
        return PairOutcome::OrbitWrongSize;

    // transitive verifier: scan perp(<(1,y)>, h <(1,y)>) over h in H
    const FpMatrix& tr = ctx.trace_matrix(2 * par.d);
    const Fe one = ctx.one();
    for (u32 u = 0; u < phi_count; ++u) {
        Fe wu = ctx.mul(seed.y, ctx.frobenius(seed.y, (u64(spec.k) * u + nd) % deg));
        for (u64 a = 0; a < rho_count; ++a) {
            u64 e = (a * spec.s + ju[u]) % qn1;
            if (e == fix_at[u]) continue;  // this element fixes the base point
            Fe val = ctx.mul(ctx.omega_pow((qn1 - e) % qn1), wu);
            if (tr.apply(val, ctx.p()) == one) return PairOutcome::NotOvoid;
        }
    }
    return PairOutcome::Found;
}

PointSet regenerate_orbit(const FieldCtx& ctx, const SubgroupSpec& spec,
                          const SeedInfo& seed) {
    std::vector<ProjPoint> pts;
    const u32 phi_count = ctx.deg() / spec.k;
    const u64 rho_count = ctx.qn1() / spec.s;
    pts.reserve(phi_count * rho_count);
    for (u32 u = 0; u < phi_count; ++u) {
        u64 ju = power_rho_exponent(ctx, spec.j, spec.k, u);
        Fe yu = ctx.frobenius(seed.y, u64(spec.k) * u);
        for (u64 a = 0; a < rho_count; ++a) {
            u64 e = (a * spec.s + ju) % ctx.qn1();
            pts.push_back(ProjPoint{ctx.one(), ctx.mul(ctx.omega_pow(e), yu)});
        }
    }
    std::sort(pts.begin(), pts.end(), [&](const ProjPoint& A, const ProjPoint& B) {
        return point_less(ctx, A, B);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return make_point_set(ctx, std::move(pts));
}

struct Checkpoint {
    Json fingerprint;
    std::set<u64> completed;
    std::vector<std::pair<u64, u64>> finds;  // (spec_idx, seed_idx)
    u64 pairs = 0;
    u64 scanned = 0;
};

Json checkpoint_fingerprint(const FieldCtx& ctx, const SearchOptions& opt,
                            u64 spec_count, u64 seed_count) {
    Json f;
    f["p"] = ctx.params().p;
    f["d"] = ctx.params().d;
    f["n"] = ctx.params().n;
    f["include_s1"] = opt.include_s1;
    f["prune_parity"] = opt.prune.parity;
    f["prune_s_lower_bounds"] = opt.prune.s_lower_bounds;
    f["prune_gcd_bound"] = opt.prune.gcd_bound;
    f["seed_chunk"] = opt.seed_chunk;
    f["spec_count"] = spec_count;
    f["seed_count"] = seed_count;
    return f;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
    Json j;
    j["fingerprint"] = cp.fingerprint;
    j["completed_units"] = Json::array();
    for (u64 u : cp.completed) j["completed_units"].push_back(u);
    j["finds"] = Json::array();
    for (const auto& [a, b] : cp.finds) j["finds"].push_back(Json::array({a, b}));
    j["pairs"] = cp.pairs;
    j["orbits_scanned"] = cp.scanned;
    const std::string tmp = path + ".tmp";
    write_text_file(tmp, j.dump(1));
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move checkpoint into place");
}

bool load_checkpoint(const std::string& path, const Json& fingerprint, Checkpoint& cp) {
    Json j;
    try {
        j = read_json_file(path);
    } catch (const std::runtime_error&) {
        return false;  // no checkpoint yet
    }
    if (j.at("fingerprint") != fingerprint)
        throw std::invalid_argument("checkpoint does not match the search options");
    for (const Json& u : j.at("completed_units")) cp.completed.insert(u.get<u64>());
    for (const Json& f : j.at("finds"))
        cp.finds.emplace_back(f[0].get<u64>(), f[1].get<u64>());
    cp.pairs = j.at("pairs").get<u64>();
    cp.scanned = j.at("orbits_scanned").get<u64>();
    return true;
}

}  // namespace

SearchReport run_search(const FieldCtx& ctx, const SearchOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.params = ctx.params();
    rep.include_s1 = opt.include_s1;
    rep.prune = opt.prune;

    std::vector<SubgroupSpec> specs = enumerate_params(ctx, opt.include_s1, opt.prune);
    SeedEnumeration seeds = enumerate_seeds(ctx);
    rep.examined_specs = specs.size();
    rep.examined_seeds = seeds.reduced.size();
    rep.seed_raw_count = seeds.raw_count;

    const u64 chunk = std::max<u64>(1, opt.seed_chunk);
    const u64 chunks_per_spec =
        seeds.reduced.empty() ? 0 : (seeds.reduced.size() + chunk - 1) / chunk;
    const u64 total_units = specs.size() * chunks_per_spec;

    Checkpoint cp;
    cp.fingerprint =
        checkpoint_fingerprint(ctx, opt, specs.size(), seeds.reduced.size());
    if (!opt.checkpoint_path.empty())
        rep.resumed = load_checkpoint(opt.checkpoint_path, cp.fingerprint, cp);

    std::vector<u64> todo;
    for (u64 u = 0; u < total_units; ++u)
        if (!cp.completed.count(u)) todo.push_back(u);
    if (opt.max_units && todo.size() > opt.max_units) todo.resize(opt.max_units);

    std::atomic<u64> pairs{cp.pairs}, scanned{cp.scanned};
    const int nt = resolve_workers(opt.workers);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (i64 t = 0; t < static_cast<i64>(todo.size()); ++t) {
        const u64 unit = todo[t];
        const u64 spec_idx = unit / chunks_per_spec;
        const u64 lo = (unit % chunks_per_spec) * chunk;
        const u64 hi = std::min<u64>(lo + chunk, seeds.reduced.size());
        std::vector<std::pair<u64, u64>> local_finds;
        u64 local_pairs = 0, local_scanned = 0;
        for (u64 s = lo; s < hi; ++s) {
            PairOutcome out =
                process_pair(ctx, specs[spec_idx], seeds.reduced[s], opt.prune);
            ++local_pairs;
            if (out == PairOutcome::NotOvoid || out == PairOutcome::Found)
                ++local_scanned;
            if (out == PairOutcome::Found) local_finds.emplace_back(spec_idx, s);
        }
        pairs.fetch_add(local_pairs, std::memory_order_relaxed);
        scanned.fetch_add(local_scanned, std::memory_order_relaxed);
#pragma omp critical(hermovd_search_merge)
        {
            cp.completed.insert(unit);
            for (auto& f : local_finds) cp.finds.push_back(f);
            cp.pairs += local_pairs;
            cp.scanned += local_scanned;
            if (!opt.checkpoint_path.empty()) write_checkpoint(opt.checkpoint_path, cp);
        }
    }
    rep.examined_pairs = pairs.load();
    rep.orbits_scanned = scanned.load();

    std::sort(cp.finds.begin(), cp.finds.end());
    cp.finds.erase(std::unique(cp.finds.begin(), cp.finds.end()), cp.finds.end());
    rep.raw_found = cp.finds.size();

    // group the raw finds into G-equivalence classes
    struct RawFind {
        std::pair<u64, u64> idx;
        PointSet points;
    };
    std::vector<RawFind> raws;
    for (const auto& f : cp.finds)
        raws.push_back(
            {f, regenerate_orbit(ctx, specs[f.first], seeds.reduced[f.second])});

    std::vector<std::vector<const RawFind*>> classes;
    for (const RawFind& r : raws) {
        bool placed = false;
        for (auto& cls : classes) {
            if (is_G_equivalent(ctx, cls.front()->points, r.points)) {
                cls.push_back(&r);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({&r});
    }

    for (const auto& cls : classes) {
        FoundOvoid f;
        f.points = canonical_image(ctx, cls.front()->points, opt.workers);
        f.cert = verify_ovoid(ctx, f.points, nullptr, ExecMode::OpenMP, opt.workers);
        if (group_order(ctx) <= 1000000) {
            auto stab = set_stabilizer_in_G(ctx, f.points.pts, 1000000, opt.workers);
            f.cert.stabilizer_order_in_G = stab.order;
        }
        f.via_spec = specs[cls.front()->idx.first];
        f.via_seed = seeds.reduced[cls.front()->idx.second];
        f.raw_copies = cls.size();
        rep.found.push_back(std::move(f));
    }
    std::sort(rep.found.begin(), rep.found.end(),
              [&](const FoundOvoid& a, const FoundOvoid& b) {
                  return a.points.keys(ctx) < b.points.keys(ctx);
              });

    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

Json report_to_json(const FieldCtx& ctx, const SearchReport& rep) {
    Json j;
    j["params"] = {{"p", rep.params.p}, {"d", rep.params.d}, {"n", rep.params.n}};
    j["options"] = {{"include_s1", rep.include_s1},
                    {"prune",
                     {{"parity", rep.prune.parity},
                      {"s_lower_bounds", rep.prune.s_lower_bounds},
                      {"gcd_bound", rep.prune.gcd_bound}}}};
    j["examined"] = {{"specs", rep.examined_specs},
                     {"seeds", rep.examined_seeds},
                     {"seed_raw_count", rep.seed_raw_count},
                     {"pairs", rep.examined_pairs},
                     {"orbits_scanned", rep.orbits_scanned},
                     {"raw_found", rep.raw_found}};
    j["found"] = Json::array();
    for (const FoundOvoid& f : rep.found) {
        Json e;
        e["ovoid"] = ovoid_to_json(ctx, f.points);
        e["certificate"] = certificate_to_json(f.cert);
        e["found_via"] = {{"spec", spec_to_json(f.via_spec)},
                          {"seed", fe_to_json(ctx, f.via_seed.y)},
                          {"seed_coset", f.via_seed.eps}};
        e["raw_copies"] = f.raw_copies;
        j["found"].push_back(e);
    }
    j["resumed"] = rep.resumed;
    j["elapsed_ms"] = rep.elapsed_ms;
    return j;
}

bool is_G_equivalent(const FieldCtx& ctx, const PointSet& A, const PointSet& B) {
    if (A.pts.size() != B.pts.size()) return false;
    if (A.pts.empty()) return true;
    if (group_order(ctx) > 4000000)
        throw BudgetError("group too large for equivalence testing");
    std::vector<PointKey> bkeys = B.keys(ctx);
    for (u32 i = 0; i < ctx.deg(); ++i) {
        for (u64 jj = 0; jj < ctx.qn1(); ++jj) {
            GroupElt g{jj, i};
            if (!std::binary_search(bkeys.begin(), bkeys.end(),
                                    point_key(ctx, act(ctx, g, A.pts[0]))))
                continue;
            bool all = true;
            for (const ProjPoint& P : A.pts) {
                if (!std::binary_search(bkeys.begin(), bkeys.end(),
                                        point_key(ctx, act(ctx, g, P)))) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
    }
    return false;
}

PointSet canonical_image(const FieldCtx& ctx, const PointSet& A, int workers) {
    if (group_order(ctx) > 4000000)
        throw BudgetError("group too large for canonical images");
    const u64 total = group_order(ctx);
    const int nt = resolve_workers(workers);
    std::vector<PointKey> best_keys;
    GroupElt best_g;
#pragma omp parallel num_threads(nt)
    {
        std::vector<PointKey> loc_keys;
        GroupElt loc_g;
#pragma omp for schedule(dynamic, 64)
        for (i64 idx = 0; idx < static_cast<i64>(total); ++idx) {
            GroupElt g{u64(idx) % ctx.qn1(), static_cast<u32>(u64(idx) / ctx.qn1())};
            std::vector<PointKey> keys;
            keys.reserve(A.pts.size());
            for (const ProjPoint& P : A.pts) keys.push_back(point_key(ctx, act(ctx, g, P)));
            std::sort(keys.begin(), keys.end());
            if (loc_keys.empty() || keys < loc_keys) {
                loc_keys = std::move(keys);
                loc_g = g;
            }
        }
#pragma omp critical(hermovd_canon_merge)
        {
            if (best_keys.empty() || (!loc_keys.empty() && loc_keys < best_keys)) {
                best_keys = std::move(loc_keys);
                best_g = loc_g;
            }
        }
    }
    std::vector<ProjPoint> pts;
    pts.reserve(A.pts.size());
    for (const ProjPoint& P : A.pts) pts.push_back(act(ctx, best_g, P));
    std::sort(pts.begin(), pts.end(), [&](const ProjPoint& a, const ProjPoint& b) {
        return point_less(ctx, a, b);
    });
    return PointSet{std::move(pts)};
}

std::vector<PointSet> dedupe_by_G(const FieldCtx& ctx,
                                  const std::vector<PointSet>& sets) {
    std::vector<PointSet> reps;
    for (const PointSet& s : sets) {
        bool matched = false;
        for (const PointSet& r : reps) {
            if (is_G_equivalent(ctx, r, s)) {
                matched = true;
                break;
            }
        }
        if (!matched) reps.push_back(canonical_image(ctx, s));
    }
    return reps;
}

}  // namespace hermovd
