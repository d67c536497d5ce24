#include "doctest.h"
#include "hermovd/ovoid.hpp"
#include "test_util.hpp"

using namespace hermovd;
using testutil::ctx;

TEST_SUITE("ovoid") {

TEST_CASE("classical ovoids verify") {
    const auto& c2 = ctx(2, 1, 3);
    auto O2 = make_point_set(c2, classical_ovoid(c2, ProjPoint{c2.one(), c2.zero()}));
    Certificate cert2 = verify_ovoid(c2, O2);
    CHECK(cert2.valid);
    CHECK(cert2.size == 9);
    CHECK_FALSE(cert2.first_failure.has_value());

    const auto& c3 = ctx(3, 1, 3);
    auto O3 = make_point_set(c3, classical_ovoid(c3, ProjPoint{c3.one(), c3.zero()}));
    Certificate cert3 = verify_ovoid(c3, O3);
    CHECK(cert3.valid);
    CHECK(cert3.size == 28);
}

TEST_CASE("Singer-type ovoids at q = 2 and 4; S_1 fails at n = 5") {
    auto s2 = construct_singer_type(ctx(2, 1, 3));
    CHECK(verify_ovoid(ctx(2, 1, 3), s2.points).valid);
    CHECK(s2.points.pts.size() == 9);

    auto s4 = construct_singer_type(ctx(2, 2, 3));
    CHECK(verify_ovoid(ctx(2, 2, 3), s4.points).valid);
    CHECK(s4.points.pts.size() == 65);

    const auto& c25 = ctx(2, 1, 5);
    auto orb = singer_orbit(c25, c25.one());
    auto S1 = make_point_set(c25, orb.points);
    Certificate cert = verify_ovoid(c25, S1);
    CHECK_FALSE(cert.valid);
    CHECK(cert.size == 33);
    CHECK(cert.first_failure.has_value());
}

TEST_CASE("fast path agrees with the quadratic check") {
    const auto& c = ctx(2, 1, 3);
    auto singer = construct_singer_type(c);
    Certificate fast = verify_ovoid(c, singer.points, &singer.hint);
    Certificate full = verify_ovoid(c, singer.points);
    CHECK(fast.transitive_fast_path_used);
    CHECK_FALSE(full.transitive_fast_path_used);
    CHECK(fast.valid == full.valid);
    CHECK(fast.size == full.size);

    // a lying hint must be rejected
    TransitiveHint wrong = singer.hint;
    wrong.base = ProjPoint{c.one(), c.omega_pow(1)};
    auto O = make_point_set(c, classical_ovoid(c, ProjPoint{c.one(), c.zero()}));
    CHECK_THROWS(verify_ovoid(c, O, &wrong));
}

TEST_CASE("serial and OpenMP verification kernels agree") {
    const auto& c = ctx(2, 1, 5);
    auto orb = singer_orbit(c, c.one());
    auto S1 = make_point_set(c, orb.points);
    Certificate ser = verify_ovoid(c, S1, nullptr, ExecMode::Serial);
    Certificate par = verify_ovoid(c, S1, nullptr, ExecMode::OpenMP, 4);
    CHECK(ser.valid == par.valid);
    CHECK(ser.first_failure == par.first_failure);

    const auto& c2 = ctx(2, 1, 3);
    auto singer = construct_singer_type(c2);
    CHECK(verify_ovoid(c2, singer.points, nullptr, ExecMode::Serial).valid ==
          verify_ovoid(c2, singer.points, nullptr, ExecMode::OpenMP, 3).valid);
}

TEST_CASE("corrupting an ovoid produces the least failing pair") {
    const auto& c = ctx(2, 1, 3);
    auto singer = construct_singer_type(c);
    // swap one point for a singular point outside the ovoid
    std::vector<ProjPoint> pts = singer.points.pts;
    for (const ProjPoint& P : all_singular_points(c)) {
        if (!singer.points.contains(c, P)) {
            pts[0] = P;
            break;
        }
    }
    PointSet bad = make_point_set(c, pts);
    Certificate cert = verify_ovoid(c, bad);
    CHECK_FALSE(cert.valid);
    REQUIRE(cert.first_failure.has_value());
    // reference: least perpendicular pair by exhaustive scan
    std::optional<std::pair<u64, u64>> expect;
    for (u64 i = 0; i < bad.pts.size() && !expect; ++i)
        for (u64 j = i + 1; j < bad.pts.size(); ++j)
            if (perp(c, bad.pts[i], bad.pts[j])) {
                expect = {i, j};
                break;
            }
    CHECK(cert.first_failure == expect);
}

TEST_CASE("nonsingular points are rejected from point sets") {
    const auto& c = ctx(2, 1, 3);
    std::vector<ProjPoint> pts{ProjPoint{c.one(), c.zero()}};
    CHECK_THROWS(make_point_set(c, pts));
}

TEST_CASE("intersection profile of the q=2 classical ovoid") {
    const auto& c = ctx(2, 1, 3);
    auto O = make_point_set(c, classical_ovoid(c, ProjPoint{c.one(), c.zero()}));
    ProfileOptions opt;
    opt.exhaustive = true;
    ProfileReport rep = intersection_profile(c, O, opt);
    CHECK(rep.all_match());
    CHECK(rep.expected_outside == 3);
    CHECK(rep.checked_in_ovoid == 9);
    CHECK(rep.checked_outside == 45 - 9);
}

TEST_CASE("derivation at q = 2: every secant works and is involutive") {
    const auto& c = ctx(2, 1, 3);
    auto O = make_point_set(c, classical_ovoid(c, ProjPoint{c.one(), c.zero()}));
    u64 secants = 0;
    for (u64 i = 0; i < O.pts.size(); ++i)
        for (u64 j = i + 1; j < O.pts.size(); ++j) {
            ProjLine l = line_through(c, O.pts[i], O.pts[j]);
            u64 hits = 0;
            for (const ProjPoint& P : l.points)
                if (O.contains(c, P)) ++hits;
            if (hits != c.q() + 1) continue;
            ++secants;
            PointSet O2 = derive(c, O, l);
            CHECK(O2.pts.size() == 9);
            CHECK(verify_ovoid(c, O2).valid);
            // deriving again on the perp line restores the original
            ProjLine lp = line_perp(c, l);
            PointSet O3 = derive(c, O2, lp);
            CHECK(O3.pts == O.pts);
        }
    CHECK(secants > 0);
}

TEST_CASE("derivation at q = 4 stays an ovoid") {
    const auto& c = ctx(2, 2, 3);
    auto O = make_point_set(c, classical_ovoid(c, ProjPoint{c.one(), c.zero()}));
    REQUIRE(O.pts.size() == 65);
    ProjLine l = line_through(c, O.pts[0], O.pts[1]);
    u64 hits = 0;
    for (const ProjPoint& P : l.points)
        if (O.contains(c, P)) ++hits;
    REQUIRE(hits == 5);
    PointSet O2 = derive(c, O, l);
    CHECK(O2.pts.size() == 65);
    CHECK(verify_ovoid(c, O2).valid);
    CHECK_FALSE(O2.pts == O.pts);
}

TEST_CASE("T has (q^{n-1}-1)/(q-1) points") {
    CHECK(t_set(ctx(2, 1, 3)).size() == 3);
    CHECK(t_set(ctx(3, 1, 3)).size() == 4);
    CHECK(t_set(ctx(2, 2, 3)).size() == 5);
    CHECK(t_set(ctx(5, 1, 3)).size() == 6);
}

TEST_CASE("block divisibility and the odd-k trace consequence") {
    for (auto [p, d] : {std::pair<u32, u32>{2, 1}, {3, 1}, {2, 2}}) {
        const auto& c = ctx(p, d, 3);
        const u32 nd = c.params().n * d;
        auto T = t_set(c);
        // bases of both prescribed forms
        std::vector<std::pair<Fe, int>> bases;
        Fe h = c.subfield_generator(nd);
        Fe x = c.one();
        for (u64 e = 0; e + 1 < checked_pow_u64(p, nd, u64(1) << 62); ++e) {
            if (is_singular(c, ProjPoint{c.one(), x})) bases.emplace_back(x, 0);
            if (p != 2) {
                Fe y = c.mul(x, c.omega0());
                if (is_singular(c, ProjPoint{c.one(), y})) bases.emplace_back(y, 1);
            }
            x = c.mul(x, h);
        }
        for (const auto& [y, eps] : bases) {
            auto orb = singer_orbit(c, y);
            for (const ProjPoint& Rt : T) {
                u64 cnt = 0;
                for (const ProjPoint& P : orb.points)
                    if (perp(c, Rt, P)) ++cnt;
                CHECK(cnt % (c.q() + 1) == 0);
                u64 k = cnt / (c.q() + 1);
                if (k % 2 == 1) {
                    // Tr_{F_{q^n}/F_q}(x t) = 0 where y = x or x omega_0
                    Fe xpart = eps ? c.mul(y, c.inv(c.omega0())) : y;
                    Fe t = Rt.x;  // representative with t in F_{q^n}
                    // the canonical representative may have left F_{q^n}:
                    // rescale into the subfield
                    if (!c.in_subfield(t, nd)) {
                        bool fixed = false;
                        for (const Fe& lam : c.fq2_units()) {
                            Fe cand = c.mul(t, lam);
                            if (c.in_subfield(cand, nd)) {
                                t = cand;
                                fixed = true;
                                break;
                            }
                        }
                        REQUIRE(fixed);
                    }
                    CHECK(c.is_zero(c.trace(c.mul(xpart, t), nd, d)));
                }
            }
        }
    }
}

TEST_CASE("Singer orbits are ovoids only for S_1, q even, n = 3") {
    auto exhaust = [](const FieldCtx& c) {
        u64 valid = 0, checked = 0;
        for (u64 e = 1; e <= c.order(); ++e) {
            Fe y = c.decode(e);
            if (!is_singular(c, ProjPoint{c.one(), y})) continue;
            ++checked;
            auto orb = singer_orbit(c, y);
            bool ok = true;
            for (u64 i = 1; i < orb.points.size() && ok; ++i)
                if (perp(c, orb.points[0], orb.points[i])) ok = false;
            if (ok) {
                CHECK(c.p() == 2);
                CHECK(c.params().n == 3);
                CHECK(c.omega_dlog(y).has_value());  // y in <omega>: S_y = S_1
                ++valid;
            }
        }
        return std::pair(valid, checked);
    };
    auto [v2, c2] = exhaust(ctx(2, 1, 3));
    CHECK(v2 == 9);  // exactly the points of S_1 itself
    CHECK(c2 > 0);
    auto [v3, c3] = exhaust(ctx(3, 1, 3));
    CHECK(v3 == 0);
    CHECK(c3 > 0);
    auto [v25, c25] = exhaust(ctx(2, 1, 5));
    CHECK(v25 == 0);
    CHECK(c25 > 0);
}

TEST_CASE("frak(O) multiset identity for s = 1") {
    const auto& c = ctx(2, 1, 3);
    auto spec = make_subgroup_spec(c, 1, c.deg(), 0);
    auto orb = singer_orbit(c, c.one());
    auto S1 = make_point_set(c, orb.points);
    CHECK(frak_O_multisets_equal(c, S1, spec, c.one()));
}

TEST_CASE("construct_q8 smoke test") {
    const auto& c = ctx(2, 3, 3);
    auto o1 = construct_q8(c, 1);
    CHECK(o1.points.pts.size() == 513);
    auto o2 = construct_q8(c, 2);
    CHECK(o2.points.pts.size() == 513);
    CHECK_FALSE(o1.points.pts == o2.points.pts);
    CHECK_THROWS(construct_q8(ctx(2, 1, 3), 1));
}

}  // TEST_SUITE
