#include <cstdio>
#include <map>
#include <set>

#include "doctest.h"
#include "hermovd/search.hpp"
#include "test_util.hpp"

using namespace hermovd;
using testutil::ctx;

namespace {

Json stripped(const FieldCtx& c, const SearchReport& rep) {
    Json j = report_to_json(c, rep);
    j.erase("elapsed_ms");
    j.erase("resumed");
    return j;
}

// subgroup generated by two elements, as a sorted element list
std::vector<GroupElt> closure(const FieldCtx& c, GroupElt g, GroupElt h) {
    std::set<std::pair<u64, u32>> seen{{0, 0}};
    std::vector<GroupElt> elems{identity_elt()}, frontier{identity_elt()};
    while (!frontier.empty()) {
        std::vector<GroupElt> next;
        for (const GroupElt& e : frontier)
            for (const GroupElt& gen : {g, h}) {
                GroupElt f = compose(c, e, gen);
                if (seen.insert({f.j, f.i}).second) {
                    elems.push_back(f);
                    next.push_back(f);
                }
            }
        frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end(), [](const GroupElt& a, const GroupElt& b) {
        return std::pair(a.j, a.i) < std::pair(b.j, b.i);
    });
    return elems;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("parameter enumeration at the named spots") {
    const auto& c233 = ctx(2, 3, 3);
    auto specs = enumerate_params(c233, true, PruneFlags{});
    std::set<u64> svals;
    for (const auto& s : specs) svals.insert(s.s);
    CHECK(svals == std::set<u64>{1, 3, 9});
    // without the Singer tuples the s = 1 entries vanish
    auto specs2 = enumerate_params(c233, false, PruneFlags{});
    svals.clear();
    for (const auto& s : specs2) svals.insert(s.s);
    CHECK(svals == std::set<u64>{3, 9});
    for (const auto& s : specs2) CHECK(s.m * s.k * s.s == c233.deg());

    // gcd(12, 65) = 1: nothing beyond Singer orbits at (2,2,3)
    CHECK(enumerate_params(ctx(2, 2, 3), false, PruneFlags{}).empty());

    // s | gcd(6, q^3+1) = 6 at (11,1,3)
    auto specs11 = enumerate_params(ctx(11, 1, 3), false, PruneFlags{});
    for (const auto& s : specs11) CHECK(6 % s.s == 0);
    CHECK(!specs11.empty());

    // pruning keeps a subset
    PruneFlags off{false, false, false};
    auto pruned = enumerate_params(ctx(11, 1, 3), false, PruneFlags{});
    auto full = enumerate_params(ctx(11, 1, 3), false, off);
    CHECK(pruned.size() <= full.size());
    for (const auto& s : pruned) {
        bool present = false;
        for (const auto& t : full) present = present || t == s;
        CHECK(present);
    }
}

TEST_CASE("seed enumeration at (2,1,3)") {
    const auto& c = ctx(2, 1, 3);
    auto seeds = enumerate_seeds(c);
    CHECK(seeds.raw_count == 4);       // x in F_8^* with Tr(x^2) = 1
    CHECK(seeds.reduced.size() == 2);  // {1} and one Frobenius class of size 3
    for (const auto& s : seeds.reduced) {
        CHECK(s.eps == 0);
        CHECK(c.is_zero(herm_value(c, c.one(), s.y)));
        CHECK(c.in_subfield(s.y, 3));
    }
    // raw seeds are exactly the trace-one squares
    for (const auto& s : enumerate_seeds_raw(c))
        CHECK(c.trace(c.mul(s.y, s.y), 3, 1) == c.one());
}

TEST_CASE("seed reduction covers every raw seed at (3,1,3)") {
    const auto& c = ctx(3, 1, 3);
    auto seeds = enumerate_seeds(c);
    auto raw = enumerate_seeds_raw(c);
    CHECK(seeds.raw_count == raw.size());
    bool has_omega0_form = false;
    for (const auto& s : seeds.reduced) has_omega0_form |= s.eps == 1;
    CHECK(has_omega0_form);

    // brute-force orbit of y under y -> omega^a y^{p^b}
    auto class_of = [&](const Fe& y) {
        std::set<u64> orb;
        Fe yb = y;
        for (u32 b = 0; b < c.deg(); ++b) {
            for (u64 a = 0; a < c.qn1(); ++a)
                orb.insert(c.encode(c.mul(c.omega_pow(a), yb)));
            yb = c.frobenius(yb, 1);
        }
        return orb;
    };
    for (const auto& r : raw) {
        auto orb = class_of(r.y);
        u64 reps_in_class = 0;
        for (const auto& s : seeds.reduced)
            if (orb.count(c.encode(s.y))) ++reps_in_class;
        CHECK(reps_in_class == 1);
    }
}

TEST_CASE("search at (2,1,3) finds exactly the Singer-type class") {
    const auto& c = ctx(2, 1, 3);
    SearchOptions opt;
    opt.include_s1 = true;
    SearchReport rep = run_search(c, opt);
    REQUIRE(rep.found.size() == 1);
    CHECK(rep.found[0].points.pts.size() == 9);
    CHECK(rep.found[0].cert.valid);
    CHECK(rep.found[0].cert.stabilizer_order_in_G == group_order(c));

    // the class is the Singer orbit S_1 up to G
    auto orb = singer_orbit(c, c.one());
    auto S1 = make_point_set(c, orb.points);
    CHECK(is_G_equivalent(c, rep.found[0].points, S1));
}

TEST_CASE("search at (3,1,3) and (5,1,3) is empty") {
    SearchOptions opt;
    CHECK(run_search(ctx(3, 1, 3), opt).found.empty());
    opt.include_s1 = true;
    CHECK(run_search(ctx(3, 1, 3), opt).found.empty());
    CHECK(run_search(ctx(5, 1, 3), opt).found.empty());
}

TEST_CASE("pruning lemmas only remove dead branches") {
    for (auto [p, d] : {std::pair<u32, u32>{2, 1}, {3, 1}}) {
        const auto& c = ctx(p, d, 3);
        SearchOptions on, off;
        on.include_s1 = off.include_s1 = true;
        off.prune = PruneFlags{false, false, false};
        SearchReport rep_on = run_search(c, on);
        SearchReport rep_off = run_search(c, off);
        REQUIRE(rep_on.found.size() == rep_off.found.size());
        for (size_t i = 0; i < rep_on.found.size(); ++i)
            CHECK(rep_on.found[i].points.pts == rep_off.found[i].points.pts);
        CHECK(rep_on.examined_pairs <= rep_off.examined_pairs);
    }
}

TEST_CASE("completeness against brute force over all subgroups at (2,1,3)") {
    const auto& c = ctx(2, 1, 3);

    // every subgroup of G arises from a two-element generating set
    std::set<std::vector<std::pair<u64, u32>>> subgroup_keys;
    std::vector<std::vector<GroupElt>> subgroups;
    auto all_g = all_group_elements(c);
    for (const GroupElt& g : all_g)
        for (const GroupElt& h : all_g) {
            auto elems = closure(c, g, h);
            std::vector<std::pair<u64, u32>> key;
            for (const GroupElt& e : elems) key.emplace_back(e.j, e.i);
            if (subgroup_keys.insert(key).second) subgroups.push_back(elems);
        }
    CHECK(subgroups.size() > 5);

    // orbits of every singular <(1,y)> under every subgroup
    std::vector<PointSet> brute_found;
    for (u64 e = 0; e <= c.order(); ++e) {
        Fe y = c.decode(e);
        ProjPoint P{c.one(), y};
        if (!is_singular(c, P)) continue;
        for (const auto& H : subgroups) {
            auto orb = orbit(c, H, P);
            if (orb.size() != c.qn1()) continue;
            bool ok = true;
            for (size_t i = 0; i < orb.size() && ok; ++i)
                for (size_t j = i + 1; j < orb.size(); ++j)
                    if (perp(c, orb[i], orb[j])) {
                        ok = false;
                        break;
                    }
            if (ok) brute_found.push_back(PointSet{orb});
        }
    }
    CHECK(!brute_found.empty());
    auto brute_classes = dedupe_by_G(c, brute_found);

    SearchOptions opt;
    opt.include_s1 = true;
    opt.prune = PruneFlags{false, false, false};
    SearchReport rep = run_search(c, opt);
    REQUIRE(brute_classes.size() == rep.found.size());
    for (size_t i = 0; i < brute_classes.size(); ++i)
        CHECK(is_G_equivalent(c, brute_classes[i], rep.found[i].points));
}

TEST_CASE("dedupe_by_G") {
    const auto& c = ctx(2, 1, 3);
    auto orb = singer_orbit(c, c.one());
    auto S1 = make_point_set(c, orb.points);

    // rho(S1) and phi(S1) are the same set again (S1 is G-invariant), so
    // shift by a subgroup orbit instead: use a classical ovoid and its image
    auto O = make_point_set(c, classical_ovoid(c, ProjPoint{c.one(), c.zero()}));
    std::vector<ProjPoint> moved;
    for (const ProjPoint& P : O.pts) moved.push_back(act(c, GroupElt{1, 1}, P));
    auto O2 = make_point_set(c, std::move(moved));
    CHECK(dedupe_by_G(c, {O, O2}).size() == 1);
    CHECK(dedupe_by_G(c, {O, S1}).size() == 2);
    CHECK(dedupe_by_G(c, {S1, S1, S1}).size() == 1);
}

TEST_CASE("reports are deterministic across worker counts") {
    const auto& c = ctx(2, 1, 3);
    SearchOptions a, b;
    a.include_s1 = b.include_s1 = true;
    a.workers = 1;
    b.workers = 4;
    b.seed_chunk = 1;
    CHECK(stripped(c, run_search(c, a)) == stripped(c, run_search(c, b)));
}

TEST_CASE("checkpointing resumes to the same report") {
    const auto& c = ctx(2, 1, 3);
    const std::string path = "hermovd_test_checkpoint.json";
    std::remove(path.c_str());

    SearchOptions full;
    full.include_s1 = true;
    full.seed_chunk = 1;
    SearchReport fresh = run_search(c, full);

    SearchOptions partial = full;
    partial.checkpoint_path = path;
    partial.max_units = 3;
    SearchReport firsthalf = run_search(c, partial);
    CHECK(firsthalf.examined_pairs < fresh.examined_pairs);

    SearchOptions resume = full;
    resume.checkpoint_path = path;
    SearchReport rest = run_search(c, resume);
    CHECK(rest.resumed);
    CHECK(stripped(c, rest) == stripped(c, fresh));
    std::remove(path.c_str());
}

}  // TEST_SUITE
