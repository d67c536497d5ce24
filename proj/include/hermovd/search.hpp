#pragma once

#include <string>
#include <vector>

#include "hermovd/io.hpp"
#include "hermovd/ovoid.hpp"

namespace hermovd {

// Classification engine for transitive ovoids with stabilizer inside
// G = <rho, phi>: enumerate the admissible subgroup parameters (m,k,s,j)
// and seed points <(1,y)> with y in F_{q^n}^* (or y in F_{q^n}^* omega_0
// for q odd), test each orbit for the ovoid property through the O(|O|)
// transitive verifier, and report the survivors up to G-equivalence.

struct PruneFlags {
    bool parity = true;          // q even: s odd; q odd: 4 does not divide s
    bool s_lower_bounds = true;  // the section-4 lower bounds on s
    bool gcd_bound = true;       // the gcd(6d, q^3+1) size bounds (n = 3)
    bool any() const { return parity || s_lower_bounds || gcd_bound; }
};

struct SearchOptions {
    PruneFlags prune;
    bool include_s1 = false;  // include the s = 1 (Singer orbit) tuples
    int workers = 0;          // 0: all hardware threads
    std::string checkpoint_path;
    u64 seed_chunk = 64;  // seeds per work unit
    u64 max_units = 0;    // stop after this many units (0 = all); for tests
};

// Seed <(1,y)>; eps records the omega_0 coset of y.
struct SeedInfo {
    Fe y;
    int eps = 0;
    friend bool operator==(const SeedInfo&, const SeedInfo&) = default;
};

std::vector<SubgroupSpec> enumerate_params(const FieldCtx& ctx, bool include_s1,
                                           const PruneFlags& prune);

struct SeedEnumeration {
    std::vector<SeedInfo> reduced;  // canonical representatives, sorted
    u64 raw_count = 0;              // singular seeds before reduction
};

SeedEnumeration enumerate_seeds(const FieldCtx& ctx);
std::vector<SeedInfo> enumerate_seeds_raw(const FieldCtx& ctx);

struct FoundOvoid {
    PointSet points;      // canonical image of the G-class
    Certificate cert;     // full verification of the representative
    SubgroupSpec via_spec;
    SeedInfo via_seed;
    u64 raw_copies = 0;   // how many (spec,seed) units produced this class
};

struct SearchReport {
    Params params;
    bool include_s1 = false;
    PruneFlags prune;
    u64 examined_specs = 0;
    u64 examined_seeds = 0;
    u64 examined_pairs = 0;    // (spec, seed) combinations processed
    u64 orbits_scanned = 0;    // pairs whose orbit had size q^n+1
    u64 raw_found = 0;         // valid ovoids before G-dedupe
    u64 seed_raw_count = 0;
    std::vector<FoundOvoid> found;  // one entry per G-equivalence class
    double elapsed_ms = 0;
    bool resumed = false;
};

SearchReport run_search(const FieldCtx& ctx, const SearchOptions& opt = {});

Json report_to_json(const FieldCtx& ctx, const SearchReport& rep);

// G-equivalence utilities. canonical_image is the lexicographically least
// sorted image of the set under all of G.
bool is_G_equivalent(const FieldCtx& ctx, const PointSet& A, const PointSet& B);
PointSet canonical_image(const FieldCtx& ctx, const PointSet& A, int workers = 0);
std::vector<PointSet> dedupe_by_G(const FieldCtx& ctx,
                                  const std::vector<PointSet>& sets);

}  // namespace hermovd
