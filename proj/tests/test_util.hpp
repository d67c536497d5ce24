#pragma once

#include <random>

#include "hermovd/gf.hpp"

namespace hermovd::testutil {

// Contexts are immutable; cache the ones the suites share.
inline const FieldCtx& ctx(u32 p, u32 d, u32 n) {
    static std::map<std::tuple<u32, u32, u32>, FieldCtx> cache;
    auto key = std::make_tuple(p, d, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, FieldCtx::build(Params{p, d, n})).first;
    return it->second;
}

inline Fe random_elt(const FieldCtx& c, std::mt19937_64& rng) {
    return c.decode(rng() % (c.order() + 1));
}

inline Fe random_unit(const FieldCtx& c, std::mt19937_64& rng) {
    return c.decode(1 + rng() % c.order());
}

}  // namespace hermovd::testutil
