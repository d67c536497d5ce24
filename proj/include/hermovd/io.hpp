#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "hermovd/ovoid.hpp"

namespace hermovd {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

Json ctx_to_json(const FieldCtx& ctx);

Json fe_to_json(const FieldCtx& ctx, const Fe& a);
Fe fe_from_json(const FieldCtx& ctx, const Json& j);

Json point_to_json(const FieldCtx& ctx, const ProjPoint& P);
ProjPoint point_from_json(const FieldCtx& ctx, const Json& j);

Json spec_to_json(const SubgroupSpec& spec);
SubgroupSpec spec_from_json(const FieldCtx& ctx, const Json& j);

Json certificate_to_json(const Certificate& cert);

// Ovoid file: {"p","d","n","modulus","points",["hint"]} with points in
// canonical sorted order; the hint carries a transitive presentation.
Json ovoid_to_json(const FieldCtx& ctx, const PointSet& S,
                   const TransitiveHint* hint = nullptr);

struct LoadedOvoid {
    FieldCtx ctx;
    PointSet points;
    std::optional<TransitiveHint> hint;
};

LoadedOvoid ovoid_from_json(const Json& j);
LoadedOvoid read_ovoid_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace hermovd
