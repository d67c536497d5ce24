#include "hermovd/io.hpp"

#include <fstream>
#include <stdexcept>

namespace hermovd {

Json ctx_to_json(const FieldCtx& ctx) {
    Json j;
    j["p"] = ctx.params().p;
    j["d"] = ctx.params().d;
    j["n"] = ctx.params().n;
    j["modulus"] = Json::array();
    for (u8 c : ctx.modulus()) j["modulus"].push_back(static_cast<int>(c));
    return j;
}

Json fe_to_json(const FieldCtx& ctx, const Fe& a) {
    Json j = Json::array();
    for (u32 i = 0; i < ctx.deg(); ++i) j.push_back(static_cast<int>(a.c[i]));
    return j;
}

Fe fe_from_json(const FieldCtx& ctx, const Json& j) {
    if (!j.is_array() || j.size() != ctx.deg())
        throw std::invalid_argument("element must be a coefficient array of length 2nd");
    Fe a{};
    for (u32 i = 0; i < ctx.deg(); ++i) {
        int v = j[i].get<int>();
        if (v < 0 || static_cast<u32>(v) >= ctx.p())
            throw std::invalid_argument("coefficient out of range");
        a.c[i] = static_cast<u8>(v);
    }
    return a;
}

Json point_to_json(const FieldCtx& ctx, const ProjPoint& P) {
    return Json::array({fe_to_json(ctx, P.a), fe_to_json(ctx, P.x)});
}

ProjPoint point_from_json(const FieldCtx& ctx, const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("point must be a pair of coefficient arrays");
    return canonicalize(ctx, fe_from_json(ctx, j[0]), fe_from_json(ctx, j[1]));
}

Json spec_to_json(const SubgroupSpec& spec) {
    Json j;
    j["s"] = spec.s;
    j["k"] = spec.k;
    j["j"] = spec.j;
    j["m"] = spec.m;
    return j;
}

SubgroupSpec spec_from_json(const FieldCtx& ctx, const Json& j) {
    return make_subgroup_spec(ctx, j.at("s").get<u64>(), j.at("k").get<u32>(),
                              j.at("j").get<u64>());
}

Json certificate_to_json(const Certificate& cert) {
    Json j;
    j["valid"] = cert.valid;
    j["size"] = cert.size;
    j["expected_size"] = cert.expected_size;
    if (cert.first_failure)
        j["first_failure"] = Json::array({cert.first_failure->first,
                                          cert.first_failure->second});
    else
        j["first_failure"] = nullptr;
    j["transitive_fast_path_used"] = cert.transitive_fast_path_used;
    if (cert.stabilizer_order_in_G)
        j["stabilizer_order_in_G"] = *cert.stabilizer_order_in_G;
    else
        j["stabilizer_order_in_G"] = nullptr;
    return j;
}

Json ovoid_to_json(const FieldCtx& ctx, const PointSet& S, const TransitiveHint* hint) {
    Json j = ctx_to_json(ctx);
    j["points"] = Json::array();
    for (const ProjPoint& P : S.pts) j["points"].push_back(point_to_json(ctx, P));
    if (hint) {
        Json h;
        h["spec"] = spec_to_json(hint->spec);
        h["base"] = point_to_json(ctx, hint->base);
        j["hint"] = h;
    }
    return j;
}

LoadedOvoid ovoid_from_json(const Json& j) {
    Params par{j.at("p").get<u32>(), j.at("d").get<u32>(), j.at("n").get<u32>()};
    FieldCtx ctx = FieldCtx::build(par);
    Json mod = Json::array();
    for (u8 c : ctx.modulus()) mod.push_back(static_cast<int>(c));
    if (j.at("modulus") != mod)
        throw std::invalid_argument(
            "modulus in file does not match the canonical modulus for (p,d,n)");
    std::vector<ProjPoint> pts;
    for (const Json& pj : j.at("points")) pts.push_back(point_from_json(ctx, pj));
    PointSet S = make_point_set(ctx, std::move(pts));
    std::optional<TransitiveHint> hint;
    if (j.contains("hint")) {
        TransitiveHint h;
        h.spec = spec_from_json(ctx, j["hint"].at("spec"));
        h.base = point_from_json(ctx, j["hint"].at("base"));
        hint = h;
    }
    return LoadedOvoid{std::move(ctx), std::move(S), std::move(hint)};
}

LoadedOvoid read_ovoid_file(const std::string& path) {
    return ovoid_from_json(read_json_file(path));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    Json j;
    f >> j;
    return j;
}

}  // namespace hermovd
