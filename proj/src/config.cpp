#include "config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "timestep.hpp"

namespace ps {

namespace {

using nlohmann::json;

double get_positive(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError("config: '" + key + "' must be a number");
    double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError("config: '" + key + "' must be positive and finite");
    return x;
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ValidationError("config: '" + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");

    static const std::set<std::string> known = {"model", "N",  "rho",      "T",
                                                "m",     "d",  "k",        "beta",
                                                "dt",    "t_final", "snapshot_every",
                                                "family", "out_csv"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ValidationError("config: unknown key '" + it.key() + "'");

    RunConfig cfg;
    if (!j.contains("model")) throw ValidationError("config: missing required key 'model'");
    cfg.params.kind = model_kind_from_string(get_string(j, "model", ""));

    if (j.contains("N")) {
        const json& v = j.at("N");
        if (!v.is_number_integer() || v.get<long long>() < 2)
            throw ValidationError("config: 'N' must be an integer >= 2");
        if (v.get<long long>() > 2000000)
            throw ValidationError("config: 'N' is unreasonably large");
        cfg.params.N = static_cast<int>(v.get<long long>());
    }
    cfg.params.rho = get_string(j, "rho", "1");
    cfg.params.T = get_string(j, "T", "1");
    cfg.params.m = get_positive(j, "m", 1.0);
    cfg.params.d = get_positive(j, "d", 1.0);
    cfg.params.k = get_positive(j, "k", 1.0);
    cfg.params.beta = get_positive(j, "beta", 1.0);
    cfg.dt = get_positive(j, "dt", 0.0);
    cfg.t_final = get_positive(j, "t_final", 0.0);
    if (j.contains("snapshot_every")) {
        const json& v = j.at("snapshot_every");
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ValidationError("config: 'snapshot_every' must be a nonnegative integer");
        cfg.snapshot_every = static_cast<long>(v.get<long long>());
    }
    cfg.family = get_string(j, "family", "default");
    if (cfg.family != "default" && cfg.family != "zero")
        throw ValidationError("config: unknown initial-data family '" + cfg.family + "'");
    cfg.out_csv = get_string(j, "out_csv", "");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

double resolved_dt(const RunConfig& cfg, const Model& mdl) {
    return cfg.dt > 0.0 ? cfg.dt : default_dt(mdl);
}

double resolved_t_final(const RunConfig& cfg) {
    if (cfg.t_final > 0.0) return cfg.t_final;
    return cfg.params.kind == ModelKind::WaveHeat ? 30.0 : 120.0;
}

long resolved_steps(const RunConfig& cfg, const Model& mdl) {
    double dt = resolved_dt(cfg, mdl);
    double tf = resolved_t_final(cfg);
    long steps = std::lround(tf / dt);
    if (steps < 0) steps = 0;
    if (steps > 200000000L) throw ValidationError("config: t_final/dt implies too many steps");
    return steps;
}

}  // namespace ps
