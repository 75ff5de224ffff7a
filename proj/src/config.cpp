#include "bnsl/config.hpp"

#include <fstream>

#include <json.hpp>

namespace bnsl {

namespace {

void check_fraction(const char* key, double v, bool zero_ok = false) {
    if (zero_ok && v == 0.0) return;
    if (v <= 0.0 || v >= 1.0)
        throw ConfigError(std::string("config: '") + key + "' must lie in (0, 1)");
}

}  // namespace

PipelineConfig parse_pipeline_config(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    static const std::set<std::string> known = {
        "input",           "target",        "algorithm",       "alpha",
        "max_condition_size", "replicates", "master_seed",     "jobs",
        "selection_fraction", "strength_cutoff", "direction_cutoff",
        "recode",          "tiers",         "extra_blacklist",
    };
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    }

    PipelineConfig cfg;
    try {
        if (doc.contains("input")) cfg.input = doc["input"].get<std::string>();
        if (doc.contains("target")) cfg.target = doc["target"].get<std::string>();
        if (doc.contains("algorithm"))
            cfg.algorithm = parse_algorithm(doc["algorithm"].get<std::string>());
        if (doc.contains("alpha")) cfg.alpha = doc["alpha"].get<double>();
        if (doc.contains("max_condition_size") && !doc["max_condition_size"].is_null())
            cfg.max_condition_size = doc["max_condition_size"].get<std::size_t>();
        if (doc.contains("replicates")) cfg.replicates = doc["replicates"].get<std::size_t>();
        if (doc.contains("master_seed"))
            cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
        if (doc.contains("jobs")) cfg.jobs = doc["jobs"].get<unsigned>();
        if (doc.contains("selection_fraction"))
            cfg.selection_fraction = doc["selection_fraction"].get<double>();
        if (doc.contains("strength_cutoff"))
            cfg.strength_cutoff = doc["strength_cutoff"].get<double>();
        if (doc.contains("direction_cutoff"))
            cfg.direction_cutoff = doc["direction_cutoff"].get<double>();

        if (doc.contains("recode")) {
            const auto& recode = doc["recode"];
            if (recode.contains("drop"))
                for (const auto& name : recode["drop"])
                    cfg.recode.drop_variables.push_back(name.get<std::string>());
            if (recode.contains("map"))
                for (const auto& [var, mapping] : recode["map"].items())
                    for (const auto& [from, to] : mapping.items())
                        cfg.recode.level_map[var][from] = to.get<std::string>();
        }
        if (doc.contains("tiers") && !doc["tiers"].is_null()) {
            std::map<std::string, int> tiers;
            for (const auto& [var, tier] : doc["tiers"].items()) tiers[var] = tier.get<int>();
            cfg.tiers = std::move(tiers);
        }
        if (doc.contains("extra_blacklist")) {
            for (const auto& pair : doc["extra_blacklist"]) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ConfigError("config: extra_blacklist entries must be [from, to]");
                cfg.extra_blacklist.insert(
                    {pair[0].get<std::string>(), pair[1].get<std::string>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0)
        throw ConfigError("config: 'alpha' must lie in (0, 1)");
    check_fraction("selection_fraction", cfg.selection_fraction, /*zero_ok=*/true);
    check_fraction("strength_cutoff", cfg.strength_cutoff);
    check_fraction("direction_cutoff", cfg.direction_cutoff);
    if (cfg.replicates < 1) throw ConfigError("config: 'replicates' must be >= 1");
    return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_pipeline_config(in);
}

}  // namespace bnsl
