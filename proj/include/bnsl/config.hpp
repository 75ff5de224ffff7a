#ifndef BNSL_CONFIG_HPP
#define BNSL_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "bnsl/averaging.hpp"
#include "bnsl/dataset.hpp"

namespace bnsl {

/// Everything a pipeline run needs, loadable from a JSON file so a run is a
/// reproducible artifact. CLI flags override individual keys.
struct PipelineConfig {
    std::string input;   // CSV path
    std::string target;  // target variable name (after recode)
    Algorithm algorithm = Algorithm::pc_stable;
    double alpha = 0.05;
    std::optional<std::size_t> max_condition_size;
    std::size_t replicates = 1000;
    std::uint64_t master_seed = 1;
    unsigned jobs = 1;
    double selection_fraction = 0.01;  // 0 keeps every variable
    double strength_cutoff = 0.3;
    double direction_cutoff = 0.6;
    RecodeSpec recode;
    std::optional<std::map<std::string, int>> tiers;  // absent: single tier
    std::set<std::pair<std::string, std::string>> extra_blacklist;
};

PipelineConfig parse_pipeline_config(std::istream& in);
PipelineConfig load_pipeline_config(const std::string& path);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bnsl

#endif
