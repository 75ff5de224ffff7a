#ifndef BNSL_SELECT_HPP
#define BNSL_SELECT_HPP

#include <set>
#include <string>
#include <vector>

#include "bnsl/dataset.hpp"

namespace bnsl {

struct RankedFeature {
    std::string variable;
    double mi = 0.0;                         // nats
    double fraction_of_target_entropy = 0.0;  // mi / H(target)
};

/// One entry per non-target variable, sorted by MI descending with ties
/// broken by name ascending.
std::vector<RankedFeature> rank_features(const Dataset& d, const std::string& target);

/// Variables whose MI with the target strictly exceeds
/// threshold_fraction * H(target).
std::set<std::string> select_features(const Dataset& d, const std::string& target,
                                      double threshold_fraction = 0.01);

}  // namespace bnsl

#endif
