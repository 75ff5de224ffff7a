#include "bnsl/select.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnsl/infotheory.hpp"

namespace bnsl {

std::vector<RankedFeature> rank_features(const Dataset& d, const std::string& target) {
    const std::size_t t = d.index_of(target);
    const double target_entropy = entropy(d, t);
    std::vector<RankedFeature> ranked;
    ranked.reserve(d.variable_count() - 1);
    for (std::size_t i = 0; i < d.variable_count(); ++i) {
        if (i == t) continue;
        RankedFeature f;
        f.variable = d.variable(i).name;
        f.mi = mutual_information(d, i, t);
        f.fraction_of_target_entropy = target_entropy > 0.0 ? f.mi / target_entropy : 0.0;
        ranked.push_back(std::move(f));
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
        if (a.mi != b.mi) return a.mi > b.mi;
        return a.variable < b.variable;
    });
    return ranked;
}

std::set<std::string> select_features(const Dataset& d, const std::string& target,
                                      double threshold_fraction) {
    if (threshold_fraction <= 0.0 || threshold_fraction >= 1.0)
        throw std::invalid_argument("select_features: threshold_fraction must lie in (0, 1)");
    const double cutoff = threshold_fraction * entropy(d, d.index_of(target));
    std::set<std::string> selected;
    for (const RankedFeature& f : rank_features(d, target)) {
        if (f.mi > cutoff) selected.insert(f.variable);
    }
    return selected;
}

}  // namespace bnsl
