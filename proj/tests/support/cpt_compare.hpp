#ifndef BNSL_TESTS_SUPPORT_CPT_COMPARE_HPP
#define BNSL_TESTS_SUPPORT_CPT_COMPARE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "bnsl/params_sim.hpp"

namespace bnsl::testsupport {

// CPT row for a full parent-level assignment, honoring that network's own
// parent order.
inline const std::vector<double>& cpt_row(const BayesianNetwork& bn, const std::string& node,
                                          const std::map<std::string, std::uint8_t>& levels) {
    const Cpt& cpt = bn.cpt_of(node);
    std::size_t index = 0;
    for (const std::string& parent : cpt.parents)
        index = index * bn.variable_of(parent).arity() + levels.at(parent);
    return cpt.table.at(index);
}

// Worst absolute per-entry difference between two networks over the same DAG,
// insensitive to how each lists its parents.
inline double max_cpt_error(const BayesianNetwork& a, const BayesianNetwork& b) {
    double worst = 0.0;
    for (const std::string& node : a.dag.nodes()) {
        const Cpt& cpt = a.cpt_of(node);
        std::size_t configs = 1;
        for (const std::string& parent : cpt.parents)
            configs *= a.variable_of(parent).arity();
        for (std::size_t c = 0; c < configs; ++c) {
            std::map<std::string, std::uint8_t> levels;
            std::size_t rest = c;
            for (std::size_t p = cpt.parents.size(); p-- > 0;) {
                const std::size_t arity = a.variable_of(cpt.parents[p]).arity();
                levels[cpt.parents[p]] = static_cast<std::uint8_t>(rest % arity);
                rest /= arity;
            }
            const std::vector<double>& row_a = cpt_row(a, node, levels);
            const std::vector<double>& row_b = cpt_row(b, node, levels);
            for (std::size_t l = 0; l < row_a.size(); ++l)
                worst = std::max(worst, std::fabs(row_a[l] - row_b[l]));
        }
    }
    return worst;
}

}  // namespace bnsl::testsupport

#endif
