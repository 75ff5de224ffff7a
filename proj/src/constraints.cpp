#include "bnsl/constraints.hpp"

#include <stdexcept>

namespace bnsl {

Admissibility ConstraintSet::admissibility(const std::string& x, const std::string& y) const {
    if (x == y) throw std::invalid_argument("admissibility: x and y must differ");
    const bool xy = blacklisted(x, y);
    const bool yx = blacklisted(y, x);
    if (xy && yx) return Admissibility::forbidden;
    if (xy) return Admissibility::forced_y_to_x;
    if (yx) return Admissibility::forced_x_to_y;
    return Admissibility::free;
}

ConstraintSet build_constraints(
    const std::map<std::string, int>& tier_of, const std::string& target,
    const std::set<std::pair<std::string, std::string>>& extra_blacklist) {
    if (target.empty()) throw std::invalid_argument("build_constraints: empty target name");
    if (tier_of.count(target))
        throw std::invalid_argument("build_constraints: target '" + target +
                                    "' must not carry a tier");

    ConstraintSet c;
    c.tier_of_ = tier_of;
    c.target_ = target;

    for (const auto& [feature, tier] : tier_of) {
        (void)tier;
        c.blacklist_.insert({target, feature});  // target-outgoing prohibited
    }
    for (const auto& [u, tier_u] : tier_of) {
        for (const auto& [v, tier_v] : tier_of) {
            if (tier_u > tier_v) c.blacklist_.insert({u, v});
        }
    }
    for (const auto& [from, to] : extra_blacklist) {
        if (from == to)
            throw std::invalid_argument("build_constraints: self-loop in extra blacklist");
        const bool from_known = from == target || tier_of.count(from);
        const bool to_known = to == target || tier_of.count(to);
        if (!from_known || !to_known)
            throw std::invalid_argument("build_constraints: extra blacklist references unknown variable '" +
                                        (from_known ? to : from) + "'");
        c.blacklist_.insert({from, to});
    }
    return c;
}

}  // namespace bnsl
