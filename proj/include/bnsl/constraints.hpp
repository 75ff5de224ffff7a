#ifndef BNSL_CONSTRAINTS_HPP
#define BNSL_CONSTRAINTS_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bnsl {

enum class Admissibility { free, forced_x_to_y, forced_y_to_x, forbidden };

/// Directed-edge prohibitions assembled from tier assignments, the
/// target-exclusion rule, and user-supplied extras. Immutable once built.
class ConstraintSet {
public:
    ConstraintSet() = default;  // everything free

    bool blacklisted(const std::string& from, const std::string& to) const {
        return blacklist_.count({from, to}) > 0;
    }

    /// forbidden iff both directions are blacklisted; forced if exactly one
    /// direction is blacklisted (the allowed direction is the result); free
    /// otherwise.
    Admissibility admissibility(const std::string& x, const std::string& y) const;

    const std::set<std::pair<std::string, std::string>>& blacklist() const {
        return blacklist_;
    }
    const std::map<std::string, int>& tier_of() const { return tier_of_; }
    const std::string& target() const { return target_; }

private:
    friend ConstraintSet build_constraints(
        const std::map<std::string, int>& tier_of, const std::string& target,
        const std::set<std::pair<std::string, std::string>>& extra_blacklist);

    std::set<std::pair<std::string, std::string>> blacklist_;
    std::map<std::string, int> tier_of_;
    std::string target_;
};

/// Assembles the blacklist: every target-outgoing pair, every pair from a
/// higher tier to a lower tier, plus `extra_blacklist`. `tier_of` must assign
/// a tier to every feature variable; the target must not carry a tier.
/// Within-tier and lower-to-higher pairs stay permitted.
ConstraintSet build_constraints(
    const std::map<std::string, int>& tier_of, const std::string& target,
    const std::set<std::pair<std::string, std::string>>& extra_blacklist = {});

}  // namespace bnsl

#endif
