#include "bnsl/pc_stable.hpp"

#include <algorithm>
#include <functional>

namespace bnsl {

namespace {

// Size-k index combinations of `pool` in lexicographic order; stops early when
// `fn` returns true.
bool for_each_combination(const std::vector<std::size_t>& pool, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (k > pool.size()) return false;
    std::vector<std::size_t> pick(k);
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = pool[pick[i]];
        if (fn(subset)) return true;
        // advance to the next combination
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (pick[i] != i + pool.size() - k) {
                ++pick[i];
                for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return false;
        }
        if (k == 0) return false;
    }
}

std::vector<std::string> to_names(const CiTest& test, const std::vector<std::size_t>& idx) {
    std::vector<std::string> names;
    names.reserve(idx.size());
    for (std::size_t i : idx) names.push_back(test.variable_name(i));
    return names;
}

}  // namespace

SkeletonResult learn_skeleton_pcstable(const CiTest& test, const ConstraintSet& constraints,
                                       std::optional<std::size_t> max_condition_size) {
    const std::size_t n = test.variable_count();
    if (n < 2) throw std::invalid_argument("learn_skeleton_pcstable: need at least 2 variables");
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(test.variable_name(i));

    SkeletonResult result{Pdag(names), SepsetMap{}};
    Pdag& g = result.skeleton;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (constraints.admissibility(names[i], names[j]) == Admissibility::forbidden)
                result.sepsets.set(names[i], names[j], {});
            else
                g.add_undirected(i, j);
        }
    }

    for (std::size_t level = 0;; ++level) {
        if (max_condition_size && level > *max_condition_size) break;

        // Frozen adjacency snapshot: deletions inside this level do not
        // change anyone's candidate conditioning sets.
        std::vector<std::vector<std::size_t>> adj(n);
        for (std::size_t i = 0; i < n; ++i) adj[i] = g.neighbors(i);

        bool testable = false;
        for (std::size_t x = 0; x < n && !testable; ++x)
            for (std::size_t y : adj[x])
                if (adj[x].size() - 1 >= level && y != x) {
                    testable = true;
                    break;
                }
        if (!testable) break;

        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y : adj[x]) {
                if (!g.has_undirected(x, y)) continue;  // removed earlier this level
                std::vector<std::size_t> pool;
                pool.reserve(adj[x].size());
                for (std::size_t cand : adj[x])
                    if (cand != y) pool.push_back(cand);
                if (pool.size() < level) continue;
                for_each_combination(pool, level, [&](const std::vector<std::size_t>& s) {
                    if (!test.test(x, y, s).independent) return false;
                    g.remove_edge(x, y);
                    result.sepsets.set(names[x], names[y], to_names(test, s));
                    return true;
                });
            }
        }
    }
    return result;
}

SkeletonResult learn_skeleton_pcstable(const Dataset& d, const PcConfig& cfg,
                                       const ConstraintSet& constraints) {
    GSquareTest test(d, cfg.alpha);
    return learn_skeleton_pcstable(test, constraints, cfg.max_condition_size);
}

Pdag pc_stable(const CiTest& test, const ConstraintSet& constraints,
               std::optional<std::size_t> max_condition_size, OrientationLog* log) {
    SkeletonResult sk = learn_skeleton_pcstable(test, constraints, max_condition_size);
    Pdag g = orient_v_structures(sk.skeleton, sk.sepsets, constraints, log);
    g = apply_forced_orientations(std::move(g), constraints, log);
    return apply_meek_rules(std::move(g), constraints, log);
}

Pdag pc_stable(const Dataset& d, const PcConfig& cfg, const ConstraintSet& constraints,
               OrientationLog* log) {
    GSquareTest test(d, cfg.alpha);
    return pc_stable(test, constraints, cfg.max_condition_size, log);
}

}  // namespace bnsl
