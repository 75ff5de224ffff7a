#include "bnsl/inter_iamb.hpp"

#include <algorithm>
#include <functional>

namespace bnsl {

namespace {

std::vector<std::size_t> sorted_indices(const std::vector<std::size_t>& members) {
    std::vector<std::size_t> out = members;
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::string> grow_shrink_blanket(const CiTest& test, std::size_t target) {
    const std::size_t n = test.variable_count();
    std::vector<std::size_t> blanket;  // insertion order
    std::set<std::vector<std::size_t>> seen_states;

    for (;;) {
        const std::vector<std::size_t> conditioning = sorted_indices(blanket);

        // Grow: strongest still-dependent candidate, ties broken by name.
        bool found = false;
        std::size_t best = 0;
        double best_score = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == target) continue;
            if (std::find(blanket.begin(), blanket.end(), x) != blanket.end()) continue;
            if (test.test(x, target, conditioning).independent) continue;
            const double score = test.association(x, target, conditioning);
            if (!found || score > best_score ||
                (score == best_score && test.variable_name(x) < test.variable_name(best))) {
                found = true;
                best = x;
                best_score = score;
            }
        }
        if (!found) break;
        blanket.push_back(best);

        // Interleaved shrink: one pass in insertion order; removals take
        // effect for the remaining tests of the pass.
        for (std::size_t i = 0; i < blanket.size();) {
            std::vector<std::size_t> rest;
            rest.reserve(blanket.size() - 1);
            for (std::size_t j = 0; j < blanket.size(); ++j)
                if (j != i) rest.push_back(blanket[j]);
            if (test.test(blanket[i], target, sorted_indices(rest)).independent)
                blanket.erase(blanket.begin() + static_cast<std::ptrdiff_t>(i));
            else
                ++i;
        }

        // Cycle guard: identical blanket state seen before means the
        // grow/shrink pair is oscillating; stop with the current estimate.
        if (!seen_states.insert(sorted_indices(blanket)).second) break;
    }

    std::set<std::string> names;
    for (std::size_t i : blanket) names.insert(test.variable_name(i));
    return names;
}

}  // namespace

std::set<std::string> markov_blanket_interiamb(const CiTest& test, std::size_t target) {
    if (target >= test.variable_count())
        throw std::out_of_range("markov_blanket_interiamb: target index out of range");
    return grow_shrink_blanket(test, target);
}

std::set<std::string> markov_blanket_interiamb(const Dataset& d, const std::string& target,
                                               const PcConfig& cfg) {
    GSquareTest test(d, cfg.alpha);
    return markov_blanket_interiamb(test, d.index_of(target));
}

MbMap symmetry_correct(const MbMap& m) {
    MbMap out;
    for (const auto& [var, blanket] : m) {
        std::set<std::string> kept;
        for (const std::string& member : blanket) {
            auto it = m.find(member);
            if (it != m.end() && it->second.count(var)) kept.insert(member);
        }
        out[var] = std::move(kept);
    }
    return out;
}

SkeletonResult neighbors_from_mb(const CiTest& test, const MbMap& m,
                                 const ConstraintSet& constraints,
                                 std::optional<std::size_t> max_condition_size) {
    const std::size_t n = test.variable_count();
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(test.variable_name(i));

    for (const auto& [var, blanket] : m) {
        for (const std::string& member : blanket) {
            auto it = m.find(member);
            if (it == m.end() || !it->second.count(var))
                throw std::invalid_argument("neighbors_from_mb: blanket map is not symmetric");
        }
    }

    SkeletonResult result{Pdag(names), SepsetMap{}};
    auto blanket_minus = [&](const std::string& of, const std::string& without) {
        std::vector<std::string> out;
        auto it = m.find(of);
        if (it == m.end()) return out;
        for (const std::string& member : it->second)
            if (member != without) out.push_back(member);
        return out;  // set iteration: already name-sorted
    };

    // Pairs in lexicographic name order.
    for (const auto& [x_name, blanket] : m) {
        for (const std::string& y_name : blanket) {
            if (y_name <= x_name) continue;
            if (constraints.admissibility(x_name, y_name) == Admissibility::forbidden) {
                result.sepsets.set(x_name, y_name, {});
                continue;
            }
            const std::vector<std::string> side_x = blanket_minus(x_name, y_name);
            const std::vector<std::string> side_y = blanket_minus(y_name, x_name);
            const std::vector<std::string>& side = side_x.size() <= side_y.size() ? side_x
                                                                                  : side_y;
            std::vector<std::size_t> pool;
            pool.reserve(side.size());
            for (const std::string& name : side) pool.push_back(result.skeleton.index_of(name));

            const std::size_t x = result.skeleton.index_of(x_name);
            const std::size_t y = result.skeleton.index_of(y_name);
            const std::size_t cap = max_condition_size
                                        ? std::min(*max_condition_size, pool.size())
                                        : pool.size();
            bool separated = false;
            std::vector<std::size_t> subset;
            std::function<bool(std::size_t, std::size_t)> search =
                [&](std::size_t start, std::size_t remaining) -> bool {
                if (remaining == 0) {
                    if (!test.test(x, y, subset).independent) return false;
                    std::vector<std::string> sep;
                    for (std::size_t s : subset) sep.push_back(names[s]);
                    result.sepsets.set(x_name, y_name, std::move(sep));
                    return true;
                }
                for (std::size_t i = start; i + remaining <= pool.size(); ++i) {
                    subset.push_back(pool[i]);
                    if (search(i + 1, remaining - 1)) return true;
                    subset.pop_back();
                }
                return false;
            };
            for (std::size_t size = 0; size <= cap && !separated; ++size)
                separated = search(0, size);
            if (!separated) result.skeleton.add_undirected(x, y);
        }
    }
    return result;
}

SkeletonResult neighbors_from_mb(const Dataset& d, const MbMap& m, const PcConfig& cfg,
                                 const ConstraintSet& constraints) {
    GSquareTest test(d, cfg.alpha);
    return neighbors_from_mb(test, m, constraints, cfg.max_condition_size);
}

Pdag inter_iamb(const CiTest& test, const ConstraintSet& constraints,
                std::optional<std::size_t> max_condition_size, OrientationLog* log) {
    if (test.variable_count() < 2)
        throw std::invalid_argument("inter_iamb: need at least 2 variables");
    MbMap blankets;
    for (std::size_t i = 0; i < test.variable_count(); ++i)
        blankets[test.variable_name(i)] = markov_blanket_interiamb(test, i);
    const MbMap symmetric = symmetry_correct(blankets);
    SkeletonResult sk = neighbors_from_mb(test, symmetric, constraints, max_condition_size);
    Pdag g = orient_v_structures(sk.skeleton, sk.sepsets, constraints, log);
    g = apply_forced_orientations(std::move(g), constraints, log);
    return apply_meek_rules(std::move(g), constraints, log);
}

Pdag inter_iamb(const Dataset& d, const PcConfig& cfg, const ConstraintSet& constraints,
                OrientationLog* log) {
    GSquareTest test(d, cfg.alpha);
    return inter_iamb(test, constraints, cfg.max_condition_size, log);
}

}  // namespace bnsl
