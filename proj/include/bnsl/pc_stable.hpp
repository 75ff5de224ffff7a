#ifndef BNSL_PC_STABLE_HPP
#define BNSL_PC_STABLE_HPP

#include <optional>

#include "bnsl/constraints.hpp"
#include "bnsl/dataset.hpp"
#include "bnsl/graph.hpp"
#include "bnsl/infotheory.hpp"

namespace bnsl {

struct PcConfig {
    double alpha = 0.05;
    std::optional<std::size_t> max_condition_size;  // unbounded when absent
};

struct SkeletonResult {
    Pdag skeleton;  // fully undirected
    SepsetMap sepsets;
};

/// Level-wise skeleton search with per-level frozen adjacency sets: within a
/// level every conditioning set is drawn from the snapshot taken at level
/// start, so the resulting skeleton does not depend on variable order. For
/// each adjacent ordered pair (X, Y) the size-l subsets of snapshot-adj(X)\{Y}
/// are enumerated in lexicographic index order; the first separating subset
/// deletes the edge and is recorded. Forbidden pairs are excluded up front
/// with an empty-set entry.
SkeletonResult learn_skeleton_pcstable(const CiTest& test, const ConstraintSet& constraints,
                                       std::optional<std::size_t> max_condition_size = {});
SkeletonResult learn_skeleton_pcstable(const Dataset& d, const PcConfig& cfg,
                                       const ConstraintSet& constraints);

/// Full learner: skeleton, v-structure orientation, blacklist-forced
/// orientations, then Meek closure. Undirected remainder is retained.
Pdag pc_stable(const CiTest& test, const ConstraintSet& constraints,
               std::optional<std::size_t> max_condition_size = {},
               OrientationLog* log = nullptr);
Pdag pc_stable(const Dataset& d, const PcConfig& cfg, const ConstraintSet& constraints,
               OrientationLog* log = nullptr);

}  // namespace bnsl

#endif
