#ifndef BNSL_INTER_IAMB_HPP
#define BNSL_INTER_IAMB_HPP

#include <map>
#include <set>
#include <string>

#include "bnsl/pc_stable.hpp"

namespace bnsl {

/// Estimated Markov blanket per variable. Symmetric after symmetry_correct:
/// X in MB(Y) iff Y in MB(X).
using MbMap = std::map<std::string, std::set<std::string>>;

/// Interleaved grow/shrink blanket discovery for one target. The grow step
/// adds, among the candidates still dependent on the target given the current
/// blanket, the one with the largest conditional mutual information (ties by
/// name); each addition is followed immediately by a shrink pass that drops
/// members rendered independent, scanned in insertion order. Stops when no
/// addition occurs.
std::set<std::string> markov_blanket_interiamb(const CiTest& test, std::size_t target);
std::set<std::string> markov_blanket_interiamb(const Dataset& d, const std::string& target,
                                               const PcConfig& cfg);

/// AND-rule repair: X stays in MB(Y) only if Y is in MB(X).
MbMap symmetry_correct(const MbMap& m);

/// Neighbor identification: each symmetric blanket pair keeps its edge unless
/// some subset of the smaller of MB(X)\{Y} and MB(Y)\{X} separates it
/// (subsets in size-then-lexicographic order; the first separator is
/// recorded). Forbidden pairs are skipped outright with an empty sepset.
SkeletonResult neighbors_from_mb(const CiTest& test, const MbMap& m,
                                 const ConstraintSet& constraints,
                                 std::optional<std::size_t> max_condition_size = {});
SkeletonResult neighbors_from_mb(const Dataset& d, const MbMap& m, const PcConfig& cfg,
                                 const ConstraintSet& constraints);

/// Full learner: blankets for every variable, symmetry correction, neighbor
/// identification, then the shared orientation pipeline.
Pdag inter_iamb(const CiTest& test, const ConstraintSet& constraints,
                std::optional<std::size_t> max_condition_size = {},
                OrientationLog* log = nullptr);
Pdag inter_iamb(const Dataset& d, const PcConfig& cfg, const ConstraintSet& constraints,
                OrientationLog* log = nullptr);

}  // namespace bnsl

#endif
