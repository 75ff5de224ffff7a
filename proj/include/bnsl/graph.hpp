#ifndef BNSL_GRAPH_HPP
#define BNSL_GRAPH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnsl/constraints.hpp"

namespace bnsl {

/// Partially directed graph over a fixed, ordered node list. At most one mark
/// per pair (directed one way or undirected), no self-loops, and the directed
/// subgraph stays acyclic. Mutating methods enforce these invariants.
class Pdag {
public:
    Pdag() = default;
    explicit Pdag(std::vector<std::string> nodes);
    static Pdag complete_undirected(std::vector<std::string> nodes);

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& node(std::size_t i) const { return nodes_.at(i); }
    std::size_t index_of(const std::string& name) const;

    bool adjacent(std::size_t i, std::size_t j) const;
    bool has_directed(std::size_t from, std::size_t to) const;
    bool has_undirected(std::size_t i, std::size_t j) const;

    void add_undirected(std::size_t i, std::size_t j);
    void add_directed(std::size_t from, std::size_t to);
    void remove_edge(std::size_t i, std::size_t j);
    /// Turns the undirected edge (from, to) into from -> to. Adding a directed
    /// edge that already exists in that direction is a no-op.
    void orient(std::size_t from, std::size_t to);

    std::vector<std::size_t> neighbors(std::size_t i) const;             // any mark
    std::vector<std::size_t> undirected_neighbors(std::size_t i) const;  // lines only
    std::vector<std::size_t> parents(std::size_t i) const;
    std::vector<std::size_t> children(std::size_t i) const;

    std::size_t edge_count() const;
    /// True if a directed path from `from` to `to` exists (length >= 1).
    bool directed_path(std::size_t from, std::size_t to) const;

    std::set<std::pair<std::string, std::string>> directed_edges() const;
    std::set<std::pair<std::string, std::string>> undirected_edges() const;  // sorted pairs

    /// Throws std::logic_error if any structural invariant is violated.
    void check_valid() const;

    bool operator==(const Pdag& other) const = default;

private:
    enum Mark : std::uint8_t { kNone = 0, kArrow = 1, kLine = 2 };
    Mark mark(std::size_t i, std::size_t j) const { return marks_[i * nodes_.size() + j]; }
    void set_mark(std::size_t i, std::size_t j, Mark m) { marks_[i * nodes_.size() + j] = m; }

    std::vector<std::string> nodes_;
    std::vector<Mark> marks_;  // marks_[i*n+j] == kArrow means i -> j
};

/// A Pdag with no undirected edges; construction validates acyclicity.
class Dag {
public:
    Dag() = default;
    explicit Dag(Pdag g);
    Dag(std::vector<std::string> nodes,
        const std::vector<std::pair<std::string, std::string>>& edges);

    const Pdag& pdag() const { return graph_; }
    std::size_t node_count() const { return graph_.node_count(); }
    const std::vector<std::string>& nodes() const { return graph_.nodes(); }
    std::size_t index_of(const std::string& name) const { return graph_.index_of(name); }
    std::vector<std::size_t> parents(std::size_t i) const { return graph_.parents(i); }
    bool has_edge(std::size_t from, std::size_t to) const {
        return graph_.has_directed(from, to);
    }

    /// Node indices in a topological order (parents before children),
    /// deterministic for a given graph.
    std::vector<std::size_t> topological_order() const;

    bool operator==(const Dag& other) const = default;

private:
    Pdag graph_;
};

/// Conditioning sets that certified edge removals, keyed by unordered name
/// pair. A pair has an entry exactly when it is absent from the learned
/// skeleton (forbidden pairs record the empty set).
class SepsetMap {
public:
    void set(const std::string& a, const std::string& b, std::vector<std::string> sepset);
    bool contains(const std::string& a, const std::string& b) const;
    /// nullptr when the pair has no entry.
    const std::vector<std::string>* find(const std::string& a, const std::string& b) const;
    std::size_t size() const { return sepsets_.size(); }

    const std::map<std::pair<std::string, std::string>, std::vector<std::string>>& entries()
        const {
        return sepsets_;
    }

private:
    static std::pair<std::string, std::string> key(const std::string& a, const std::string& b);
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> sepsets_;
};

/// Structured record of orientation steps that were skipped or lost a
/// conflict; never fatal.
struct OrientationEvent {
    enum class Kind {
        vstructure_conflict,     // an arm was already oriented the other way
        vstructure_blacklisted,  // a required arm is blacklisted
        vstructure_cycle,        // orienting the arms would create a cycle
        forced_skipped,          // blacklist-forced direction would cycle
        meek_skipped,            // rule application vetoed by a guard
    };
    Kind kind;
    std::string detail;
};
using OrientationLog = std::vector<OrientationEvent>;

/// Orients every unshielded triple X - Z - Y (X, Y nonadjacent) with
/// Z outside sepset(X, Y) as X -> Z <- Y. Triples are processed in
/// lexicographic (X, Z, Y) node-name order; a triple is skipped whole when a
/// required arm is blacklisted, conflicts with an earlier orientation, or
/// would create a directed cycle (earlier orientations win; all skips are
/// logged). Requires a fully undirected input.
Pdag orient_v_structures(const Pdag& skeleton, const SepsetMap& sepsets,
                         const ConstraintSet& constraints, OrientationLog* log = nullptr);

/// Directs every undirected edge whose reverse is blacklisted, in
/// lexicographic pair order. An application that would create a directed
/// cycle is skipped and logged.
Pdag apply_forced_orientations(Pdag g, const ConstraintSet& constraints,
                               OrientationLog* log = nullptr);

/// Meek rules R1-R4 to fixpoint. Any single application that would create a
/// directed cycle, create a new unshielded collider, or violate the blacklist
/// is skipped. Idempotent.
Pdag apply_meek_rules(Pdag g, const ConstraintSet& constraints, OrientationLog* log = nullptr);

/// The completed PDAG of a DAG: compelled edges directed, reversible edges
/// undirected. Uses the ordered edge-labeling algorithm, independent of the
/// v-structure + Meek route used by the learners.
Pdag cpdag_of(const Dag& d);

/// Structural Hamming distance: missing/extra edges count 1, and a present
/// pair with any orientation mismatch counts 1. Node sets must match.
std::size_t shd(const Pdag& a, const Pdag& b);

}  // namespace bnsl

#endif
