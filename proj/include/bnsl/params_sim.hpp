#ifndef BNSL_PARAMS_SIM_HPP
#define BNSL_PARAMS_SIM_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bnsl/dataset.hpp"
#include "bnsl/graph.hpp"

namespace bnsl {

/// Conditional probability table for one node. `table` holds one probability
/// vector over the node's levels per parent configuration; configurations are
/// indexed mixed-radix over `parents` in listed order with the last parent
/// varying fastest.
struct Cpt {
    std::string node;
    std::vector<std::string> parents;
    std::vector<std::vector<double>> table;
};

/// A DAG plus one CPT per node (aligned with the node order). Parent lists in
/// the CPTs match the DAG parent sets; rows sum to 1.
struct BayesianNetwork {
    Dag dag;
    std::vector<Variable> variables;  // names + levels, aligned with dag nodes
    std::vector<Cpt> cpts;

    const Variable& variable_of(const std::string& name) const;
    const Cpt& cpt_of(const std::string& name) const;
};

/// Builds and validates a network from parts; the DAG is derived from the
/// CPT parent lists.
BayesianNetwork make_network(std::vector<Variable> variables, std::vector<Cpt> cpts);

/// Maximum-likelihood CPTs with additive (Laplace) smoothing per cell. With
/// laplace = 0, parent configurations never observed fall back to the uniform
/// distribution.
BayesianNetwork fit_cpts(const Dataset& d, const Dag& g, double laplace = 1.0);

/// Draws n joint samples in topological order, each node from its CPT row
/// given the sampled parents. Deterministic for a fixed seed.
Dataset ancestral_sample(const BayesianNetwork& bn, std::size_t n, std::uint64_t seed);

/// Marginal of one node by full joint enumeration. Errors when the joint
/// state space exceeds 2^20.
std::vector<double> exact_marginal(const BayesianNetwork& bn, const std::string& x);

/// JSON network definition: {"nodes": [{"name", "levels", "parents", "cpt"}]}.
/// CPT rows follow the parent-configuration order documented on Cpt.
BayesianNetwork read_network_json(std::istream& in);
BayesianNetwork read_network_json_file(const std::string& path);
void write_network_json(const BayesianNetwork& bn, std::ostream& out);

namespace benchmarks {

/// a -> b -> c, binary, noisy-copy links.
BayesianNetwork chain();
/// a -> c <- b, binary, asymmetric collider table (marginally dependent arms).
BayesianNetwork collider();
/// Eight binary nodes arranged like a staged survey: two background roots
/// (bg1, bg2), three mediators (md1..md3), two appraisals (ap1, ap2) and one
/// outcome. bg2 and md3 are d-separated from the outcome.
BayesianNetwork tiered();
/// Tier assignment matching tiered(): bg* = 1, md* = 2, ap* = 3.
std::map<std::string, int> tiered_tiers();
/// Name of the outcome variable in tiered().
const std::string& tiered_target();

}  // namespace benchmarks

}  // namespace bnsl

#endif
