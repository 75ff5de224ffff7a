#include "bnsl/params_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "bnsl/rng.hpp"

namespace bnsl {

namespace {

constexpr std::size_t kMaxJointStates = std::size_t{1} << 20;
constexpr double kRowSumTolerance = 1e-6;

std::size_t parent_config_count(const BayesianNetwork& bn, const Cpt& cpt) {
    std::size_t count = 1;
    for (const std::string& p : cpt.parents) count *= bn.variable_of(p).arity();
    return count;
}

void validate_network(const BayesianNetwork& bn) {
    for (std::size_t i = 0; i < bn.dag.node_count(); ++i) {
        const Variable& v = bn.variables.at(i);
        const Cpt& cpt = bn.cpts.at(i);
        if (v.name != bn.dag.nodes()[i] || cpt.node != v.name)
            throw std::invalid_argument("network: node order mismatch at '" + v.name + "'");
        if (v.arity() < 2)
            throw std::invalid_argument("network: node '" + v.name + "' has arity < 2");
        // CPT parent list must equal the DAG parent set.
        std::set<std::string> dag_parents;
        for (std::size_t p : bn.dag.parents(i)) dag_parents.insert(bn.dag.nodes()[p]);
        std::set<std::string> cpt_parents(cpt.parents.begin(), cpt.parents.end());
        if (dag_parents != cpt_parents || cpt_parents.size() != cpt.parents.size())
            throw std::invalid_argument("network: parent mismatch at '" + v.name + "'");
        const std::size_t configs = parent_config_count(bn, cpt);
        if (cpt.table.size() != configs)
            throw std::invalid_argument("network: '" + v.name + "' expects " +
                                        std::to_string(configs) + " CPT rows, got " +
                                        std::to_string(cpt.table.size()));
        for (const auto& row : cpt.table) {
            if (row.size() != v.arity())
                throw std::invalid_argument("network: CPT row width mismatch at '" + v.name +
                                            "'");
            double sum = 0.0;
            for (double p : row) {
                if (p < 0.0) throw std::invalid_argument("network: negative probability at '" +
                                                         v.name + "'");
                sum += p;
            }
            if (std::fabs(sum - 1.0) > kRowSumTolerance)
                throw std::invalid_argument("network: CPT row of '" + v.name +
                                            "' sums to " + std::to_string(sum));
        }
    }
}

std::size_t config_index(const BayesianNetwork& bn, const Cpt& cpt,
                         const std::vector<std::size_t>& node_index,
                         const std::vector<std::uint8_t>& state) {
    std::size_t idx = 0;
    for (const std::string& p : cpt.parents) {
        const std::size_t pi = bn.dag.index_of(p);
        idx = idx * bn.variables[pi].arity() + state[node_index[pi]];
    }
    return idx;
}

}  // namespace

const Variable& BayesianNetwork::variable_of(const std::string& name) const {
    return variables.at(dag.index_of(name));
}

const Cpt& BayesianNetwork::cpt_of(const std::string& name) const {
    return cpts.at(dag.index_of(name));
}

BayesianNetwork make_network(std::vector<Variable> variables, std::vector<Cpt> cpts) {
    if (variables.size() != cpts.size())
        throw std::invalid_argument("make_network: variable/CPT count mismatch");
    std::vector<std::string> names;
    names.reserve(variables.size());
    for (const Variable& v : variables) names.push_back(v.name);
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Cpt& cpt : cpts)
        for (const std::string& p : cpt.parents) edges.push_back({p, cpt.node});

    BayesianNetwork bn;
    bn.dag = Dag(names, edges);  // throws on cycles or unknown names
    bn.variables = std::move(variables);
    bn.cpts = std::move(cpts);
    validate_network(bn);
    return bn;
}

BayesianNetwork fit_cpts(const Dataset& d, const Dag& g, double laplace) {
    if (laplace < 0.0) throw std::invalid_argument("fit_cpts: laplace must be >= 0");
    std::vector<Variable> variables;
    std::vector<Cpt> cpts;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const std::string& name = g.nodes()[i];
        const std::size_t col = d.index_of(name);
        const Variable& v = d.variable(col);
        variables.push_back(v);

        Cpt cpt;
        cpt.node = name;
        for (std::size_t p : g.parents(i)) cpt.parents.push_back(g.nodes()[p]);

        std::size_t configs = 1;
        std::vector<std::size_t> parent_cols;
        std::vector<std::size_t> parent_arity;
        for (const std::string& p : cpt.parents) {
            const std::size_t pc = d.index_of(p);
            parent_cols.push_back(pc);
            parent_arity.push_back(d.variable(pc).arity());
            configs *= d.variable(pc).arity();
        }

        std::vector<std::vector<double>> table(configs,
                                               std::vector<double>(v.arity(), laplace));
        std::vector<double> row_total(configs, laplace * static_cast<double>(v.arity()));
        for (std::size_t r = 0; r < d.row_count(); ++r) {
            std::size_t idx = 0;
            for (std::size_t k = 0; k < parent_cols.size(); ++k)
                idx = idx * parent_arity[k] + d.value(r, parent_cols[k]);
            table[idx][d.value(r, col)] += 1.0;
            row_total[idx] += 1.0;
        }
        for (std::size_t c = 0; c < configs; ++c) {
            if (row_total[c] <= 0.0) {
                // laplace == 0 and configuration never observed: uniform fallback
                std::fill(table[c].begin(), table[c].end(), 1.0 / v.arity());
            } else {
                for (double& cell : table[c]) cell /= row_total[c];
            }
        }
        cpt.table = std::move(table);
        cpts.push_back(std::move(cpt));
    }
    return make_network(std::move(variables), std::move(cpts));
}

Dataset ancestral_sample(const BayesianNetwork& bn, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("ancestral_sample: n must be >= 1");
    const std::size_t v = bn.dag.node_count();
    const std::vector<std::size_t> topo = bn.dag.topological_order();
    std::vector<std::size_t> node_index(v);
    for (std::size_t i = 0; i < v; ++i) node_index[i] = i;  // state indexed by node id

    Rng rng(seed);
    std::vector<std::vector<std::uint8_t>> columns(v);
    for (auto& col : columns) col.reserve(n);
    std::vector<std::uint8_t> state(v, 0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t node : topo) {
            const Cpt& cpt = bn.cpts[node];
            const std::vector<double>& row =
                cpt.table[config_index(bn, cpt, node_index, state)];
            const double u = rng.next_unit();
            double cdf = 0.0;
            std::uint8_t level = static_cast<std::uint8_t>(row.size() - 1);
            for (std::size_t l = 0; l < row.size(); ++l) {
                cdf += row[l];
                if (u < cdf) {
                    level = static_cast<std::uint8_t>(l);
                    break;
                }
            }
            state[node] = level;
        }
        for (std::size_t c = 0; c < v; ++c) columns[c].push_back(state[c]);
    }
    return Dataset(bn.variables, std::move(columns), 0);
}

std::vector<double> exact_marginal(const BayesianNetwork& bn, const std::string& x) {
    const std::size_t v = bn.dag.node_count();
    const std::size_t xi = bn.dag.index_of(x);
    std::size_t states = 1;
    for (const Variable& var : bn.variables) {
        if (states > kMaxJointStates / var.arity())
            throw std::length_error("exact_marginal: joint state space exceeds 2^20");
        states *= var.arity();
    }

    std::vector<std::size_t> node_index(v);
    for (std::size_t i = 0; i < v; ++i) node_index[i] = i;
    std::vector<double> marginal(bn.variables[xi].arity(), 0.0);
    std::vector<std::uint8_t> state(v, 0);
    for (std::size_t s = 0; s < states; ++s) {
        std::size_t rest = s;
        for (std::size_t i = v; i-- > 0;) {
            state[i] = static_cast<std::uint8_t>(rest % bn.variables[i].arity());
            rest /= bn.variables[i].arity();
        }
        double p = 1.0;
        for (std::size_t node = 0; node < v && p > 0.0; ++node) {
            const Cpt& cpt = bn.cpts[node];
            p *= cpt.table[config_index(bn, cpt, node_index, state)][state[node]];
        }
        marginal[state[xi]] += p;
    }
    return marginal;
}

BayesianNetwork read_network_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("network file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw ParseError("network file: expected an object with a 'nodes' array");

    std::vector<Variable> variables;
    std::vector<Cpt> cpts;
    for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
        const auto& node = doc["nodes"][i];
        const std::string where = "nodes[" + std::to_string(i) + "]";
        if (!node.is_object() || !node.contains("name") || !node.contains("levels") ||
            !node.contains("cpt"))
            throw ParseError("network file: " + where + " needs 'name', 'levels' and 'cpt'");
        Variable v;
        v.name = node["name"].get<std::string>();
        for (const auto& level : node["levels"]) v.levels.push_back(level.get<std::string>());
        Cpt cpt;
        cpt.node = v.name;
        if (node.contains("parents"))
            for (const auto& p : node["parents"]) cpt.parents.push_back(p.get<std::string>());
        for (const auto& row : node["cpt"]) {
            std::vector<double> probs;
            for (const auto& cell : row) probs.push_back(cell.get<double>());
            cpt.table.push_back(std::move(probs));
        }
        variables.push_back(std::move(v));
        cpts.push_back(std::move(cpt));
    }
    try {
        return make_network(std::move(variables), std::move(cpts));
    } catch (const std::exception& e) {
        throw ParseError(std::string("network file: ") + e.what());
    }
}

BayesianNetwork read_network_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_network_json(in);
}

void write_network_json(const BayesianNetwork& bn, std::ostream& out) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < bn.dag.node_count(); ++i) {
        nlohmann::json node;
        node["name"] = bn.variables[i].name;
        node["levels"] = bn.variables[i].levels;
        node["parents"] = bn.cpts[i].parents;
        node["cpt"] = bn.cpts[i].table;
        nodes.push_back(std::move(node));
    }
    out << nlohmann::json{{"nodes", std::move(nodes)}}.dump(2) << '\n';
}

namespace benchmarks {

namespace {

Variable binary(const std::string& name) { return Variable{name, {"0", "1"}}; }

}  // namespace

BayesianNetwork chain() {
    std::vector<Variable> vars{binary("a"), binary("b"), binary("c")};
    std::vector<Cpt> cpts{
        {"a", {}, {{0.5, 0.5}}},
        {"b", {"a"}, {{0.85, 0.15}, {0.15, 0.85}}},
        {"c", {"b"}, {{0.85, 0.15}, {0.15, 0.85}}},
    };
    return make_network(std::move(vars), std::move(cpts));
}

BayesianNetwork collider() {
    std::vector<Variable> vars{binary("a"), binary("b"), binary("c")};
    std::vector<Cpt> cpts{
        {"a", {}, {{0.5, 0.5}}},
        {"b", {}, {{0.5, 0.5}}},
        // rows: (a,b) = (0,0), (0,1), (1,0), (1,1)
        {"c", {"a", "b"}, {{0.95, 0.05}, {0.60, 0.40}, {0.40, 0.60}, {0.05, 0.95}}},
    };
    return make_network(std::move(vars), std::move(cpts));
}

BayesianNetwork tiered() {
    std::vector<Variable> vars{binary("bg1"), binary("bg2"), binary("md1"), binary("md2"),
                               binary("md3"), binary("ap1"), binary("ap2"), binary("out")};
    std::vector<Cpt> cpts{
        {"bg1", {}, {{0.5, 0.5}}},
        {"bg2", {}, {{0.6, 0.4}}},
        {"md1", {"bg1"}, {{0.85, 0.15}, {0.15, 0.85}}},
        {"md2", {"bg1"}, {{0.80, 0.20}, {0.20, 0.80}}},
        {"md3", {"bg2"}, {{0.82, 0.18}, {0.18, 0.82}}},
        // rows: (md1, md2) = (0,0), (0,1), (1,0), (1,1)
        {"ap1", {"md1", "md2"}, {{0.92, 0.08}, {0.58, 0.42}, {0.42, 0.58}, {0.08, 0.92}}},
        // rows: (md2, md3)
        {"ap2", {"md2", "md3"}, {{0.94, 0.06}, {0.56, 0.44}, {0.44, 0.56}, {0.06, 0.94}}},
        // rows: (ap1, md2)
        {"out", {"ap1", "md2"}, {{0.94, 0.06}, {0.65, 0.35}, {0.35, 0.65}, {0.06, 0.94}}},
    };
    return make_network(std::move(vars), std::move(cpts));
}

std::map<std::string, int> tiered_tiers() {
    return {{"bg1", 1}, {"bg2", 1}, {"md1", 2}, {"md2", 2},
            {"md3", 2}, {"ap1", 3}, {"ap2", 3}};
}

const std::string& tiered_target() {
    static const std::string name = "out";
    return name;
}

}  // namespace benchmarks

}  // namespace bnsl
