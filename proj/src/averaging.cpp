#include "bnsl/averaging.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace bnsl {

const std::string& algorithm_name(Algorithm a) {
    static const std::string pc = "pc_stable";
    static const std::string iamb = "inter_iamb";
    return a == Algorithm::pc_stable ? pc : iamb;
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "pc_stable") return Algorithm::pc_stable;
    if (name == "inter_iamb") return Algorithm::inter_iamb;
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected pc_stable or inter_iamb)");
}

ConfidenceBand classify_band(double strength) {
    if (strength > 0.5) return ConfidenceBand::high;
    if (strength >= 0.4) return ConfidenceBand::medium;
    if (strength >= 0.3) return ConfidenceBand::low;
    return ConfidenceBand::excluded;
}

const std::string& band_name(ConfidenceBand band) {
    static const std::string names[] = {"high", "medium", "low", "excluded"};
    return names[static_cast<int>(band)];
}

AveragedNetwork averaged_network(const Dataset& d, Algorithm algorithm, const PcConfig& cfg,
                                 const ConstraintSet& constraints, std::size_t replicates,
                                 std::uint64_t master_seed, unsigned jobs,
                                 std::vector<Pdag>* replicate_graphs) {
    if (replicates < 1) throw std::invalid_argument("averaged_network: replicates must be >= 1");

    std::vector<Pdag> graphs(replicates);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= replicates) return;
            try {
                // Replicate indices are 1-based; each resample depends only on
                // (master_seed, index), so scheduling cannot change results.
                const Dataset resample = bootstrap_resample(d, i + 1, master_seed);
                graphs[i] = algorithm == Algorithm::pc_stable
                                ? pc_stable(resample, cfg, constraints)
                                : inter_iamb(resample, cfg, constraints);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const unsigned worker_count =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(replicates)));
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<std::string> nodes;
    nodes.reserve(d.variable_count());
    for (const Variable& v : d.variables()) nodes.push_back(v.name);
    AveragedNetwork out =
        aggregate_replicates(nodes, graphs, algorithm_name(algorithm), master_seed);
    if (replicate_graphs) *replicate_graphs = std::move(graphs);
    return out;
}

AveragedNetwork aggregate_replicates(const std::vector<std::string>& nodes,
                                     const std::vector<Pdag>& graphs,
                                     const std::string& algorithm_tag,
                                     std::uint64_t master_seed) {
    if (graphs.empty())
        throw std::invalid_argument("aggregate_replicates: need at least one replicate");

    // Deterministic reduction in replicate-index order.
    std::map<std::pair<std::string, std::string>, double> tally;  // oriented occurrences
    std::map<std::pair<std::string, std::string>, std::size_t> presence;  // sorted pair
    for (const Pdag& g : graphs) {
        for (const auto& [from, to] : g.directed_edges()) {
            tally[{from, to}] += 1.0;
            ++presence[{std::min(from, to), std::max(from, to)}];
        }
        for (const auto& [a, b] : g.undirected_edges()) {
            tally[{a, b}] += 0.5;
            tally[{b, a}] += 0.5;
            ++presence[{a, b}];
        }
    }

    AveragedNetwork out;
    out.nodes = nodes;
    out.replicate_count = graphs.size();
    out.algorithm = algorithm_tag;
    out.master_seed = master_seed;
    for (const auto& [pair, count] : presence) {
        const auto& [a, b] = pair;
        const auto forward_it = tally.find({a, b});
        const auto backward_it = tally.find({b, a});
        const double forward = forward_it == tally.end() ? 0.0 : forward_it->second;
        const double backward = backward_it == tally.end() ? 0.0 : backward_it->second;
        EdgeStrength e;
        e.strength = static_cast<double>(count) / static_cast<double>(graphs.size());
        if (backward > forward) {
            e.from = b;
            e.to = a;
            e.direction = backward / static_cast<double>(count);
        } else {
            e.from = a;
            e.to = b;
            e.direction = forward / static_cast<double>(count);
        }
        out.edges.push_back(std::move(e));
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const EdgeStrength& x, const EdgeStrength& y) {
                  if (x.strength != y.strength) return x.strength > y.strength;
                  return std::tie(x.from, x.to) < std::tie(y.from, y.to);
              });
    return out;
}

std::vector<std::pair<EdgeStrength, ConfidenceBand>> classify_confidence(
    const AveragedNetwork& n) {
    std::vector<std::pair<EdgeStrength, ConfidenceBand>> out;
    out.reserve(n.edges.size());
    for (const EdgeStrength& e : n.edges) out.emplace_back(e, classify_band(e.strength));
    return out;
}

bool direction_reliable(const EdgeStrength& e, double direction_cutoff) {
    return e.direction >= direction_cutoff;
}

DisplayGraph to_display_graph(const AveragedNetwork& n, double strength_cutoff,
                              double direction_cutoff) {
    DisplayGraph display{Pdag(n.nodes), {}};
    for (const EdgeStrength& e : n.edges) {
        if (e.strength < strength_cutoff) continue;
        const std::size_t from = display.graph.index_of(e.from);
        const std::size_t to = display.graph.index_of(e.to);
        if (direction_reliable(e, direction_cutoff) && !display.graph.directed_path(to, from)) {
            display.graph.add_directed(from, to);
        } else {
            // Unreliable direction, or the majority directions of the listed
            // edges happen to cycle: render as a line.
            display.graph.add_undirected(from, to);
        }
        display.bands[{std::min(e.from, e.to), std::max(e.from, e.to)}] =
            classify_band(e.strength);
    }
    return display;
}

namespace {

std::string format_fraction(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == '\t') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

void write_strength_tsv(const AveragedNetwork& n, std::ostream& out,
                        double direction_cutoff) {
    out << "from\tto\tstrength\tdirection\tband\tdirection_reliable\n";
    for (const EdgeStrength& e : n.edges) {
        out << e.from << '\t' << e.to << '\t' << format_fraction(e.strength) << '\t'
            << format_fraction(e.direction) << '\t' << band_name(classify_band(e.strength))
            << '\t' << (direction_reliable(e, direction_cutoff) ? '1' : '0') << '\n';
    }
}

AveragedNetwork read_strength_tsv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("strength table: empty input", 1);
    const std::vector<std::string> header = split_tabs(line);
    if (header.size() < 4 || header[0] != "from" || header[1] != "to" ||
        header[2] != "strength" || header[3] != "direction")
        throw ParseError("strength table: expected header from/to/strength/direction", 1);

    AveragedNetwork n;
    std::set<std::string> nodes;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_tabs(line);
        if (fields.size() < 4)
            throw ParseError("strength table: line " + std::to_string(line_no) +
                                 ": expected at least 4 fields",
                             line_no);
        EdgeStrength e;
        e.from = fields[0];
        e.to = fields[1];
        try {
            e.strength = std::stod(fields[2]);
            e.direction = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw ParseError("strength table: line " + std::to_string(line_no) +
                                 ": bad number",
                             line_no);
        }
        if (e.from == e.to || e.strength < 0.0 || e.strength > 1.0 || e.direction < 0.0 ||
            e.direction > 1.0)
            throw ParseError("strength table: line " + std::to_string(line_no) +
                                 ": values out of range",
                             line_no);
        if (e.direction < 0.5) {  // normalize to the canonical orientation
            std::swap(e.from, e.to);
            e.direction = 1.0 - e.direction;
        }
        nodes.insert(e.from);
        nodes.insert(e.to);
        n.edges.push_back(std::move(e));
    }
    n.nodes.assign(nodes.begin(), nodes.end());
    std::sort(n.edges.begin(), n.edges.end(), [](const EdgeStrength& x, const EdgeStrength& y) {
        if (x.strength != y.strength) return x.strength > y.strength;
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
    return n;
}

}  // namespace bnsl
