#include "bnsl/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bnsl/averaging.hpp"
#include "bnsl/config.hpp"
#include "bnsl/dot.hpp"
#include "bnsl/params_sim.hpp"
#include "bnsl/select.hpp"

namespace bnsl::cli {

namespace {

std::string format6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Writes to a file, or to `fallback` when path is "-" or empty.
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
}

Dataset load_and_recode(const PipelineConfig& cfg) {
    if (cfg.input.empty()) throw ConfigError("config: 'input' is required");
    if (cfg.target.empty()) throw ConfigError("config: 'target' is required");
    Dataset d = load_csv_file(cfg.input);
    if (!cfg.recode.level_map.empty() || !cfg.recode.drop_variables.empty())
        d = apply_recode(d, cfg.recode);
    if (!d.has_variable(cfg.target))
        throw ConfigError("config: target '" + cfg.target + "' not present after recode");
    return d;
}

// Restricts to the selected features plus the target, keeping column order.
Dataset restrict_to_selection(const Dataset& d, const PipelineConfig& cfg,
                              std::set<std::string>* selected_out = nullptr) {
    if (cfg.selection_fraction == 0.0) return d;
    std::set<std::string> selected =
        select_features(d, cfg.target, cfg.selection_fraction);
    if (selected_out) *selected_out = selected;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < d.variable_count(); ++i) {
        const std::string& name = d.variable(i).name;
        if (name == cfg.target || selected.count(name)) keep.push_back(i);
    }
    return d.projected(keep);
}

ConstraintSet make_run_constraints(const Dataset& d, const PipelineConfig& cfg) {
    std::map<std::string, int> tiers;
    for (std::size_t i = 0; i < d.variable_count(); ++i) {
        const std::string& name = d.variable(i).name;
        if (name == cfg.target) continue;
        if (cfg.tiers) {
            auto it = cfg.tiers->find(name);
            if (it == cfg.tiers->end())
                throw ConfigError("config: variable '" + name + "' has no tier assignment");
            tiers[name] = it->second;
        } else {
            tiers[name] = 1;
        }
    }
    std::set<std::pair<std::string, std::string>> extra;
    for (const auto& [from, to] : cfg.extra_blacklist) {
        if (d.has_variable(from) && d.has_variable(to)) extra.insert({from, to});
    }
    return build_constraints(tiers, cfg.target, extra);
}

int cmd_select(const PipelineConfig& cfg, const std::string& out_path, std::ostream& out) {
    const Dataset d = load_and_recode(cfg);
    const double cutoff =
        cfg.selection_fraction * entropy(d, d.index_of(cfg.target));
    std::ostringstream text;
    text << "variable\tmi_nats\tfraction\tselected\n";
    for (const RankedFeature& f : rank_features(d, cfg.target)) {
        const bool selected = cfg.selection_fraction == 0.0 || f.mi > cutoff;
        text << f.variable << '\t' << format6(f.mi) << '\t'
             << format6(f.fraction_of_target_entropy) << '\t' << (selected ? '1' : '0')
             << '\n';
    }
    emit(out_path, out, text.str());
    return 0;
}

int cmd_learn(const PipelineConfig& cfg, const std::string& out_path,
              const std::string& dot_path, std::ostream& out) {
    Dataset d = load_and_recode(cfg);
    d = restrict_to_selection(d, cfg);

    Pdag g;
    if (d.variable_count() < 2) {
        // Selection kept the target alone: a graph with that single node.
        g = Pdag({cfg.target});
    } else {
        const ConstraintSet constraints = make_run_constraints(d, cfg);
        const PcConfig pc{cfg.alpha, cfg.max_condition_size};
        g = cfg.algorithm == Algorithm::pc_stable ? pc_stable(d, pc, constraints)
                                                  : inter_iamb(d, pc, constraints);
    }

    std::ostringstream text;
    text << "from\tto\tkind\n";
    for (const auto& [from, to] : g.directed_edges())
        text << from << '\t' << to << "\tdirected\n";
    for (const auto& [a, b] : g.undirected_edges()) text << a << '\t' << b << "\tundirected\n";
    emit(out_path, out, text.str());
    if (!dot_path.empty()) emit(dot_path, out, to_dot(g));
    return 0;
}

int cmd_average(const PipelineConfig& cfg, const std::string& out_path,
                const std::string& dot_path, std::ostream& out) {
    Dataset d = load_and_recode(cfg);
    d = restrict_to_selection(d, cfg);
    if (d.variable_count() < 2)
        throw ConfigError("average: selection left fewer than 2 variables");

    const ConstraintSet constraints = make_run_constraints(d, cfg);
    const PcConfig pc{cfg.alpha, cfg.max_condition_size};
    const AveragedNetwork n = averaged_network(d, cfg.algorithm, pc, constraints,
                                               cfg.replicates, cfg.master_seed, cfg.jobs);
    std::ostringstream text;
    write_strength_tsv(n, text, cfg.direction_cutoff);
    emit(out_path, out, text.str());
    if (!dot_path.empty()) {
        const DisplayGraph display =
            to_display_graph(n, cfg.strength_cutoff, cfg.direction_cutoff);
        emit(dot_path, out, to_dot(display));
    }
    return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, double strength_cutoff,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
    auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        return read_strength_tsv(in);
    };
    const AveragedNetwork a = read(path_a);
    const AveragedNetwork b = read(path_b);

    std::set<std::string> shared_vars;
    {
        const std::set<std::string> vars_a(a.nodes.begin(), a.nodes.end());
        for (const std::string& v : b.nodes)
            if (vars_a.count(v)) shared_vars.insert(v);
    }
    if (shared_vars.empty()) err << "warning: the two runs share no variables\n";

    using PairKey = std::pair<std::string, std::string>;
    auto collect = [&](const AveragedNetwork& n) {
        std::map<PairKey, EdgeStrength> edges;
        for (const EdgeStrength& e : n.edges) {
            if (e.strength < strength_cutoff) continue;
            if (!shared_vars.count(e.from) || !shared_vars.count(e.to)) continue;
            edges[{std::min(e.from, e.to), std::max(e.from, e.to)}] = e;
        }
        return edges;
    };
    const std::map<PairKey, EdgeStrength> edges_a = collect(a);
    const std::map<PairKey, EdgeStrength> edges_b = collect(b);

    std::ostringstream text;
    std::size_t shared = 0;
    for (const auto& [pair, e] : edges_a) shared += edges_b.count(pair);

    text << "# shared\t" << shared << '\n';
    text << "from\tto\tstrength_a\tdirection_a\tstrength_b\tdirection_b\n";
    for (const auto& [pair, ea] : edges_a) {
        auto it = edges_b.find(pair);
        if (it == edges_b.end()) continue;
        const EdgeStrength& eb = it->second;
        // Annotate in side A's canonical orientation.
        const bool flipped = eb.from != ea.from;
        text << ea.from << '\t' << ea.to << '\t' << format6(ea.strength) << '\t'
             << format6(ea.direction) << '\t' << format6(eb.strength) << '\t'
             << format6(flipped ? 1.0 - eb.direction : eb.direction) << '\n';
    }
    auto only_section = [&](const char* title, const std::map<PairKey, EdgeStrength>& mine,
                            const std::map<PairKey, EdgeStrength>& theirs) {
        std::size_t count = 0;
        for (const auto& [pair, e] : mine) count += theirs.count(pair) == 0;
        text << "# " << title << '\t' << count << '\n';
        text << "from\tto\tstrength\tdirection\n";
        for (const auto& [pair, e] : mine) {
            if (theirs.count(pair)) continue;
            text << e.from << '\t' << e.to << '\t' << format6(e.strength) << '\t'
                 << format6(e.direction) << '\n';
        }
    };
    only_section("a_only", edges_a, edges_b);
    only_section("b_only", edges_b, edges_a);
    emit(out_path, out, text.str());
    return 0;
}

int cmd_simulate(const std::string& network_path, std::size_t n, std::uint64_t seed,
                 const std::string& out_path, std::ostream& out) {
    const BayesianNetwork bn = read_network_json_file(network_path);
    const Dataset d = ancestral_sample(bn, n, seed);
    std::ostringstream text;
    d.write_csv(text);
    emit(out_path, out, text.str());
    return 0;
}

void apply_overrides(PipelineConfig& cfg, const CLI::App* sub) {
    auto has = [&](const std::string& name) { return sub->count(name) > 0; };
    if (has("--input")) cfg.input = sub->get_option("--input")->as<std::string>();
    if (has("--target")) cfg.target = sub->get_option("--target")->as<std::string>();
    if (has("--algorithm"))
        cfg.algorithm = parse_algorithm(sub->get_option("--algorithm")->as<std::string>());
    if (has("--alpha")) cfg.alpha = sub->get_option("--alpha")->as<double>();
    if (has("--max-condition-size"))
        cfg.max_condition_size = sub->get_option("--max-condition-size")->as<std::size_t>();
    if (has("--replicates")) cfg.replicates = sub->get_option("--replicates")->as<std::size_t>();
    if (has("--seed")) cfg.master_seed = sub->get_option("--seed")->as<std::uint64_t>();
    if (has("--jobs")) cfg.jobs = sub->get_option("--jobs")->as<unsigned>();
    if (has("--selection-fraction"))
        cfg.selection_fraction = sub->get_option("--selection-fraction")->as<double>();
    if (has("--strength-cutoff"))
        cfg.strength_cutoff = sub->get_option("--strength-cutoff")->as<double>();
    if (has("--direction-cutoff"))
        cfg.direction_cutoff = sub->get_option("--direction-cutoff")->as<double>();
}

void add_pipeline_options(CLI::App* sub, std::string& config_path) {
    sub->add_option("--config", config_path, "pipeline config (JSON)")->required();
    sub->add_option("--input", "CSV input path (overrides config)");
    sub->add_option("--target", "target variable (overrides config)");
    sub->add_option("--algorithm", "pc_stable or inter_iamb");
    sub->add_option("--alpha", "CI-test significance level");
    sub->add_option("--max-condition-size", "cap on conditioning-set size");
    sub->add_option("--replicates", "bootstrap replicate count");
    sub->add_option("--seed", "master seed");
    sub->add_option("--jobs", "worker threads for averaging");
    sub->add_option("--selection-fraction", "MI selection threshold (0 keeps all)");
    sub->add_option("--strength-cutoff", "display cutoff on edge strength");
    sub->add_option("--direction-cutoff", "direction-reliability cutoff");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"discrete Bayesian-network structure discovery"};
    app.name("bnsl");
    app.require_subcommand(1);

    std::string config_select, config_learn, config_average;
    std::string network_path, compare_a, compare_b;
    std::string out_select = "-", out_learn = "-", out_average = "-", out_compare = "-",
                out_simulate = "-";
    std::string dot_learn, dot_average;
    double compare_cutoff = 0.3;
    std::size_t sim_n = 1000;
    std::uint64_t sim_seed = 1;

    CLI::App* sel = app.add_subcommand("select", "rank features by MI against the target");
    add_pipeline_options(sel, config_select);
    sel->add_option("--out", out_select, "output TSV path ('-' = stdout)");

    CLI::App* learn = app.add_subcommand("learn", "single-shot structure learning");
    add_pipeline_options(learn, config_learn);
    learn->add_option("--out", out_learn, "edge list TSV path");
    learn->add_option("--dot-out", dot_learn, "DOT output path");

    CLI::App* average = app.add_subcommand("average", "bootstrap model averaging");
    add_pipeline_options(average, config_average);
    average->add_option("--out", out_average, "strength TSV path");
    average->add_option("--dot-out", dot_average, "banded DOT output path");

    CLI::App* compare = app.add_subcommand("compare", "diff two strength tables");
    compare->add_option("table_a", compare_a, "first strength TSV")->required();
    compare->add_option("table_b", compare_b, "second strength TSV")->required();
    compare->add_option("--strength-cutoff", compare_cutoff, "inclusion cutoff");
    compare->add_option("--out", out_compare, "report path");

    CLI::App* simulate = app.add_subcommand("simulate", "sample a network definition to CSV");
    simulate->add_option("--network", network_path, "network definition (JSON)")->required();
    simulate->add_option("--n", sim_n, "number of rows");
    simulate->add_option("--seed", sim_seed, "sampling seed");
    simulate->add_option("--out", out_simulate, "CSV output path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sel->parsed()) {
            PipelineConfig cfg = load_pipeline_config(config_select);
            apply_overrides(cfg, sel);
            return cmd_select(cfg, out_select, out);
        }
        if (learn->parsed()) {
            PipelineConfig cfg = load_pipeline_config(config_learn);
            apply_overrides(cfg, learn);
            return cmd_learn(cfg, out_learn, dot_learn, out);
        }
        if (average->parsed()) {
            PipelineConfig cfg = load_pipeline_config(config_average);
            apply_overrides(cfg, average);
            return cmd_average(cfg, out_average, dot_average, out);
        }
        if (compare->parsed())
            return cmd_compare(compare_a, compare_b, compare_cutoff, out_compare, out, err);
        if (simulate->parsed()) return cmd_simulate(network_path, sim_n, sim_seed, out_simulate, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace bnsl::cli
