#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bnsl/cli.hpp"
#include "bnsl/dataset.hpp"
#include "bnsl/params_sim.hpp"
#include "bnsl/rng.hpp"
#include "support/dotcheck.hpp"
#include "support/fixtures.hpp"

using namespace bnsl;
using namespace bnsl::testsupport;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("bnsl_cli_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_network(const TempDir& dir, const BayesianNetwork& bn,
                          const std::string& name) {
    std::ostringstream text;
    write_network_json(bn, text);
    const std::string path = dir.file(name);
    write_file(path, text.str());
    return path;
}

std::string basic_config(const TempDir& dir, const std::string& csv_path,
                         const std::string& target, const std::string& extra = "") {
    const std::string path = dir.file("config.json");
    write_file(path, "{\"input\": \"" + csv_path + "\", \"target\": \"" + target + "\"" +
                         extra + "}");
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes a loadable CSV deterministically") {
    TempDir dir;
    const std::string net = write_network(dir, benchmarks::chain(), "chain.json");
    const std::string csv = dir.file("rows.csv");

    const RunResult r1 =
        run_cli({"simulate", "--network", net, "--n", "10", "--seed", "3", "--out", csv});
    REQUIRE(r1.code == 0);
    const std::string first = read_file(csv);
    std::istringstream lines(first);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 11);  // header + 10 rows

    const Dataset d = load_csv_file(csv);
    CHECK(d.row_count() == 10);
    CHECK(d.variable_count() == 3);

    const RunResult r2 =
        run_cli({"simulate", "--network", net, "--n", "10", "--seed", "3", "--out", csv});
    REQUIRE(r2.code == 0);
    CHECK(read_file(csv) == first);
}

TEST_CASE("select emits one row per non-target variable") {
    TempDir dir;
    const std::string net = write_network(dir, benchmarks::tiered(), "net.json");
    const std::string csv = dir.file("rows.csv");
    REQUIRE(run_cli({"simulate", "--network", net, "--n", "4000", "--seed", "5", "--out", csv})
                .code == 0);
    const std::string cfg = basic_config(dir, csv, "out");

    const RunResult r = run_cli({"select", "--config", cfg});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "variable\tmi_nats\tfraction\tselected");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 7);
}

TEST_CASE("a threshold near one selects nothing") {
    TempDir dir;
    const std::string net = write_network(dir, benchmarks::tiered(), "net.json");
    const std::string csv = dir.file("rows.csv");
    REQUIRE(run_cli({"simulate", "--network", net, "--n", "2000", "--seed", "6", "--out", csv})
                .code == 0);
    const std::string cfg = basic_config(dir, csv, "out");
    const RunResult r =
        run_cli({"select", "--config", cfg, "--selection-fraction", "0.99"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) CHECK(line.back() == '0');
}

TEST_CASE("learn renders the collider as two arrows in DOT") {
    TempDir dir;
    const std::string net = write_network(dir, benchmarks::collider(), "net.json");
    const std::string csv = dir.file("rows.csv");
    REQUIRE(
        run_cli({"simulate", "--network", net, "--n", "50000", "--seed", "7", "--out", csv})
            .code == 0);
    const std::string cfg = basic_config(dir, csv, "c");
    const std::string dot_path = dir.file("graph.dot");

    const RunResult r = run_cli({"learn", "--config", cfg, "--dot-out", dot_path});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("a\tc\tdirected") != std::string::npos);
    CHECK(r.out.find("b\tc\tdirected") != std::string::npos);
    const std::string dot = read_file(dot_path);
    CHECK(dot_well_formed(dot));
    CHECK(dot.find("\"a\" -> \"c\"") != std::string::npos);
    CHECK(dot.find("\"b\" -> \"c\"") != std::string::npos);
}

TEST_CASE("learn with nothing selected leaves a single-node graph") {
    TempDir dir;
    // three mutually independent columns
    std::ostringstream csv_text;
    csv_text << "f1,f2,t\n";
    Rng rng(4111);
    for (int i = 0; i < 500; ++i)
        csv_text << rng.next_below(2) << ',' << rng.next_below(2) << ',' << rng.next_below(2)
                 << '\n';
    const std::string csv = dir.file("rows.csv");
    write_file(csv, csv_text.str());
    const std::string cfg = basic_config(dir, csv, "t", ", \"selection_fraction\": 0.49");
    const std::string dot_path = dir.file("graph.dot");

    const RunResult r = run_cli({"learn", "--config", cfg, "--dot-out", dot_path});
    REQUIRE(r.code == 0);
    CHECK(r.out == "from\tto\tkind\n");
    const std::string dot = read_file(dot_path);
    CHECK(dot_well_formed(dot));
    CHECK(dot.find("\"t\"") != std::string::npos);
    CHECK(dot.find("->") == std::string::npos);
}

TEST_CASE("average is deterministic and its outputs re-parse") {
    TempDir dir;
    const std::string net = write_network(dir, benchmarks::chain(), "net.json");
    const std::string csv = dir.file("rows.csv");
    REQUIRE(
        run_cli({"simulate", "--network", net, "--n", "3000", "--seed", "8", "--out", csv})
            .code == 0);
    const std::string cfg = basic_config(
        dir, csv, "c", ", \"replicates\": 25, \"master_seed\": 99, \"selection_fraction\": 0");
    const std::string tsv1 = dir.file("avg1.tsv");
    const std::string tsv2 = dir.file("avg2.tsv");
    const std::string dot_path = dir.file("avg.dot");

    REQUIRE(run_cli({"average", "--config", cfg, "--out", tsv1, "--dot-out", dot_path}).code ==
            0);
    REQUIRE(run_cli({"average", "--config", cfg, "--out", tsv2, "--jobs", "3"}).code == 0);
    CHECK(read_file(tsv1) == read_file(tsv2));

    std::ifstream parse_back(tsv1);
    const AveragedNetwork reread = read_strength_tsv(parse_back);
    CHECK(!reread.edges.empty());
    CHECK(dot_well_formed(read_file(dot_path)));
}

TEST_CASE("average with a single replicate yields zero-one strengths") {
    TempDir dir;
    const std::string net = write_network(dir, benchmarks::chain(), "net.json");
    const std::string csv = dir.file("rows.csv");
    REQUIRE(
        run_cli({"simulate", "--network", net, "--n", "2000", "--seed", "9", "--out", csv})
            .code == 0);
    const std::string cfg =
        basic_config(dir, csv, "c", ", \"replicates\": 1, \"selection_fraction\": 0");
    const RunResult r = run_cli({"average", "--config", cfg});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        CHECK(line.find("\t1.000000\t") != std::string::npos);
    }
}

TEST_CASE("compare finds the edges shared by the two hurricane tables") {
    TempDir dir;
    const std::string tsv_a = dir.file("a.tsv");
    const std::string tsv_b = dir.file("b.tsv");
    {
        std::ostringstream a, b;
        write_strength_tsv(fixture_network(harvey_pcstable()), a);
        write_strength_tsv(fixture_network(irma_pcstable()), b);
        write_file(tsv_a, a.str());
        write_file(tsv_b, b.str());
    }
    const RunResult r = run_cli({"compare", tsv_a, tsv_b});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("FamFrds\tEvc\t") != std::string::npos);
    CHECK(r.out.find("Nbr\tEvc\t") != std::string::npos);
    CHECK(r.out.find("FamFrds\tRsk\t") != std::string::npos);
    CHECK(r.out.find("CstDst\tEvcNtc\t") != std::string::npos);
    // Eld-D_Eld involves variables absent from the second run
    CHECK(r.out.find("Eld") == std::string::npos);
}

TEST_CASE("compare of identical inputs has empty only-sections") {
    TempDir dir;
    const std::string tsv = dir.file("same.tsv");
    std::ostringstream text;
    write_strength_tsv(fixture_network(harvey_interiamb()), text);
    write_file(tsv, text.str());
    const RunResult r = run_cli({"compare", tsv, tsv});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# a_only\t0\n") != std::string::npos);
    CHECK(r.out.find("# b_only\t0\n") != std::string::npos);
}

TEST_CASE("compare of disjoint variable sets warns and stays empty") {
    TempDir dir;
    const std::string tsv_a = dir.file("a.tsv");
    const std::string tsv_b = dir.file("b.tsv");
    write_file(tsv_a, "from\tto\tstrength\tdirection\nu\tv\t0.9\t1.0\n");
    write_file(tsv_b, "from\tto\tstrength\tdirection\nx\ty\t0.9\t1.0\n");
    const RunResult r = run_cli({"compare", tsv_a, tsv_b});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(r.out.find("# shared\t0\n") != std::string::npos);
    CHECK(r.out.find("# a_only\t0\n") != std::string::npos);
}

TEST_CASE("errors exit with categorized codes") {
    CHECK(run_cli({"learn"}).code == 2);                      // missing required option
    CHECK(run_cli({"nonsense"}).code == 2);                   // unknown subcommand
    CHECK(run_cli({"learn", "--config", "/no/such/file.json"}).code == 1);
    TempDir dir;
    const std::string cfg = dir.file("bad.json");
    write_file(cfg, "{\"unknown_key\": 1}");
    const RunResult r = run_cli({"learn", "--config", cfg});
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown_key") != std::string::npos);
}

}  // TEST_SUITE
