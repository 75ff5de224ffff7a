#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bnsl/averaging.hpp"
#include "bnsl/dot.hpp"
#include "bnsl/params_sim.hpp"
#include "support/dotcheck.hpp"
#include "support/fixtures.hpp"

using namespace bnsl;
using namespace bnsl::testsupport;

TEST_SUITE("averaging") {

TEST_CASE("a single replicate gives zero-one strengths") {
    const Dataset d = ancestral_sample(benchmarks::chain(), 2000, 601);
    const AveragedNetwork n =
        averaged_network(d, Algorithm::pc_stable, PcConfig{}, ConstraintSet{}, 1, 99);
    for (const EdgeStrength& e : n.edges) {
        CHECK(e.strength == 1.0);
        CHECK((e.direction == 0.0 || e.direction == 0.5 || e.direction == 1.0));
    }
}

TEST_CASE("aggregation reproduces the published frequency/direction semantics") {
    // An edge directed X -> Y in 560 of 1,000 replicates and Y -> X in 440
    // shows up as strength 1.000 with direction 0.560.
    std::vector<Pdag> graphs;
    graphs.reserve(1000);
    for (int i = 0; i < 1000; ++i) {
        Pdag g({"SM_PpLv", "TV_PpLv"});
        if (i < 560) g.add_directed(0, 1);
        else g.add_directed(1, 0);
        graphs.push_back(std::move(g));
    }
    const AveragedNetwork n =
        aggregate_replicates({"SM_PpLv", "TV_PpLv"}, graphs, "fixture", 0);
    REQUIRE(n.edges.size() == 1);
    CHECK(n.edges[0].from == "SM_PpLv");
    CHECK(n.edges[0].to == "TV_PpLv");
    CHECK(n.edges[0].strength == doctest::Approx(1.0));
    CHECK(n.edges[0].direction == doctest::Approx(0.560).epsilon(1e-12));
}

TEST_CASE("undirected occurrences split their orientation mass") {
    std::vector<Pdag> graphs;
    for (int i = 0; i < 4; ++i) {
        Pdag g({"u", "v"});
        if (i == 0) g.add_directed(0, 1);
        else if (i == 1) g.add_undirected(0, 1);
        // two replicates without the edge
        graphs.push_back(std::move(g));
    }
    const AveragedNetwork n = aggregate_replicates({"u", "v"}, graphs, "fixture", 0);
    REQUIRE(n.edges.size() == 1);
    CHECK(n.edges[0].strength == doctest::Approx(0.5));
    CHECK(n.edges[0].direction == doctest::Approx(0.75));  // (1 + 0.5) / 2
}

TEST_CASE("chain averaging separates true and absent edges") {
    const Dataset d = ancestral_sample(benchmarks::chain(), 5000, 610);
    const AveragedNetwork n =
        averaged_network(d, Algorithm::pc_stable, PcConfig{}, ConstraintSet{}, 60, 7);
    auto strength_of = [&](const std::string& a, const std::string& b) {
        for (const EdgeStrength& e : n.edges) {
            if ((e.from == a && e.to == b) || (e.from == b && e.to == a)) return e.strength;
        }
        return 0.0;
    };
    CHECK(strength_of("a", "b") > 0.8);
    CHECK(strength_of("b", "c") > 0.8);
    CHECK(strength_of("a", "c") < 0.3);
}

TEST_CASE("orientation probabilities of each pair sum to one") {
    const Dataset d = ancestral_sample(benchmarks::collider(), 4000, 603);
    std::vector<Pdag> graphs;
    const AveragedNetwork n = averaged_network(d, Algorithm::inter_iamb, PcConfig{},
                                               ConstraintSet{}, 40, 11, 2, &graphs);
    REQUIRE(graphs.size() == 40);
    for (const EdgeStrength& e : n.edges) {
        // recompute both orientation tallies from the replicate structures
        double forward = 0.0, backward = 0.0;
        std::size_t present = 0;
        for (const Pdag& g : graphs) {
            const std::size_t i = g.index_of(e.from), j = g.index_of(e.to);
            if (g.has_directed(i, j)) forward += 1.0;
            else if (g.has_directed(j, i)) backward += 1.0;
            else if (g.has_undirected(i, j)) {
                forward += 0.5;
                backward += 0.5;
            } else {
                continue;
            }
            ++present;
        }
        REQUIRE(present > 0);
        const double p_forward = forward / present;
        const double p_backward = backward / present;
        CHECK(std::fabs(p_forward + p_backward - 1.0) <= 1e-12);
        CHECK(e.direction == doctest::Approx(p_forward).epsilon(1e-12));
        CHECK(e.strength == doctest::Approx(static_cast<double>(present) / 40.0));
        CHECK(e.direction >= 0.5);
    }
}

TEST_CASE("worker count does not change the result") {
    const Dataset d = ancestral_sample(benchmarks::chain(), 3000, 604);
    std::ostringstream one, four;
    write_strength_tsv(
        averaged_network(d, Algorithm::pc_stable, PcConfig{}, ConstraintSet{}, 30, 5, 1), one);
    write_strength_tsv(
        averaged_network(d, Algorithm::pc_stable, PcConfig{}, ConstraintSet{}, 30, 5, 4), four);
    CHECK(one.str() == four.str());
}

TEST_CASE("band boundaries follow the published grouping") {
    CHECK(classify_band(0.997) == ConfidenceBand::high);
    CHECK(classify_band(0.541) == ConfidenceBand::high);
    CHECK(classify_band(0.5) == ConfidenceBand::medium);
    CHECK(classify_band(0.493) == ConfidenceBand::medium);
    CHECK(classify_band(0.418) == ConfidenceBand::medium);
    CHECK(classify_band(0.4) == ConfidenceBand::medium);
    CHECK(classify_band(0.399) == ConfidenceBand::low);
    CHECK(classify_band(0.373) == ConfidenceBand::low);
    CHECK(classify_band(0.3) == ConfidenceBand::low);
    CHECK(classify_band(0.299) == ConfidenceBand::excluded);
}

TEST_CASE("classify_confidence labels every edge including excluded ones") {
    AveragedNetwork n;
    n.nodes = {"p", "q", "r"};
    n.replicate_count = 10;
    n.edges = {{"p", "q", 0.95, 1.0}, {"q", "r", 0.25, 0.8}};
    const auto labeled = classify_confidence(n);
    REQUIRE(labeled.size() == 2);
    CHECK(labeled[0].second == ConfidenceBand::high);
    CHECK(labeled[1].second == ConfidenceBand::excluded);
}

TEST_CASE("direction reliability uses an inclusive 0.6 boundary") {
    CHECK(direction_reliable({"a", "b", 1.0, 0.948}));
    CHECK_FALSE(direction_reliable({"a", "b", 1.0, 0.511}));
    CHECK(direction_reliable({"a", "b", 1.0, 0.6}));
}

TEST_CASE("display graph renders the hurricane fixture like the published figure") {
    const AveragedNetwork n = fixture_network(harvey_pcstable());
    const DisplayGraph display = to_display_graph(n);
    const Pdag& g = display.graph;
    // strong reliable edge: solid arrow
    CHECK(g.has_directed(g.index_of("Eld"), g.index_of("D_Eld")));
    CHECK(display.bands.at({"D_Eld", "Eld"}) == ConfidenceBand::high);
    // low-confidence reliable edge: dotted arrow
    CHECK(g.has_directed(g.index_of("EvcNtc"), g.index_of("Evc")));
    CHECK(display.bands.at({"Evc", "EvcNtc"}) == ConfidenceBand::low);
    // strong edge with unreliable direction: solid line
    CHECK(g.has_undirected(g.index_of("Nbr"), g.index_of("FamFrds")));
    CHECK(display.bands.at({"FamFrds", "Nbr"}) == ConfidenceBand::high);

    const std::string dot = to_dot(display);
    CHECK(dot_well_formed(dot));
    CHECK(dot.find("\"Eld\" -> \"D_Eld\" [style=solid]") != std::string::npos);
    CHECK(dot.find("\"EvcNtc\" -> \"Evc\" [style=dotted]") != std::string::npos);
    CHECK(dot.find("\"FamFrds\" -> \"Nbr\" [dir=none, style=solid]") != std::string::npos);
}

TEST_CASE("display graph drops edges below the strength cutoff") {
    AveragedNetwork n;
    n.nodes = {"p", "q", "r"};
    n.replicate_count = 10;
    n.edges = {{"p", "q", 0.29, 1.0}, {"q", "r", 0.25, 0.9}};
    const DisplayGraph display = to_display_graph(n);
    CHECK(display.graph.edge_count() == 0);

    const AveragedNetwork empty{{"p", "q"}, {}, 10, "pc_stable", 0};
    CHECK(to_display_graph(empty).graph.edge_count() == 0);
}

TEST_CASE("strength TSV round-trips") {
    const AveragedNetwork n = fixture_network(irma_pcstable());
    std::ostringstream out;
    write_strength_tsv(n, out);
    std::istringstream in(out.str());
    const AveragedNetwork reread = read_strength_tsv(in);
    REQUIRE(reread.edges.size() == n.edges.size());
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
        CHECK(reread.edges[i].from == n.edges[i].from);
        CHECK(reread.edges[i].to == n.edges[i].to);
        CHECK(reread.edges[i].strength == doctest::Approx(n.edges[i].strength).epsilon(1e-9));
        CHECK(reread.edges[i].direction == doctest::Approx(n.edges[i].direction).epsilon(1e-9));
    }
}

TEST_CASE("strength TSV parse errors carry line numbers") {
    std::istringstream missing_header("nope\n");
    CHECK_THROWS_AS(read_strength_tsv(missing_header), ParseError);
    std::istringstream bad_row("from\tto\tstrength\tdirection\nx\ty\tnot_a_number\t0.5\n");
    CHECK_THROWS_AS(read_strength_tsv(bad_row), ParseError);
}

}  // TEST_SUITE
