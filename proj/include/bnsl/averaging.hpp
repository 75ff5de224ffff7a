#ifndef BNSL_AVERAGING_HPP
#define BNSL_AVERAGING_HPP

#include <iosfwd>
#include <map>

#include "bnsl/inter_iamb.hpp"
#include "bnsl/pc_stable.hpp"

namespace bnsl {

enum class Algorithm { pc_stable, inter_iamb };
const std::string& algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Per-pair bootstrap summary. (from, to) is the canonical orientation: the
/// one whose direction probability is >= 0.5, ties broken toward the
/// lexicographically smaller source name. `strength` is the fraction of
/// replicates containing the edge in any orientation; `direction` is the
/// probability of the canonical orientation given presence, with undirected
/// occurrences contributing 0.5 to each side.
struct EdgeStrength {
    std::string from, to;
    double strength = 0.0;
    double direction = 0.5;
};

struct AveragedNetwork {
    std::vector<std::string> nodes;
    std::vector<EdgeStrength> edges;  // sorted by strength desc, then from, to
    std::size_t replicate_count = 0;
    std::string algorithm;
    std::uint64_t master_seed = 0;
};

/// Confidence bands over edge strength: high s > 0.5; medium 0.4 <= s <= 0.5;
/// low 0.3 <= s < 0.4; excluded s < 0.3.
enum class ConfidenceBand { high, medium, low, excluded };
ConfidenceBand classify_band(double strength);
const std::string& band_name(ConfidenceBand band);

/// Learns on `replicates` bootstrap resamples and tallies per-edge presence
/// and orientation. The result is a pure function of (dataset, algorithm,
/// config, constraints, replicates, master_seed): replicates may run on any
/// number of worker threads, aggregation is keyed by replicate index. When
/// `replicate_graphs` is given it receives the per-replicate structures in
/// index order.
AveragedNetwork averaged_network(const Dataset& d, Algorithm algorithm, const PcConfig& cfg,
                                 const ConstraintSet& constraints, std::size_t replicates,
                                 std::uint64_t master_seed, unsigned jobs = 1,
                                 std::vector<Pdag>* replicate_graphs = nullptr);

/// The deterministic reduction behind averaged_network: tallies presence and
/// orientation over already-learned replicate structures.
AveragedNetwork aggregate_replicates(const std::vector<std::string>& nodes,
                                     const std::vector<Pdag>& graphs,
                                     const std::string& algorithm_tag,
                                     std::uint64_t master_seed);

/// Every edge labeled with its band; excluded edges are retained and marked.
std::vector<std::pair<EdgeStrength, ConfidenceBand>> classify_confidence(
    const AveragedNetwork& n);

/// True iff the canonical-direction probability reaches the cutoff
/// (boundary inclusive).
bool direction_reliable(const EdgeStrength& e, double direction_cutoff = 0.6);

/// Renderable summary: edges at or above the strength cutoff, drawn directed
/// exactly when the direction is reliable, each carrying its band.
struct DisplayGraph {
    Pdag graph;
    std::map<std::pair<std::string, std::string>, ConfidenceBand> bands;  // sorted name pair
};
DisplayGraph to_display_graph(const AveragedNetwork& n, double strength_cutoff = 0.3,
                              double direction_cutoff = 0.6);

/// Tab-separated table: from, to, strength, direction, band,
/// direction_reliable. Byte-stable for fixed inputs.
void write_strength_tsv(const AveragedNetwork& n, std::ostream& out,
                        double direction_cutoff = 0.6);
AveragedNetwork read_strength_tsv(std::istream& in);

}  // namespace bnsl

#endif
