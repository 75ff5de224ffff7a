#include "support/fixtures.hpp"

#include <algorithm>
#include <set>

namespace bnsl::testsupport {

namespace {
constexpr ConfidenceBand kHigh = ConfidenceBand::high;
constexpr ConfidenceBand kMedium = ConfidenceBand::medium;
constexpr ConfidenceBand kLow = ConfidenceBand::low;
}  // namespace

const std::vector<FixtureEdge>& harvey_pcstable() {
    static const std::vector<FixtureEdge> rows = {
        {"Eld", "D_Eld", 1.000, 1.000, kHigh, true},
        {"SM_PpLv", "TV_PpLv", 1.000, 0.560, kHigh, false},
        {"Nbr", "Evc", 0.997, 0.948, kHigh, true},
        {"Nbr", "FamFrds", 0.992, 0.511, kHigh, false},
        {"TV_Prp", "TV_PpLv", 0.983, 0.590, kHigh, false},
        {"FamFrds", "Rsk", 0.726, 0.988, kHigh, true},
        {"FamFrds", "Evc", 0.691, 0.927, kHigh, true},
        {"CstDst", "Evc", 0.649, 1.000, kHigh, true},
        {"TV_Prp", "SM_PpLv", 0.526, 0.589, kHigh, false},
        {"EvcNtc", "Evc", 0.373, 1.000, kLow, true},
        {"CstDst", "EvcNtc", 0.361, 1.000, kLow, true},
        {"FamFrds", "SM_PpLv", 0.314, 0.728, kLow, true},
    };
    return rows;
}

const std::vector<FixtureEdge>& harvey_interiamb() {
    static const std::vector<FixtureEdge> rows = {
        {"Eld", "D_Eld", 1.000, 1.000, kHigh, true},
        {"SM_PpLv", "TV_PpLv", 1.000, 0.504, kHigh, false},
        {"Nbr", "FamFrds", 0.998, 0.529, kHigh, false},
        {"Nbr", "Evc", 0.997, 0.970, kHigh, true},
        {"TV_Prp", "TV_PpLv", 0.991, 0.563, kHigh, false},
        {"FamFrds", "Rsk", 0.805, 0.985, kHigh, true},
        {"TV_Prp", "SM_PpLv", 0.723, 0.521, kHigh, false},
        {"CstDst", "Evc", 0.693, 0.994, kHigh, true},
        {"FamFrds", "Evc", 0.683, 0.964, kHigh, true},
        {"CstDst", "EvcNtc", 0.541, 1.000, kHigh, true},
        {"FamFrds", "SM_PpLv", 0.493, 0.710, kMedium, true},
        {"EvcNtc", "Evc", 0.418, 0.993, kMedium, true},
        {"CstDst", "Edu", 0.384, 0.513, kLow, false},
        {"TV_PpLv", "Rsk", 0.318, 0.987, kLow, true},
        {"EvcNtc", "Nbr", 0.313, 0.685, kLow, true},
        {"Rsk", "D_Chld", 0.302, 0.570, kLow, false},
    };
    return rows;
}

const std::vector<FixtureEdge>& irma_pcstable() {
    static const std::vector<FixtureEdge> rows = {
        {"D_NoPl", "Evc", 0.978, 1.000, kHigh, true},
        {"TV_PpLv", "SM_PpLv", 0.947, 0.542, kHigh, false},
        {"TV_Cas", "TV_PpLv", 0.946, 0.534, kHigh, false},
        {"Nbr", "FamFrds", 0.910, 0.540, kHigh, false},
        {"CstDst", "EvcNtc", 0.876, 0.969, kHigh, true},
        {"FamFrds", "Evc", 0.838, 1.000, kHigh, true},
        {"Rsk", "Evc", 0.826, 1.000, kHigh, true},
        {"EvcNtc", "Evc", 0.665, 1.000, kHigh, true},
        {"TV_Cas", "SM_PpLv", 0.614, 0.643, kHigh, true},
        {"CstDst", "Nbr", 0.531, 0.968, kHigh, true},
        {"Nbr", "Evc", 0.520, 1.000, kHigh, true},
        {"FamFrds", "Rsk", 0.489, 0.994, kMedium, true},
        {"TV_PpLv", "Rsk", 0.485, 0.995, kMedium, true},
        {"FamFrds", "SM_PpLv", 0.463, 0.645, kMedium, true},
        {"EvcNtc", "Nbr", 0.398, 0.597, kLow, false},
        {"CstDst", "Hs_Str", 0.374, 0.503, kLow, false},
        {"Hs_Str", "Evc", 0.351, 1.000, kLow, true},
        {"Hs_Str", "Nbr", 0.303, 0.941, kLow, true},
    };
    return rows;
}

const std::vector<FixtureEdge>& irma_interiamb() {
    static const std::vector<FixtureEdge> rows = {
        {"CstDst", "EvcNtc", 1.000, 0.954, kHigh, true},
        {"TV_PpLv", "SM_PpLv", 1.000, 0.543, kHigh, false},
        {"D_NoPl", "Evc", 0.999, 1.000, kHigh, true},
        {"Rsk", "Evc", 0.998, 1.000, kHigh, true},
        {"FamFrds", "Nbr", 0.994, 0.702, kHigh, true},
        {"TV_Cas", "TV_PpLv", 0.986, 0.532, kHigh, false},
        {"FamFrds", "Evc", 0.961, 1.000, kHigh, true},
        {"TV_PpLv", "Rsk", 0.902, 0.995, kHigh, true},
        {"EvcNtc", "Evc", 0.874, 1.000, kHigh, true},
        {"FamFrds", "Rsk", 0.814, 0.998, kHigh, true},
        {"FamFrds", "SM_PpLv", 0.763, 0.723, kHigh, true},
        {"CstDst", "Nbr", 0.753, 0.994, kHigh, true},
        {"Nbr", "Evc", 0.601, 1.000, kHigh, true},
        {"SM_PpLv", "TV_Cas", 0.535, 0.574, kHigh, false},
        {"Nbr", "EvcNtc", 0.483, 0.647, kMedium, true},
        {"CstDst", "Hs_Str", 0.455, 0.500, kMedium, false},
        {"CstDst", "Rsk", 0.320, 0.997, kLow, true},
        {"Hs_Str", "EvcNtc", 0.311, 0.854, kLow, true},
    };
    return rows;
}

AveragedNetwork fixture_network(const std::vector<FixtureEdge>& rows,
                                std::size_t replicate_count) {
    AveragedNetwork n;
    n.replicate_count = replicate_count;
    n.master_seed = 0;
    n.algorithm = "fixture";
    std::set<std::string> nodes;
    for (const FixtureEdge& row : rows) {
        nodes.insert(row.from);
        nodes.insert(row.to);
        n.edges.push_back({row.from, row.to, row.strength, row.direction});
    }
    n.nodes.assign(nodes.begin(), nodes.end());
    std::sort(n.edges.begin(), n.edges.end(), [](const EdgeStrength& a, const EdgeStrength& b) {
        if (a.strength != b.strength) return a.strength > b.strength;
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return n;
}

}  // namespace bnsl::testsupport
