#ifndef BNSL_TESTS_SUPPORT_FIXTURES_HPP
#define BNSL_TESTS_SUPPORT_FIXTURES_HPP

#include <vector>

#include "bnsl/averaging.hpp"

namespace bnsl::testsupport {

/// One row of a published edge-frequency table from the two hurricane
/// surveys, with the expected band/reliability labels.
struct FixtureEdge {
    const char* from;
    const char* to;
    double strength;
    double direction;
    ConfidenceBand band;
    bool reliable;
};

const std::vector<FixtureEdge>& harvey_pcstable();
const std::vector<FixtureEdge>& harvey_interiamb();
const std::vector<FixtureEdge>& irma_pcstable();
const std::vector<FixtureEdge>& irma_interiamb();

/// Wraps a fixture table as an AveragedNetwork with the given replicate count.
AveragedNetwork fixture_network(const std::vector<FixtureEdge>& rows,
                                std::size_t replicate_count = 1000);

}  // namespace bnsl::testsupport

#endif
