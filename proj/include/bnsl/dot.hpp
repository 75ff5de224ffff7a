#ifndef BNSL_DOT_HPP
#define BNSL_DOT_HPP

#include <string>

#include "bnsl/averaging.hpp"
#include "bnsl/graph.hpp"

namespace bnsl {

/// DOT digraph: directed edges as arrows, undirected edges with dir=none.
std::string to_dot(const Pdag& g, const std::string& graph_name = "learned");

/// DOT digraph with band styling: solid for high confidence, dashed for
/// medium, dotted for low, matching the arrow-vs-line choice of the display
/// graph.
std::string to_dot(const DisplayGraph& display, const std::string& graph_name = "averaged");

}  // namespace bnsl

#endif
