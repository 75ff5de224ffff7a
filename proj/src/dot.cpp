#include "bnsl/dot.hpp"

#include <sstream>

namespace bnsl {

namespace {

std::string quote(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

const char* band_style(ConfidenceBand band) {
    switch (band) {
        case ConfidenceBand::high: return "solid";
        case ConfidenceBand::medium: return "dashed";
        default: return "dotted";
    }
}

}  // namespace

std::string to_dot(const Pdag& g, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << quote(graph_name) << " {\n";
    for (const std::string& node : g.nodes()) out << "  " << quote(node) << ";\n";
    for (const auto& [from, to] : g.directed_edges())
        out << "  " << quote(from) << " -> " << quote(to) << ";\n";
    for (const auto& [a, b] : g.undirected_edges())
        out << "  " << quote(a) << " -> " << quote(b) << " [dir=none];\n";
    out << "}\n";
    return out.str();
}

std::string to_dot(const DisplayGraph& display, const std::string& graph_name) {
    const Pdag& g = display.graph;
    auto style_of = [&](const std::string& a, const std::string& b) {
        auto it = display.bands.find({std::min(a, b), std::max(a, b)});
        return band_style(it == display.bands.end() ? ConfidenceBand::low : it->second);
    };
    std::ostringstream out;
    out << "digraph " << quote(graph_name) << " {\n";
    for (const std::string& node : g.nodes()) out << "  " << quote(node) << ";\n";
    for (const auto& [from, to] : g.directed_edges())
        out << "  " << quote(from) << " -> " << quote(to) << " [style=" << style_of(from, to)
            << "];\n";
    for (const auto& [a, b] : g.undirected_edges())
        out << "  " << quote(a) << " -> " << quote(b) << " [dir=none, style=" << style_of(a, b)
            << "];\n";
    out << "}\n";
    return out.str();
}

}  // namespace bnsl
