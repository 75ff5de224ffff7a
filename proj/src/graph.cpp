#include "bnsl/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace bnsl {

Pdag::Pdag(std::vector<std::string> nodes) : nodes_(std::move(nodes)) {
    std::set<std::string> seen;
    for (const std::string& n : nodes_) {
        if (n.empty()) throw std::invalid_argument("Pdag: empty node name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("Pdag: duplicate node name '" + n + "'");
    }
    marks_.assign(nodes_.size() * nodes_.size(), kNone);
}

Pdag Pdag::complete_undirected(std::vector<std::string> nodes) {
    Pdag g(std::move(nodes));
    for (std::size_t i = 0; i < g.node_count(); ++i)
        for (std::size_t j = i + 1; j < g.node_count(); ++j) g.add_undirected(i, j);
    return g;
}

std::size_t Pdag::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i] == name) return i;
    throw std::out_of_range("Pdag: no node named '" + name + "'");
}

bool Pdag::adjacent(std::size_t i, std::size_t j) const {
    return mark(i, j) != kNone || mark(j, i) != kNone;
}

bool Pdag::has_directed(std::size_t from, std::size_t to) const {
    return mark(from, to) == kArrow;
}

bool Pdag::has_undirected(std::size_t i, std::size_t j) const {
    return mark(i, j) == kLine;
}

void Pdag::add_undirected(std::size_t i, std::size_t j) {
    if (i == j) throw std::logic_error("Pdag: self-loop");
    if (has_undirected(i, j)) return;
    if (adjacent(i, j)) throw std::logic_error("Pdag: pair already has a directed mark");
    set_mark(i, j, kLine);
    set_mark(j, i, kLine);
}

void Pdag::add_directed(std::size_t from, std::size_t to) {
    if (from == to) throw std::logic_error("Pdag: self-loop");
    if (has_directed(from, to)) return;
    if (adjacent(from, to)) throw std::logic_error("Pdag: pair already marked");
    if (directed_path(to, from))
        throw std::logic_error("Pdag: edge " + nodes_[from] + " -> " + nodes_[to] +
                               " would create a directed cycle");
    set_mark(from, to, kArrow);
}

void Pdag::remove_edge(std::size_t i, std::size_t j) {
    set_mark(i, j, kNone);
    set_mark(j, i, kNone);
}

void Pdag::orient(std::size_t from, std::size_t to) {
    if (has_directed(from, to)) return;
    if (!has_undirected(from, to))
        throw std::logic_error("Pdag: orient requires an undirected edge");
    if (directed_path(to, from))
        throw std::logic_error("Pdag: orienting " + nodes_[from] + " -> " + nodes_[to] +
                               " would create a directed cycle");
    set_mark(from, to, kArrow);
    set_mark(to, from, kNone);
}

std::vector<std::size_t> Pdag::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (j != i && adjacent(i, j)) out.push_back(j);
    return out;
}

std::vector<std::size_t> Pdag::undirected_neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (has_undirected(i, j)) out.push_back(j);
    return out;
}

std::vector<std::size_t> Pdag::parents(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (has_directed(j, i)) out.push_back(j);
    return out;
}

std::vector<std::size_t> Pdag::children(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (has_directed(i, j)) out.push_back(j);
    return out;
}

std::size_t Pdag::edge_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = i + 1; j < nodes_.size(); ++j)
            if (adjacent(i, j)) ++n;
    return n;
}

bool Pdag::directed_path(std::size_t from, std::size_t to) const {
    if (from == to) return false;
    std::vector<bool> seen(nodes_.size(), false);
    std::deque<std::size_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            if (!has_directed(u, v) || seen[v]) continue;
            if (v == to) return true;
            seen[v] = true;
            queue.push_back(v);
        }
    }
    return false;
}

std::set<std::pair<std::string, std::string>> Pdag::directed_edges() const {
    std::set<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            if (has_directed(i, j)) out.insert({nodes_[i], nodes_[j]});
    return out;
}

std::set<std::pair<std::string, std::string>> Pdag::undirected_edges() const {
    std::set<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = i + 1; j < nodes_.size(); ++j)
            if (has_undirected(i, j))
                out.insert({std::min(nodes_[i], nodes_[j]), std::max(nodes_[i], nodes_[j])});
    return out;
}

void Pdag::check_valid() const {
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (mark(i, i) != kNone) throw std::logic_error("Pdag: self-loop");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (mark(i, j) == kArrow && mark(j, i) != kNone)
                throw std::logic_error("Pdag: conflicting marks on a pair");
            if (mark(i, j) == kLine && mark(j, i) != kLine)
                throw std::logic_error("Pdag: asymmetric undirected mark");
        }
    }
    // Acyclicity of the directed subgraph.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (has_directed(i, j) && directed_path(j, i))
                throw std::logic_error("Pdag: directed cycle");
}

Dag::Dag(Pdag g) : graph_(std::move(g)) {
    graph_.check_valid();
    if (!graph_.undirected_edges().empty())
        throw std::invalid_argument("Dag: undirected edges present");
}

Dag::Dag(std::vector<std::string> nodes,
         const std::vector<std::pair<std::string, std::string>>& edges) {
    Pdag g(std::move(nodes));
    for (const auto& [from, to] : edges) g.add_directed(g.index_of(from), g.index_of(to));
    graph_ = std::move(g);
}

std::vector<std::size_t> Dag::topological_order() const {
    const std::size_t n = graph_.node_count();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i) indegree[i] = graph_.parents(i).size();
    std::vector<std::size_t> order;
    std::vector<bool> emitted(n, false);
    order.reserve(n);
    while (order.size() < n) {
        bool advanced = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (emitted[i] || indegree[i] != 0) continue;
            emitted[i] = true;
            order.push_back(i);
            for (std::size_t c : graph_.children(i)) --indegree[c];
            advanced = true;
            break;  // restart scan so the lowest eligible index goes next
        }
        if (!advanced) throw std::logic_error("Dag: cycle detected in topological sort");
    }
    return order;
}

void SepsetMap::set(const std::string& a, const std::string& b,
                    std::vector<std::string> sepset) {
    std::sort(sepset.begin(), sepset.end());
    sepsets_[key(a, b)] = std::move(sepset);
}

bool SepsetMap::contains(const std::string& a, const std::string& b) const {
    return sepsets_.count(key(a, b)) > 0;
}

const std::vector<std::string>* SepsetMap::find(const std::string& a,
                                                const std::string& b) const {
    auto it = sepsets_.find(key(a, b));
    return it == sepsets_.end() ? nullptr : &it->second;
}

std::pair<std::string, std::string> SepsetMap::key(const std::string& a,
                                                   const std::string& b) {
    return {std::min(a, b), std::max(a, b)};
}

namespace {

struct Triple {
    std::string x_name, z_name, y_name;
    std::size_t x, z, y;
};

std::string triple_text(const Triple& t) {
    return t.x_name + " -> " + t.z_name + " <- " + t.y_name;
}

}  // namespace

Pdag orient_v_structures(const Pdag& skeleton, const SepsetMap& sepsets,
                         const ConstraintSet& constraints, OrientationLog* log) {
    if (!skeleton.directed_edges().empty())
        throw std::invalid_argument("orient_v_structures: skeleton must be fully undirected");

    std::vector<Triple> triples;
    for (std::size_t z = 0; z < skeleton.node_count(); ++z) {
        const auto neigh = skeleton.neighbors(z);
        for (std::size_t a = 0; a < neigh.size(); ++a) {
            for (std::size_t b = a + 1; b < neigh.size(); ++b) {
                std::size_t x = neigh[a], y = neigh[b];
                if (skeleton.adjacent(x, y)) continue;  // shielded
                if (skeleton.node(y) < skeleton.node(x)) std::swap(x, y);
                triples.push_back(
                    {skeleton.node(x), skeleton.node(z), skeleton.node(y), x, z, y});
            }
        }
    }
    std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
        return std::tie(a.x_name, a.z_name, a.y_name) <
               std::tie(b.x_name, b.z_name, b.y_name);
    });

    Pdag g = skeleton;
    for (const Triple& t : triples) {
        const std::vector<std::string>* sep = sepsets.find(t.x_name, t.y_name);
        if (sep == nullptr) continue;  // no separation certificate for the pair
        if (std::find(sep->begin(), sep->end(), t.z_name) != sep->end()) continue;

        if (constraints.blacklisted(t.x_name, t.z_name) ||
            constraints.blacklisted(t.y_name, t.z_name)) {
            if (log)
                log->push_back({OrientationEvent::Kind::vstructure_blacklisted,
                                triple_text(t)});
            continue;
        }
        if (g.has_directed(t.z, t.x) || g.has_directed(t.z, t.y)) {
            if (log)
                log->push_back({OrientationEvent::Kind::vstructure_conflict, triple_text(t)});
            continue;
        }
        Pdag trial = g;
        bool cycle = false;
        for (const auto& [from, to] :
             {std::pair{t.x, t.z}, std::pair{t.y, t.z}}) {
            if (trial.has_directed(from, to)) continue;
            if (trial.directed_path(to, from)) {
                cycle = true;
                break;
            }
            trial.orient(from, to);
        }
        if (cycle) {
            if (log)
                log->push_back({OrientationEvent::Kind::vstructure_cycle, triple_text(t)});
            continue;
        }
        g = std::move(trial);
    }
    return g;
}

Pdag apply_forced_orientations(Pdag g, const ConstraintSet& constraints, OrientationLog* log) {
    // Lexicographic pair order over undirected edges.
    const auto undirected = g.undirected_edges();
    const std::vector<std::pair<std::string, std::string>> pairs(undirected.begin(),
                                                                 undirected.end());
    for (const auto& [a, b] : pairs) {
        const std::size_t i = g.index_of(a), j = g.index_of(b);
        if (!g.has_undirected(i, j)) continue;
        std::size_t from, to;
        switch (constraints.admissibility(a, b)) {
            case Admissibility::forced_x_to_y: from = i; to = j; break;
            case Admissibility::forced_y_to_x: from = j; to = i; break;
            default: continue;
        }
        if (g.directed_path(to, from)) {
            if (log)
                log->push_back({OrientationEvent::Kind::forced_skipped,
                                g.node(from) + " -> " + g.node(to)});
            continue;
        }
        g.orient(from, to);
    }
    return g;
}

namespace {

// True when directing from -> to is admissible right now: not blacklisted,
// creates no directed cycle, and creates no new unshielded collider at `to`.
bool orientation_guard(const Pdag& g, const ConstraintSet& constraints, std::size_t from,
                       std::size_t to) {
    if (constraints.blacklisted(g.node(from), g.node(to))) return false;
    if (g.directed_path(to, from)) return false;
    for (std::size_t w : g.parents(to)) {
        if (w != from && !g.adjacent(w, from)) return false;
    }
    return true;
}

bool meek_rule_matches(const Pdag& g, std::size_t b, std::size_t c) {
    const std::size_t n = g.node_count();
    // R1: a -> b, b - c, a and c nonadjacent.
    for (std::size_t a = 0; a < n; ++a) {
        if (a == c) continue;
        if (g.has_directed(a, b) && !g.adjacent(a, c)) return true;
    }
    // R2: b -> k -> c with b - c.
    for (std::size_t k = 0; k < n; ++k) {
        if (g.has_directed(b, k) && g.has_directed(k, c)) return true;
    }
    // R3: b - c; b - d1, b - d2; d1 -> c, d2 -> c; d1, d2 nonadjacent.
    {
        std::vector<std::size_t> spokes;
        for (std::size_t d = 0; d < n; ++d) {
            if (d != c && g.has_undirected(b, d) && g.has_directed(d, c)) spokes.push_back(d);
        }
        for (std::size_t p = 0; p < spokes.size(); ++p)
            for (std::size_t q = p + 1; q < spokes.size(); ++q)
                if (!g.adjacent(spokes[p], spokes[q])) return true;
    }
    // R4: b - c; d adjacent to b; d -> k, k -> c; c? (orienting b -> c) with
    // c and d nonadjacent. Reversing would either cycle through d -> k -> c
    // or collide at b.
    for (std::size_t d = 0; d < n; ++d) {
        if (d == b || d == c || !g.adjacent(b, d) || g.adjacent(d, c)) continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == b || k == c) continue;
            if (g.has_directed(d, k) && g.has_directed(k, c)) return true;
        }
    }
    return false;
}

}  // namespace

Pdag apply_meek_rules(Pdag g, const ConstraintSet& constraints, OrientationLog* log) {
    bool changed = true;
    while (changed) {
        changed = false;
        // Candidate orientations scanned in name order for determinism.
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        for (const auto& [a, b] : g.undirected_edges()) {
            const std::size_t i = g.index_of(a), j = g.index_of(b);
            candidates.emplace_back(i, j);
            candidates.emplace_back(j, i);
        }
        std::sort(candidates.begin(), candidates.end(),
                  [&](const auto& p, const auto& q) {
                      return std::tie(g.node(p.first), g.node(p.second)) <
                             std::tie(g.node(q.first), g.node(q.second));
                  });
        for (const auto& [from, to] : candidates) {
            if (!g.has_undirected(from, to)) continue;  // consumed earlier this sweep
            if (!meek_rule_matches(g, from, to)) continue;
            if (!orientation_guard(g, constraints, from, to)) {
                if (log)
                    log->push_back({OrientationEvent::Kind::meek_skipped,
                                    g.node(from) + " -> " + g.node(to)});
                continue;
            }
            g.orient(from, to);
            changed = true;
        }
    }
    return g;
}

Pdag cpdag_of(const Dag& d) {
    const Pdag& g = d.pdag();
    const std::size_t n = g.node_count();
    const std::vector<std::size_t> topo = d.topological_order();
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[topo[i]] = i;

    // Total order on edges: destination ascending in topological position,
    // source descending.
    struct Edge {
        std::size_t from, to;
    };
    std::vector<Edge> edges;
    for (std::size_t to = 0; to < n; ++to)
        for (std::size_t from : g.parents(to)) edges.push_back({from, to});
    std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
        if (position[a.to] != position[b.to]) return position[a.to] < position[b.to];
        return position[a.from] > position[b.from];
    });

    enum Label { kUnknown, kCompelled, kReversible };
    std::vector<Label> label(edges.size(), kUnknown);
    auto edge_index = [&](std::size_t from, std::size_t to) -> std::size_t {
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].from == from && edges[e].to == to) return e;
        throw std::logic_error("cpdag_of: missing edge");
    };

    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (label[e] != kUnknown) continue;
        const std::size_t x = edges[e].from, y = edges[e].to;
        bool resolved = false;
        for (std::size_t w : g.parents(x)) {
            if (label[edge_index(w, x)] != kCompelled) continue;
            if (!g.has_directed(w, y)) {
                // w is a compelled parent of x but not a parent of y: every
                // edge into y is compelled.
                label[e] = kCompelled;
                for (std::size_t p : g.parents(y)) label[edge_index(p, y)] = kCompelled;
                resolved = true;
                break;
            }
            label[edge_index(w, y)] = kCompelled;
        }
        if (resolved) continue;
        bool external_parent = false;
        for (std::size_t z : g.parents(y)) {
            if (z != x && !g.has_directed(z, x)) {
                external_parent = true;
                break;
            }
        }
        const Label verdict = external_parent ? kCompelled : kReversible;
        label[e] = verdict;
        for (std::size_t p : g.parents(y)) {
            const std::size_t pe = edge_index(p, y);
            if (label[pe] == kUnknown) label[pe] = verdict;
        }
    }

    Pdag out(g.nodes());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (label[e] == kCompelled) out.add_directed(edges[e].from, edges[e].to);
        else out.add_undirected(edges[e].from, edges[e].to);
    }
    return out;
}

std::size_t shd(const Pdag& a, const Pdag& b) {
    std::vector<std::string> names_a = a.nodes(), names_b = b.nodes();
    std::sort(names_a.begin(), names_a.end());
    std::sort(names_b.begin(), names_b.end());
    if (names_a != names_b) throw std::invalid_argument("shd: node sets differ");

    // Per unordered pair: 0 = none, 1 = u->v, 2 = v->u, 3 = undirected, with
    // (u, v) in sorted name order.
    auto state = [](const Pdag& g, const std::string& u, const std::string& v) -> int {
        const std::size_t i = g.index_of(u), j = g.index_of(v);
        if (g.has_directed(i, j)) return 1;
        if (g.has_directed(j, i)) return 2;
        if (g.has_undirected(i, j)) return 3;
        return 0;
    };
    std::size_t distance = 0;
    for (std::size_t i = 0; i < names_a.size(); ++i) {
        for (std::size_t j = i + 1; j < names_a.size(); ++j) {
            if (state(a, names_a[i], names_a[j]) != state(b, names_a[i], names_a[j]))
                ++distance;
        }
    }
    return distance;
}

}  // namespace bnsl
