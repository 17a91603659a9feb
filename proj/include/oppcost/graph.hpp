#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "oppcost/errors.hpp"

namespace oppcost {

using Label = std::string;

/// Undirected weighted edge. Endpoints are stored with u < v.
struct Edge {
    Label u;
    Label v;
    double weight = 0.0;

    std::string name() const { return u + "-" + v; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Lexicographic order on (u, v); weight is ignored.
inline bool edge_label_less(const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
}

inline Edge make_edge(Label a, Label b, double w) {
    if (b < a) std::swap(a, b);
    return Edge{std::move(a), std::move(b), w};
}

/// Immutable undirected simple graph with non-negative finite weights.
///
/// Vertices are indexed in lexicographic label order, and every adjacency list
/// is sorted by neighbour index, so iteration order is deterministic everywhere.
class Graph {
public:
    struct Adjacent {
        std::size_t vertex;
        double weight;
    };

    Graph() = default;

    /// Builds a graph from explicit vertices and edges. Endpoints not listed in
    /// `vertices` are added. Throws InputError on self-loops, parallel edges
    /// or weights that are negative or not finite.
    Graph(const std::vector<Label>& vertices, const std::vector<Edge>& edges) {
        std::set<Label> all(vertices.begin(), vertices.end());
        for (const auto& e : edges) {
            all.insert(e.u);
            all.insert(e.v);
        }
        labels_.assign(all.begin(), all.end());
        adjacency_.resize(labels_.size());

        std::set<std::pair<Label, Label>> seen;
        for (const auto& raw : edges) {
            if (raw.u == raw.v) throw InputError("self-loop on vertex '" + raw.u + "'");
            if (!std::isfinite(raw.weight) || raw.weight < 0.0)
                throw InputError("edge " + raw.u + "-" + raw.v + " has invalid weight");
            Edge e = make_edge(raw.u, raw.v, raw.weight);
            if (!seen.emplace(e.u, e.v).second) throw InputError("duplicate edge " + e.name());
            const auto iu = *index_of(e.u);
            const auto iv = *index_of(e.v);
            adjacency_[iu].push_back({iv, e.weight});
            adjacency_[iv].push_back({iu, e.weight});
            edges_.push_back(std::move(e));
        }
        for (auto& list : adjacency_)
            std::sort(list.begin(), list.end(),
                      [](const Adjacent& a, const Adjacent& b) { return a.vertex < b.vertex; });
    }

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Sorted vertex labels.
    const std::vector<Label>& labels() const noexcept { return labels_; }
    const Label& label(std::size_t i) const { return labels_.at(i); }

    /// Edges in construction order, normalised so that u < v.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::optional<std::size_t> index_of(std::string_view label) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it == labels_.end() || *it != label) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool contains(std::string_view label) const { return index_of(label).has_value(); }

    std::span<const Adjacent> neighbors(std::size_t i) const { return adjacency_.at(i); }

    std::optional<double> weight(std::string_view a, std::string_view b) const {
        auto ia = index_of(a), ib = index_of(b);
        if (!ia || !ib) return std::nullopt;
        for (const auto& n : adjacency_[*ia])
            if (n.vertex == *ib) return n.weight;
        return std::nullopt;
    }

    /// Same vertex set and same set of weighted edges, regardless of edge order.
    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.labels_ != b.labels_ || a.edges_.size() != b.edges_.size()) return false;
        auto ea = a.edges_, eb = b.edges_;
        std::sort(ea.begin(), ea.end(), edge_label_less);
        std::sort(eb.begin(), eb.end(), edge_label_less);
        return ea == eb;
    }

private:
    std::vector<Label> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Adjacent>> adjacency_;
};

/// A simple path and the sum of the weights it traverses.
struct PathRecord {
    std::vector<Label> vertices;
    double utility = 0.0;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (i) out += '-';
            out += vertices[i];
        }
        return out;
    }

    friend bool operator==(const PathRecord&, const PathRecord&) = default;
};

inline constexpr std::size_t kDefaultVertexCap = 15;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void require_vertex(const Graph& g, std::string_view label) {
    if (!g.contains(label)) throw InputError("vertex '" + std::string(label) + "' is not in the graph");
}

inline void require_cap(const Graph& g, std::size_t vertex_cap) {
    if (g.vertex_count() > vertex_cap)
        throw TooLargeError("instance too large for exhaustive enumeration: " +
                            std::to_string(g.vertex_count()) + " vertices exceeds cap of " +
                            std::to_string(vertex_cap));
}

/// Depth-first enumeration of every simple path that extends `path` (whose
/// vertices are marked in `on_path`) and ends at `target`. Neighbours are
/// visited in label order, so paths are reported in lexicographic order.
template <typename Visit>
void extend_simple_paths(const Graph& g, std::size_t target, std::vector<std::size_t>& path,
                         std::vector<char>& on_path, double utility, Visit&& visit) {
    const auto here = path.back();
    if (here == target) {
        visit(std::as_const(path), utility);
        return;
    }
    for (const auto& n : g.neighbors(here)) {
        if (on_path[n.vertex]) continue;
        on_path[n.vertex] = 1;
        path.push_back(n.vertex);
        extend_simple_paths(g, target, path, on_path, utility + n.weight, visit);
        path.pop_back();
        on_path[n.vertex] = 0;
    }
}

inline PathRecord to_record(const Graph& g, std::span<const std::size_t> path, double utility) {
    PathRecord r;
    r.vertices.reserve(path.size());
    for (auto i : path) r.vertices.push_back(g.label(i));
    r.utility = utility;
    return r;
}

}  // namespace detail

/// Parses the whitespace-separated edge-list format.
///
/// Each non-empty line is either `<label> <label> <weight>` or a lone `<label>`
/// declaring an isolated vertex. `#` starts a comment that runs to end of line.
inline Graph parse_edge_list(std::string_view text) {
    std::vector<Label> vertices;
    std::vector<Edge> edges;
    std::set<std::pair<Label, Label>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto fields = detail::split_ws(detail::trim(line));
        if (fields.empty()) continue;

        if (fields.size() == 1) {
            vertices.emplace_back(fields[0]);
            continue;
        }
        if (fields.size() != 3)
            throw ParseError(line_no, "expected '<label> <label> <weight>', got " +
                                          std::to_string(fields.size()) + " fields");

        const auto w = detail::parse_double(fields[2]);
        if (!w) throw ParseError(line_no, "weight '" + std::string(fields[2]) + "' is not a number");
        if (!std::isfinite(*w)) throw ParseError(line_no, "weight must be finite");
        if (*w < 0.0) throw ParseError(line_no, "weight must be non-negative");
        if (fields[0] == fields[1])
            throw ParseError(line_no, "self-loop on vertex '" + std::string(fields[0]) + "'");

        Edge e = make_edge(Label(fields[0]), Label(fields[1]), *w);
        if (!seen.emplace(e.u, e.v).second) throw ParseError(line_no, "duplicate edge " + e.name());
        edges.push_back(std::move(e));
    }
    return Graph(vertices, edges);
}

inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

/// Serialises to the edge-list format: isolated vertices first, then one line per edge.
inline std::string to_edge_list(const Graph& g) {
    std::string out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (g.neighbors(i).empty()) out += g.label(i) + "\n";
    for (const auto& e : g.edges()) out += e.u + " " + e.v + " " + detail::format_exact(e.weight) + "\n";
    return out;
}

/// All simple s-t paths in lexicographic order of their vertex sequences.
inline std::vector<PathRecord> enumerate_simple_paths(const Graph& g, std::string_view s, std::string_view t,
                                                      std::size_t vertex_cap = kDefaultVertexCap) {
    detail::require_vertex(g, s);
    detail::require_vertex(g, t);
    detail::require_cap(g, vertex_cap);

    const auto source = *g.index_of(s);
    const auto target = *g.index_of(t);
    std::vector<PathRecord> out;
    std::vector<std::size_t> path{source};
    std::vector<char> on_path(g.vertex_count(), 0);
    on_path[source] = 1;
    detail::extend_simple_paths(g, target, path, on_path, 0.0,
                                [&](const std::vector<std::size_t>& p, double u) {
                                    out.push_back(detail::to_record(g, p, u));
                                });
    return out;
}

/// Sum of edge weights along a simple path given as a label sequence.
inline double path_utility(const Graph& g, std::span<const Label> vertices) {
    if (vertices.empty()) throw InputError("path is empty");
    std::set<std::string_view> visited;
    double total = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        detail::require_vertex(g, vertices[i]);
        if (!visited.insert(vertices[i]).second)
            throw InputError("vertex '" + vertices[i] + "' repeats; path is not simple");
        if (i == 0) continue;
        const auto w = g.weight(vertices[i - 1], vertices[i]);
        if (!w) throw InputError("no edge between '" + vertices[i - 1] + "' and '" + vertices[i] + "'");
        total += *w;
    }
    return total;
}

inline double path_utility(const Graph& g, std::initializer_list<Label> vertices) {
    return path_utility(g, std::span<const Label>(vertices.begin(), vertices.size()));
}

}  // namespace oppcost
