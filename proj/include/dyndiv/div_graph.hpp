#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyndiv/map.hpp"

namespace dyndiv {

/// Label of an index-divisibility edge (n, np): type 1 fires when
/// v_p(W_n) > v_p(n), type 2 when p is in P_{d,c} and p does not divide n.
struct EdgeLabel {
    bool type1 = false;
    bool type2 = false;

    bool any() const { return type1 || type2; }
    std::string to_string() const; // "1", "2" or "1,2"
    friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
};

struct DivGraphEdge {
    std::uint64_t from;
    std::uint64_t to;
    EdgeLabel label;
    friend auto operator<=>(const DivGraphEdge&, const DivGraphEdge&) = default;
};

/// Index divisibility graph truncated to [1, bound]: vertices sorted
/// ascending, edges sorted lexicographically by (from, to).
struct DivGraph {
    Map map;
    std::uint64_t bound;
    std::vector<std::uint64_t> vertices;
    std::vector<DivGraphEdge> edges;
};

/// Label for the candidate edge (n, np); nullopt when neither rule fires.
std::optional<EdgeLabel> edge_label(const Map& map, std::uint64_t n, std::uint64_t p);

/// Iterated closure from {1} under both edge rules, capped at `bound`.
/// Every edge strictly increases the vertex, so the sweep terminates with
/// the full vertex set D_{d,c} intersected with [1, bound].
DivGraph build_graph(const Map& map, std::uint64_t bound);

enum class ExportFormat { Dot, Json };

std::string export_graph(const DivGraph& graph, ExportFormat format);
std::string export_graph(const DivGraph& graph, std::string_view format); // "dot" | "json"

} // namespace dyndiv
