#include "dyndiv/div_graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "dyndiv/divisibility.hpp"
#include "dyndiv/orbit.hpp"
#include "dyndiv/primes.hpp"

namespace dyndiv {

std::string EdgeLabel::to_string() const {
    if (type1 && type2)
        return "1,2";
    if (type1)
        return "1";
    if (type2)
        return "2";
    return "";
}

namespace {

// Shared rule evaluation so the cached builder and the public edge_label can
// never drift apart.
template <typename PMember>
std::optional<EdgeLabel> label_under(const Map& map, std::uint64_t n, std::uint64_t p,
                                     PMember&& p_member) {
    EdgeLabel label;
    unsigned vpn = n % p == 0 ? valuation_u64(n, p) : 0;
    label.type1 = w_valuation_exceeds(map, n, p, vpn);
    if (vpn == 0 && p_member(p))
        label.type2 = true;
    if (!label.any())
        return std::nullopt;
    return label;
}

} // namespace

std::optional<EdgeLabel> edge_label(const Map& map, std::uint64_t n, std::uint64_t p) {
    if (n == 0)
        throw std::invalid_argument("edge_label: n must be >= 1");
    return label_under(map, n, p, [&](std::uint64_t q) { return in_P(map, q).member; });
}

DivGraph build_graph(const Map& map, std::uint64_t bound) {
    if (bound < 1)
        throw std::invalid_argument("build_graph: bound must be >= 1");
    DivGraph graph{map, bound, {}, {}};
    const std::vector<std::uint64_t> primes = sieve_primes(bound);

    std::unordered_map<std::uint64_t, bool> p_cache;
    auto p_member = [&](std::uint64_t p) {
        auto it = p_cache.find(p);
        if (it == p_cache.end())
            it = p_cache.emplace(p, in_P(map, p).member).first;
        return it->second;
    };

    // Edges only increase the vertex, so an in-order sweep of the growing set
    // visits every vertex exactly once.
    std::set<std::uint64_t> vertices{1};
    for (auto it = vertices.begin(); it != vertices.end(); ++it) {
        const std::uint64_t n = *it;
        for (std::uint64_t p : primes) {
            if (p > bound / n)
                break;
            if (auto label = label_under(map, n, p, p_member)) {
                graph.edges.push_back({n, n * p, *label});
                vertices.insert(n * p);
            }
        }
    }

    graph.vertices.assign(vertices.begin(), vertices.end());
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

namespace {

std::string export_dot(const DivGraph& g) {
    std::string out = "digraph D {\n";
    for (std::uint64_t v : g.vertices)
        out += "  " + std::to_string(v) + ";\n";
    for (const DivGraphEdge& e : g.edges)
        out += "  " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=\"" +
               e.label.to_string() + "\"];\n";
    out += "}\n";
    return out;
}

std::string export_json(const DivGraph& g) {
    nlohmann::ordered_json j;
    j["d"] = g.map.d;
    j["c"] = g.map.c;
    j["bound"] = g.bound;
    j["vertices"] = g.vertices;
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const DivGraphEdge& e : g.edges) {
        nlohmann::ordered_json types = nlohmann::ordered_json::array();
        if (e.label.type1)
            types.push_back("1");
        if (e.label.type2)
            types.push_back("2");
        edges.push_back(nlohmann::ordered_json::array({e.from, e.to, types}));
    }
    return j.dump();
}

} // namespace

std::string export_graph(const DivGraph& graph, ExportFormat format) {
    switch (format) {
    case ExportFormat::Dot: return export_dot(graph);
    case ExportFormat::Json: return export_json(graph);
    }
    throw std::invalid_argument("export_graph: unsupported format");
}

std::string export_graph(const DivGraph& graph, std::string_view format) {
    if (format == "dot")
        return export_graph(graph, ExportFormat::Dot);
    if (format == "json")
        return export_graph(graph, ExportFormat::Json);
    throw std::invalid_argument("export_graph: unsupported format '" + std::string(format) + "'");
}

} // namespace dyndiv
