#include "cgt/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "cgt/error.hpp"

namespace cgt {

Digraph::Digraph(std::size_t vertex_count, std::vector<Edge> edges)
{
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has an endpoint outside 0.." +
                             std::to_string(vertex_count == 0 ? 0 : vertex_count - 1));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    offsets_.assign(vertex_count + 1, 0);
    rev_offsets_.assign(vertex_count + 1, 0);
    for (const auto& [u, v] : edges) {
        ++offsets_[u + 1];
        ++rev_offsets_[v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    std::partial_sum(rev_offsets_.begin(), rev_offsets_.end(), rev_offsets_.begin());

    targets_.resize(edges.size());
    sources_.resize(edges.size());
    std::vector<std::size_t> fill(rev_offsets_.begin(), rev_offsets_.end() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        targets_[i] = edges[i].second;
        // Edges are sorted by source, so each predecessor list comes out sorted.
        sources_[fill[edges[i].second]++] = edges[i].first;
    }
}

void Digraph::check_vertex(Vertex u) const
{
    if (u >= vertex_count()) {
        throw InputError("vertex " + std::to_string(u) + " out of range (n = " +
                         std::to_string(vertex_count()) + ")");
    }
}

std::span<const Vertex> Digraph::followers(Vertex u) const
{
    check_vertex(u);
    return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::span<const Vertex> Digraph::predecessors(Vertex u) const
{
    check_vertex(u);
    return {sources_.data() + rev_offsets_[u], rev_offsets_[u + 1] - rev_offsets_[u]};
}

bool Digraph::has_edge(Vertex u, Vertex v) const
{
    auto f = followers(u);
    return std::binary_search(f.begin(), f.end(), v);
}

std::vector<Edge> Digraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : followers(u)) {
            out.emplace_back(u, v);
        }
    }
    return out;
}

std::optional<std::vector<Vertex>> followers_first_order(const Digraph& g)
{
    // Kahn's algorithm on the reversed graph: repeatedly peel off sinks.
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> out_degree(n);
    std::vector<Vertex> order;
    order.reserve(n);
    for (Vertex u = 0; u < n; ++u) {
        out_degree[u] = g.followers(u).size();
        if (out_degree[u] == 0) {
            order.push_back(u);
        }
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Vertex p : g.predecessors(order[head])) {
            if (--out_degree[p] == 0) {
                order.push_back(p);
            }
        }
    }
    if (order.size() != n) {
        return std::nullopt;
    }
    return order;
}

bool is_acyclic(const Digraph& g)
{
    return followers_first_order(g).has_value();
}

std::vector<std::size_t> weak_components(const Digraph& g, std::size_t* count)
{
    const std::size_t n = g.vertex_count();
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n, unset);
    std::size_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != unset) {
            continue;
        }
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (auto nbrs : {g.followers(u), g.predecessors(u)}) {
                for (Vertex v : nbrs) {
                    if (comp[v] == unset) {
                        comp[v] = next;
                        stack.push_back(v);
                    }
                }
            }
        }
        ++next;
    }
    if (count != nullptr) {
        *count = next;
    }
    return comp;
}

void check_tokens(const Digraph& g, std::span<const Vertex> tokens)
{
    for (Vertex t : tokens) {
        if (t >= g.vertex_count()) {
            throw InputError("token on vertex " + std::to_string(t) + " but n = " +
                             std::to_string(g.vertex_count()));
        }
    }
}

namespace {

using nlohmann::json;

Vertex resolve_vertex(const json& j, std::size_t n,
                      const std::unordered_map<std::string, Vertex>& by_name)
{
    if (j.is_string()) {
        auto it = by_name.find(j.get<std::string>());
        if (it == by_name.end()) {
            throw InputError("unknown vertex name \"" + j.get<std::string>() + "\"");
        }
        return it->second;
    }
    if (!j.is_number_integer()) {
        throw InputError("vertex must be an integer index or a name, got " + j.dump());
    }
    auto v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
        throw InputError("vertex " + std::to_string(v) + " out of range (n = " + std::to_string(n) +
                         ")");
    }
    return static_cast<Vertex>(v);
}

}  // namespace

GraphDocument parse_graph_document(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw InputError("digraph document must be a JSON object");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw InputError("digraph document needs an integer \"n\"");
    }
    auto n_signed = doc["n"].get<std::int64_t>();
    if (n_signed < 0) {
        throw InputError("\"n\" must be nonnegative");
    }
    const auto n = static_cast<std::size_t>(n_signed);
    if (n > (std::size_t{1} << 31)) {
        throw InputError("\"n\" is too large");
    }

    GraphDocument out;
    std::unordered_map<std::string, Vertex> by_name;
    if (doc.contains("names")) {
        const auto& names = doc["names"];
        if (!names.is_array() || names.size() != n) {
            throw InputError("\"names\" must be an array of n strings");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!names[i].is_string()) {
                throw InputError("\"names\" entries must be strings");
            }
            auto name = names[i].get<std::string>();
            if (!by_name.emplace(name, static_cast<Vertex>(i)).second) {
                throw InputError("duplicate vertex name \"" + name + "\"");
            }
            out.names.push_back(std::move(name));
        }
    }

    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        const auto& je = doc["edges"];
        if (!je.is_array()) {
            throw InputError("\"edges\" must be an array");
        }
        for (const auto& e : je) {
            if (!e.is_array() || e.size() != 2) {
                throw InputError("each edge must be a [u, v] pair, got " + e.dump());
            }
            edges.emplace_back(resolve_vertex(e[0], n, by_name), resolve_vertex(e[1], n, by_name));
        }
    }
    out.graph = Digraph(n, std::move(edges));

    if (doc.contains("tokens")) {
        const auto& jt = doc["tokens"];
        if (!jt.is_array()) {
            throw InputError("\"tokens\" must be an array");
        }
        TokenPosition tokens;
        for (const auto& t : jt) {
            tokens.push_back(resolve_vertex(t, n, by_name));
        }
        out.tokens = std::move(tokens);
    }
    if (doc.contains("occupancy")) {
        const auto& jo = doc["occupancy"];
        if (!jo.is_array() || jo.size() != n) {
            throw InputError("\"occupancy\" must be an array of n 0/1 entries");
        }
        std::vector<bool> occ;
        for (const auto& b : jo) {
            if (b.is_boolean()) {
                occ.push_back(b.get<bool>());
            } else if (b.is_number_integer() && (b.get<int>() == 0 || b.get<int>() == 1)) {
                occ.push_back(b.get<int>() == 1);
            } else {
                throw InputError("\"occupancy\" entries must be 0 or 1");
            }
        }
        out.occupancy = std::move(occ);
    }
    return out;
}

Digraph parse_digraph(std::string_view json_text)
{
    return parse_graph_document(json_text).graph;
}

Digraph scoring_digraph(std::size_t vertex_count, unsigned step)
{
    if (step == 0) {
        throw InputError("scoring step t must be at least 1");
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertex_count; ++i) {
        for (std::size_t d = 1; d <= step && d <= i; ++d) {
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i - d));
        }
    }
    return Digraph(vertex_count, std::move(edges));
}

std::string vertex_label(const GraphDocument& doc, Vertex u)
{
    if (u < doc.names.size()) {
        return doc.names[u];
    }
    return std::to_string(u);
}

}  // namespace cgt
