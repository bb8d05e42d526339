#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cgt {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable finite digraph over dense vertex indices 0..n-1. Loops are kept
// (they are pass moves); parallel edges are collapsed on construction.
class Digraph
{
public:
    Digraph() = default;

    // Throws InputError when an endpoint is out of range.
    Digraph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size(); }

    // Sorted followers F(u). Throws InputError when u is out of range.
    std::span<const Vertex> followers(Vertex u) const;
    std::span<const Vertex> predecessors(Vertex u) const;

    bool has_edge(Vertex u, Vertex v) const;

    // All edges in (source, target) lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Digraph&) const = default;

private:
    void check_vertex(Vertex u) const;

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
    std::vector<std::size_t> rev_offsets_;
    std::vector<Vertex> sources_;
};

// A multiset of token locations; order carries no meaning.
using TokenPosition = std::vector<Vertex>;

bool is_acyclic(const Digraph& g);

// Vertices ordered so that every follower precedes its predecessors.
// Returns nullopt when g has a cycle.
std::optional<std::vector<Vertex>> followers_first_order(const Digraph& g);

// Weakly connected components; component ids are assigned in order of the
// smallest vertex they contain.
std::vector<std::size_t> weak_components(const Digraph& g, std::size_t* count = nullptr);

// Throws InputError when any token is not a vertex of g.
void check_tokens(const Digraph& g, std::span<const Vertex> tokens);

// The digraph JSON document: {"n": int, "edges": [[u,v],...], "tokens": [...]?,
// "occupancy": [0/1,...]?, "names": [str,...]?}. With "names", endpoints and
// tokens may be given either as indices or as names.
struct GraphDocument
{
    Digraph graph;
    std::vector<std::string> names;
    std::optional<TokenPosition> tokens;
    std::optional<std::vector<bool>> occupancy;
};

GraphDocument parse_graph_document(std::string_view json_text);
Digraph parse_digraph(std::string_view json_text);

// Vertex i has edges to i-1, ..., i-t (clipped at 0): the Scoring game board.
Digraph scoring_digraph(std::size_t vertex_count, unsigned step);

std::string vertex_label(const GraphDocument& doc, Vertex u);

}  // namespace cgt
