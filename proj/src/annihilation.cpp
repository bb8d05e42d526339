#include "cgt/annihilation.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "cgt/error.hpp"

namespace cgt::annihilation {

namespace {

void check_size(const Digraph& g)
{
    if (g.vertex_count() > max_vertices) {
        throw InputError("annihilation games support at most 64 vertices, got " +
                         std::to_string(g.vertex_count()));
    }
}

}  // namespace

AnnPosition AnnPosition::from_tokens(std::span<const Vertex> tokens)
{
    std::uint64_t bits = 0;
    for (Vertex t : tokens) {
        if (t >= max_vertices) {
            throw InputError("annihilation token on vertex " + std::to_string(t) + " (limit 63)");
        }
        const std::uint64_t bit = std::uint64_t{1} << t;
        if (bits & bit) {
            throw InputError("annihilation positions allow one token per vertex; vertex " +
                             std::to_string(t) + " repeated");
        }
        bits |= bit;
    }
    return AnnPosition(bits);
}

AnnPosition AnnPosition::from_occupancy(const std::vector<bool>& occupancy)
{
    if (occupancy.size() > max_vertices) {
        throw InputError("occupancy vector longer than 64");
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < occupancy.size(); ++i) {
        if (occupancy[i]) {
            bits |= std::uint64_t{1} << i;
        }
    }
    return AnnPosition(bits);
}

unsigned AnnPosition::token_count() const
{
    return static_cast<unsigned>(std::popcount(bits_));
}

std::vector<Vertex> AnnPosition::tokens() const
{
    std::vector<Vertex> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<Vertex>(std::countr_zero(b)));
    }
    return out;
}

std::string AnnPosition::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (Vertex t : tokens()) {
        if (!first) {
            s += ',';
        }
        first = false;
        s += std::to_string(t);
    }
    return s + "}";
}

std::vector<AnnPosition> ann_successors(const Digraph& g, AnnPosition pos)
{
    check_size(g);
    std::vector<AnnPosition> out;
    for (Vertex u : pos.tokens()) {
        if (u >= g.vertex_count()) {
            throw InputError("token on vertex " + std::to_string(u) + " outside the digraph");
        }
        for (Vertex v : g.followers(u)) {
            if (v == u) {
                out.push_back(pos);
            } else {
                out.emplace_back(pos.bits() ^ (std::uint64_t{1} << u) ^ (std::uint64_t{1} << v));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AnnGameGraph ann_game_graph(const Digraph& g, AnnPosition start, std::size_t max_states)
{
    check_size(g);
    AnnGameGraph out;
    std::unordered_map<std::uint64_t, Vertex> index;
    std::vector<Edge> edges;
    auto intern = [&](AnnPosition p) -> Vertex {
        auto [it, fresh] = index.emplace(p.bits(), static_cast<Vertex>(out.states.size()));
        if (fresh) {
            if (out.states.size() >= max_states) {
                throw BoundExceeded("annihilation graph has more than " +
                                    std::to_string(max_states) + " reachable states");
            }
            out.states.push_back(p);
        }
        return it->second;
    };
    intern(start);
    for (std::size_t s = 0; s < out.states.size(); ++s) {
        for (AnnPosition next : ann_successors(g, out.states[s])) {
            edges.emplace_back(static_cast<Vertex>(s), intern(next));
        }
    }
    out.graph = Digraph(out.states.size(), std::move(edges));
    return out;
}

AnnGameGraph ann_full_graph(const Digraph& g)
{
    if (g.vertex_count() > 24) {
        throw BoundExceeded("full annihilation graph limited to 24 vertices");
    }
    const std::uint64_t count = std::uint64_t{1} << g.vertex_count();
    AnnGameGraph out;
    std::vector<Edge> edges;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        out.states.emplace_back(bits);
        for (AnnPosition next : ann_successors(g, AnnPosition(bits))) {
            edges.emplace_back(static_cast<Vertex>(bits), static_cast<Vertex>(next.bits()));
        }
    }
    out.graph = Digraph(count, std::move(edges));
    return out;
}

loopy::GammaValue ann_gamma(const Digraph& g, AnnPosition pos, std::size_t max_states)
{
    auto game = ann_game_graph(g, pos, max_states);
    return loopy::gamma(game.graph).gamma[0];
}

loopy::Outcome ann_classify(const Digraph& g, AnnPosition pos, std::size_t max_states)
{
    return loopy::classify_value(ann_gamma(g, pos, max_states));
}

std::optional<AnnMove> ann_best_move(const Digraph& g, AnnPosition pos, std::size_t max_states)
{
    auto game = ann_game_graph(g, pos, max_states);
    const Vertex start = 0;
    auto move = loopy::next_move(game.graph, loopy::gamma(game.graph), std::span(&start, 1));
    if (!move) {
        return std::nullopt;
    }
    const AnnPosition target = game.states[move->to];
    // Several token moves can produce the same successor; report the smallest.
    for (Vertex u : pos.tokens()) {
        for (Vertex v : g.followers(u)) {
            AnnPosition next =
                v == u ? pos
                       : AnnPosition(pos.bits() ^ (std::uint64_t{1} << u) ^ (std::uint64_t{1} << v));
            if (next == target) {
                return AnnMove{u, v, target};
            }
        }
    }
    throw std::logic_error("ann_best_move: successor without a generating edge");
}

}  // namespace cgt::annihilation
