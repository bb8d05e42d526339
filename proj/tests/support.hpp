#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "cgt/digraph.hpp"
#include "cgt/partizan.hpp"

// Seeded generators and small independent oracles shared by the tests.
namespace testing {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi)
{
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

// Edges only go from higher to lower index, so the result is acyclic.
inline cgt::Digraph random_dag(Rng& rng, std::size_t n, double density)
{
    std::vector<cgt::Edge> edges;
    for (cgt::Vertex u = 0; u < n; ++u) {
        for (cgt::Vertex v = 0; v < u; ++v) {
            if (coin(rng, density)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return cgt::Digraph(n, edges);
}

inline cgt::Digraph random_digraph(Rng& rng, std::size_t n, double density, bool loops)
{
    std::vector<cgt::Edge> edges;
    for (cgt::Vertex u = 0; u < n; ++u) {
        for (cgt::Vertex v = 0; v < n; ++v) {
            if ((u != v || loops) && coin(rng, density)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return cgt::Digraph(n, edges);
}

// Relabels vertex u as perm[u].
inline cgt::Digraph permuted(const cgt::Digraph& g, const std::vector<cgt::Vertex>& perm)
{
    std::vector<cgt::Edge> edges;
    for (auto [u, v] : g.edges()) {
        edges.emplace_back(perm[u], perm[v]);
    }
    return cgt::Digraph(g.vertex_count(), edges);
}

// Sink removal: repeatedly delete vertices with no remaining followers.
inline bool acyclic_by_sink_removal(const cgt::Digraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<bool> gone(n, false);
    for (std::size_t removed = 0;;) {
        bool progress = false;
        for (cgt::Vertex u = 0; u < n; ++u) {
            if (gone[u]) {
                continue;
            }
            const auto f = g.followers(u);
            if (std::all_of(f.begin(), f.end(), [&](cgt::Vertex v) { return gone[v]; })) {
                gone[u] = true;
                ++removed;
                progress = true;
            }
        }
        if (removed == n) {
            return true;
        }
        if (!progress) {
            return false;
        }
    }
}

// Plain mex recursion on a DAG, no topological order.
inline std::uint64_t naive_grundy(const cgt::Digraph& g, cgt::Vertex u,
                                  std::map<cgt::Vertex, std::uint64_t>& memo)
{
    if (auto it = memo.find(u); it != memo.end()) {
        return it->second;
    }
    std::set<std::uint64_t> seen;
    for (cgt::Vertex v : g.followers(u)) {
        seen.insert(naive_grundy(g, v, memo));
    }
    std::uint64_t m = 0;
    while (seen.count(m)) {
        ++m;
    }
    memo[u] = m;
    return m;
}

// Win/lose of a token multiset on a DAG by direct game-tree search.
inline bool mover_wins_dag(const cgt::Digraph& g, std::vector<cgt::Vertex> tokens,
                           std::map<std::vector<cgt::Vertex>, bool>& memo)
{
    std::sort(tokens.begin(), tokens.end());
    if (auto it = memo.find(tokens); it != memo.end()) {
        return it->second;
    }
    bool win = false;
    for (std::size_t i = 0; i < tokens.size() && !win; ++i) {
        for (cgt::Vertex v : g.followers(tokens[i])) {
            auto next = tokens;
            next[i] = v;
            if (!mover_wins_dag(g, next, memo)) {
                win = true;
                break;
            }
        }
    }
    memo[tokens] = win;
    return win;
}

// Every multiset of k vertices out of n, as sorted vectors.
inline std::vector<std::vector<cgt::Vertex>> multisets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<cgt::Vertex>> out;
    std::vector<cgt::Vertex> cur;
    auto rec = [&](auto&& self, cgt::Vertex from) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (cgt::Vertex v = from; v < n; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Random game with birthday at most depth.
inline cgt::partizan::Game random_game(Rng& rng, unsigned depth)
{
    using cgt::partizan::Game;
    if (depth == 0) {
        return Game();
    }
    std::vector<Game> left, right;
    const auto nl = uniform(rng, 0, 2);
    const auto nr = uniform(rng, 0, 2);
    for (std::uint32_t i = 0; i < nl; ++i) {
        left.push_back(random_game(rng, uniform(rng, 0, depth - 1)));
    }
    for (std::uint32_t i = 0; i < nr; ++i) {
        right.push_back(random_game(rng, uniform(rng, 0, depth - 1)));
    }
    return Game::make(std::move(left), std::move(right));
}

}  // namespace testing
