#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgt/digraph.hpp"
#include "cgt/loopy.hpp"

// Token games where a token moving onto an occupied vertex removes both.
namespace cgt::annihilation {

// Occupancy vector over at most 64 vertices; bit u is set iff u holds a token.
class AnnPosition
{
public:
    AnnPosition() = default;
    explicit AnnPosition(std::uint64_t bits) : bits_(bits) {}

    // Throws InputError for repeated vertices or vertices >= 64.
    static AnnPosition from_tokens(std::span<const Vertex> tokens);
    static AnnPosition from_occupancy(const std::vector<bool>& occupancy);

    std::uint64_t bits() const { return bits_; }
    bool occupied(Vertex u) const { return u < 64 && ((bits_ >> u) & 1U) != 0; }
    unsigned token_count() const;
    std::vector<Vertex> tokens() const;

    // "{0,2}".
    std::string to_string() const;

    auto operator<=>(const AnnPosition&) const = default;

private:
    std::uint64_t bits_ = 0;
};

inline constexpr std::size_t max_vertices = 64;
inline constexpr std::size_t default_state_bound = std::size_t{1} << 20;

// pos xor e_u xor e_v for every edge (u, v) with u occupied and u != v, and pos
// itself for every occupied looped vertex. Sorted, without duplicates.
std::vector<AnnPosition> ann_successors(const Digraph& g, AnnPosition pos);

struct AnnGameGraph
{
    std::vector<AnnPosition> states;  // states[0] is the start
    Digraph graph;
};

// Reachable part of the annihilation graph. Throws BoundExceeded past max_states.
AnnGameGraph ann_game_graph(const Digraph& g, AnnPosition start,
                            std::size_t max_states = default_state_bound);

// All 2^n occupancy vectors with their moves; n <= 24.
AnnGameGraph ann_full_graph(const Digraph& g);

loopy::Outcome ann_classify(const Digraph& g, AnnPosition pos,
                            std::size_t max_states = default_state_bound);

// gamma value of the start state on the expanded graph.
loopy::GammaValue ann_gamma(const Digraph& g, AnnPosition pos,
                            std::size_t max_states = default_state_bound);

struct AnnMove
{
    Vertex from;
    Vertex to;
    AnnPosition result;

    bool operator==(const AnnMove&) const = default;
};

// loopy::next_move on the expanded graph, mapped back to a token move.
std::optional<AnnMove> ann_best_move(const Digraph& g, AnnPosition pos,
                                     std::size_t max_states = default_state_bound);

}  // namespace cgt::annihilation
