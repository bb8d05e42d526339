#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgt/classical.hpp"
#include "cgt/digraph.hpp"

// Generalized Sprague-Grundy (gamma) theory for digraphs with cycles and
// loops, where positions can be draws.
namespace cgt::loopy {

using classical::Nimber;

enum class Outcome { P, N, D };

const char* to_string(Outcome o);

// Either a finite value m or infinity(K), K the finite values reachable in one move.
class GammaValue
{
public:
    static GammaValue finite(Nimber value);
    // K is sorted and deduplicated.
    static GammaValue infinite(std::vector<Nimber> reach);

    bool is_finite() const { return finite_; }
    // Precondition: is_finite().
    Nimber value() const;
    // Precondition: !is_finite().
    const std::vector<Nimber>& reach() const;

    bool operator==(const GammaValue&) const = default;

    // "3", "inf()", "inf(0,1)".
    std::string to_string() const;

private:
    GammaValue() = default;

    bool finite_ = true;
    Nimber value_ = 0;
    std::vector<Nimber> reach_;
};

// a + b per the generalized Nim-sum: XOR on finite values,
// a + inf(L) = inf(L xor a), inf(K) + inf(L) = inf().
GammaValue gen_nim_sum(const GammaValue& a, const GammaValue& b);
GammaValue gen_nim_sum(std::span<const GammaValue> values);

Outcome classify_value(const GammaValue& v);

struct GammaLabeling
{
    std::vector<GammaValue> gamma;
    // Set exactly on vertices with finite gamma: the order in which the
    // finite values were fixed. Used as the counter function.
    std::vector<std::optional<std::uint64_t>> counter;
};

GammaLabeling gamma(const Digraph& g);

GammaValue position_value(const GammaLabeling& labels, std::span<const Vertex> tokens);

Outcome classify_position(const Digraph& g, std::span<const Vertex> tokens);
Outcome classify_position(const Digraph& g, const GammaLabeling& labels,
                          std::span<const Vertex> tokens);

using TokenMove = classical::TokenMove;

// From N: a move to P with the smallest total counter afterwards.
// From D: a move that keeps the draw. From P: nullopt.
std::optional<TokenMove> next_move(const Digraph& g, std::span<const Vertex> tokens);
std::optional<TokenMove> next_move(const Digraph& g, const GammaLabeling& labels,
                                   std::span<const Vertex> tokens);

// P/N/D labels of every vertex of an explicit game graph by backward
// induction: sinks are P, anything with a P follower is N, anything whose
// followers are all N is P, and whatever never gets labeled is D.
std::vector<Outcome> retrograde_outcomes(const Digraph& game_graph);

// The game graph of a k-token game: one state per reachable sorted token tuple.
struct TokenGameGraph
{
    std::vector<TokenPosition> states;  // states[0] is the start, sorted
    Digraph graph;
};

inline constexpr std::size_t default_minimax_states = 2'000'000;

// Throws BoundExceeded when more than max_states states are reachable.
TokenGameGraph expand_token_game(const Digraph& g, std::span<const Vertex> tokens,
                                 std::size_t max_states = default_minimax_states);

// Exact label by backward induction on the expanded game graph.
Outcome label_minimax(const Digraph& g, std::span<const Vertex> tokens,
                      std::size_t max_states = default_minimax_states);

}  // namespace cgt::loopy
