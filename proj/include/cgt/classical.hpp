#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cgt/digraph.hpp"

// Sprague-Grundy theory on finite acyclic digraphs.
namespace cgt::classical {

using Nimber = std::uint64_t;

enum class PnLabel { P, N };

const char* to_string(PnLabel label);

// Smallest nonnegative integer absent from values (duplicates allowed).
Nimber mex(std::span<const Nimber> values);

Nimber nim_sum(std::span<const Nimber> values);

// g-values indexed by vertex.
struct GrundyLabeling
{
    std::vector<Nimber> values;

    Nimber operator[](Vertex u) const { return values.at(u); }
};

// Throws InputError on a cyclic graph; loopy::gamma handles those.
GrundyLabeling grundy(const Digraph& g);

std::vector<PnLabel> label_pn(const Digraph& g);

PnLabel classify_sum(const Digraph& g, std::span<const Vertex> tokens);

// token_index refers to the tokens in sorted order.
struct TokenMove
{
    std::size_t token_index;
    Vertex from;
    Vertex to;

    bool operator==(const TokenMove&) const = default;
};

// A move to a P-position, or nullopt when the position already is P.
std::optional<TokenMove> winning_move(const Digraph& g, std::span<const Vertex> tokens);

// Same as above with a labeling computed once by the caller.
std::optional<TokenMove> winning_move(const Digraph& g, const GrundyLabeling& labels,
                                      std::span<const Vertex> tokens);

// Grundy value of score n in Scoring with step bound t: n mod (t + 1).
Nimber scoring_g(std::uint64_t score, std::uint64_t step);

}  // namespace cgt::classical
