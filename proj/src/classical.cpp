#include "cgt/classical.hpp"

#include <algorithm>
#include <bit>

#include "cgt/error.hpp"

namespace cgt::classical {

const char* to_string(PnLabel label)
{
    return label == PnLabel::P ? "P" : "N";
}

Nimber mex(std::span<const Nimber> values)
{
    // The answer is at most values.size(), so larger entries can be ignored.
    std::vector<bool> seen(values.size() + 1, false);
    for (Nimber v : values) {
        if (v < seen.size()) {
            seen[v] = true;
        }
    }
    return static_cast<Nimber>(std::find(seen.begin(), seen.end(), false) - seen.begin());
}

Nimber nim_sum(std::span<const Nimber> values)
{
    Nimber acc = 0;
    for (Nimber v : values) {
        acc ^= v;
    }
    return acc;
}

GrundyLabeling grundy(const Digraph& g)
{
    auto order = followers_first_order(g);
    if (!order) {
        throw InputError("digraph has a cycle; the g-function needs an acyclic digraph");
    }
    GrundyLabeling out;
    out.values.assign(g.vertex_count(), 0);
    std::vector<Nimber> scratch;
    for (Vertex u : *order) {
        scratch.clear();
        for (Vertex v : g.followers(u)) {
            scratch.push_back(out.values[v]);
        }
        out.values[u] = mex(scratch);
    }
    return out;
}

std::vector<PnLabel> label_pn(const Digraph& g)
{
    auto labels = grundy(g);
    std::vector<PnLabel> out;
    out.reserve(labels.values.size());
    for (Nimber v : labels.values) {
        out.push_back(v == 0 ? PnLabel::P : PnLabel::N);
    }
    return out;
}

namespace {

Nimber token_sum(const GrundyLabeling& labels, std::span<const Vertex> tokens)
{
    Nimber acc = 0;
    for (Vertex t : tokens) {
        acc ^= labels.values[t];
    }
    return acc;
}

}  // namespace

PnLabel classify_sum(const Digraph& g, std::span<const Vertex> tokens)
{
    check_tokens(g, tokens);
    return token_sum(grundy(g), tokens) == 0 ? PnLabel::P : PnLabel::N;
}

std::optional<TokenMove> winning_move(const Digraph& g, const GrundyLabeling& labels,
                                      std::span<const Vertex> tokens)
{
    check_tokens(g, tokens);
    std::vector<Vertex> sorted(tokens.begin(), tokens.end());
    std::sort(sorted.begin(), sorted.end());

    const Nimber total = token_sum(labels, sorted);
    if (total == 0) {
        return std::nullopt;
    }
    const Nimber lead = std::bit_floor(total);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Nimber own = labels.values[sorted[i]];
        if ((own & lead) == 0) {
            continue;
        }
        // own ^ total < own, and the mex rule guarantees a follower with that value.
        const Nimber want = own ^ total;
        for (Vertex v : g.followers(sorted[i])) {
            if (labels.values[v] == want) {
                return TokenMove{i, sorted[i], v};
            }
        }
    }
    throw std::logic_error("winning_move: labeling violates the mex property");
}

std::optional<TokenMove> winning_move(const Digraph& g, std::span<const Vertex> tokens)
{
    return winning_move(g, grundy(g), tokens);
}

Nimber scoring_g(std::uint64_t score, std::uint64_t step)
{
    if (step == 0) {
        throw InputError("scoring step t must be at least 1");
    }
    return score % (step + 1);
}

}  // namespace cgt::classical
