#include "cgt/loopy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "cgt/error.hpp"

namespace cgt::loopy {

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::P:
        return "P";
    case Outcome::N:
        return "N";
    case Outcome::D:
        return "D";
    }
    return "?";
}

GammaValue GammaValue::finite(Nimber value)
{
    GammaValue v;
    v.finite_ = true;
    v.value_ = value;
    return v;
}

GammaValue GammaValue::infinite(std::vector<Nimber> reach)
{
    std::sort(reach.begin(), reach.end());
    reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
    GammaValue v;
    v.finite_ = false;
    v.reach_ = std::move(reach);
    return v;
}

Nimber GammaValue::value() const
{
    if (!finite_) {
        throw std::logic_error("GammaValue::value() on an infinite value");
    }
    return value_;
}

const std::vector<Nimber>& GammaValue::reach() const
{
    if (finite_) {
        throw std::logic_error("GammaValue::reach() on a finite value");
    }
    return reach_;
}

std::string GammaValue::to_string() const
{
    if (finite_) {
        return std::to_string(value_);
    }
    std::string s = "inf(";
    for (std::size_t i = 0; i < reach_.size(); ++i) {
        if (i > 0) {
            s += ',';
        }
        s += std::to_string(reach_[i]);
    }
    return s + ")";
}

GammaValue gen_nim_sum(const GammaValue& a, const GammaValue& b)
{
    if (a.is_finite() && b.is_finite()) {
        return GammaValue::finite(a.value() ^ b.value());
    }
    if (!a.is_finite() && !b.is_finite()) {
        return GammaValue::infinite({});
    }
    const GammaValue& fin = a.is_finite() ? a : b;
    const GammaValue& inf = a.is_finite() ? b : a;
    std::vector<Nimber> shifted;
    shifted.reserve(inf.reach().size());
    for (Nimber l : inf.reach()) {
        shifted.push_back(l ^ fin.value());
    }
    return GammaValue::infinite(std::move(shifted));
}

GammaValue gen_nim_sum(std::span<const GammaValue> values)
{
    GammaValue acc = GammaValue::finite(0);
    for (const auto& v : values) {
        acc = gen_nim_sum(acc, v);
    }
    return acc;
}

Outcome classify_value(const GammaValue& v)
{
    if (v.is_finite()) {
        return v.value() == 0 ? Outcome::P : Outcome::N;
    }
    return std::binary_search(v.reach().begin(), v.reach().end(), Nimber{0}) ? Outcome::N
                                                                               : Outcome::D;
}

GammaLabeling gamma(const Digraph& g)
{
    // Staged fixed point. During stage m all values < m are final. An
    // unlabeled u receives m when it has no follower labeled m and every
    // follower that is unlabeled or infinite already has a follower labeled m.
    // At the end of the stage, unlabeled vertices without an m-follower can
    // never reach mex m again and become infinite.
    enum class State : unsigned char { Unlabeled, Finite, Infinite };

    const std::size_t n = g.vertex_count();
    std::vector<State> state(n, State::Unlabeled);
    std::vector<Nimber> value(n, 0);
    std::vector<std::optional<std::uint64_t>> counter(n);
    std::vector<char> has_m(n);
    // bad[u]: followers that are not finite and have no m-follower yet.
    std::vector<std::size_t> bad(n);
    std::deque<Vertex> queue;
    std::size_t unlabeled = n;
    std::uint64_t stamp = 0;

    for (Nimber m = 0; unlabeled > 0; ++m) {
        std::fill(has_m.begin(), has_m.end(), 0);
        for (Vertex u = 0; u < n; ++u) {
            bad[u] = 0;
            for (Vertex v : g.followers(u)) {
                if (state[v] != State::Finite) {
                    ++bad[u];
                }
            }
            if (state[u] == State::Unlabeled && bad[u] == 0) {
                queue.push_back(u);
            }
        }
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            if (state[u] != State::Unlabeled || has_m[u] || bad[u] != 0) {
                continue;
            }
            state[u] = State::Finite;
            value[u] = m;
            counter[u] = stamp++;
            --unlabeled;
            for (Vertex p : g.predecessors(u)) {
                --bad[p];  // u was counted as a non-finite follower of p
                if (has_m[p]) {
                    continue;
                }
                has_m[p] = 1;
                if (state[p] == State::Finite) {
                    continue;
                }
                for (Vertex q : g.predecessors(p)) {
                    if (--bad[q] == 0 && state[q] == State::Unlabeled && !has_m[q]) {
                        queue.push_back(q);
                    }
                }
            }
        }
        for (Vertex u = 0; u < n; ++u) {
            if (state[u] == State::Unlabeled && !has_m[u]) {
                state[u] = State::Infinite;
                --unlabeled;
            }
        }
    }

    GammaLabeling out;
    out.gamma.reserve(n);
    for (Vertex u = 0; u < n; ++u) {
        if (state[u] == State::Finite) {
            out.gamma.push_back(GammaValue::finite(value[u]));
        } else {
            std::vector<Nimber> reach;
            for (Vertex v : g.followers(u)) {
                if (state[v] == State::Finite) {
                    reach.push_back(value[v]);
                }
            }
            out.gamma.push_back(GammaValue::infinite(std::move(reach)));
        }
    }
    out.counter = std::move(counter);
    return out;
}

GammaValue position_value(const GammaLabeling& labels, std::span<const Vertex> tokens)
{
    GammaValue acc = GammaValue::finite(0);
    for (Vertex t : tokens) {
        acc = gen_nim_sum(acc, labels.gamma.at(t));
    }
    return acc;
}

Outcome classify_position(const Digraph& g, const GammaLabeling& labels,
                          std::span<const Vertex> tokens)
{
    check_tokens(g, tokens);
    return classify_value(position_value(labels, tokens));
}

Outcome classify_position(const Digraph& g, std::span<const Vertex> tokens)
{
    return classify_position(g, gamma(g), tokens);
}

std::optional<TokenMove> next_move(const Digraph& g, const GammaLabeling& labels,
                                   std::span<const Vertex> tokens)
{
    check_tokens(g, tokens);
    std::vector<Vertex> sorted(tokens.begin(), tokens.end());
    std::sort(sorted.begin(), sorted.end());

    const Outcome here = classify_value(position_value(labels, sorted));
    if (here == Outcome::P) {
        return std::nullopt;
    }
    const Outcome want = here == Outcome::N ? Outcome::P : Outcome::D;

    std::optional<TokenMove> best;
    std::uint64_t best_counter = 0;
    std::vector<Vertex> after;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            continue;  // same moves as the previous token
        }
        for (Vertex v : g.followers(sorted[i])) {
            after = sorted;
            after[i] = v;
            if (classify_value(position_value(labels, after)) != want) {
                continue;
            }
            if (want == Outcome::D) {
                return TokenMove{i, sorted[i], v};
            }
            // Every token of a P-position sits on a finite vertex.
            std::uint64_t total = 0;
            for (Vertex t : after) {
                total += *labels.counter[t];
            }
            if (!best || total < best_counter) {
                best = TokenMove{i, sorted[i], v};
                best_counter = total;
            }
        }
    }
    if (!best) {
        throw std::logic_error("next_move: no move realizes the position's label");
    }
    return best;
}

std::optional<TokenMove> next_move(const Digraph& g, std::span<const Vertex> tokens)
{
    return next_move(g, gamma(g), tokens);
}

std::vector<Outcome> retrograde_outcomes(const Digraph& game_graph)
{
    const std::size_t n = game_graph.vertex_count();
    std::vector<std::optional<Outcome>> label(n);
    std::vector<std::size_t> open(n);
    std::deque<Vertex> queue;
    for (Vertex u = 0; u < n; ++u) {
        open[u] = game_graph.followers(u).size();
        if (open[u] == 0) {
            label[u] = Outcome::P;
            queue.push_back(u);
        }
    }
    while (!queue.empty()) {
        Vertex s = queue.front();
        queue.pop_front();
        for (Vertex p : game_graph.predecessors(s)) {
            if (label[p]) {
                continue;
            }
            if (*label[s] == Outcome::P) {
                label[p] = Outcome::N;
                queue.push_back(p);
            } else if (--open[p] == 0) {
                label[p] = Outcome::P;
                queue.push_back(p);
            }
        }
    }
    std::vector<Outcome> out(n);
    for (Vertex u = 0; u < n; ++u) {
        out[u] = label[u].value_or(Outcome::D);
    }
    return out;
}

TokenGameGraph expand_token_game(const Digraph& g, std::span<const Vertex> tokens,
                                 std::size_t max_states)
{
    check_tokens(g, tokens);
    TokenPosition start(tokens.begin(), tokens.end());
    std::sort(start.begin(), start.end());

    TokenGameGraph out;
    std::map<TokenPosition, Vertex> index;
    std::vector<Edge> edges;
    auto intern = [&](TokenPosition pos) -> Vertex {
        auto [it, fresh] = index.emplace(pos, static_cast<Vertex>(out.states.size()));
        if (fresh) {
            if (out.states.size() >= max_states) {
                throw BoundExceeded("token game has more than " + std::to_string(max_states) +
                                    " reachable states");
            }
            out.states.push_back(std::move(pos));
        }
        return it->second;
    };
    intern(start);
    for (std::size_t s = 0; s < out.states.size(); ++s) {
        const TokenPosition cur = out.states[s];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (i > 0 && cur[i] == cur[i - 1]) {
                continue;
            }
            for (Vertex v : g.followers(cur[i])) {
                TokenPosition next = cur;
                next[i] = v;
                std::sort(next.begin(), next.end());
                edges.emplace_back(static_cast<Vertex>(s), intern(std::move(next)));
            }
        }
    }
    out.graph = Digraph(out.states.size(), std::move(edges));
    return out;
}

Outcome label_minimax(const Digraph& g, std::span<const Vertex> tokens, std::size_t max_states)
{
    auto game = expand_token_game(g, tokens, max_states);
    return retrograde_outcomes(game.graph)[0];
}

}  // namespace cgt::loopy
