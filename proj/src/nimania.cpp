#include "cgt/nimania.hpp"

#include <random>
#include <set>

#include "cgt/error.hpp"

namespace cgt::nimania {

std::uint64_t EpidemicPosition::size() const
{
    std::uint64_t total = 0;
    for (const auto& [value, count] : counts) {
        total += count;
    }
    return total;
}

std::string EpidemicPosition::to_string() const
{
    std::string s;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        if (!s.empty()) {
            s += ' ';
        }
        s += std::to_string(it->first) + "^" + std::to_string(it->second);
    }
    if (s.empty()) {
        s = "{}";
    }
    return s + " @" + std::to_string(stage);
}

EpidemicPosition start_position(std::uint32_t n)
{
    if (n == 0) {
        throw InputError("Nimania starts from a positive integer");
    }
    EpidemicPosition pos;
    pos.counts[n] = 1;
    return pos;
}

Replication Replication::parse(std::string_view name)
{
    if (name == "nimania") {
        return nimania();
    }
    if (name == "zero") {
        return zero();
    }
    constexpr std::string_view prefix = "constant-";
    if (name.starts_with(prefix)) {
        const auto digits = name.substr(prefix.size());
        if (!digits.empty() && digits.size() <= 18 &&
            digits.find_first_not_of("0123456789") == std::string_view::npos) {
            return constant(std::stoull(std::string(digits)));
        }
    }
    throw InputError("unknown replication function \"" + std::string(name) +
                     "\" (expected nimania, zero or constant-C)");
}

std::uint64_t Replication::operator()(std::uint64_t stage) const
{
    return kind_ == Kind::Linear ? stage : c_;
}

std::string Replication::name() const
{
    if (kind_ == Kind::Linear) {
        return "nimania";
    }
    return c_ == 0 ? "zero" : "constant-" + std::to_string(c_);
}

const char* to_string(Player p)
{
    return p == Player::I ? "I" : "II";
}

std::vector<std::uint32_t> choices(const EpidemicPosition& pos)
{
    std::vector<std::uint32_t> out;
    out.reserve(pos.counts.size());
    for (const auto& [value, count] : pos.counts) {
        out.push_back(value);
    }
    return out;
}

EpidemicPosition apply_move(const EpidemicPosition& pos, std::uint32_t m, const Replication& f)
{
    auto it = pos.counts.find(m);
    if (it == pos.counts.end()) {
        throw InputError("value " + std::to_string(m) + " is not in position " + pos.to_string());
    }
    EpidemicPosition next = pos;
    if (--next.counts[m] == 0) {
        next.counts.erase(m);
    }
    if (m > 1) {
        next.counts[m - 1] += 1 + f(pos.stage);
    }
    ++next.stage;
    return next;
}

Solver::Solver(Replication f, std::uint64_t move_cap, std::size_t state_cap)
    : f_(f), move_cap_(move_cap), state_cap_(state_cap)
{
}

Solver::Value Solver::value(const EpidemicPosition& pos)
{
    return value_at(pos);
}

Solver::Value Solver::value_at(const EpidemicPosition& root)
{
    // Explicit stack: optimal lines for n >= 4 are far deeper than any call stack.
    struct Frame
    {
        EpidemicPosition pos;
        std::vector<std::uint32_t> options;
        std::size_t next = 0;
        std::optional<std::uint64_t> fastest_win;
        std::uint64_t slowest_loss = 0;
    };
    auto known = [&](const EpidemicPosition& pos) -> std::optional<Value> {
        if (pos.empty()) {
            return Value{false, 0};
        }
        if (auto it = memo_.find(pos); it != memo_.end()) {
            return it->second;
        }
        return std::nullopt;
    };
    if (auto v = known(root)) {
        return *v;
    }
    std::vector<Frame> stack;
    auto enter = [&](EpidemicPosition pos) {
        if (stack.size() >= move_cap_) {
            throw BoundExceeded("Nimania search deeper than the move cap " + std::to_string(move_cap_));
        }
        if (memo_.size() + stack.size() >= state_cap_) {
            throw BoundExceeded("Nimania search visited more than " + std::to_string(state_cap_) +
                                " states");
        }
        auto options = choices(pos);
        stack.push_back(Frame{std::move(pos), std::move(options), 0, std::nullopt, 0});
    };
    enter(root);
    bool returned = false;  // a child value is waiting in result
    Value result{false, 0};
    while (true) {
        Frame& top = stack.back();
        if (returned) {
            if (!result.mover_wins) {
                if (!top.fastest_win || result.length < *top.fastest_win) {
                    top.fastest_win = result.length;
                }
            } else {
                top.slowest_loss = std::max(top.slowest_loss, result.length);
            }
            returned = false;
        }
        if (top.next < top.options.size()) {
            auto child = apply_move(top.pos, top.options[top.next++], f_);
            if (auto v = known(child)) {
                result = *v;
                returned = true;
            } else {
                enter(std::move(child));
            }
            continue;
        }
        const Value v = top.fastest_win ? Value{true, 1 + *top.fastest_win}
                                        : Value{false, 1 + top.slowest_loss};
        memo_.emplace(std::move(top.pos), v);
        stack.pop_back();
        if (stack.empty()) {
            return v;
        }
        result = v;
        returned = true;
    }
}

std::optional<std::uint32_t> Solver::best_choice(const EpidemicPosition& pos)
{
    if (pos.empty()) {
        return std::nullopt;
    }
    const Value here = value(pos);
    for (std::uint32_t m : choices(pos)) {
        const Value child = value(apply_move(pos, m, f_));
        if (child.mover_wins != here.mover_wins && child.length + 1 == here.length) {
            return m;
        }
    }
    throw std::logic_error("Solver::best_choice: no child realizes the value");
}

SolveResult solve(std::uint32_t n, const Replication& f, std::uint64_t move_cap,
                  std::size_t state_cap)
{
    Solver solver(f, move_cap, state_cap);
    EpidemicPosition pos = start_position(n);
    const auto root = solver.value(pos);
    SolveResult out{root.mover_wins ? Player::I : Player::II, {}, root.length, 0};
    while (auto m = solver.best_choice(pos)) {
        out.optimal_line.push_back(*m);
        pos = apply_move(pos, *m, f);
    }
    out.states = solver.states();
    return out;
}

Policy parse_policy(std::string_view name)
{
    if (name == "random") {
        return Policy::Random;
    }
    if (name == "solved") {
        return Policy::Solved;
    }
    throw InputError("unknown policy \"" + std::string(name) + "\" (expected random or solved)");
}

Transcript simulate(std::uint32_t n, const Replication& f, Policy policy_one, Policy policy_two,
                    std::uint64_t seed, std::uint64_t move_cap, std::size_t state_cap)
{
    std::mt19937_64 rng(seed);
    std::optional<Solver> solver;
    if (policy_one == Policy::Solved || policy_two == Policy::Solved) {
        solver.emplace(f, move_cap, state_cap);
    }
    Transcript out;
    EpidemicPosition pos = start_position(n);
    while (!pos.empty()) {
        if (out.steps.size() >= move_cap) {
            out.truncated = true;
            return out;
        }
        const Player who = mover(pos);
        const Policy policy = who == Player::I ? policy_one : policy_two;
        std::uint32_t m = 0;
        if (policy == Policy::Solved) {
            m = *solver->best_choice(pos);
        } else {
            const auto options = choices(pos);
            std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
            m = options[pick(rng)];
        }
        out.steps.push_back({pos, who, m});
        pos = apply_move(pos, m, f);
    }
    out.winner = out.steps.empty() ? std::nullopt : std::optional(out.steps.back().player);
    return out;
}

std::optional<Deviation> find_losing_deviation(std::uint32_t n, const Replication& f,
                                               std::uint64_t move_cap, std::size_t state_cap)
{
    Solver solver(f, move_cap, state_cap);
    std::set<EpidemicPosition> seen;
    std::vector<std::uint32_t> line;
    std::optional<Deviation> found;

    // Depth-first in ascending choice order, so the reported deviation is deterministic.
    auto visit = [&](auto&& self, const EpidemicPosition& pos) -> void {
        if (found || pos.empty() || !seen.insert(pos).second) {
            return;
        }
        const bool mover_wins = solver.value(pos).mover_wins;
        if (mover(pos) == Player::I && mover_wins) {
            for (std::uint32_t m : choices(pos)) {
                if (solver.value(apply_move(pos, m, f)).mover_wins) {
                    found = Deviation{line, pos, m};
                    return;
                }
            }
        }
        for (std::uint32_t m : choices(pos)) {
            line.push_back(m);
            self(self, apply_move(pos, m, f));
            line.pop_back();
            if (found) {
                return;
            }
        }
    };
    visit(visit, start_position(n));
    return found;
}

}  // namespace cgt::nimania
