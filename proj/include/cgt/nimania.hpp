#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Nimania and related epidemiography games: reducing a copy of m > 1 at
// stage k leaves m-1 and adjoins f(k) further copies of m-1.
namespace cgt::nimania {

// Multiset of positive integers (value -> multiplicity) plus the stage k of
// the move about to be made.
struct EpidemicPosition
{
    std::map<std::uint32_t, std::uint64_t> counts;
    std::uint64_t stage = 1;

    bool empty() const { return counts.empty(); }
    std::uint64_t size() const;
    // "3^1 1^2 @2"; "{} @5" when empty.
    std::string to_string() const;

    auto operator<=>(const EpidemicPosition&) const = default;
};

EpidemicPosition start_position(std::uint32_t n);

// f(k): number of extra copies adjoined at stage k.
class Replication
{
public:
    static Replication nimania() { return Replication(Kind::Linear, 0); }
    static Replication constant(std::uint64_t c) { return Replication(Kind::Constant, c); }
    static Replication zero() { return constant(0); }

    // "nimania", "zero" or "constant-C". Throws InputError.
    static Replication parse(std::string_view name);

    std::uint64_t operator()(std::uint64_t stage) const;
    std::string name() const;

private:
    enum class Kind { Linear, Constant };
    Replication(Kind kind, std::uint64_t c) : kind_(kind), c_(c) {}

    Kind kind_;
    std::uint64_t c_;
};

enum class Player { I, II };

const char* to_string(Player p);

inline Player mover(const EpidemicPosition& pos)
{
    return pos.stage % 2 == 1 ? Player::I : Player::II;
}

// Distinct values that can be chosen, ascending.
std::vector<std::uint32_t> choices(const EpidemicPosition& pos);

// Throws InputError when m is not present.
EpidemicPosition apply_move(const EpidemicPosition& pos, std::uint32_t m, const Replication& f);

inline constexpr std::uint64_t default_move_cap = 1'000'000;
inline constexpr std::size_t default_state_cap = 2'000'000;

// Exhaustive solver. The winner shortens play and the loser prolongs it.
class Solver
{
public:
    struct Value
    {
        bool mover_wins;
        std::uint64_t length;  // moves until the game ends under min-max play
    };

    explicit Solver(Replication f, std::uint64_t move_cap = default_move_cap,
                    std::size_t state_cap = default_state_cap);

    // Throws BoundExceeded past the depth or state cap.
    Value value(const EpidemicPosition& pos);

    // The min-max choice; nullopt on the empty position.
    std::optional<std::uint32_t> best_choice(const EpidemicPosition& pos);

    std::size_t states() const { return memo_.size(); }

private:
    Value value_at(const EpidemicPosition& root);

    Replication f_;
    std::uint64_t move_cap_;
    std::size_t state_cap_;
    std::map<EpidemicPosition, Value> memo_;
};

struct SolveResult
{
    Player winner;
    std::vector<std::uint32_t> optimal_line;  // chosen value at each move
    std::uint64_t length;
    std::size_t states;
};

SolveResult solve(std::uint32_t n, const Replication& f, std::uint64_t move_cap = default_move_cap,
                  std::size_t state_cap = default_state_cap);

enum class Policy { Random, Solved };

// "random" or "solved". Throws InputError.
Policy parse_policy(std::string_view name);

struct Step
{
    EpidemicPosition before;
    Player player;
    std::uint32_t choice;
};

struct Transcript
{
    std::vector<Step> steps;
    std::optional<Player> winner;  // unset when truncated
    bool truncated = false;
};

// Deterministic for a given seed. Hitting move_cap truncates the transcript.
Transcript simulate(std::uint32_t n, const Replication& f, Policy policy_one, Policy policy_two,
                    std::uint64_t seed, std::uint64_t move_cap = default_move_cap,
                    std::size_t state_cap = default_state_cap);

// A reachable position where player I is to move and wins, together with a
// choice that hands player II the win.
struct Deviation
{
    std::vector<std::uint32_t> line;  // moves leading from the start to position
    EpidemicPosition position;
    std::uint32_t losing_choice;
};

std::optional<Deviation> find_losing_deviation(std::uint32_t n, const Replication& f,
                                               std::uint64_t move_cap = default_move_cap,
                                               std::size_t state_cap = default_state_cap);

}  // namespace cgt::nimania
