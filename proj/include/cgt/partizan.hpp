#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Finite partizan games {L | R}: sums, negation, order, outcome classes and
// number values.
namespace cgt::partizan {

// num / 2^exp, kept reduced (num odd, or exp == 0).
class DyadicRational
{
public:
    DyadicRational() = default;
    DyadicRational(std::int64_t num, unsigned exp = 0);

    // "5", "-3/4". Throws InputError.
    static DyadicRational parse(std::string_view text);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return std::int64_t{1} << exp_; }
    unsigned exponent() const { return exp_; }

    // (a + b) / 2.
    static DyadicRational midpoint(const DyadicRational& a, const DyadicRational& b);

    std::string to_string() const;

    bool operator==(const DyadicRational&) const = default;
    std::strong_ordering operator<=>(const DyadicRational& other) const;

private:
    std::int64_t num_ = 0;
    unsigned exp_ = 0;
};

// Immutable game form with structural sharing. Equality of *values* is
// leq both ways; operator== is not defined on purpose.
class Game
{
public:
    Game();  // 0 = {|}

    static Game make(std::vector<Game> left, std::vector<Game> right);
    // Canonical number forms, e.g. 2 = {1|}, 1/2 = {0|1}.
    static Game number(const DyadicRational& value);
    static Game integer(std::int64_t n) { return number(DyadicRational(n)); }
    static Game star();

    std::span<const Game> left() const { return node_->left; }
    std::span<const Game> right() const { return node_->right; }

    // Unique per form; used as the memo key.
    std::uint64_t id() const { return node_->id; }
    unsigned birthday() const { return node_->birthday; }

private:
    struct Node
    {
        std::vector<Game> left;
        std::vector<Game> right;
        std::uint64_t id;
        unsigned birthday;
    };
    explicit Game(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

Game neg(const Game& g);
Game add(const Game& g, const Game& h);

// x <= y: no x^L >= y and no y^R <= x.
bool leq(const Game& x, const Game& y);
// x <| y (less than or fuzzy): not y <= x.
bool lf(const Game& x, const Game& y);
bool equal(const Game& x, const Game& y);
bool fuzzy(const Game& x, const Game& y);

enum class OutcomeClass { LeftWins, RightWins, FirstWins, SecondWins };

const char* to_string(OutcomeClass c);

OutcomeClass outcome(const Game& g);

// Simplest number z with x^L <| z <| x^R for every option, if it equals g.
std::optional<DyadicRational> number_value(const Game& g);

// Numbers print as numbers, other games as {L,...|R,...} of their options.
std::string to_string(const Game& g);

// Brace notation: "{-1|99}", "{0|0}", "{|}", "{ {0|} , 1/2 | * }", integers,
// dyadic fractions and "*". Throws InputError.
Game parse_game(std::string_view text);

struct Cell
{
    int row;
    int col;

    auto operator<=>(const Cell&) const = default;
};

inline constexpr std::size_t default_domineering_cells = 12;

// Left places vertical dominoes, Right horizontal ones. Disconnected regions
// are evaluated separately and added. Throws BoundExceeded past max_cells.
Game domineering_value(std::vector<Cell> cells,
                       std::size_t max_cells = default_domineering_cells);

// "0,0;1,0" or a rectangle "2x3". Throws InputError.
std::vector<Cell> parse_board(std::string_view text);

}  // namespace cgt::partizan
