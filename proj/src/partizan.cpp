#include "cgt/partizan.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <unordered_map>

#include "cgt/error.hpp"

namespace cgt::partizan {

DyadicRational::DyadicRational(std::int64_t num, unsigned exp) : num_(num), exp_(exp)
{
    while (exp_ > 0 && num_ % 2 == 0) {
        num_ /= 2;
        --exp_;
    }
}

DyadicRational DyadicRational::parse(std::string_view text)
{
    auto bad = [&] { return InputError("not a dyadic rational: \"" + std::string(text) + "\""); };
    std::int64_t num = 0;
    auto slash = text.find('/');
    auto head = text.substr(0, slash);
    auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), num);
    if (ec != std::errc() || p != head.data() + head.size() || head.empty()) {
        throw bad();
    }
    if (slash == std::string_view::npos) {
        return DyadicRational(num);
    }
    auto tail = text.substr(slash + 1);
    std::uint64_t den = 0;
    auto [q, ec2] = std::from_chars(tail.data(), tail.data() + tail.size(), den);
    if (ec2 != std::errc() || q != tail.data() + tail.size() || !std::has_single_bit(den) ||
        den > (std::uint64_t{1} << 30)) {
        throw bad();
    }
    return DyadicRational(num, static_cast<unsigned>(std::countr_zero(den)));
}

DyadicRational DyadicRational::midpoint(const DyadicRational& a, const DyadicRational& b)
{
    const unsigned e = std::max(a.exp_, b.exp_);
    const std::int64_t sum = (a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_));
    return DyadicRational(sum, e + 1);
}

std::string DyadicRational::to_string() const
{
    if (exp_ == 0) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(denominator());
}

std::strong_ordering DyadicRational::operator<=>(const DyadicRational& other) const
{
    const unsigned e = std::max(exp_, other.exp_);
    return (num_ << (e - exp_)) <=> (other.num_ << (e - other.exp_));
}

namespace {

std::atomic<std::uint64_t> next_id{0};

struct PairHash
{
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const
    {
        return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
    }
};

// Memo tables for one thread. Game ids are never reused, so entries stay valid.
struct Session
{
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, bool, PairHash> leq;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Game, PairHash> sums;
    std::unordered_map<std::uint64_t, Game> negations;
    std::map<DyadicRational, Game> numbers;
    std::map<std::vector<Cell>, Game> domineering;

    static Session& current()
    {
        thread_local Session s;
        return s;
    }
};

}  // namespace

Game::Game() : Game(make({}, {})) {}

Game Game::make(std::vector<Game> left, std::vector<Game> right)
{
    unsigned birthday = 0;
    for (const auto* side : {&left, &right}) {
        for (const Game& o : *side) {
            birthday = std::max(birthday, o.birthday() + 1);
        }
    }
    auto node = std::make_shared<Node>(
        Node{std::move(left), std::move(right), next_id.fetch_add(1), birthday});
    return Game(std::move(node));
}

Game Game::star()
{
    Game zero;
    return make({zero}, {zero});
}

Game Game::number(const DyadicRational& value)
{
    auto& memo = Session::current().numbers;
    if (auto it = memo.find(value); it != memo.end()) {
        return it->second;
    }
    Game g;
    if (value.exponent() > 0) {
        // p/2^e = {(p-1)/2^e | (p+1)/2^e}
        const auto p = value.numerator();
        const auto e = value.exponent();
        g = make({number(DyadicRational(p - 1, e))}, {number(DyadicRational(p + 1, e))});
    } else if (value.numerator() > 0) {
        if (value.numerator() > 4096) {
            throw InputError("integer game too large: " + value.to_string());
        }
        g = make({number(DyadicRational(value.numerator() - 1))}, {});
    } else if (value.numerator() < 0) {
        if (value.numerator() < -4096) {
            throw InputError("integer game too large: " + value.to_string());
        }
        g = make({}, {number(DyadicRational(value.numerator() + 1))});
    } else {
        g = make({}, {});
    }
    memo.emplace(value, g);
    return g;
}

Game neg(const Game& g)
{
    auto& memo = Session::current().negations;
    if (auto it = memo.find(g.id()); it != memo.end()) {
        return it->second;
    }
    std::vector<Game> left, right;
    for (const Game& r : g.right()) {
        left.push_back(neg(r));
    }
    for (const Game& l : g.left()) {
        right.push_back(neg(l));
    }
    Game out = Game::make(std::move(left), std::move(right));
    memo.emplace(g.id(), out);
    return out;
}

Game add(const Game& g, const Game& h)
{
    auto& memo = Session::current().sums;
    const auto key = std::make_pair(g.id(), h.id());
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    std::vector<Game> left, right;
    for (const Game& gl : g.left()) {
        left.push_back(add(gl, h));
    }
    for (const Game& hl : h.left()) {
        left.push_back(add(g, hl));
    }
    for (const Game& gr : g.right()) {
        right.push_back(add(gr, h));
    }
    for (const Game& hr : h.right()) {
        right.push_back(add(g, hr));
    }
    Game out = Game::make(std::move(left), std::move(right));
    memo.emplace(key, out);
    return out;
}

bool leq(const Game& x, const Game& y)
{
    auto& memo = Session::current().leq;
    const auto key = std::make_pair(x.id(), y.id());
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    bool result = true;
    for (const Game& xl : x.left()) {
        if (leq(y, xl)) {
            result = false;
            break;
        }
    }
    if (result) {
        for (const Game& yr : y.right()) {
            if (leq(yr, x)) {
                result = false;
                break;
            }
        }
    }
    memo.emplace(key, result);
    return result;
}

bool lf(const Game& x, const Game& y)
{
    return !leq(y, x);
}

bool equal(const Game& x, const Game& y)
{
    return leq(x, y) && leq(y, x);
}

bool fuzzy(const Game& x, const Game& y)
{
    return !leq(x, y) && !leq(y, x);
}

const char* to_string(OutcomeClass c)
{
    switch (c) {
    case OutcomeClass::LeftWins:
        return "LeftWins";
    case OutcomeClass::RightWins:
        return "RightWins";
    case OutcomeClass::FirstWins:
        return "FirstWins";
    case OutcomeClass::SecondWins:
        return "SecondWins";
    }
    return "?";
}

OutcomeClass outcome(const Game& g)
{
    const Game zero;
    const bool le = leq(g, zero);
    const bool ge = leq(zero, g);
    if (le && ge) {
        return OutcomeClass::SecondWins;
    }
    if (ge) {
        return OutcomeClass::LeftWins;
    }
    if (le) {
        return OutcomeClass::RightWins;
    }
    return OutcomeClass::FirstWins;
}

std::optional<DyadicRational> number_value(const Game& g)
{
    // The numbers z with g^L <| z <| g^R form an interval, and the simplest
    // one is found by descending the number tree (0, then integers outward,
    // then bisection), which visits candidates in birthday order. A number
    // equal to g is born no later than g, so the walk stops after
    // birthday(g) steps.
    enum class Fit { Fits, TooSmall, TooLarge, Neither };
    auto fit = [&](const DyadicRational& z) {
        const Game zg = Game::number(z);
        bool above_left = true;
        for (const Game& l : g.left()) {
            above_left = above_left && lf(l, zg);
        }
        bool below_right = true;
        for (const Game& r : g.right()) {
            below_right = below_right && lf(zg, r);
        }
        if (above_left && below_right) {
            return Fit::Fits;
        }
        if (!above_left && !below_right) {
            return Fit::Neither;
        }
        return above_left ? Fit::TooLarge : Fit::TooSmall;
    };

    const unsigned budget = std::min(g.birthday(), 60U);
    std::optional<DyadicRational> found;
    DyadicRational z(0);
    Fit f = fit(z);
    unsigned steps = 0;
    if (f == Fit::Fits) {
        found = z;
    } else if (f != Fit::Neither) {
        // Integers outward until the direction flips or z fits.
        const std::int64_t dir = f == Fit::TooSmall ? 1 : -1;
        DyadicRational prev = z;
        while (f != Fit::Fits && steps < budget) {
            prev = z;
            z = DyadicRational(z.numerator() + dir);
            ++steps;
            const Fit nf = fit(z);
            if (nf == Fit::Neither) {
                break;
            }
            if (nf == Fit::Fits) {
                found = z;
                break;
            }
            if (nf != f) {
                // Overshot: the interval lies strictly between prev and z.
                DyadicRational lo = std::min(prev, z), hi = std::max(prev, z);
                while (steps < budget) {
                    const DyadicRational mid = DyadicRational::midpoint(lo, hi);
                    ++steps;
                    const Fit mf = fit(mid);
                    if (mf == Fit::Fits) {
                        found = mid;
                        break;
                    }
                    if (mf == Fit::Neither) {
                        break;
                    }
                    (mf == Fit::TooSmall ? lo : hi) = mid;
                }
                break;
            }
        }
    }
    if (found && equal(g, Game::number(*found))) {
        return found;
    }
    return std::nullopt;
}

std::string to_string(const Game& g)
{
    if (auto v = number_value(g)) {
        return v->to_string();
    }
    if (equal(g, Game::star())) {
        return "*";
    }
    std::string s = "{";
    for (std::size_t i = 0; i < g.left().size(); ++i) {
        s += (i ? "," : "") + to_string(g.left()[i]);
    }
    s += "|";
    for (std::size_t i = 0; i < g.right().size(); ++i) {
        s += (i ? "," : "") + to_string(g.right()[i]);
    }
    return s + "}";
}

namespace {

class GameParser
{
public:
    explicit GameParser(std::string_view text) : text_(text) {}

    Game parse_all()
    {
        Game g = parse();
        skip_space();
        if (pos_ != text_.size()) {
            fail("trailing input");
        }
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw InputError("cannot parse game \"" + std::string(text_) + "\" at offset " +
                         std::to_string(pos_) + ": " + why);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Game parse()
    {
        if (++depth_ > 256) {
            fail("nesting too deep");
        }
        const char c = peek();
        Game out;
        if (c == '{') {
            ++pos_;
            auto left = parse_list('|');
            ++pos_;
            auto right = parse_list('}');
            ++pos_;
            out = Game::make(std::move(left), std::move(right));
        } else if (c == '*') {
            ++pos_;
            out = Game::star();
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
                ++pos_;
            }
            out = Game::number(DyadicRational::parse(text_.substr(start, pos_ - start)));
        } else {
            fail(c == '\0' ? "unexpected end" : std::string("unexpected '") + c + "'");
        }
        --depth_;
        return out;
    }

    std::vector<Game> parse_list(char close)
    {
        std::vector<Game> out;
        if (peek() == close) {
            return out;
        }
        while (true) {
            out.push_back(parse());
            const char c = peek();
            if (c == close) {
                return out;
            }
            if (c != ',') {
                fail(std::string("expected ',' or '") + close + "'");
            }
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    unsigned depth_ = 0;
};

std::vector<Cell> normalized(std::vector<Cell> cells)
{
    if (cells.empty()) {
        return cells;
    }
    int r0 = cells[0].row, c0 = cells[0].col;
    for (const Cell& c : cells) {
        r0 = std::min(r0, c.row);
        c0 = std::min(c0, c.col);
    }
    for (Cell& c : cells) {
        c.row -= r0;
        c.col -= c0;
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

std::vector<std::vector<Cell>> components(const std::vector<Cell>& cells)
{
    std::set<Cell> left(cells.begin(), cells.end());
    std::vector<std::vector<Cell>> out;
    while (!left.empty()) {
        std::vector<Cell> comp{*left.begin()};
        left.erase(left.begin());
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const Cell c = comp[i];
            for (Cell n : {Cell{c.row + 1, c.col}, Cell{c.row - 1, c.col}, Cell{c.row, c.col + 1},
                           Cell{c.row, c.col - 1}}) {
                if (left.erase(n) > 0) {
                    comp.push_back(n);
                }
            }
        }
        out.push_back(normalized(std::move(comp)));
    }
    return out;
}

Game domineering_region(const std::vector<Cell>& cells);

// Options equal in value to an earlier one add nothing; keeping them only
// bloats every sum built on top.
std::vector<Game> distinct_values(std::vector<Game> options)
{
    std::vector<Game> out;
    for (auto& o : options) {
        if (std::none_of(out.begin(), out.end(), [&](const Game& k) { return equal(k, o); })) {
            out.push_back(std::move(o));
        }
    }
    return out;
}

Game domineering_cells(const std::vector<Cell>& cells)
{
    Game total;
    bool first = true;
    for (const auto& comp : components(cells)) {
        Game v = domineering_region(comp);
        total = first ? v : add(total, v);
        first = false;
    }
    return total;
}

// cells is one normalized connected region.
Game domineering_region(const std::vector<Cell>& cells)
{
    auto& memo = Session::current().domineering;
    if (auto it = memo.find(cells); it != memo.end()) {
        return it->second;
    }
    const std::set<Cell> present(cells.begin(), cells.end());
    auto without = [&](Cell a, Cell b) {
        std::vector<Cell> rest;
        for (const Cell& c : cells) {
            if (!(c == a) && !(c == b)) {
                rest.push_back(c);
            }
        }
        return domineering_cells(rest);
    };
    std::vector<Game> left, right;
    for (const Cell& c : cells) {
        if (present.count({c.row + 1, c.col})) {
            left.push_back(without(c, {c.row + 1, c.col}));
        }
        if (present.count({c.row, c.col + 1})) {
            right.push_back(without(c, {c.row, c.col + 1}));
        }
    }
    Game out = Game::make(distinct_values(std::move(left)), distinct_values(std::move(right)));
    memo.emplace(cells, out);
    return out;
}

}  // namespace

Game parse_game(std::string_view text)
{
    return GameParser(text).parse_all();
}

Game domineering_value(std::vector<Cell> cells, std::size_t max_cells)
{
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
        throw InputError("Domineering board lists a cell twice");
    }
    if (cells.size() > max_cells) {
        throw BoundExceeded("Domineering board has " + std::to_string(cells.size()) +
                            " cells, bound is " + std::to_string(max_cells));
    }
    return domineering_cells(cells);
}

std::vector<Cell> parse_board(std::string_view text)
{
    auto bad = [&] { return InputError("cannot parse board \"" + std::string(text) + "\""); };
    auto to_int = [&](std::string_view s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
            throw bad();
        }
        return v;
    };
    std::vector<Cell> out;
    if (auto x = text.find('x'); x != std::string_view::npos) {
        const int rows = to_int(text.substr(0, x));
        const int cols = to_int(text.substr(x + 1));
        if (rows < 0 || cols < 0 || rows > 64 || cols > 64) {
            throw bad();
        }
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                out.push_back({r, c});
            }
        }
        return out;
    }
    while (!text.empty()) {
        const auto semi = text.find(';');
        const auto item = text.substr(0, semi);
        const auto comma = item.find(',');
        if (comma == std::string_view::npos) {
            throw bad();
        }
        out.push_back({to_int(item.substr(0, comma)), to_int(item.substr(comma + 1))});
        if (semi == std::string_view::npos) {
            break;
        }
        text = text.substr(semi + 1);
    }
    return out;
}

}  // namespace cgt::partizan
