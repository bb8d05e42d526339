// Acceptance run: one PASS/FAIL line per criterion, each under its time limit.
// usage: acceptance <cgt binary> <golden dir> <data dir>

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cgt/annihilation.hpp"
#include "cgt/classical.hpp"
#include "cgt/heaps.hpp"
#include "cgt/loopy.hpp"
#include "cgt/nimania.hpp"
#include "cgt/partizan.hpp"
#include "support.hpp"

extern char** environ;

using namespace cgt;
namespace fs = std::filesystem;

namespace {

struct Verdict
{
    bool ok = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (ok) {
            detail = why;
        }
        ok = false;
    }
};

// Table 1 exactly as printed, (k, k)-Wythoff rows 0-6, columns 0-11.
const std::vector<std::vector<heaps::Nimber>> printed_table1 = {
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11},
    {1, 2, 0, 4, 5, 3, 7, 8, 6, 10, 11, 9},
    {2, 0, 1, 5, 3, 4, 8, 6, 7, 11, 9, 10},
    {3, 4, 5, 6, 2, 0, 1, 9, 10, 12, 8, 7},
    {4, 5, 3, 2, 7, 6, 9, 0, 1, 8, 13, 14},
    {5, 3, 4, 0, 6, 8, 10, 1, 2, 7, 12, 15},
    {6, 7, 8, 1, 9, 10, 3, 4, 5, 13, 0, 2},
};

// Table 4, first ten rows of the j = 0 and j = 1 columns: (j, B, C).
const std::vector<heaps::Triple> printed_table4 = {
    {0, 0, 0},  {0, 1, 2},  {0, 3, 5},   {0, 4, 7},   {0, 6, 10},
    {0, 8, 13}, {0, 9, 15}, {0, 11, 18}, {0, 12, 20}, {0, 14, 23},
    {1, 1, 1},  {1, 3, 4},  {1, 5, 9},   {1, 6, 12},  {1, 7, 14},
    {1, 8, 11}, {1, 10, 18}, {1, 13, 22}, {1, 15, 20}, {1, 16, 28},
};

Verdict table1()
{
    Verdict v;
    const heaps::TakeTable t(heaps::MoveSet::wythoff(), {6, 11});
    int matched = 0;
    std::string diffs;
    for (std::uint32_t r = 0; r < 7; ++r) {
        for (std::uint32_t c = 0; c < 12; ++c) {
            const auto got = t.at({r, c});
            if (got == printed_table1[r][c]) {
                ++matched;
            } else {
                diffs += " (" + std::to_string(r) + "," + std::to_string(c) + ") printed " +
                         std::to_string(printed_table1[r][c]) + " computed " + std::to_string(got) + ";";
            }
        }
    }
    v.detail = std::to_string(matched) + "/84 entries match";
    if (matched != 84) {
        v.ok = false;
        v.detail += ";" + diffs + " the printed entries break the mex rule";
    }
    return v;
}

Verdict table2()
{
    Verdict v;
    const auto moves = heaps::MoveSet().add_family(heaps::Family::Shift);
    const heaps::TakeTable t(moves, {16, 16});
    for (std::uint32_t a = 0; a <= 16; ++a) {
        for (std::uint32_t b = 0; b <= 16; ++b) {
            if (t.at({a, b}) != (a ^ b)) {
                v.fail("g(" + std::to_string(a) + "," + std::to_string(b) + ") is not a xor b");
            }
        }
    }
    const auto verdict = heaps::nimdi_verdict(moves, 16);
    if (!verdict.criterion || !verdict.brute_force_agrees) {
        v.fail("odd-set verdict is not (true, agrees)");
    }
    if (v.ok) {
        v.detail = "289 positions equal Nim; criterion true";
    }
    return v;
}

Verdict table3()
{
    Verdict v;
    const auto moves = heaps::MoveSet().add_vector({1, 3});
    const heaps::TakeTable t(moves, {2, 3});
    if (t.at({2, 0}) != 2 || t.at({2, 1}) != 3 || t.at({2, 2}) != 0) {
        v.fail("row 2 does not start 2, 3, 0");
    }
    if (t.at({2, 3}) != 4) {
        v.fail("g(2,3) = " + std::to_string(t.at({2, 3})));
    }
    const auto verdict = heaps::nimdi_verdict(moves, 12);
    if (!verdict.witness || *verdict.witness != heaps::HeapPosition{2, 3}) {
        v.fail("witness is not (2,3)");
    }
    if (verdict.criterion || !verdict.consistent()) {
        v.fail("criterion should be false and agree with brute force");
    }
    if (v.ok) {
        v.detail = "row 2 = 2,3,0,4; witness (2,3) with g = 4";
    }
    return v;
}

Verdict table4()
{
    Verdict v;
    const auto p = heaps::wythoff3_p(40);
    const std::set<heaps::Triple> got(p.begin(), p.end());
    for (std::uint32_t j = 0; j <= 1; ++j) {
        std::set<heaps::Triple> printed;
        std::uint32_t max_b = 0;
        for (const auto& t : printed_table4) {
            if (t[0] == j) {
                printed.insert(t);
                max_b = std::max(max_b, t[1]);
            }
        }
        std::set<heaps::Triple> window;
        for (const auto& t : got) {
            if (t[0] == j && t[1] <= max_b) {
                window.insert(t);
            }
        }
        if (window != printed) {
            v.fail("j = " + std::to_string(j) + " rows differ from the computed P-set");
        }
    }
    if (v.ok) {
        v.detail = std::to_string(got.size()) + " P-triples up to 40; both ten-row blocks match";
    }
    return v;
}

Verdict scoring()
{
    Verdict v;
    for (unsigned t = 1; t <= 6; ++t) {
        const auto labels = classical::grundy(scoring_digraph(201, t));
        for (Vertex n = 0; n <= 200; ++n) {
            if (labels[n] != classical::scoring_g(n, t)) {
                v.fail("n = " + std::to_string(n) + ", t = " + std::to_string(t));
            }
        }
    }
    if (classical::classify_sum(scoring_digraph(9, 3), std::vector<Vertex>{5, 6, 7, 8}) !=
        classical::PnLabel::P) {
        v.fail("tokens 5,6,7,8 are not P");
    }
    if (v.ok) {
        v.detail = "1206 vertices match; {5,6,7,8} is P";
    }
    return v;
}

Verdict nim_sum_arith()
{
    using loopy::GammaValue;
    Verdict v;
    if (!(loopy::gen_nim_sum(GammaValue::finite(1), GammaValue::infinite({1})) ==
          GammaValue::infinite({0}))) {
        v.fail("1 + inf(1) is not inf(0)");
    }
    int pairs = 0;
    for (unsigned a = 0; a < 16; ++a) {
        for (unsigned b = 0; b < 16; ++b) {
            std::vector<loopy::Nimber> k, l;
            for (loopy::Nimber x = 0; x < 4; ++x) {
                if (a >> x & 1U) {
                    k.push_back(x);
                }
                if (b >> x & 1U) {
                    l.push_back(x);
                }
            }
            ++pairs;
            if (!(loopy::gen_nim_sum(GammaValue::infinite(k), GammaValue::infinite(l)) ==
                  GammaValue::infinite({}))) {
                v.fail("inf + inf is not inf()");
            }
        }
    }
    if (v.ok) {
        v.detail = "1 + inf(1) = inf(0); " + std::to_string(pairs) + " inf pairs give inf()";
    }
    return v;
}

Verdict gamma_vs_minimax()
{
    Verdict v;
    testing::Rng rng(2024);
    std::size_t positions = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = testing::uniform(rng, 1, 8);
        const double density = 0.1 + 0.4 * testing::uniform(rng, 0, 100) / 100.0;
        const auto g = testing::random_digraph(rng, n, density, true);
        const auto lab = loopy::gamma(g);
        for (std::size_t k = 1; k <= 2; ++k) {
            for (const auto& tokens : testing::multisets(n, k)) {
                ++positions;
                if (loopy::classify_position(g, lab, tokens) != loopy::label_minimax(g, tokens)) {
                    v.fail("disagreement on graph " + std::to_string(trial));
                }
            }
        }
    }
    if (v.ok) {
        v.detail = "200 graphs, " + std::to_string(positions) + " positions, 0 disagreements";
    }
    return v;
}

Verdict annihilation_checks()
{
    using annihilation::AnnPosition;
    Verdict v;
    // Complete digraph: moves never cross parity and each class is one component.
    for (std::size_t n = 1; n <= 10; ++n) {
        std::vector<Edge> edges;
        for (Vertex i = 0; i < n; ++i) {
            for (Vertex j = 0; j < n; ++j) {
                if (i != j) {
                    edges.emplace_back(i, j);
                }
            }
        }
        const auto full = annihilation::ann_full_graph(Digraph(n, edges));
        std::size_t count = 0;
        const auto comp = weak_components(full.graph, &count);
        std::size_t odd = 0;
        for (std::size_t s = 0; s < full.states.size(); ++s) {
            const auto parity = full.states[s].token_count() % 2;
            odd += parity;
            if (comp[s] != comp[parity]) {
                v.fail("(a) mixed parity component, n = " + std::to_string(n));
            }
        }
        for (auto [a, b] : full.graph.edges()) {
            if (full.states[a].token_count() % 2 != full.states[b].token_count() % 2) {
                v.fail("(a) a move changes parity, n = " + std::to_string(n));
            }
        }
        const std::size_t half = std::size_t{1} << (n - 1);
        if (count != 2 || odd != half || full.states.size() != 2 * half) {
            v.fail("(a) parity split fails for n = " + std::to_string(n));
        }
    }
    testing::Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = testing::uniform(rng, 1, 8);
        const auto g = testing::random_dag(rng, n, 0.1 + 0.05 * (trial % 8));
        const auto full = annihilation::ann_full_graph(g);
        const auto lab = loopy::gamma(full.graph);
        for (std::size_t s = 0; s < full.states.size(); ++s) {
            const auto c = loopy::classify_value(lab.gamma[s]);
            const auto expect = classical::classify_sum(g, full.states[s].tokens());
            if (c == loopy::Outcome::D || (c == loopy::Outcome::P) != (expect == classical::PnLabel::P)) {
                v.fail("(b) DAG " + std::to_string(trial) + " differs from the classical label");
            }
        }
    }
    const Digraph cycle(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const std::vector<Vertex> opposite{0, 2};
    if (annihilation::ann_classify(cycle, AnnPosition::from_tokens(opposite)) != loopy::Outcome::P) {
        v.fail("(c) 4-cycle is not P with annihilation");
    }
    if (loopy::label_minimax(cycle, opposite) != loopy::Outcome::D) {
        v.fail("(c) 4-cycle is not D without annihilation");
    }
    if (v.ok) {
        v.detail = "(a) n <= 10 splits in halves; (b) 100 DAGs agree; (c) P vs D";
    }
    return v;
}

Verdict nimania_checks()
{
    Verdict v;
    const auto f = nimania::Replication::nimania();
    const std::uint64_t want[] = {1, 3};
    std::uint64_t len3 = 0;
    for (std::uint32_t n = 1; n <= 3; ++n) {
        const auto r = nimania::solve(n, f);
        if (r.winner != nimania::Player::I) {
            v.fail("n = " + std::to_string(n) + " is not a first-player win");
        }
        if (n <= 2 && r.length != want[n - 1]) {
            v.fail("n = " + std::to_string(n) + " has length " + std::to_string(r.length));
        }
        if (n == 3) {
            len3 = r.length;
        }
    }
    if (!nimania::find_losing_deviation(3, f)) {
        v.fail("no losing deviation for player I at n = 3");
    }
    if (v.ok) {
        v.detail = "I wins n = 1,2,3; lengths 1, 3, " + std::to_string(len3) +
                   " (figure: 13, " + (len3 == 13 ? "same" : "differs") + "); deviation found";
    }
    return v;
}

Verdict nimhoff_forms()
{
    Verdict v;
    std::size_t checked = 0;
    for (std::uint32_t h = 1; h <= 5; ++h) {
        for (std::size_t piles = 1; piles <= 3; ++piles) {
            const heaps::TakeTable t(heaps::MoveSet::cyclic_nimhoff(piles, h),
                                     heaps::HeapPosition(piles, 20));
            for (std::size_t i = 0; i < t.size(); ++i, ++checked) {
                if (t.at_index(i) != heaps::cyclic_nimhoff_g(t.position(i), h)) {
                    v.fail("cyclic h = " + std::to_string(h));
                }
            }
        }
    }
    for (unsigned k = 1; k <= 2; ++k) {
        for (std::size_t piles = 2; piles <= 3; ++piles) {
            const heaps::TakeTable t(heaps::MoveSet::pow2k_nimhoff(piles, k),
                                     heaps::HeapPosition(piles, 16));
            for (std::size_t i = 0; i < t.size(); ++i, ++checked) {
                if (t.at_index(i) != heaps::pow2k_nimhoff_g(t.position(i), k)) {
                    v.fail("2^k k = " + std::to_string(k));
                }
            }
        }
    }
    if (v.ok) {
        v.detail = std::to_string(checked) + " positions, 0 disagreements";
    }
    return v;
}

Verdict partizan_checks()
{
    using namespace partizan;
    Verdict v;
    if (number_value(parse_game("{-1|99}")) != DyadicRational(0)) {
        v.fail("{-1|99} is not 0");
    }
    if (outcome(parse_game("{0|0}")) != OutcomeClass::FirstWins) {
        v.fail("{0|0} is not FirstWins");
    }
    testing::Rng rng(11);
    std::vector<Game> corpus;
    for (int i = 0; i < 100; ++i) {
        corpus.push_back(testing::random_game(rng, 4));
        if (outcome(add(corpus.back(), neg(corpus.back()))) != OutcomeClass::SecondWins) {
            v.fail("g - g is not SecondWins for game " + std::to_string(i));
        }
    }
    std::size_t options = 0;
    auto check_options = [&](auto&& self, const Game& x) -> void {
        for (const auto& l : x.left()) {
            ++options;
            if (!lf(l, x)) {
                v.fail("a left option is not <| its game");
            }
            self(self, l);
        }
        for (const auto& r : x.right()) {
            ++options;
            if (!lf(x, r)) {
                v.fail("a game is not <| its right option");
            }
            self(self, r);
        }
    };
    for (const auto& x : corpus) {
        check_options(check_options, x);
    }
    if (v.ok) {
        v.detail = "100 random games; " + std::to_string(options) + " option relations hold";
    }
    return v;
}

// Runs argv, returns exit status and stdout.
std::pair<int, std::string> spawn(const std::vector<std::string>& argv)
{
    int fds[2];
    if (pipe(fds) != 0) {
        throw std::runtime_error("pipe failed");
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, fds[0]);
    posix_spawn_file_actions_addclose(&actions, fds[1]);
    std::vector<char*> cargs;
    for (const auto& a : argv) {
        cargs.push_back(const_cast<char*>(a.c_str()));
    }
    cargs.push_back(nullptr);
    pid_t pid = 0;
    const int rc = posix_spawn(&pid, cargs[0], &actions, nullptr, cargs.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    close(fds[1]);
    if (rc != 0) {
        close(fds[0]);
        throw std::runtime_error("cannot run " + argv[0]);
    }
    std::string out;
    char buf[4096];
    for (ssize_t got; (got = read(fds[0], buf, sizeof buf)) > 0;) {
        out.append(buf, static_cast<std::size_t>(got));
    }
    close(fds[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism(const std::string& cgt, const fs::path& golden, const fs::path& data)
{
    Verdict v;
    std::vector<fs::path> cases;
    for (const auto& e : fs::directory_iterator(golden)) {
        if (e.path().extension() == ".args") {
            cases.push_back(e.path());
        }
    }
    std::sort(cases.begin(), cases.end());
    if (cases.empty()) {
        v.fail("no golden cases in " + golden.string());
    }
    for (const auto& c : cases) {
        std::vector<std::string> argv{cgt};
        std::istringstream lines(slurp(c));
        for (std::string line; std::getline(lines, line);) {
            for (std::size_t at; (at = line.find("@DATA@")) != std::string::npos;) {
                line.replace(at, 6, data.string());
            }
            argv.push_back(line);
        }
        const auto expected = slurp(fs::path(c).replace_extension(".tsv"));
        for (int run = 0; run < 3; ++run) {
            const auto [rc, out] = spawn(argv);
            if (rc != 0 || out != expected) {
                v.fail(c.stem().string() + " run " + std::to_string(run + 1) + " differs");
            }
        }
    }
    if (v.ok) {
        v.detail = std::to_string(cases.size()) + " golden files x 3 runs identical";
    }
    return v;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 4) {
        std::cerr << "usage: acceptance <cgt binary> <golden dir> <data dir>\n";
        return 2;
    }
    const std::string cgt = argv[1];
    const fs::path golden = argv[2], data = argv[3];

    struct Criterion
    {
        int id;
        const char* name;
        double limit_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Table 1 (k,k)-Wythoff grid", 1, table1},
        {2, "Table 2 shift family is Nim", 5, table2},
        {3, "Table 3 (1,3)-Nimhoff", 1, table3},
        {4, "Table 4 3-pile Wythoff", 60, table4},
        {5, "Scoring closed form", 1, scoring},
        {6, "generalized Nim-sum", 1, nim_sum_arith},
        {7, "gamma vs minimax", 300, gamma_vs_minimax},
        {8, "annihilation", 120, annihilation_checks},
        {9, "Nimania", 60, nimania_checks},
        {10, "Nimhoff closed forms", 300, nimhoff_forms},
        {11, "partizan values", 120, partizan_checks},
        {12, "CLI determinism", 600, [&] { return determinism(cgt, golden, data); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (v.ok && secs >= c.limit_s) {
            v.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s");
        }
        failed += v.ok ? 0 : 1;
        std::printf("%s  %2d  %-30s %8.3fs  %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                    v.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
