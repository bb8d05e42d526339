#include "cgt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cgt/annihilation.hpp"
#include "cgt/classical.hpp"
#include "cgt/digraph.hpp"
#include "cgt/error.hpp"
#include "cgt/heaps.hpp"
#include "cgt/loopy.hpp"
#include "cgt/nimania.hpp"
#include "cgt/octal.hpp"
#include "cgt/partizan.hpp"

namespace cgt::cli {

namespace {

using Row = std::vector<std::string>;

// Rows are written as TSV, or column-aligned with --pretty.
class Table
{
public:
    void add(Row row) { rows_.push_back(std::move(row)); }

    void write(std::ostream& out, bool pretty) const
    {
        std::vector<std::size_t> width;
        if (pretty) {
            for (const auto& row : rows_) {
                width.resize(std::max(width.size(), row.size()), 0);
                for (std::size_t i = 0; i < row.size(); ++i) {
                    width[i] = std::max(width[i], row[i].size());
                }
            }
        }
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i > 0) {
                    out << (pretty ? "  " : "\t");
                }
                out << row[i];
                if (pretty && i + 1 < row.size()) {
                    out << std::string(width[i] - row[i].size(), ' ');
                }
            }
            out << '\n';
        }
    }

private:
    std::vector<Row> rows_;
};

template <typename T>
std::string str(const T& v)
{
    return std::to_string(v);
}

std::string join(const std::vector<std::uint32_t>& xs, char sep)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            s += sep;
        }
        s += std::to_string(xs[i]);
    }
    return s;
}

struct GraphInput
{
    std::string path;
    std::string json;

    void attach(CLI::App* cmd)
    {
        auto* in = cmd->add_option("--input", path, "Digraph JSON file ('-' reads standard input)");
        auto* js = cmd->add_option("--json", json, "Digraph JSON given inline");
        in->excludes(js);
    }

    GraphDocument load() const
    {
        if (path.empty() && json.empty()) {
            throw InputError("give the digraph with --input FILE or --json TEXT");
        }
        if (!json.empty()) {
            return parse_graph_document(json);
        }
        std::stringstream buf;
        if (path == "-") {
            buf << std::cin.rdbuf();
        } else {
            std::ifstream file(path);
            if (!file) {
                throw InputError("cannot open " + path);
            }
            buf << file.rdbuf();
        }
        return parse_graph_document(buf.str());
    }
};

enum class GraphMode { Auto, Grundy, Gamma };

bool use_gamma(GraphMode mode, const Digraph& g)
{
    if (mode == GraphMode::Auto) {
        return !is_acyclic(g);
    }
    if (mode == GraphMode::Grundy && !is_acyclic(g)) {
        throw InputError("--mode grundy needs an acyclic digraph");
    }
    return mode == GraphMode::Gamma;
}

std::string token_list(const GraphDocument& doc, std::span<const Vertex> tokens)
{
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        s += (i ? "," : "") + vertex_label(doc, tokens[i]);
    }
    return s.empty() ? "-" : s;
}

void graph_solve(const GraphDocument& doc, GraphMode mode, Table& t)
{
    const Digraph& g = doc.graph;
    if (!use_gamma(mode, g)) {
        const auto labels = classical::grundy(g);
        t.add({"vertex", "g", "label"});
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            const auto v = labels[u];
            t.add({vertex_label(doc, u), str(v), v == 0 ? "P" : "N"});
        }
        if (doc.tokens) {
            check_tokens(g, *doc.tokens);
            classical::Nimber sum = 0;
            for (Vertex x : *doc.tokens) {
                sum ^= labels[x];
            }
            t.add({"position", token_list(doc, *doc.tokens), str(sum), sum == 0 ? "P" : "N"});
        }
        return;
    }
    const auto labels = loopy::gamma(g);
    t.add({"vertex", "gamma", "label", "counter"});
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        const auto& v = labels.gamma[u];
        t.add({vertex_label(doc, u), v.to_string(), loopy::to_string(loopy::classify_value(v)),
               labels.counter[u] ? str(*labels.counter[u]) : "-"});
    }
    if (doc.tokens) {
        check_tokens(g, *doc.tokens);
        const auto v = loopy::position_value(labels, *doc.tokens);
        t.add({"position", token_list(doc, *doc.tokens), v.to_string(),
               loopy::to_string(loopy::classify_value(v))});
    }
}

void sum_move(const GraphDocument& doc, GraphMode mode, Table& t)
{
    const Digraph& g = doc.graph;
    if (!doc.tokens) {
        throw InputError("sum-move needs \"tokens\" in the digraph document");
    }
    const auto& tokens = *doc.tokens;
    std::optional<classical::TokenMove> move;
    if (!use_gamma(mode, g)) {
        const auto labels = classical::grundy(g);
        t.add({"outcome", classical::to_string(classical::classify_sum(g, tokens))});
        move = classical::winning_move(g, labels, tokens);
    } else {
        const auto labels = loopy::gamma(g);
        t.add({"outcome", loopy::to_string(loopy::classify_position(g, labels, tokens))});
        move = loopy::next_move(g, labels, tokens);
    }
    if (move) {
        t.add({"move", str(move->token_index), vertex_label(doc, move->from),
               vertex_label(doc, move->to)});
    } else {
        t.add({"move", "none"});
    }
}

void annihilate(const GraphDocument& doc, std::size_t max_states, Table& t)
{
    annihilation::AnnPosition pos;
    if (doc.occupancy && doc.tokens) {
        throw InputError("give either \"tokens\" or \"occupancy\", not both");
    }
    if (doc.occupancy) {
        pos = annihilation::AnnPosition::from_occupancy(*doc.occupancy);
    } else if (doc.tokens) {
        check_tokens(doc.graph, *doc.tokens);
        pos = annihilation::AnnPosition::from_tokens(*doc.tokens);
    } else {
        throw InputError("annihilate needs \"tokens\" or \"occupancy\"");
    }
    const auto game = annihilation::ann_game_graph(doc.graph, pos, max_states);
    const auto labels = loopy::gamma(game.graph);
    const auto& value = labels.gamma[0];
    t.add({"position", token_list(doc, pos.tokens())});
    t.add({"states", str(game.states.size())});
    t.add({"gamma", value.to_string()});
    t.add({"outcome", loopy::to_string(loopy::classify_value(value))});
    if (auto m = annihilation::ann_best_move(doc.graph, pos, max_states)) {
        t.add({"move", vertex_label(doc, m->from), vertex_label(doc, m->to),
               token_list(doc, m->result.tokens())});
    } else {
        t.add({"move", "none"});
    }
}

void grid(Table& t, std::uint32_t rows, std::uint32_t cols,
          const std::function<classical::Nimber(std::uint32_t, std::uint32_t)>& cell)
{
    for (std::uint32_t r = 0; r < rows; ++r) {
        Row row;
        for (std::uint32_t c = 0; c < cols; ++c) {
            row.push_back(str(cell(r, c)));
        }
        t.add(std::move(row));
    }
}

void take_grid(Table& t, const heaps::MoveSet& moves, std::uint32_t rows, std::uint32_t cols,
               std::size_t max_cells)
{
    if (rows == 0 || cols == 0) {
        return;
    }
    const heaps::TakeTable table(moves, {rows - 1, cols - 1}, max_cells);
    grid(t, rows, cols, [&](std::uint32_t r, std::uint32_t c) { return table.at({r, c}); });
}

heaps::Removal parse_vector(const std::string& text)
{
    heaps::Removal out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos ||
            item.size() > 9) {
            throw InputError("bad removal vector \"" + text + "\"");
        }
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    return out;
}

heaps::MoveSet build_moves(const std::vector<std::string>& vectors,
                           const std::vector<std::string>& families)
{
    heaps::MoveSet moves;
    for (const auto& f : families) {
        if (f == "diag") {
            moves.add_family(heaps::Family::Diagonal);
        } else if (f == "shift") {
            moves.add_family(heaps::Family::Shift);
        } else if (f == "xorzero") {
            moves.add_family(heaps::Family::XorZero);
        } else {
            throw InputError("unknown family \"" + f + "\" (expected diag, shift or xorzero)");
        }
    }
    for (const auto& v : vectors) {
        moves.add_vector(parse_vector(v));
    }
    return moves;
}

std::string yes_no(bool b)
{
    return b ? "true" : "false";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Combinatorial game solver: Grundy and gamma values, heap games, Nimania and "
                 "partizan values. Output is TSV on standard output."};
    app.name("cgt");
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Align columns instead of tab-separating them");
    // lets --pretty appear after the subcommand too
    app.fallthrough();

    // graph-solve / sum-move / annihilate
    GraphInput solve_in, move_in, ann_in;
    GraphMode solve_mode = GraphMode::Auto, move_mode = GraphMode::Auto;
    const std::map<std::string, GraphMode> mode_names{
        {"auto", GraphMode::Auto}, {"grundy", GraphMode::Grundy}, {"gamma", GraphMode::Gamma}};
    std::size_t ann_states = annihilation::default_state_bound;

    auto* graph_solve_cmd =
        app.add_subcommand("graph-solve", "Label every vertex (g or gamma) and the token position");
    solve_in.attach(graph_solve_cmd);
    graph_solve_cmd->add_option("--mode", solve_mode, "auto, grundy or gamma")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));

    auto* sum_move_cmd = app.add_subcommand("sum-move", "Next optimal move for the token position");
    move_in.attach(sum_move_cmd);
    sum_move_cmd->add_option("--mode", move_mode, "auto, grundy or gamma")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));

    auto* ann_cmd = app.add_subcommand("annihilate", "Classify an annihilation position and move");
    ann_in.attach(ann_cmd);
    ann_cmd->add_option("--max-states", ann_states, "Bound on reachable annihilation states");

    // wythoff
    std::uint32_t rows = 7, cols = 12;
    std::size_t max_cells = heaps::default_max_cells;
    auto* wythoff_cmd = app.add_subcommand("wythoff", "Grundy grid of two-pile Wythoff");
    wythoff_cmd->add_option("--rows", rows, "Number of rows (first pile 0..rows-1)");
    wythoff_cmd->add_option("--cols", cols, "Number of columns (second pile 0..cols-1)");
    wythoff_cmd->add_option("--max-cells", max_cells, "Bound on table cells");

    // nimhoff
    auto* nimhoff_cmd = app.add_subcommand("nimhoff", "Nimhoff and Nimdi heap games");
    nimhoff_cmd->require_subcommand(1);
    std::uint32_t nh_rows = 8, nh_cols = 12, nh_h = 3, nh_bound = 12;
    unsigned nh_k = 1, nh_rounds = 3;
    bool nh_brute = false;
    std::size_t nh_piles = 0;
    std::vector<std::string> nh_vectors, nh_families;
    std::string nh_base = "nim";

    auto* cyclic_cmd = nimhoff_cmd->add_subcommand("cyclic", "Cyclic Nimhoff g grid, moves 0 < sum b < h");
    cyclic_cmd->add_option("--cycle", nh_h, "Cycle length h >= 1");
    auto* pow2k_cmd = nimhoff_cmd->add_subcommand("pow2k", "2^k-Nimhoff g grid via the k-Nim-sum");
    pow2k_cmd->add_option("--k", nh_k, "Exponent k >= 1");
    for (auto* c : {cyclic_cmd, pow2k_cmd}) {
        c->add_option("--rows", nh_rows, "Number of rows");
        c->add_option("--cols", nh_cols, "Number of columns");
        c->add_flag("--brute", nh_brute, "Use exhaustive search instead of the closed form");
    }
    auto* take_cmd = nimhoff_cmd->add_subcommand("take", "Two-pile Take game g grid");
    take_cmd->add_option("--rows", nh_rows, "Number of rows");
    take_cmd->add_option("--cols", nh_cols, "Number of columns");
    auto* nimdi_cmd =
        nimhoff_cmd->add_subcommand("nimdi", "Odd-set criterion versus brute force");
    nimdi_cmd->add_option("--bound", nh_bound, "Largest pile checked");
    nimdi_cmd->add_option("--piles", nh_piles, "Number of piles (default: from the move set)");
    for (auto* c : {take_cmd, nimdi_cmd}) {
        c->add_option("--vector", nh_vectors, "Removal vector such as 1,3 (repeatable)");
        c->add_option("--family", nh_families, "Family diag, shift or xorzero (repeatable)");
    }
    auto* adjoin_cmd =
        nimhoff_cmd->add_subcommand("adjoin", "Adjoin a two-pile game's P-positions as moves");
    adjoin_cmd->add_option("--rounds", nh_rounds, "Number of rounds");
    adjoin_cmd->add_option("--bound", nh_bound, "Largest pile");
    adjoin_cmd->add_option("--base", nh_base, "Starting game: nim or wythoff");
    for (auto* c : {cyclic_cmd, pow2k_cmd, take_cmd, nimdi_cmd, adjoin_cmd}) {
        c->add_option("--max-cells", max_cells, "Bound on table cells");
    }

    // wythoff3
    std::uint32_t w3_limit = 40, w3_max = heaps::max_wythoff3_limit;
    auto* wythoff3_cmd = app.add_subcommand("wythoff3", "P-positions of 3-pile Wythoff");
    wythoff3_cmd->add_option("--limit", w3_limit, "Largest pile");
    wythoff3_cmd->add_option("--max-limit", w3_max, "Refuse limits above this");

    // octal
    std::string octal_code;
    std::size_t octal_max = 100, octal_limit = heaps::default_octal_max;
    auto* octal_cmd = app.add_subcommand("octal", "Octal game g-sequence and period report");
    octal_cmd->add_option("--code", octal_code, "Octal code, e.g. 0.07 or 3")->required();
    octal_cmd->add_option("--max", octal_max, "Largest heap");
    octal_cmd->add_option("--max-limit", octal_limit, "Refuse --max above this");

    // nimania
    auto* nimania_cmd = app.add_subcommand("nimania", "Nimania solver and simulator");
    nimania_cmd->require_subcommand(1);
    std::uint32_t nm_n = 3;
    std::string nm_f = "nimania", nm_policy = "random", nm_policy_one, nm_policy_two;
    std::uint64_t nm_seed = 0, nm_move_cap = nimania::default_move_cap;
    std::size_t nm_state_cap = nimania::default_state_cap;
    bool nm_deviation = false;
    auto* nm_solve_cmd = nimania_cmd->add_subcommand("solve", "Exhaustive solution from n");
    nm_solve_cmd->add_flag("--deviation", nm_deviation, "Also report a losing move for player I");
    auto* nm_sim_cmd = nimania_cmd->add_subcommand("simulate", "Play one game with given policies");
    nm_sim_cmd->add_option("--seed", nm_seed, "Random seed");
    nm_sim_cmd->add_option("--policy", nm_policy, "Policy for both players: random or solved");
    nm_sim_cmd->add_option("--policy-one", nm_policy_one, "Policy for player I");
    nm_sim_cmd->add_option("--policy-two", nm_policy_two, "Policy for player II");
    for (auto* c : {nm_solve_cmd, nm_sim_cmd}) {
        c->add_option("--n", nm_n, "Starting integer");
        c->add_option("--f", nm_f, "Replication function: nimania, zero or constant-C");
        c->add_option("--move-cap", nm_move_cap, "Bound on moves / search depth");
        c->add_option("--state-cap", nm_state_cap, "Bound on solver states");
    }

    // partizan
    auto* partizan_cmd = app.add_subcommand("partizan", "Partizan game values");
    partizan_cmd->require_subcommand(1);
    std::string pz_game, pz_board;
    std::size_t pz_cells = partizan::default_domineering_cells;
    auto* pz_eval_cmd = partizan_cmd->add_subcommand("eval", "Value of a game in brace notation");
    pz_eval_cmd->add_option("game", pz_game, "Game such as {-1|99}")->required();
    auto* pz_outcome_cmd = partizan_cmd->add_subcommand("outcome", "Outcome class of a game");
    pz_outcome_cmd->add_option("game", pz_game, "Game such as {0|0}")->required();
    auto* pz_dom_cmd = partizan_cmd->add_subcommand("domineering", "Value of a Domineering board");
    pz_dom_cmd->add_option("--board", pz_board, "Cells 'r,c;r,c;...' or a rectangle 'RxC'")
        ->required();
    pz_dom_cmd->add_option("--max-cells", pz_cells, "Bound on board cells");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    Table t;
    try {
        if (graph_solve_cmd->parsed()) {
            graph_solve(solve_in.load(), solve_mode, t);
        } else if (sum_move_cmd->parsed()) {
            sum_move(move_in.load(), move_mode, t);
        } else if (ann_cmd->parsed()) {
            annihilate(ann_in.load(), ann_states, t);
        } else if (wythoff_cmd->parsed()) {
            take_grid(t, heaps::MoveSet::wythoff(), rows, cols, max_cells);
        } else if (cyclic_cmd->parsed()) {
            if (nh_brute) {
                take_grid(t, heaps::MoveSet::cyclic_nimhoff(2, nh_h), nh_rows, nh_cols, max_cells);
            } else {
                grid(t, nh_rows, nh_cols,
                     [&](auto r, auto c) { return heaps::cyclic_nimhoff_g({r, c}, nh_h); });
            }
        } else if (pow2k_cmd->parsed()) {
            if (nh_brute) {
                take_grid(t, heaps::MoveSet::pow2k_nimhoff(2, nh_k), nh_rows, nh_cols, max_cells);
            } else {
                heaps::k_nim_sum(0, 0, nh_k);  // validates k
                grid(t, nh_rows, nh_cols,
                     [&](auto r, auto c) { return heaps::pow2k_nimhoff_g({r, c}, nh_k); });
            }
        } else if (take_cmd->parsed()) {
            auto moves = build_moves(nh_vectors, nh_families);
            if (moves.arity() && *moves.arity() != 2) {
                throw InputError("nimhoff take draws two-pile grids");
            }
            take_grid(t, moves, nh_rows, nh_cols, max_cells);
        } else if (nimdi_cmd->parsed()) {
            auto moves = build_moves(nh_vectors, nh_families);
            auto verdict = heaps::nimdi_verdict(
                moves, nh_bound, nh_piles == 0 ? std::nullopt : std::optional(nh_piles), max_cells);
            t.add({"moves", moves.describe()});
            t.add({"criterion", yes_no(verdict.criterion)});
            t.add({"brute_force_agrees", yes_no(verdict.brute_force_agrees)});
            if (verdict.witness) {
                t.add({"witness", join(*verdict.witness, ','), str(*verdict.witness_value)});
            } else {
                t.add({"witness", "none"});
            }
        } else if (adjoin_cmd->parsed()) {
            heaps::MoveSet base;
            if (nh_base == "wythoff") {
                base = heaps::MoveSet::wythoff();
            } else if (nh_base != "nim") {
                throw InputError("--base must be nim or wythoff");
            }
            const auto rounds_out = heaps::adjoin_p_as_moves(base, nh_rounds, nh_bound, max_cells);
            t.add({"round", "a", "b"});
            for (std::size_t r = 0; r < rounds_out.size(); ++r) {
                for (const auto& [a, b] : rounds_out[r].p_positions) {
                    t.add({str(r + 1), str(a), str(b)});
                }
            }
        } else if (wythoff3_cmd->parsed()) {
            for (const auto& [a, b, c] : heaps::wythoff3_p(w3_limit, w3_max)) {
                t.add({str(a), str(b), str(c)});
            }
        } else if (octal_cmd->parsed()) {
            const auto code = heaps::OctalCode::parse(octal_code);
            const auto seq = heaps::octal_g_sequence(code, octal_max, octal_limit);
            t.add({"code", code.to_string()});
            Row row{"sequence"};
            for (auto v : seq) {
                row.push_back(str(v));
            }
            t.add(std::move(row));
            if (auto p = heaps::find_period(seq)) {
                t.add({"period", str(p->period), "preperiod", str(p->preperiod)});
            } else {
                t.add({"period", "none"});
            }
        } else if (nm_solve_cmd->parsed()) {
            const auto f = nimania::Replication::parse(nm_f);
            const auto result = nimania::solve(nm_n, f, nm_move_cap, nm_state_cap);
            t.add({"winner", nimania::to_string(result.winner)});
            t.add({"length", str(result.length)});
            t.add({"states", str(result.states)});
            t.add({"line", join(result.optimal_line, ' ')});
            if (nm_deviation) {
                if (auto d = nimania::find_losing_deviation(nm_n, f, nm_move_cap, nm_state_cap)) {
                    t.add({"deviation", join(d->line, ' '), d->position.to_string(),
                           str(d->losing_choice)});
                } else {
                    t.add({"deviation", "none"});
                }
            }
        } else if (nm_sim_cmd->parsed()) {
            const auto f = nimania::Replication::parse(nm_f);
            const auto one = nimania::parse_policy(nm_policy_one.empty() ? nm_policy : nm_policy_one);
            const auto two = nimania::parse_policy(nm_policy_two.empty() ? nm_policy : nm_policy_two);
            const auto tr = nimania::simulate(nm_n, f, one, two, nm_seed, nm_move_cap, nm_state_cap);
            t.add({"move", "player", "position", "choice"});
            for (std::size_t i = 0; i < tr.steps.size(); ++i) {
                const auto& s = tr.steps[i];
                t.add({str(i + 1), nimania::to_string(s.player), s.before.to_string(),
                       str(s.choice)});
            }
            if (tr.truncated) {
                t.add({"truncated", str(tr.steps.size())});
            } else {
                t.add({"winner", tr.winner ? nimania::to_string(*tr.winner) : "none"});
            }
        } else if (pz_eval_cmd->parsed()) {
            t.add({partizan::to_string(partizan::parse_game(pz_game))});
        } else if (pz_outcome_cmd->parsed()) {
            t.add({partizan::to_string(partizan::outcome(partizan::parse_game(pz_game)))});
        } else if (pz_dom_cmd->parsed()) {
            const auto g = partizan::domineering_value(partizan::parse_board(pz_board), pz_cells);
            t.add({"value", partizan::to_string(g)});
            t.add({"outcome", partizan::to_string(partizan::outcome(g))});
        }
    } catch (const BoundExceeded& e) {
        err << "cgt: resource bound exceeded: " << e.what() << '\n';
        return exit_bound_exceeded;
    } catch (const InputError& e) {
        err << "cgt: invalid input: " << e.what() << '\n';
        return exit_invalid_input;
    }
    t.write(out, pretty);
    return exit_ok;
}

}  // namespace cgt::cli
