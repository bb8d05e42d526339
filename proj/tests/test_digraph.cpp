#include <doctest.h>

#include "cgt/digraph.hpp"
#include "cgt/error.hpp"
#include "support.hpp"

using namespace cgt;

TEST_CASE("parse: empty graph")
{
    auto g = parse_digraph(R"({"n":0,"edges":[]})");
    CHECK(g.vertex_count() == 0);
    CHECK(g.edge_count() == 0);
    CHECK(is_acyclic(g));
}

TEST_CASE("parse: parallel edges collapse, loops stay")
{
    auto g = parse_digraph(R"({"n":2,"edges":[[0,1],[0,1]]})");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);

    auto l = parse_digraph(R"({"n":1,"edges":[[0,0],[0,0]]})");
    CHECK(l.edge_count() == 1);
    CHECK(l.followers(0).size() == 1);
    CHECK(l.followers(0)[0] == 0);
    CHECK_FALSE(is_acyclic(l));
}

TEST_CASE("parse: scoring board with t = 3")
{
    std::string edges;
    for (int i = 1; i < 9; ++i) {
        for (int d = 1; d <= 3 && i - d >= 0; ++d) {
            edges += (edges.empty() ? "" : ",") + std::string("[") + std::to_string(i) + "," +
                     std::to_string(i - d) + "]";
        }
    }
    auto g = parse_digraph(R"({"n":9,"edges":[)" + edges + "]}");
    CHECK(g.vertex_count() == 9);
    CHECK(g == scoring_digraph(9, 3));
    auto f = g.followers(3);
    CHECK(std::vector<Vertex>(f.begin(), f.end()) == std::vector<Vertex>{0, 1, 2});
    CHECK(g.followers(0).empty());
    CHECK(is_acyclic(g));
}

TEST_CASE("parse: errors")
{
    CHECK_THROWS_AS(parse_digraph("{"), InputError);
    CHECK_THROWS_AS(parse_digraph("[1,2]"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"edges":[]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":-1,"edges":[]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":2,"edges":[[0,2]]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":2,"edges":[[-1,0]]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":2,"edges":[[0]]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":2,"edges":[[0,1]],"tokens":[5]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":2,"occupancy":[1]})"), InputError);
    CHECK_THROWS_AS(parse_digraph(R"({"n":2,"names":["a","a"]})"), InputError);
}

TEST_CASE("parse: names map to indices in input order")
{
    auto doc = parse_graph_document(
        R"({"n":3,"names":["x","y","z"],"edges":[["z","y"],[1,"x"]],"tokens":["z",0]})");
    CHECK(doc.graph.has_edge(2, 1));
    CHECK(doc.graph.has_edge(1, 0));
    CHECK(*doc.tokens == TokenPosition{2, 0});
    CHECK(vertex_label(doc, 2) == "z");
    CHECK_THROWS_AS(parse_graph_document(R"({"n":1,"names":["a"],"edges":[["a","b"]]})"),
                    InputError);
}

TEST_CASE("followers: leaf, loop-only, out of range")
{
    Digraph g(3, {{0, 0}, {1, 2}});
    CHECK(g.followers(2).empty());
    CHECK(g.followers(0).size() == 1);
    CHECK(g.predecessors(2)[0] == 1);
    CHECK_THROWS_AS(g.followers(3), InputError);
    CHECK_THROWS_AS(Digraph(2, {{0, 2}}), InputError);
}

TEST_CASE("acyclicity: cycles and loops")
{
    CHECK_FALSE(is_acyclic(parse_digraph(R"({"n":2,"edges":[[0,1],[1,0]]})")));
    CHECK_FALSE(is_acyclic(parse_digraph(R"({"n":1,"edges":[[0,0]]})")));
    CHECK(is_acyclic(Digraph(5, {})));
}

TEST_CASE("property: is_acyclic agrees with sink removal")
{
    testing::Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = testing::uniform(rng, 0, 9);
        const double density = 0.05 + 0.4 * (trial % 10) / 10.0;
        auto g = trial % 2 ? testing::random_digraph(rng, n, density / 3, trial % 4 == 1)
                           : testing::random_dag(rng, n, density);
        CHECK(is_acyclic(g) == testing::acyclic_by_sink_removal(g));
        CHECK(is_acyclic(g) == followers_first_order(g).has_value());
    }
}

TEST_CASE("property: follower sets are in range and sum to the edge count")
{
    testing::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = testing::random_digraph(rng, testing::uniform(rng, 0, 10), 0.3, true);
        std::size_t total = 0;
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            auto f = g.followers(u);
            total += f.size();
            CHECK(std::is_sorted(f.begin(), f.end()));
            CHECK(std::adjacent_find(f.begin(), f.end()) == f.end());
            for (Vertex v : f) {
                CHECK(v < g.vertex_count());
                CHECK(g.has_edge(u, v));
            }
        }
        CHECK(total == g.edge_count());
    }
}

TEST_CASE("followers_first_order puts followers first")
{
    testing::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = testing::random_dag(rng, 10, 0.3);
        auto order = followers_first_order(g);
        REQUIRE(order);
        std::vector<std::size_t> at(g.vertex_count());
        for (std::size_t i = 0; i < order->size(); ++i) {
            at[(*order)[i]] = i;
        }
        for (auto [u, v] : g.edges()) {
            CHECK(at[v] < at[u]);
        }
    }
}

TEST_CASE("weak components")
{
    std::size_t count = 0;
    auto comp = weak_components(Digraph(5, {{3, 0}, {1, 4}}), &count);
    CHECK(count == 3);
    CHECK(comp == std::vector<std::size_t>{0, 1, 2, 0, 1});
}

TEST_CASE("scoring_digraph rejects t = 0")
{
    CHECK_THROWS_AS(scoring_digraph(4, 0), InputError);
    CHECK(scoring_digraph(3, 5).followers(2).size() == 2);
}
