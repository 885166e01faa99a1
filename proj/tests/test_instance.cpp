#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kex/diff.hpp"
#include "kex/generate.hpp"
#include "kex/instance.hpp"
#include "kex/rng.hpp"

using namespace kex;

namespace {

Instance path4() {
    return Instance(4, 2, {0, 1, 2, 1, 2}, {{1, 2}, {2, 3}, {3, 4}});
}

Instance fig1() {
    return gen_instance({GeneratorKind::Figure1, 7, 2, 0.0, 0, false});
}

Instance ex1(int n = 12) {
    return gen_instance({GeneratorKind::Example1, n, 3, 0.0, 0, false});
}

}  // namespace

TEST_CASE("parse the 4-vertex path") {
    const std::string text =
        "kex 1\n"
        "agents 2\n"
        "vertices 4\n"
        "owners 1 2 1 2\n"
        "edges 3\n"
        "1 2\n"
        "2 3\n"
        "3 4\n";
    Instance inst = Instance::parse(text);
    CHECK(inst.vertex_count() == 4);
    CHECK(inst.agent_count() == 2);
    CHECK(inst.edges().size() == 3);
    CHECK(inst.owner(1) == 1);
    CHECK(inst.owner(4) == 2);
}

TEST_CASE("parse reports errors with line numbers") {
    auto parse_fails_at = [](const std::string& text, int line) {
        try {
            Instance::parse(text);
            FAIL_CHECK("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    SUBCASE("self-loop") {
        parse_fails_at("kex 1\nagents 1\nvertices 5\nowners 1 1 1 1 1\nedges 1\n5 5\n", 6);
    }
    SUBCASE("malformed header") { parse_fails_at("kexx 1\n", 1); }
    SUBCASE("owner out of range") {
        parse_fails_at("kex 1\nagents 1\nvertices 2\nowners 1 2\nedges 0\n", 4);
    }
    SUBCASE("duplicate edge") {
        parse_fails_at("kex 1\nagents 1\nvertices 2\nowners 1 1\nedges 2\n1 2\n1 2\n", 7);
    }
    SUBCASE("edge count mismatch, too few") {
        parse_fails_at("kex 1\nagents 1\nvertices 2\nowners 1 1\nedges 2\n1 2\n", 6);
    }
    SUBCASE("edge count mismatch, too many") {
        parse_fails_at("kex 1\nagents 1\nvertices 3\nowners 1 1 1\nedges 1\n1 2\n2 3\n", 7);
    }
}

TEST_CASE("serialize(parse(t)) is byte-stable on canonical files") {
    const std::string canonical = fig1().serialize();
    CHECK(Instance::parse(canonical).serialize() == canonical);
    // Comments and unsorted edges are accepted, then canonicalized.
    const std::string messy =
        "# comment\n"
        "kex 1\n"
        "agents 2\n"
        "vertices 7\n"
        "owners 1 2 2 2 1 1 2\n"
        "edges 6\n"
        "6 7\n"
        "1 2\n"
        "2 3\n"
        "4 5\n"
        "3 4\n"
        "6 5\n";
    CHECK(Instance::parse(messy).serialize() == canonical);
}

TEST_CASE("utility counts matched vertices per agent") {
    Instance f = fig1();
    Matching m({{2, 3}, {4, 5}, {6, 7}});
    CHECK(utility(f, m, 1) == 2);
    CHECK(utility(f, m, 2) == 4);
    // Independent recount straight from the definition.
    int recount = 0;
    for (int v = 1; v <= f.vertex_count(); ++v) {
        bool matched = false;
        for (const Edge& e : m.edges()) matched = matched || e.u == v || e.v == v;
        if (matched && f.owner(v) == 1) ++recount;
    }
    CHECK(recount == 2);

    Instance e = ex1();
    std::vector<Edge> cross;
    for (int j = 1; j <= 4; ++j) cross.emplace_back(j, 4 + j);
    CHECK(utility(e, Matching(cross), 1) == 4);
    CHECK(utility(e, Matching(), 1) == 0);
    CHECK_THROWS_AS(utility(e, Matching(cross), 7), std::invalid_argument);
    CHECK_THROWS_AS(utility(e, Matching({{1, 3}}), 1), std::invalid_argument);
}

TEST_CASE("utilities sum to twice the matching size") {
    BitStream rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::Random;
        spec.n = 4 + static_cast<int>(rng.below(10));
        spec.m = 1 + static_cast<int>(rng.below(3));
        spec.p = 0.4;
        spec.seed = rng.u64();
        Instance inst = gen_instance(spec);
        // greedy matching as an arbitrary valid matching
        std::vector<char> used(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
        std::vector<Edge> picked;
        for (const Edge& e : inst.edges()) {
            if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) continue;
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
            picked.push_back(e);
        }
        Matching m(picked);
        int total = 0;
        for (int a = 1; a <= inst.agent_count(); ++a) total += utility(inst, m, a);
        CHECK(total == 2 * static_cast<int>(m.size()));
    }
}

TEST_CASE("symmetric difference basics") {
    Instance p = path4();
    Matching m1({{1, 2}, {3, 4}});
    Matching m2({{2, 3}});
    SUBCASE("identical matchings vanish") {
        CHECK(symmetric_difference(p, m1, m1).empty());
    }
    SUBCASE("disjoint edge sets concatenate") {
        auto d = symmetric_difference(p, m1, m2);
        REQUIRE(d.size() == 3);
        CHECK(d[0].edge == Edge(1, 2));
        CHECK(d[0].origin == EdgeOrigin::FromM1);
        CHECK(d[1].edge == Edge(2, 3));
        CHECK(d[1].origin == EdgeOrigin::FromM2);
        CHECK(d[2].edge == Edge(3, 4));
    }
    SUBCASE("shared edges drop out") {
        Instance q(4, 1, {0, 1, 1, 1, 1}, {{1, 2}, {3, 4}});
        auto d = symmetric_difference(q, Matching({{1, 2}}), Matching({{1, 2}, {3, 4}}));
        REQUIRE(d.size() == 1);
        CHECK(d[0].edge == Edge(3, 4));
        CHECK(d[0].origin == EdgeOrigin::FromM2);
    }
    SUBCASE("commutative up to tags") {
        auto a = symmetric_difference(p, m1, m2);
        auto b = symmetric_difference(p, m2, m1);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].edge == b[i].edge);
    }
}

TEST_CASE("decompose_components recognizes the three shapes") {
    Instance p = path4();
    SUBCASE("odd path") {
        auto comps = decompose_components(
            p, symmetric_difference(p, Matching({{1, 2}, {3, 4}}), Matching({{2, 3}})));
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == ComponentKind::OddPath);
        CHECK(comps[0].vertices == std::vector<int>{1, 2, 3, 4});
        CHECK(comps[0].edges.size() == 3);
        CHECK(comps[0].edges.front().origin == comps[0].edges.back().origin);
    }
    SUBCASE("cycle") {
        Instance c(4, 2, {0, 1, 2, 1, 2}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
        auto comps = decompose_components(
            c, symmetric_difference(c, Matching({{1, 2}, {3, 4}}), Matching({{2, 3}, {1, 4}})));
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == ComponentKind::Cycle);
        CHECK(comps[0].vertices.size() == 4);
        CHECK(comps[0].edges.size() == 4);
        CHECK(comps[0].vertices.front() == 1);
    }
    SUBCASE("even path") {
        auto comps = decompose_components(
            p, symmetric_difference(p, Matching({{1, 2}}), Matching({{2, 3}})));
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == ComponentKind::EvenPath);
        CHECK(comps[0].vertices == std::vector<int>{1, 2, 3});
    }
}

TEST_CASE("decompose_components validates degree and alternation") {
    Instance star(4, 1, {0, 1, 1, 1, 1}, {{1, 2}, {1, 3}, {1, 4}});
    std::vector<TaggedEdge> bad_degree = {{Edge(1, 2), EdgeOrigin::FromM1},
                                          {Edge(1, 3), EdgeOrigin::FromM2},
                                          {Edge(1, 4), EdgeOrigin::FromM1}};
    CHECK_THROWS_AS(decompose_components(star, bad_degree), std::invalid_argument);

    Instance p = path4();
    std::vector<TaggedEdge> bad_tags = {{Edge(1, 2), EdgeOrigin::FromM1},
                                        {Edge(2, 3), EdgeOrigin::FromM1}};
    CHECK_THROWS_AS(decompose_components(p, bad_tags), std::invalid_argument);
}

TEST_CASE("decompose_components partitions the edge multiset") {
    BitStream rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::Random;
        spec.n = 6 + static_cast<int>(rng.below(8));
        spec.m = 2;
        spec.p = 0.35;
        spec.seed = rng.u64();
        Instance inst = gen_instance(spec);
        // two greedy matchings under different edge orders
        auto greedy = [&](bool reversed) {
            std::vector<Edge> order = inst.edges();
            if (reversed) std::reverse(order.begin(), order.end());
            std::vector<char> used(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
            std::vector<Edge> picked;
            for (const Edge& e : order) {
                if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)])
                    continue;
                used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
                picked.push_back(e);
            }
            return Matching(picked);
        };
        auto diff = symmetric_difference(inst, greedy(false), greedy(true));
        auto comps = decompose_components(inst, diff);
        std::multiset<std::pair<int, int>> from_comps, from_diff;
        for (const auto& c : comps)
            for (const auto& te : c.edges) from_comps.insert({te.edge.u, te.edge.v});
        for (const auto& te : diff) from_diff.insert({te.edge.u, te.edge.v});
        CHECK(from_comps == from_diff);
    }
}

TEST_CASE("hide_vertices re-indexes and keeps the id map") {
    Instance f = fig1();
    SUBCASE("figure-1 deviation of agent 1") {
        HiddenInstance h = hide_vertices(f, 1, {5, 6});
        CHECK(h.instance.vertex_count() == 5);
        CHECK(h.instance.edges() == std::vector<Edge>{{1, 2}, {2, 3}, {3, 4}});
        CHECK(h.to_original[5] == 7);
        CHECK(h.instance.neighbors(5).empty());  // old vertex 7 is isolated
        CHECK(h.from_original[7] == 5);
        CHECK(h.instance.owner(5) == 2);
    }
    SUBCASE("empty set is the identity") {
        HiddenInstance h = hide_vertices(f, 1, {});
        CHECK(h.instance == f);
    }
    SUBCASE("hiding everything an agent owns keeps the agent slot") {
        Instance e = ex1();
        HiddenInstance h = hide_vertices(e, 3, {9, 10, 11, 12});
        CHECK(h.instance.vertex_count() == 8);
        CHECK(h.instance.agent_count() == 3);
        CHECK(h.instance.edges().size() == 4);
        CHECK(h.instance.agent_vertices(3).empty());
    }
    SUBCASE("hiding someone else's vertex throws") {
        CHECK_THROWS_AS(hide_vertices(f, 1, {2}), std::invalid_argument);
    }
}

TEST_CASE("generators") {
    SUBCASE("example1 shape") {
        Instance e = ex1();
        CHECK(e.vertex_count() == 12);
        CHECK(e.edges().size() == 4);
        CHECK(e.agent_vertices(3).size() == 4);
        for (int v : e.agent_vertices(3)) CHECK(e.neighbors(v).empty());
    }
    SUBCASE("p = 0 gives an edgeless instance") {
        Instance r = gen_instance({GeneratorKind::Random, 9, 3, 0.0, 5, false});
        CHECK(r.edges().empty());
        for (int a = 1; a <= 3; ++a) CHECK(!r.agent_vertices(a).empty());
    }
    SUBCASE("same spec, same bytes") {
        GeneratorSpec spec{GeneratorKind::Random, 15, 4, 0.3, 42, false};
        CHECK(gen_instance(spec).serialize() == gen_instance(spec).serialize());
    }
    SUBCASE("invariants") {
        CHECK_THROWS_AS(gen_instance({GeneratorKind::Example1, 10, 3, 0.0, 0, false}),
                        std::invalid_argument);
        CHECK_THROWS_AS(gen_instance({GeneratorKind::Figure1, 8, 2, 0.0, 0, false}),
                        std::invalid_argument);
        CHECK_THROWS_AS(gen_instance({GeneratorKind::Random, 5, 2, 1.5, 0, false}),
                        std::invalid_argument);
    }
}
