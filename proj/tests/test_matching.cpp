#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kex/generate.hpp"
#include "kex/matching.hpp"
#include "kex/rng.hpp"

using namespace kex;

namespace {

Instance path(int n) {
    std::vector<int> owners(1, 0);
    for (int v = 1; v <= n; ++v) owners.push_back(1);
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
    return Instance(n, 1, std::move(owners), std::move(edges));
}

Instance ex1() { return gen_instance({GeneratorKind::Example1, 12, 3, 0.0, 0, false}); }

LabelVector labels_of(std::vector<int> bits) {
    LabelVector l;
    l.bits.push_back(0);
    for (int b : bits) l.bits.push_back(static_cast<std::uint8_t>(b));
    return l;
}

Instance random_instance(BitStream& rng, int max_n, int max_m, double p) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::Random;
    spec.m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_m)));
    spec.n = spec.m + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - spec.m + 1)));
    spec.p = p;
    spec.seed = rng.u64();
    return gen_instance(spec);
}

LabelVector random_labels(BitStream& rng, int m) {
    LabelVector labels;
    labels.bits.push_back(0);
    std::uint32_t mask = static_cast<std::uint32_t>(rng.below(1ull << m));
    for (int i = 1; i <= m; ++i) labels.bits.push_back((mask >> (i - 1)) & 1u);
    return labels;
}

}  // namespace

TEST_CASE("max_matching on basic shapes") {
    CHECK(max_matching(path(7)).size() == 3);  // odd path leaves one vertex out
    CHECK(max_matching(Instance(3, 1, {0, 1, 1, 1}, {})).empty());
    // triangle with a pendant: enumeration says 2
    Instance t(4, 1, {0, 1, 1, 1, 1}, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
    CHECK(brute_force_matching(t, nullptr, false).size() == 2);
    CHECK(max_matching(t).size() == 2);
}

TEST_CASE("max_matching is deterministic") {
    BitStream rng(3);
    Instance inst = random_instance(rng, 14, 3, 0.4);
    Matching a = max_matching(inst);
    Matching b = max_matching(inst);
    CHECK(a.edges() == b.edges());
}

TEST_CASE("constrained_max_matching on Example 1") {
    Instance e = ex1();
    SUBCASE("labels (1,0,0): the full cross matching survives") {
        Matching m = constrained_max_matching(e, labels_of({1, 0, 0}));
        CHECK(m.size() == 4);
        CHECK(utility(e, m, 1) == 4);
    }
    SUBCASE("labels (1,1,0): everything is removed") {
        CHECK(constrained_max_matching(e, labels_of({1, 1, 0})).empty());
    }
}

TEST_CASE("constrained_max_matching keeps internal maxima") {
    // agent 1 owns {1,2} with an internal edge, agent 2 owns {3}; the
    // internal edge must be taken even though matching across could look
    // better edge-wise.
    Instance inst(3, 2, {0, 1, 1, 2}, {{1, 2}, {1, 3}, {2, 3}});
    Matching m = constrained_max_matching(inst, labels_of({1, 0}));
    CHECK(m.size() == 1);
    CHECK(m.contains(Edge(1, 2)));
}

TEST_CASE("tier-3 priority favors label-1 agents serially") {
    Instance inst(3, 3, {0, 1, 2, 3}, {{1, 2}, {2, 3}});
    Matching m = constrained_max_matching(inst, labels_of({1, 0, 1}));
    REQUIRE(m.size() == 1);
    CHECK(m.contains(Edge(1, 2)));
    Matching m2 = constrained_max_matching(inst, labels_of({0, 0, 1}));
    REQUIRE(m2.size() == 1);
    CHECK(m2.contains(Edge(2, 3)));
}

TEST_CASE("brute force guard") {
    Instance inst = gen_instance({GeneratorKind::Random, 15, 2, 0.2, 1, false});
    CHECK_THROWS_AS(brute_force_matching(inst, nullptr, false), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random instances") {
    BitStream rng(2024);
    const double ps[] = {0.15, 0.35, 0.6};
    for (int trial = 0; trial < 150; ++trial) {
        Instance inst = random_instance(rng, 12, 4, ps[trial % 3]);
        CAPTURE(inst.serialize());

        Matching fast = max_matching(inst);
        Matching slow = brute_force_matching(inst, nullptr, false);
        CHECK(fast.size() == slow.size());

        LabelVector labels = random_labels(rng, inst.agent_count());
        MatchingObjective obj = MatchingObjective::for_labels(labels);
        Matching cfast = constrained_max_matching(inst, labels);
        Matching cslow = brute_force_matching(inst, &labels, true);
        CHECK(objective_value(inst, obj, cfast) == objective_value(inst, obj, cslow));
    }
}

TEST_CASE("constrained output restricts to per-agent maxima") {
    BitStream rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_instance(rng, 12, 3, 0.45);
        LabelVector labels = random_labels(rng, inst.agent_count());
        Matching m = constrained_max_matching(inst, labels);
        for (int a = 1; a <= inst.agent_count(); ++a) {
            std::vector<int> verts = inst.agent_vertices(a);
            std::vector<int> newid(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
            std::vector<int> owners(1, 0);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                newid[static_cast<std::size_t>(verts[i])] = static_cast<int>(i) + 1;
                owners.push_back(1);
            }
            std::vector<Edge> internal;
            int internal_in_m = 0;
            for (const Edge& e : inst.edges())
                if (newid[static_cast<std::size_t>(e.u)] && newid[static_cast<std::size_t>(e.v)])
                    internal.emplace_back(newid[static_cast<std::size_t>(e.u)],
                                          newid[static_cast<std::size_t>(e.v)]);
            for (const Edge& e : m.edges())
                if (inst.owner(e.u) == a && inst.owner(e.v) == a) ++internal_in_m;
            Instance sub(static_cast<int>(verts.size()), 1, std::move(owners),
                         std::move(internal));
            CHECK(internal_in_m == static_cast<int>(max_matching(sub).size()));
        }
    }
}

TEST_CASE("blossom-heavy structures") {
    // Two triangles joined by a bridge.
    Instance two_tri(6, 1, {0, 1, 1, 1, 1, 1, 1},
                     {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
    CHECK(max_matching(two_tri).size() == 3);
    // Petersen graph has a perfect matching.
    std::vector<Edge> pet = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5},
                             {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                             {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}};
    Instance petersen(10, 1, {0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, std::move(pet));
    CHECK(max_matching(petersen).size() == 5);
}

TEST_CASE("max_matching_against leaves the disfavored agent short") {
    Instance f = gen_instance({GeneratorKind::Figure1, 7, 2, 0.0, 0, false});
    Matching against1 = max_matching_against(f, 1);
    CHECK(against1.size() == 3);
    CHECK(utility(f, against1, 1) == 2);  // an agent-1 vertex stays unmatched
    Matching against2 = max_matching_against(f, 2);
    CHECK(against2.size() == 3);
    CHECK(utility(f, against2, 2) == 3);  // an agent-2 vertex stays unmatched
}
