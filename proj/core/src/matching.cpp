#include "kex/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "kex/blossom.hpp"

namespace kex {

namespace {

constexpr long long kWeightLimit = 1LL << 57;

Matching matching_from_mate(const std::vector<int>& mate) {
    std::vector<Edge> edges;
    for (int v = 0; v < static_cast<int>(mate.size()); ++v) {
        int w = mate[static_cast<std::size_t>(v)];
        if (w > v) edges.emplace_back(v + 1, w + 1);
    }
    return Matching(std::move(edges));
}

Matching solve_weighted(const Instance& inst, const std::vector<long long>& edge_weights,
                        const std::vector<Edge>& edges) {
    std::vector<WeightedEdge> we;
    we.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k)
        we.push_back({edges[k].u - 1, edges[k].v - 1, edge_weights[k]});
    return matching_from_mate(max_weight_matching(inst.vertex_count(), we));
}

}  // namespace

MatchingObjective MatchingObjective::plain_cardinality(int agent_count) {
    MatchingObjective o;
    for (int i = 1; i <= agent_count; ++i) o.priority.push_back(i);
    return o;
}

MatchingObjective MatchingObjective::for_labels(const LabelVector& labels) {
    MatchingObjective o;
    for (int i = 1; i <= labels.agent_count(); ++i)
        if (labels.label(i) == 1) o.priority.push_back(i);
    for (int i = 1; i <= labels.agent_count(); ++i)
        if (labels.label(i) == 0) o.priority.push_back(i);
    return o;
}

ObjectiveValue objective_value(const Instance& inst, const MatchingObjective& objective,
                               const Matching& m) {
    ObjectiveValue val;
    val.cardinality = static_cast<long long>(m.size());
    std::vector<long long> per_agent(static_cast<std::size_t>(inst.agent_count()) + 1, 0);
    for (const Edge& e : m.edges()) {
        if (inst.owner(e.u) == inst.owner(e.v)) ++val.internal_edges;
        ++per_agent[static_cast<std::size_t>(inst.owner(e.u))];
        ++per_agent[static_cast<std::size_t>(inst.owner(e.v))];
    }
    for (int a : objective.priority)
        val.agent_matched.push_back(per_agent[static_cast<std::size_t>(a)]);
    return val;
}

Matching max_matching(const Instance& inst) {
    std::vector<long long> weights(inst.edges().size(), 1);
    return solve_weighted(inst, weights, inst.edges());
}

Instance remove_same_label_cross_edges(const Instance& inst, const LabelVector& labels) {
    if (labels.agent_count() != inst.agent_count())
        throw std::invalid_argument("labels do not match instance agent count");
    std::vector<Edge> kept;
    for (const Edge& e : inst.edges()) {
        int a = inst.owner(e.u);
        int b = inst.owner(e.v);
        if (a != b && labels.label(a) == labels.label(b)) continue;
        kept.push_back(e);
    }
    std::vector<int> owners(1, 0);
    for (int v = 1; v <= inst.vertex_count(); ++v) owners.push_back(inst.owner(v));
    return Instance(inst.vertex_count(), inst.agent_count(), std::move(owners), std::move(kept));
}

Matching constrained_max_matching(const Instance& inst, const LabelVector& labels) {
    const Instance pruned = remove_same_label_cross_edges(inst, labels);
    const MatchingObjective objective = MatchingObjective::for_labels(labels);
    const int m = inst.agent_count();
    const long long n = inst.vertex_count();

    // Hierarchical integer weights: one extra unit at any tier outweighs
    // every possible contribution of the tiers below it.
    std::vector<long long> agent_weight(static_cast<std::size_t>(m) + 1, 0);
    long long next = 1;  // weight of the lowest tier
    for (int r = m - 1; r >= 0; --r) {
        int agent = objective.priority[static_cast<std::size_t>(r)];
        agent_weight[static_cast<std::size_t>(agent)] = next;
        long long cap = inst.agent_size(agent);
        if (next > (kWeightLimit - 1) / (cap + 1))
            throw std::overflow_error("constrained_max_matching: tier weights overflow");
        next = 1 + next * (cap + 1);
    }
    const long long w_cardinality = next;
    if (w_cardinality > (kWeightLimit - 1) / (n / 2 + 1))
        throw std::overflow_error("constrained_max_matching: tier weights overflow");
    const long long w_internal = 1 + w_cardinality * (n / 2 + 1);

    std::vector<long long> weights;
    weights.reserve(pruned.edges().size());
    for (const Edge& e : pruned.edges()) {
        long long w = w_cardinality;
        if (inst.owner(e.u) == inst.owner(e.v)) w += w_internal;
        w += agent_weight[static_cast<std::size_t>(inst.owner(e.u))];
        w += agent_weight[static_cast<std::size_t>(inst.owner(e.v))];
        weights.push_back(w);
    }
    return solve_weighted(pruned, weights, pruned.edges());
}

Matching max_matching_against(const Instance& inst, int agent) {
    if (agent < 1 || agent > inst.agent_count())
        throw std::invalid_argument("max_matching_against: agent id out of range");
    const long long n = inst.vertex_count();
    std::vector<long long> weights;
    weights.reserve(inst.edges().size());
    for (const Edge& e : inst.edges()) {
        long long w = (n + 1);
        if (inst.owner(e.u) == agent) --w;
        if (inst.owner(e.v) == agent) --w;
        weights.push_back(w);
    }
    return solve_weighted(inst, weights, inst.edges());
}

Matching brute_force_matching(const Instance& inst, const LabelVector* labels,
                              bool tiered_objective) {
    if (inst.vertex_count() > 14)
        throw std::invalid_argument("brute_force_matching: instance too large (n > 14)");
    if (tiered_objective && labels == nullptr)
        throw std::invalid_argument("brute_force_matching: tiered objective needs labels");

    const Instance graph =
        tiered_objective ? remove_same_label_cross_edges(inst, *labels) : inst;
    const MatchingObjective objective = tiered_objective
                                            ? MatchingObjective::for_labels(*labels)
                                            : MatchingObjective::plain_cardinality(inst.agent_count());

    const int n = graph.vertex_count();
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Edge> current;
    std::vector<Edge> best_edges;
    ObjectiveValue best;
    bool have_best = false;

    auto consider = [&]() {
        Matching m{std::vector<Edge>(current)};
        ObjectiveValue val = objective_value(inst, objective, m);
        if (!tiered_objective) {
            val.internal_edges = 0;
            val.agent_matched.clear();
        }
        if (!have_best || val > best ||
            (val == best && m.edges() < best_edges)) {
            best = std::move(val);
            best_edges = m.edges();
            have_best = true;
        }
    };

    // Enumerate all matchings: at the smallest unused vertex, either leave
    // it unmatched or match it to each available neighbor.
    auto recurse = [&](auto&& self, int v) -> void {
        while (v <= n && (used[static_cast<std::size_t>(v)] || graph.neighbors(v).empty())) ++v;
        if (v > n) {
            consider();
            return;
        }
        used[static_cast<std::size_t>(v)] = 1;
        self(self, v + 1);  // leave v unmatched
        for (int w : graph.neighbors(v)) {
            if (w < v || used[static_cast<std::size_t>(w)]) continue;
            used[static_cast<std::size_t>(w)] = 1;
            current.emplace_back(v, w);
            self(self, v + 1);
            current.pop_back();
            used[static_cast<std::size_t>(w)] = 0;
        }
        used[static_cast<std::size_t>(v)] = 0;
    };
    recurse(recurse, 1);
    return Matching(std::move(best_edges));
}

}  // namespace kex
