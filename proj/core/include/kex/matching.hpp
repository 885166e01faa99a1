#ifndef KEX_MATCHING_HPP
#define KEX_MATCHING_HPP

#include <cstdint>
#include <vector>

#include "kex/instance.hpp"

namespace kex {

// One label bit per agent, index 0 unused.
struct LabelVector {
    std::vector<std::uint8_t> bits;

    int label(int agent) const { return bits[static_cast<std::size_t>(agent)]; }
    int agent_count() const { return static_cast<int>(bits.size()) - 1; }
};

// The tiered objective used inside Mix-and-Match:
//   tier 1: total number of intra-agent edges (forcing a maximum matching on
//           each agent's induced subgraph),
//   tier 2: total cardinality,
//   tier 3: serial per-agent matched-vertex counts, label-1 agents by
//           ascending id first, then label-0 agents by ascending id.
struct MatchingObjective {
    std::vector<int> priority;  // tier-3 order; a permutation of 1..m

    static MatchingObjective plain_cardinality(int agent_count);
    static MatchingObjective for_labels(const LabelVector& labels);
};

// Score of a matching under an objective; lexicographic comparison gives the
// tier order.
struct ObjectiveValue {
    long long internal_edges = 0;
    long long cardinality = 0;
    std::vector<long long> agent_matched;  // aligned with objective.priority

    friend auto operator<=>(const ObjectiveValue&, const ObjectiveValue&) = default;
};

ObjectiveValue objective_value(const Instance& inst, const MatchingObjective& objective,
                               const Matching& m);

// Exact maximum-cardinality matching. Deterministic for a fixed input
// (tie-breaking by edge order).
Matching max_matching(const Instance& inst);

// The matching step of Mix-and-Match: drop cross edges between distinct
// same-labeled agents, then return a matching that (a) restricts to a
// maximum matching on every agent's induced subgraph, (b) has maximum
// cardinality among those, and (c) lexicographically maximizes matched
// counts in the tier-3 priority order. Exact.
Matching constrained_max_matching(const Instance& inst, const LabelVector& labels);

// Maximum-cardinality matching that, among all maximum matchings, minimizes
// the matched count of one agent. This is the "mechanism that leaves the
// audited agent's vertex unmatched" baseline used by the deviation oracle.
Matching max_matching_against(const Instance& inst, int agent);

// Exhaustive oracle: enumerates every matching of inst and returns the
// optimum, either by plain cardinality or by the full tiered objective
// (labels required in that case). Ties are broken by lexicographically
// smallest edge list. Throws if inst has more than 14 vertices.
Matching brute_force_matching(const Instance& inst, const LabelVector* labels,
                              bool tiered_objective);

// G' of Mix-and-Match: inst minus cross edges between same-labeled agents.
Instance remove_same_label_cross_edges(const Instance& inst, const LabelVector& labels);

}  // namespace kex

#endif
