#ifndef KEX_COMBINE_HPP
#define KEX_COMBINE_HPP

#include <string>
#include <vector>

#include "kex/diff.hpp"
#include "kex/instance.hpp"

namespace kex {

struct ContractionEdge {
    int agent_u;
    int agent_v;
    int path_id;  // index into the path list the graph was built from; -1 for dummies
    bool dummy = false;

    bool loop() const { return agent_u == agent_v; }
};

// Multigraph on agents with one edge per path of M1 xor M2, joining the
// owners of the path's endpoints.
struct ContractionMultigraph {
    int agent_count = 0;
    ComponentKind kind = ComponentKind::EvenPath;
    std::vector<ContractionEdge> edges;
};

// Two matchings with per-agent utility difference at most 2 and preserved
// per-agent utility sums relative to the pair they were built from.
struct BalancedPair {
    Matching n1;
    Matching n2;
};

// Build the contraction multigraph of the given paths. Every component must
// be a path of the requested kind; anything else throws.
ContractionMultigraph build_contraction(const Instance& inst,
                                        const std::vector<DiffComponent>& paths,
                                        ComponentKind kind);

// `agent_u agent_v path_id kind` lines, one per edge, for golden-file tests.
std::string dump_contraction(const ContractionMultigraph& graph);

// Orient the non-loop edges so that every vertex has |out - in| <= 1:
// pair odd-degree vertices with dummy edges (ascending id), walk an Eulerian
// circuit per component, orient along the walk, discard the dummies.
// Returns one entry per edge: +1 = agent_u -> agent_v, -1 = reverse,
// 0 = loop (not oriented).
std::vector<signed char> orient_even(const ContractionMultigraph& graph);

struct OddColoring {
    // Per edge: +1 red, -1 blue, 0 loop (not colored).
    std::vector<signed char> color;
    // Per edge: id of its Euler component (dummy-augmented), -1 for loops.
    std::vector<int> edge_component;
    // Per agent (index 0 unused): component id, or -1 if no non-loop edges.
    std::vector<int> agent_component;
    int component_count = 0;
};

// Red/blue coloring of the non-loop edges with |red - blue| <= 2 at every
// vertex and at most one difference-2 vertex per component. Alternates
// colors along an Eulerian circuit of the dummy-augmented graph; when the
// circuit's start vertex has a dummy edge, the circuit begins with it.
OddColoring color_odd(const ContractionMultigraph& graph);

// Lemma-1 transform: split M1 xor M2 into N'1 and N'2 (cycles alternately,
// even paths by orientation, odd paths by coloring with the flip fix), then
// return N1 = N'1 + (M1 and M2), N2 = N'2 + (M1 and M2). Postconditions
// |u_i(N1) - u_i(N2)| <= 2 and u_i(N1) + u_i(N2) = u_i(M1) + u_i(M2) are
// verified before returning; a violation throws std::logic_error.
BalancedPair balanced_pair(const Instance& inst, const Matching& m1, const Matching& m2);

}  // namespace kex

#endif
