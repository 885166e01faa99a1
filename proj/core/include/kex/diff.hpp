#ifndef KEX_DIFF_HPP
#define KEX_DIFF_HPP

#include <vector>

#include "kex/instance.hpp"

namespace kex {

enum class EdgeOrigin { FromM1, FromM2 };

struct TaggedEdge {
    Edge edge;
    EdgeOrigin origin;

    friend bool operator==(const TaggedEdge&, const TaggedEdge&) = default;
};

enum class ComponentKind { Cycle, EvenPath, OddPath };

// One connected component of M1 xor M2. Vertices are listed in traversal
// order; edges[i] joins vertices[i] and vertices[i+1] (cycles wrap around).
// Paths are traversed from their smaller-id endpoint; cycles start at their
// smallest vertex and move toward its smaller-id neighbor.
struct DiffComponent {
    ComponentKind kind;
    std::vector<int> vertices;
    std::vector<TaggedEdge> edges;

    int endpoint_front() const { return vertices.front(); }
    int endpoint_back() const { return vertices.back(); }
};

// Edges in exactly one of m1, m2, each tagged with its source matching.
// Both matchings must be valid for inst. Result sorted by edge.
std::vector<TaggedEdge> symmetric_difference(const Instance& inst, const Matching& m1,
                                             const Matching& m2);

// Partition a tagged symmetric difference into cycles and maximal paths.
// Components are ordered by smallest contained vertex. Throws
// std::invalid_argument if some vertex has degree > 2 or origin tags do not
// alternate along a walk.
std::vector<DiffComponent> decompose_components(const Instance& inst,
                                                const std::vector<TaggedEdge>& diff);

}  // namespace kex

#endif
