#ifndef KEX_BLOSSOM_HPP
#define KEX_BLOSSOM_HPP

#include <cstdint>
#include <vector>

namespace kex {

struct WeightedEdge {
    int u;  // 0-based
    int v;
    long long weight;
};

// Exact maximum-weight matching on a general graph (Galil's primal-dual
// blossom algorithm, following van Rantwijk's formulation). All arithmetic
// is integral, so the result is exact for integer weights. Deterministic:
// the output depends only on the edge order.
//
// Returns mate[v] = matched partner of v, or -1 (0-based vertices).
std::vector<int> max_weight_matching(int n, const std::vector<WeightedEdge>& edges);

}  // namespace kex

#endif
