#ifndef KEX_GENERATE_HPP
#define KEX_GENERATE_HPP

#include <cstdint>

#include "kex/instance.hpp"

namespace kex {

enum class GeneratorKind { Random, Example1, Figure1 };

// example1: three agents of n/3 vertices each, a perfect cross matching
//   between agents 1 and 2, agent 3 isolated.
// figure1: the 7-vertex path with agent 1 = {1,5,6}, agent 2 = {2,3,4,7}.
// random: owners uniform (redrawn until every agent is nonempty unless
//   allow_empty_agents), each vertex pair an edge with probability p.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Random;
    int n = 0;
    int m = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    bool allow_empty_agents = false;
};

// Pure function of spec: the same spec yields a byte-identical instance.
Instance gen_instance(const GeneratorSpec& spec);

}  // namespace kex

#endif
