#include "kex/generate.hpp"

#include <stdexcept>

#include "kex/rng.hpp"

namespace kex {

namespace {

Instance gen_example1(int n) {
    if (n <= 0 || n % 3 != 0)
        throw std::invalid_argument("example1 generator: n must be a positive multiple of 3");
    const int third = n / 3;
    std::vector<int> owners(1, 0);
    for (int v = 1; v <= n; ++v) owners.push_back((v - 1) / third + 1);
    std::vector<Edge> edges;
    for (int j = 1; j <= third; ++j) edges.emplace_back(j, third + j);
    return Instance(n, 3, std::move(owners), std::move(edges));
}

Instance gen_figure1() {
    std::vector<int> owners = {0, 1, 2, 2, 2, 1, 1, 2};
    std::vector<Edge> edges;
    for (int v = 1; v <= 6; ++v) edges.emplace_back(v, v + 1);
    return Instance(7, 2, std::move(owners), std::move(edges));
}

Instance gen_random(const GeneratorSpec& spec) {
    if (spec.n < 0 || spec.m < 1)
        throw std::invalid_argument("random generator: need n >= 0 and m >= 1");
    if (spec.p < 0.0 || spec.p > 1.0)
        throw std::invalid_argument("random generator: p must be in [0, 1]");
    if (!spec.allow_empty_agents && spec.n < spec.m)
        throw std::invalid_argument("random generator: need n >= m for nonempty agents");
    BitStream rng(mix64(spec.seed));
    std::vector<int> owners(static_cast<std::size_t>(spec.n) + 1, 0);
    for (;;) {
        std::vector<char> seen(static_cast<std::size_t>(spec.m) + 1, 0);
        for (int v = 1; v <= spec.n; ++v) {
            int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.m)));
            owners[static_cast<std::size_t>(v)] = a;
            seen[static_cast<std::size_t>(a)] = 1;
        }
        bool all = true;
        for (int a = 1; a <= spec.m; ++a) all = all && seen[static_cast<std::size_t>(a)];
        if (all || spec.allow_empty_agents) break;
    }
    std::vector<Edge> edges;
    for (int u = 1; u <= spec.n; ++u)
        for (int v = u + 1; v <= spec.n; ++v)
            if (rng.unit() < spec.p) edges.emplace_back(u, v);
    return Instance(spec.n, spec.m, std::move(owners), std::move(edges));
}

}  // namespace

Instance gen_instance(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::Example1:
            if (spec.m != 3)
                throw std::invalid_argument("example1 generator: m must be 3");
            return gen_example1(spec.n);
        case GeneratorKind::Figure1:
            if (spec.n != 7 || spec.m != 2)
                throw std::invalid_argument("figure1 generator: fixed at n = 7, m = 2");
            return gen_figure1();
        case GeneratorKind::Random:
            return gen_random(spec);
    }
    throw std::logic_error("gen_instance: unknown generator kind");
}

}  // namespace kex
