#include "kex/mechanism.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace kex {

namespace {

constexpr int kMaxTreeLayers = 20;  // 2^20 leaf runs

}  // namespace

int seed_bit_count(int agent_count) {
    if (agent_count < 1) throw std::invalid_argument("seed_bit_count: need m >= 1");
    int b = 0;
    while ((1 << b) < agent_count) ++b;
    return b;
}

LabelVector labels_from_seed(int agent_count, const LabelSeed& seed) {
    const int b = seed_bit_count(agent_count);
    if (seed.bit_count != b)
        throw std::invalid_argument("labels_from_seed: seed has " + std::to_string(seed.bit_count) +
                                    " bits, need " + std::to_string(b));
    if (b < 32 && seed.bits >= (1u << b))
        throw std::invalid_argument("labels_from_seed: seed value out of range");
    LabelVector labels;
    labels.bits.assign(static_cast<std::size_t>(agent_count) + 1, 0);
    for (int i = 1; i <= agent_count; ++i) {
        std::uint32_t selected = static_cast<std::uint32_t>(i - 1) & seed.bits;
        labels.bits[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(std::popcount(selected) & 1);
    }
    return labels;
}

void MechanismConfig::validate() const {
    if (kind == MechanismKind::Multilayer) {
        if (layers && *layers < 0)
            throw std::invalid_argument("mechanism config: layer count must be >= 0");
        if (epsilon <= 0) throw std::invalid_argument("mechanism config: epsilon must be > 0");
    }
}

int default_layer_count(int vertex_count, double epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("default_layer_count: epsilon must be > 0");
    if (vertex_count <= 1) return 0;
    const double k = 2.0 * std::log2(static_cast<double>(vertex_count)) + std::log2(1.0 / epsilon);
    if (k <= 0) return 0;
    return static_cast<int>(std::ceil(k));
}

std::uint32_t mask_from_labels(const LabelVector& labels) {
    const int m = labels.agent_count();
    if (m > 31) throw std::invalid_argument("label mask: too many agents");
    std::uint32_t mask = 0;
    for (int i = 1; i <= m; ++i)
        if (labels.label(i)) mask |= 1u << (i - 1);
    return mask;
}

LabelVector labels_from_mask(int agent_count, std::uint32_t mask) {
    LabelVector labels;
    labels.bits.assign(static_cast<std::size_t>(agent_count) + 1, 0);
    for (int i = 1; i <= agent_count; ++i)
        labels.bits[static_cast<std::size_t>(i)] = (mask >> (i - 1)) & 1u;
    return labels;
}

const Matching& MechanismContext::matching_for_mask(std::uint32_t mask) {
    auto it = cache_.find(mask);
    if (it == cache_.end()) {
        Matching m = constrained_max_matching(*inst_, labels_from_mask(inst_->agent_count(), mask));
        it = cache_.emplace(mask, std::move(m)).first;
    }
    return it->second;
}

namespace {

std::uint32_t draw_mask(int agent_count, BitStream& rng) {
    std::uint32_t mask = 0;
    for (int i = 1; i <= agent_count; ++i)
        if (rng.bit()) mask |= 1u << (i - 1);
    return mask;
}

}  // namespace

Matching mix_and_match(const Instance& inst, BitStream& rng) {
    if (inst.agent_count() > 31) {
        LabelVector labels;
        labels.bits.assign(static_cast<std::size_t>(inst.agent_count()) + 1, 0);
        for (int i = 1; i <= inst.agent_count(); ++i)
            labels.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.bit());
        return constrained_max_matching(inst, labels);
    }
    MechanismContext ctx(inst);
    return mix_and_match(ctx, rng);
}

Matching mix_and_match(MechanismContext& ctx, BitStream& rng) {
    return ctx.matching_for_mask(draw_mask(ctx.instance().agent_count(), rng));
}

Matching modified_mix_and_match(const Instance& inst, const LabelSeed& seed) {
    return constrained_max_matching(inst, labels_from_seed(inst.agent_count(), seed));
}

namespace {

Matching multilayer_node(MechanismContext& ctx, int depth, std::uint64_t node_id,
                         std::uint64_t master_seed) {
    BitStream rng(derive_stream(master_seed, node_id));
    if (depth == 0) return mix_and_match(ctx, rng);
    Matching left = multilayer_node(ctx, depth - 1, 2 * node_id, master_seed);
    Matching right = multilayer_node(ctx, depth - 1, 2 * node_id + 1, master_seed);
    BalancedPair pair = balanced_pair(ctx.instance(), left, right);
    return rng.bit() ? std::move(pair.n2) : std::move(pair.n1);
}

}  // namespace

Matching multilayer(const Instance& inst, int k, std::uint64_t master_seed,
                    bool allow_large_trees) {
    if (k < 0) throw std::invalid_argument("multilayer: layer count must be >= 0");
    if (k > kMaxTreeLayers && !allow_large_trees)
        throw std::invalid_argument("multilayer: 2^" + std::to_string(k) +
                                    " leaf runs exceed the resource cap");
    MechanismContext ctx(inst);
    return multilayer_node(ctx, k, 1, master_seed);
}

Matching deterministic_mechanism(const Instance& inst) {
    MechanismContext ctx(inst);
    return deterministic_mechanism(ctx);
}

Matching deterministic_mechanism(MechanismContext& ctx) {
    const Instance& inst = ctx.instance();
    const int b = seed_bit_count(inst.agent_count());
    std::vector<Matching> layer;
    for (std::uint32_t s = 0; s < (1u << b); ++s) {
        LabelVector labels = labels_from_seed(inst.agent_count(), LabelSeed{b, s});
        layer.push_back(ctx.matching_for_mask(mask_from_labels(labels)));
    }
    while (layer.size() > 1) {
        std::vector<Matching> next;
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
            BalancedPair pair = balanced_pair(inst, layer[i], layer[i + 1]);
            next.push_back(pair.n1.size() >= pair.n2.size() ? std::move(pair.n1)
                                                            : std::move(pair.n2));
        }
        layer = std::move(next);
    }
    return layer.front();
}

Matching run_mechanism(const Instance& inst, const MechanismConfig& config) {
    MechanismContext ctx(inst);
    return run_mechanism(ctx, config);
}

Matching run_mechanism(MechanismContext& ctx, const MechanismConfig& config) {
    config.validate();
    const Instance& inst = ctx.instance();
    switch (config.kind) {
        case MechanismKind::Mix: {
            BitStream rng(derive_stream(config.seed, 1));
            return mix_and_match(ctx, rng);
        }
        case MechanismKind::Modified: {
            const int b = seed_bit_count(inst.agent_count());
            const std::uint32_t bits =
                static_cast<std::uint32_t>(config.seed & ((b >= 32 ? 0u : (1u << b)) - 1u));
            LabelVector labels = labels_from_seed(inst.agent_count(), LabelSeed{b, bits});
            return ctx.matching_for_mask(mask_from_labels(labels));
        }
        case MechanismKind::Multilayer: {
            const int k = config.layers ? *config.layers
                                        : default_layer_count(inst.vertex_count(), config.epsilon);
            if (k < 0) throw std::invalid_argument("multilayer: layer count must be >= 0");
            if (k > kMaxTreeLayers && !config.allow_large_trees)
                throw std::invalid_argument("multilayer: 2^" + std::to_string(k) +
                                            " leaf runs exceed the resource cap");
            return multilayer_node(ctx, k, 1, config.seed);
        }
        case MechanismKind::Deterministic:
            return deterministic_mechanism(ctx);
        case MechanismKind::BaselineMax:
            return max_matching_against(inst, config.baseline_agent);
    }
    throw std::logic_error("run_mechanism: unknown mechanism kind");
}

}  // namespace kex
