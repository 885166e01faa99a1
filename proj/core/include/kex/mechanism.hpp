#ifndef KEX_MECHANISM_HPP
#define KEX_MECHANISM_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "kex/combine.hpp"
#include "kex/instance.hpp"
#include "kex/matching.hpp"
#include "kex/rng.hpp"

namespace kex {

// ceil(log2(m)): the number of fully independent bits needed to label m
// agents with pairwise disagreement probability exactly 1/2.
int seed_bit_count(int agent_count);

// A point in the small seed space of the modified mechanism. Agent i's
// label is the parity of (i-1) AND bits; agent vectors are the binary
// encodings of 0..m-1, which are pairwise distinct, so any two agents
// disagree on exactly half of all seeds.
struct LabelSeed {
    int bit_count;
    std::uint32_t bits;
};

LabelVector labels_from_seed(int agent_count, const LabelSeed& seed);

enum class MechanismKind {
    Mix,            // fully independent label bits
    Modified,       // pairwise-independent labels from a small seed
    Multilayer,     // k layers of balanced-pair combination over Mix
    Deterministic,  // derandomized layered mechanism
    BaselineMax,    // maximum matching, ties against one agent (analysis only)
};

struct MechanismConfig {
    MechanismKind kind = MechanismKind::Mix;
    std::optional<int> layers;        // multilayer; defaults from epsilon
    double epsilon = 0.5;             // multilayer variance slack
    std::uint64_t seed = 0;           // ignored by deterministic kinds
    int baseline_agent = 1;           // BaselineMax: the disfavored agent
    bool allow_large_trees = false;   // lift the 2^20-leaf cap

    void validate() const;
};

// k = ceil(2 log2 n + log2(1/epsilon)); never negative.
int default_layer_count(int vertex_count, double epsilon);

// Per-instance cache of constrained matchings keyed by the label mask
// (bit i-1 = label of agent i). Lets enumeration and Monte Carlo loops
// reuse solver calls; mechanisms behave identically with or without it.
class MechanismContext {
public:
    explicit MechanismContext(const Instance& inst) : inst_(&inst) {}

    const Instance& instance() const { return *inst_; }
    const Matching& matching_for_mask(std::uint32_t mask);

private:
    const Instance* inst_;
    std::map<std::uint32_t, Matching> cache_;
};

std::uint32_t mask_from_labels(const LabelVector& labels);
LabelVector labels_from_mask(int agent_count, std::uint32_t mask);

// Draw m independent label bits (agent 1 first), remove cross edges between
// same-labeled agents, return the tiered-objective matching.
Matching mix_and_match(const Instance& inst, BitStream& rng);
Matching mix_and_match(MechanismContext& ctx, BitStream& rng);

// Same matching step, labels derived from the small seed. Deterministic
// given the seed.
Matching modified_mix_and_match(const Instance& inst, const LabelSeed& seed);

// F^k: 2^k independent Mix-and-Match runs combined pairwise by
// balanced_pair, one side of each pair kept by a fair coin. Every random
// decision comes from a substream named by its node in the combination tree
// (heap numbering, root = 1), so the outcome is a pure function of
// (inst, k, master_seed).
Matching multilayer(const Instance& inst, int k, std::uint64_t master_seed,
                    bool allow_large_trees = false);

// Derandomized layered mechanism: run the modified mechanism for every seed,
// then ceil(log2 m) rounds of pairing consecutive matchings and keeping the
// balanced-pair member with more edges (ties keep N1).
Matching deterministic_mechanism(const Instance& inst);
Matching deterministic_mechanism(MechanismContext& ctx);

// Dispatch on config. Randomized kinds are pure functions of (inst, config).
Matching run_mechanism(const Instance& inst, const MechanismConfig& config);
Matching run_mechanism(MechanismContext& ctx, const MechanismConfig& config);

}  // namespace kex

#endif
