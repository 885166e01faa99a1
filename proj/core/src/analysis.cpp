#include "kex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace kex {

namespace {

int agent_utility_unchecked(const Instance& inst, const Matching& m, int agent) {
    int count = 0;
    for (const Edge& e : m.edges()) {
        if (inst.owner(e.u) == agent) ++count;
        if (inst.owner(e.v) == agent) ++count;
    }
    return count;
}

using DistMap = std::map<Matching, std::uint64_t>;

MatchingDistribution from_map(DistMap&& map, std::uint64_t total) {
    MatchingDistribution dist;
    dist.total = total;
    dist.outcomes.reserve(map.size());
    for (auto& [m, c] : map) dist.outcomes.emplace_back(m, c);
    return dist;
}

MatchingDistribution mix_distribution(const Instance& inst) {
    const int m = inst.agent_count();
    if (m > 20)
        throw EnumerationTooLarge("exact mix enumeration needs m <= 20, got " + std::to_string(m));
    MechanismContext ctx(inst);
    DistMap map;
    const std::uint32_t count = 1u << m;
    for (std::uint32_t mask = 0; mask < count; ++mask) ++map[ctx.matching_for_mask(mask)];
    return from_map(std::move(map), count);
}

MatchingDistribution modified_distribution(const Instance& inst) {
    const int b = seed_bit_count(inst.agent_count());
    MechanismContext ctx(inst);
    DistMap map;
    const std::uint32_t count = 1u << b;
    for (std::uint32_t s = 0; s < count; ++s) {
        LabelVector labels = labels_from_seed(inst.agent_count(), LabelSeed{b, s});
        ++map[ctx.matching_for_mask(mask_from_labels(labels))];
    }
    return from_map(std::move(map), count);
}

MatchingDistribution multilayer_distribution(const Instance& inst, const MechanismConfig& config) {
    const int k = config.layers ? *config.layers
                                : default_layer_count(inst.vertex_count(), config.epsilon);
    // Atom count is 2^(m 2^k + 2^k - 1); keep it within 2^20.
    const long long bits = (static_cast<long long>(inst.agent_count()) + 1) * (1LL << k) - 1;
    if (bits > 20)
        throw EnumerationTooLarge("exact multilayer enumeration: 2^" + std::to_string(bits) +
                                  " outcomes exceed the 2^20 cap");
    MatchingDistribution dist = mix_distribution(inst);
    for (int layer = 0; layer < k; ++layer) {
        DistMap next;
        for (const auto& [m1, c1] : dist.outcomes) {
            for (const auto& [m2, c2] : dist.outcomes) {
                BalancedPair pair = balanced_pair(inst, m1, m2);
                next[pair.n1] += c1 * c2;
                next[pair.n2] += c1 * c2;
            }
        }
        dist = from_map(std::move(next), 2 * dist.total * dist.total);
    }
    return dist;
}

}  // namespace

MatchingDistribution matching_distribution(const Instance& inst, const MechanismConfig& config) {
    config.validate();
    switch (config.kind) {
        case MechanismKind::Mix:
            return mix_distribution(inst);
        case MechanismKind::Modified:
            return modified_distribution(inst);
        case MechanismKind::Multilayer:
            return multilayer_distribution(inst, config);
        case MechanismKind::Deterministic: {
            MatchingDistribution dist;
            dist.total = 1;
            dist.outcomes.emplace_back(deterministic_mechanism(inst), 1);
            return dist;
        }
        case MechanismKind::BaselineMax: {
            MatchingDistribution dist;
            dist.total = 1;
            dist.outcomes.emplace_back(max_matching_against(inst, config.baseline_agent), 1);
            return dist;
        }
    }
    throw std::logic_error("matching_distribution: unknown mechanism kind");
}

Rational UtilityDistribution::mean(int agent) const {
    Rational acc;
    for (const auto& [u, p] : per_agent[static_cast<std::size_t>(agent)]) acc += Rational(u) * p;
    return acc;
}

Rational UtilityDistribution::variance(int agent) const {
    Rational m = mean(agent);
    Rational acc;
    for (const auto& [u, p] : per_agent[static_cast<std::size_t>(agent)])
        acc += Rational(static_cast<long long>(u) * u) * p;
    return acc - m * m;
}

Rational UtilityDistribution::expected_welfare() const {
    Rational acc;
    for (const auto& [w, p] : welfare) acc += Rational(w) * p;
    return acc;
}

UtilityDistribution exact_distribution(const Instance& inst, const MechanismConfig& config) {
    MatchingDistribution dist = matching_distribution(inst, config);
    UtilityDistribution out;
    out.outcome_count = dist.total;
    out.per_agent.assign(static_cast<std::size_t>(inst.agent_count()) + 1, {});
    const long long total = static_cast<long long>(dist.total);
    for (const auto& [m, c] : dist.outcomes) {
        const Rational p(static_cast<long long>(c), total);
        std::vector<int> u = agent_utilities(inst, m);
        for (int a = 1; a <= inst.agent_count(); ++a) {
            auto& slot = out.per_agent[static_cast<std::size_t>(a)][u[static_cast<std::size_t>(a)]];
            slot += p;
        }
        out.welfare[matched_vertices(m)] += p;
    }
    return out;
}

namespace {

// Interned matchings plus a memo for balanced-pair combinations: sampling a
// layered mechanism then costs one hash walk per node instead of a combiner
// run. Results are identical to the direct recursion because balanced_pair
// is a pure function of the two matchings.
class LayeredSampler {
public:
    LayeredSampler(MechanismContext& ctx, int k) : ctx_(ctx), k_(k) {
        const int m = ctx.instance().agent_count();
        if (m <= 16) leaf_by_mask_.assign(1u << m, -1);
    }

    const Matching& sample(std::uint64_t master_seed) {
        return pool_[static_cast<std::size_t>(node(k_, 1, master_seed))];
    }

private:
    int intern(const Matching& m) {
        auto it = ids_.find(m.edges());
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(pool_.size());
        pool_.push_back(m);
        ids_.emplace(m.edges(), id);
        return id;
    }

    int leaf(BitStream& rng) {
        const int m = ctx_.instance().agent_count();
        if (leaf_by_mask_.empty()) return intern(mix_and_match(ctx_, rng));
        std::uint32_t mask = 0;
        for (int i = 1; i <= m; ++i)
            if (rng.bit()) mask |= 1u << (i - 1);
        int& slot = leaf_by_mask_[mask];
        if (slot < 0) slot = intern(ctx_.matching_for_mask(mask));
        return slot;
    }

    int node(int depth, std::uint64_t node_id, std::uint64_t master_seed) {
        BitStream rng(derive_stream(master_seed, node_id));
        if (depth == 0) return leaf(rng);
        int left = node(depth - 1, 2 * node_id, master_seed);
        int right = node(depth - 1, 2 * node_id + 1, master_seed);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
            static_cast<std::uint32_t>(right);
        auto it = combine_.find(key);
        if (it == combine_.end()) {
            BalancedPair pair = balanced_pair(ctx_.instance(),
                                              pool_[static_cast<std::size_t>(left)],
                                              pool_[static_cast<std::size_t>(right)]);
            it = combine_.emplace(key, std::make_pair(intern(pair.n1), intern(pair.n2))).first;
        }
        return rng.bit() ? it->second.second : it->second.first;
    }

    MechanismContext& ctx_;
    int k_;
    std::vector<int> leaf_by_mask_;
    std::map<std::vector<Edge>, int> ids_;
    std::vector<Matching> pool_;
    std::unordered_map<std::uint64_t, std::pair<int, int>> combine_;
};

AgentMoments moments_from_samples(const std::vector<int>& samples) {
    const std::uint64_t t = samples.size();
    AgentMoments out;
    long long sum = 0;
    for (int x : samples) sum += x;
    out.mean = Rational(sum, static_cast<long long>(t));
    if (t < 2) return out;
    const long double mean = static_cast<long double>(out.mean.value());
    long double m2 = 0, m4 = 0;
    for (int x : samples) {
        const long double d = static_cast<long double>(x) - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const long double tf = static_cast<long double>(t);
    const long double var = m2 / (tf - 1);  // unbiased
    m2 /= tf;
    m4 /= tf;
    out.variance = static_cast<double>(var);
    out.se_mean = static_cast<double>(std::sqrt(var / tf));
    // Asymptotic standard error of the sample variance via the fourth
    // central moment.
    const long double var_of_var = (m4 - m2 * m2 * (tf - 3) / (tf - 1)) / tf;
    out.se_var = static_cast<double>(std::sqrt(var_of_var > 0 ? var_of_var : 0));
    return out;
}

}  // namespace

MomentsReport estimate_moments(const Instance& inst, const MechanismConfig& config,
                               std::uint64_t trials, std::uint64_t master_seed) {
    config.validate();
    if (trials < 1) throw std::invalid_argument("estimate_moments: need trials >= 1");
    const int m = inst.agent_count();

    MechanismContext ctx(inst);
    std::optional<LayeredSampler> sampler;
    int layers = 0;
    if (config.kind == MechanismKind::Multilayer) {
        layers = config.layers ? *config.layers
                               : default_layer_count(inst.vertex_count(), config.epsilon);
        if (layers > 20 && !config.allow_large_trees)
            throw std::invalid_argument("estimate_moments: layer count exceeds the resource cap");
        sampler.emplace(ctx, layers);
    }
    std::optional<Matching> fixed;
    if (config.kind == MechanismKind::Deterministic) fixed = deterministic_mechanism(ctx);
    if (config.kind == MechanismKind::BaselineMax)
        fixed = max_matching_against(inst, config.baseline_agent);
    const int b = seed_bit_count(m);

    std::vector<std::vector<int>> samples(static_cast<std::size_t>(m) + 1);
    std::vector<int> welfare_samples;
    for (auto& s : samples) s.reserve(trials);
    welfare_samples.reserve(trials);

    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_stream(master_seed, t);
        const Matching* out = nullptr;
        Matching scratch;
        switch (config.kind) {
            case MechanismKind::Mix: {
                BitStream rng(derive_stream(trial_seed, 1));
                out = &ctx.matching_for_mask([&] {
                    std::uint32_t mask = 0;
                    for (int i = 1; i <= m; ++i)
                        if (rng.bit()) mask |= 1u << (i - 1);
                    return mask;
                }());
                break;
            }
            case MechanismKind::Modified: {
                BitStream rng(derive_stream(trial_seed, 1));
                const std::uint32_t bits = static_cast<std::uint32_t>(rng.below(1ull << b));
                LabelVector labels = labels_from_seed(m, LabelSeed{b, bits});
                out = &ctx.matching_for_mask(mask_from_labels(labels));
                break;
            }
            case MechanismKind::Multilayer:
                out = &sampler->sample(trial_seed);
                break;
            case MechanismKind::Deterministic:
            case MechanismKind::BaselineMax:
                out = &*fixed;
                break;
        }
        std::vector<int> u = agent_utilities(inst, *out);
        for (int a = 1; a <= m; ++a)
            samples[static_cast<std::size_t>(a)].push_back(u[static_cast<std::size_t>(a)]);
        welfare_samples.push_back(matched_vertices(*out));
    }

    MomentsReport report;
    report.trials = trials;
    report.per_agent.resize(static_cast<std::size_t>(m) + 1);
    for (int a = 1; a <= m; ++a)
        report.per_agent[static_cast<std::size_t>(a)] =
            moments_from_samples(samples[static_cast<std::size_t>(a)]);
    report.welfare = moments_from_samples(welfare_samples);
    return report;
}

int private_residual_utility(const Instance& inst, int agent, const Matching& m,
                             const std::vector<int>& hidden) {
    if (agent < 1 || agent > inst.agent_count())
        throw std::invalid_argument("private_residual_utility: agent id out of range");
    m.validate(inst);
    std::vector<char> in_set(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
    for (int v : hidden) {
        if (v < 1 || v > inst.vertex_count() || inst.owner(v) != agent)
            throw std::invalid_argument("private_residual_utility: hidden vertex not owned by agent");
        in_set[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<int> mate = m.mate_array(inst.vertex_count());
    for (int v : hidden)
        if (mate[static_cast<std::size_t>(v)] != 0)
            throw std::invalid_argument("private_residual_utility: matching touches a hidden vertex");
    for (int v = 1; v <= inst.vertex_count(); ++v)
        if (inst.owner(v) == agent && mate[static_cast<std::size_t>(v)] == 0)
            in_set[static_cast<std::size_t>(v)] = 1;

    // Induced subgraph on the agent's private pool; edges inside it are all
    // intra-agent by construction.
    std::vector<int> ids(1, 0);
    std::vector<int> new_id(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
    std::vector<int> owners(1, 0);
    for (int v = 1; v <= inst.vertex_count(); ++v) {
        if (!in_set[static_cast<std::size_t>(v)]) continue;
        ids.push_back(v);
        new_id[static_cast<std::size_t>(v)] = static_cast<int>(ids.size()) - 1;
        owners.push_back(inst.owner(v));
    }
    std::vector<Edge> edges;
    for (const Edge& e : inst.edges())
        if (in_set[static_cast<std::size_t>(e.u)] && in_set[static_cast<std::size_t>(e.v)])
            edges.emplace_back(new_id[static_cast<std::size_t>(e.u)],
                               new_id[static_cast<std::size_t>(e.v)]);
    Instance induced(static_cast<int>(ids.size()) - 1, inst.agent_count(), std::move(owners),
                     std::move(edges));
    return matched_vertices(max_matching(induced));
}

namespace {

struct ExpectedUtilities {
    Rational mech;     // E[u_agent(F(G \ H))]
    Rational priv;     // E[private residual]
};

ExpectedUtilities expected_for_hidden(const Instance& inst, int agent,
                                      const MechanismConfig& config,
                                      const HiddenInstance& hidden,
                                      const std::vector<int>& hidden_set) {
    MatchingDistribution dist = matching_distribution(hidden.instance, config);
    long long mech_sum = 0;
    long long priv_sum = 0;
    for (const auto& [m, c] : dist.outcomes) {
        mech_sum += static_cast<long long>(c) * agent_utility_unchecked(hidden.instance, m, agent);
        priv_sum += static_cast<long long>(c) *
                    private_residual_utility(inst, agent, to_original_ids(hidden, m), hidden_set);
    }
    const long long total = static_cast<long long>(dist.total);
    return {Rational(mech_sum, total), Rational(priv_sum, total)};
}

ExpectedUtilities sampled_for_hidden(const Instance& inst, int agent,
                                     const MechanismConfig& config,
                                     const HiddenInstance& hidden,
                                     const std::vector<int>& hidden_set, std::uint64_t trials,
                                     std::uint64_t master_seed) {
    // Common random numbers: trial t uses the same substream for every
    // hidden-set choice.
    MechanismContext ctx(hidden.instance);
    long long mech_sum = 0;
    long long priv_sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        MechanismConfig c = config;
        c.seed = derive_stream(master_seed, t);
        Matching m = run_mechanism(ctx, c);
        mech_sum += agent_utility_unchecked(hidden.instance, m, agent);
        priv_sum += private_residual_utility(inst, agent, to_original_ids(hidden, m), hidden_set);
    }
    const long long total = static_cast<long long>(trials);
    return {Rational(mech_sum, total), Rational(priv_sum, total)};
}

}  // namespace

std::pair<Rational, Rational> deviation_value(const Instance& inst, int agent,
                                              const MechanismConfig& config,
                                              const std::vector<int>& hidden) {
    HiddenInstance h = hide_vertices(inst, agent, hidden);
    ExpectedUtilities eu = expected_for_hidden(inst, agent, config, h, hidden);
    return {eu.mech, eu.priv};
}

DeviationReport deviation_gain(const Instance& inst, int agent, const MechanismConfig& config,
                               int subset_cap, std::uint64_t trials, std::uint64_t master_seed) {
    if (agent < 1 || agent > inst.agent_count())
        throw std::invalid_argument("deviation_gain: agent id out of range");
    const std::vector<int> own = inst.agent_vertices(agent);
    if (static_cast<int>(own.size()) > subset_cap)
        throw std::invalid_argument("deviation_gain: agent owns " + std::to_string(own.size()) +
                                    " vertices, cap is " + std::to_string(subset_cap));
    const bool exact = trials == 0;

    DeviationReport report;
    report.agent = agent;
    report.exact = exact;

    // Truthful expectation = the H = empty-set mechanism part.
    bool have_best = false;
    Rational best_total;

    const std::uint32_t subset_count = 1u << own.size();
    for (std::uint32_t mask = 0; mask < subset_count; ++mask) {
        std::vector<int> hidden_set;
        for (std::size_t j = 0; j < own.size(); ++j)
            if (mask & (1u << j)) hidden_set.push_back(own[j]);
        HiddenInstance hidden = hide_vertices(inst, agent, hidden_set);
        ExpectedUtilities eu =
            exact ? expected_for_hidden(inst, agent, config, hidden, hidden_set)
                  : sampled_for_hidden(inst, agent, config, hidden, hidden_set, trials, master_seed);
        if (mask == 0) report.truthful_eu = eu.mech;
        const Rational total = eu.mech + eu.priv;
        if (!have_best || total > best_total) {
            have_best = true;
            best_total = total;
            report.best_hidden = hidden_set;
            report.deviating_mech_eu = eu.mech;
            report.deviating_private_eu = eu.priv;
        }
    }
    report.gain = best_total - report.truthful_eu;
    return report;
}

double ApproxReport::ratio() const {
    if (opt_matched == 0) return 1.0;
    if (infinite || expected_matched.num == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(opt_matched) / expected_matched.value();
}

bool ApproxReport::violates(const Rational& alpha) const {
    if (opt_matched == 0) return false;
    if (expected_matched.num == 0) return true;
    return Rational(opt_matched) > alpha * expected_matched;
}

ApproxReport approx_ratio(const Instance& inst, const MechanismConfig& config, bool exact,
                          std::uint64_t trials, std::uint64_t master_seed) {
    ApproxReport report;
    report.opt_matched = matched_vertices(max_matching(inst));
    report.exact = exact;
    if (exact) {
        MatchingDistribution dist = matching_distribution(inst, config);
        long long sum = 0;
        for (const auto& [m, c] : dist.outcomes)
            sum += static_cast<long long>(c) * matched_vertices(m);
        report.expected_matched = Rational(sum, static_cast<long long>(dist.total));
    } else {
        MomentsReport moments = estimate_moments(inst, config, trials, master_seed);
        report.expected_matched = moments.welfare.mean;
    }
    report.infinite = report.expected_matched.num == 0 && report.opt_matched > 0;
    return report;
}

}  // namespace kex
