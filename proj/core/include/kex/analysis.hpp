#ifndef KEX_ANALYSIS_HPP
#define KEX_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kex/instance.hpp"
#include "kex/mechanism.hpp"
#include "kex/rational.hpp"

namespace kex {

struct EnumerationTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Distribution over output matchings; counts of equiprobable atomic
// outcomes with a common total.
struct MatchingDistribution {
    std::vector<std::pair<Matching, std::uint64_t>> outcomes;
    std::uint64_t total = 0;
};

// Full enumeration: 2^m labelings for mix (m <= 20), 2^b seeds for
// modified, every leaf labeling and coin for multilayer (total outcome
// count capped at 2^20), a point mass for the deterministic kinds.
MatchingDistribution matching_distribution(const Instance& inst, const MechanismConfig& config);

struct UtilityDistribution {
    std::vector<std::map<int, Rational>> per_agent;  // index 0 unused
    std::map<int, Rational> welfare;                 // matched vertices, 2|M|
    std::uint64_t outcome_count = 0;

    Rational mean(int agent) const;
    Rational variance(int agent) const;
    Rational expected_welfare() const;
};

UtilityDistribution exact_distribution(const Instance& inst, const MechanismConfig& config);

// Monte Carlo moments. Sample statistics are exact rationals (integer sums
// over trials); standard errors are doubles. Reproducible from the master
// seed: trial t uses substream derive_stream(master_seed, t).
struct AgentMoments {
    Rational mean;
    std::optional<double> variance;  // unbiased; absent for trials < 2
    std::optional<double> se_mean;
    std::optional<double> se_var;
};

struct MomentsReport {
    std::vector<AgentMoments> per_agent;  // index 0 unused
    AgentMoments welfare;                 // matched vertices
    std::uint64_t trials = 0;
};

MomentsReport estimate_moments(const Instance& inst, const MechanismConfig& config,
                               std::uint64_t trials, std::uint64_t master_seed);

// Matched vertices agent `agent` can add privately: a maximum matching on
// the subgraph induced by her hidden vertices plus her vertices unmatched
// by M, counted as matched vertices. M must be a matching of inst avoiding
// hidden (original vertex ids).
int private_residual_utility(const Instance& inst, int agent, const Matching& m,
                             const std::vector<int>& hidden);

struct DeviationReport {
    int agent = 0;
    std::vector<int> best_hidden;  // original vertex ids
    Rational truthful_eu;
    Rational deviating_mech_eu;     // E[u_i(F(G \ H))] for the best H
    Rational deviating_private_eu;  // E[private residual] for the best H
    Rational gain;                  // deviating - truthful
    bool exact = true;

    Rational deviating_eu() const { return deviating_mech_eu + deviating_private_eu; }
};

// Search all 2^|V_i| hidden subsets of agent i's vertices. Expectations are
// exact when the config is enumerable; otherwise pass trials > 0 for Monte
// Carlo with common random numbers across subsets. Throws if |V_i| exceeds
// subset_cap.
DeviationReport deviation_gain(const Instance& inst, int agent, const MechanismConfig& config,
                               int subset_cap = 10, std::uint64_t trials = 0,
                               std::uint64_t master_seed = 0);

// Exact expected (mechanism utility, private residual) for one specific
// hidden set.
std::pair<Rational, Rational> deviation_value(const Instance& inst, int agent,
                                              const MechanismConfig& config,
                                              const std::vector<int>& hidden);

struct ApproxReport {
    int opt_matched = 0;         // matched vertices of a maximum matching
    Rational expected_matched;   // E[matched vertices of F]
    bool exact = true;
    bool infinite = false;       // E = 0 with a nonempty optimum

    double ratio() const;
    // Exact rational comparison in exact mode.
    bool violates(const Rational& alpha) const;
};

ApproxReport approx_ratio(const Instance& inst, const MechanismConfig& config, bool exact,
                          std::uint64_t trials = 0, std::uint64_t master_seed = 0);

}  // namespace kex

#endif
