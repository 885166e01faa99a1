#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "kex/analysis.hpp"
#include "kex/generate.hpp"
#include "kex/mechanism.hpp"
#include "kex/report.hpp"

namespace kex {

namespace {

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return Instance::parse(in);
}

GeneratorKind parse_kind(const std::string& s) {
    if (s == "random") return GeneratorKind::Random;
    if (s == "example1") return GeneratorKind::Example1;
    if (s == "figure1") return GeneratorKind::Figure1;
    throw CLI::ValidationError("--kind", "unknown generator kind: " + s);
}

MechanismKind parse_mechanism(const std::string& s) {
    if (s == "mix") return MechanismKind::Mix;
    if (s == "modified") return MechanismKind::Modified;
    if (s == "multilayer") return MechanismKind::Multilayer;
    if (s == "det") return MechanismKind::Deterministic;
    throw CLI::ValidationError("--mechanism", "unknown mechanism: " + s);
}

struct MechanismFlags {
    std::string mechanism;
    std::string instance_path;
    std::uint64_t seed = 0;
    std::optional<int> layers;
    std::optional<double> epsilon;

    MechanismConfig config() const {
        MechanismConfig cfg;
        cfg.kind = parse_mechanism(mechanism);
        cfg.seed = seed;
        if (layers && cfg.kind != MechanismKind::Multilayer)
            throw CLI::ValidationError("--k", "--k applies to the multilayer mechanism only");
        if (epsilon && cfg.kind != MechanismKind::Multilayer)
            throw CLI::ValidationError("--epsilon", "--epsilon applies to the multilayer mechanism only");
        if (layers && epsilon)
            throw CLI::ValidationError("--k", "give either --k or --epsilon, not both");
        if (layers) cfg.layers = *layers;
        if (epsilon) cfg.epsilon = *epsilon;
        cfg.validate();
        return cfg;
    }
};

void add_mechanism_flags(CLI::App* cmd, MechanismFlags& flags, bool with_seed) {
    cmd->add_option("--mechanism", flags.mechanism, "mix | modified | multilayer | det")
        ->required();
    cmd->add_option("--instance", flags.instance_path, "KEX instance file")->required();
    if (with_seed) cmd->add_option("--seed", flags.seed, "64-bit unsigned seed");
    cmd->add_option_function<int>(
        "--k", [&flags](const int& v) { flags.layers = v; }, "multilayer layer count");
    cmd->add_option_function<double>(
        "--epsilon", [&flags](const double& v) { flags.epsilon = v; },
        "multilayer variance slack (sets k = ceil(2 log2 n + log2(1/epsilon)))");
}

// Bad inputs and usage problems exit 1; violated internal invariants (the
// combiner's Lemma-1 checks and friends throw plain logic_error) exit 2.
int exit_code_for(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << "\n";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 1;
    if (dynamic_cast<const std::logic_error*>(&e)) return 2;
    return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pairwise kidney-exchange mechanisms"};
    app.name("kex");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string gen_kind;
    GeneratorSpec spec;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "random | example1 | figure1")->required();
    gen->add_option("--n", spec.n, "vertex count");
    gen->add_option("--m", spec.m, "agent count");
    gen->add_option("--p", spec.p, "cross-edge probability (random kind)");
    gen->add_option("--seed", spec.seed, "64-bit unsigned seed");
    gen->add_option("--out", gen_out, "output file")->required();

    // run
    auto* run = app.add_subcommand("run", "run one mechanism and print the matching");
    MechanismFlags run_flags;
    add_mechanism_flags(run, run_flags, true);

    // stats
    auto* stats = app.add_subcommand("stats", "per-agent mean/variance report");
    MechanismFlags stats_flags;
    add_mechanism_flags(stats, stats_flags, true);
    bool stats_exact = false;
    std::uint64_t stats_trials = 0;
    std::string stats_out;
    stats->add_flag("--exact", stats_exact, "exact enumeration");
    stats->add_option("--trials", stats_trials, "Monte Carlo trial count");
    stats->add_option("--out", stats_out, "output CSV file")->required();

    // deviate
    auto* deviate = app.add_subcommand("deviate", "brute-force deviation search for one agent");
    MechanismFlags dev_flags;
    add_mechanism_flags(deviate, dev_flags, true);
    int dev_agent = 0;
    int dev_cap = 10;
    std::uint64_t dev_trials = 0;
    std::string dev_out;
    deviate->add_option("--agent", dev_agent, "agent id")->required();
    deviate->add_option("--cap", dev_cap, "max owned vertices to search (default 10)");
    deviate->add_option("--trials", dev_trials, "Monte Carlo trials (default: exact)");
    deviate->add_option("--out", dev_out, "output CSV file")->required();

    // approx
    auto* approx = app.add_subcommand("approx", "approximation ratio versus the optimum");
    MechanismFlags approx_flags;
    add_mechanism_flags(approx, approx_flags, true);
    bool approx_exact = false;
    std::uint64_t approx_trials = 0;
    approx->add_flag("--exact", approx_exact, "exact enumeration");
    approx->add_option("--trials", approx_trials, "Monte Carlo trial count");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (gen->parsed()) {
            spec.kind = parse_kind(gen_kind);
            if (spec.kind == GeneratorKind::Figure1) {
                if (gen->count("--n") == 0) spec.n = 7;
                if (gen->count("--m") == 0) spec.m = 2;
            }
            Instance inst = gen_instance(spec);
            write_file_atomic(gen_out, inst.serialize());
            return 0;
        }
        if (run->parsed()) {
            Instance inst = load_instance(run_flags.instance_path);
            Matching m = run_mechanism(inst, run_flags.config());
            m.validate(inst);  // re-check graph-core invariants before printing
            out << "matching " << m.size() << "\n";
            for (const Edge& e : m.edges()) out << e.u << ' ' << e.v << "\n";
            out << "utilities\n";
            std::vector<int> u = agent_utilities(inst, m);
            for (int a = 1; a <= inst.agent_count(); ++a)
                out << a << ' ' << u[static_cast<std::size_t>(a)] << "\n";
            return 0;
        }
        if (stats->parsed()) {
            if (stats_exact == (stats_trials > 0))
                throw CLI::ValidationError("--exact", "give exactly one of --exact or --trials T");
            Instance inst = load_instance(stats_flags.instance_path);
            MechanismConfig cfg = stats_flags.config();
            std::string csv = stats_exact
                                  ? stats_csv(exact_distribution(inst, cfg))
                                  : stats_csv(estimate_moments(inst, cfg, stats_trials, cfg.seed));
            write_file_atomic(stats_out, csv);
            return 0;
        }
        if (deviate->parsed()) {
            Instance inst = load_instance(dev_flags.instance_path);
            MechanismConfig cfg = dev_flags.config();
            DeviationReport report =
                deviation_gain(inst, dev_agent, cfg, dev_cap, dev_trials, cfg.seed);
            write_file_atomic(dev_out, deviate_csv(report));
            return 0;
        }
        if (approx->parsed()) {
            if (approx_exact == (approx_trials > 0))
                throw CLI::ValidationError("--exact", "give exactly one of --exact or --trials T");
            Instance inst = load_instance(approx_flags.instance_path);
            MechanismConfig cfg = approx_flags.config();
            ApproxReport report = approx_ratio(inst, cfg, approx_exact, approx_trials, cfg.seed);
            out << "opt " << report.opt_matched << "\n";
            out << "expected " << format_number(report.expected_matched.value()) << "\n";
            out << "ratio " << format_number(report.ratio()) << "\n";
            if (report.exact && report.violates(Rational(2))) {
                err << "error: approximation ratio exceeds 2 in exact mode\n";
                return 2;
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        return exit_code_for(e, err);
    }
    return 1;
}

}  // namespace kex
