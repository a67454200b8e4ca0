#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qam/experiments.hpp"

namespace qam {

/// Thrown when an output file cannot be created or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exit statuses of the command-line tool
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct CliConfig {
    enum class Command { sweep, fixed_point_check, single_run };
    enum class Format { summary, csv };

    Command command = Command::sweep;
    TrialConfig trial;
    std::vector<double> noise_grid;  // sweep only
    std::string out_path;            // empty -> no CSV file
    Format format = Format::summary;
};

/// Shortest round-trip decimal form, with a trailing ".0" added to
/// integral values so probability columns read as decimals.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".einf") == std::string::npos) s += ".0";
    return s;
}

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names = {
        "qhnn-hebbian",    "qhnn-projection",  "qrcnn-identity",    "qrcnn-high-order",
        "qrcnn-potential", "qrcnn-exponential", "qrpnn-identity",   "qrpnn-high-order",
        "qrpnn-potential", "qrpnn-exponential",
    };
    return names;
}

inline ActivationKernel::Kind kernel_kind_from_suffix(const std::string& suffix) {
    if (suffix == "identity") return ActivationKernel::Kind::identity;
    if (suffix == "high-order") return ActivationKernel::Kind::high_order;
    if (suffix == "potential") return ActivationKernel::Kind::potential;
    if (suffix == "exponential") return ActivationKernel::Kind::exponential;
    throw std::invalid_argument("unknown kernel name: " + suffix);
}

struct ModelName {
    ModelFamily family;
    ActivationKernel::Kind kernel_kind;  // identity for the dense-weight families
};

inline ModelName parse_model_name(const std::string& name) {
    if (name == "qhnn-hebbian")
        return {ModelFamily::hopfield_hebbian, ActivationKernel::Kind::identity};
    if (name == "qhnn-projection")
        return {ModelFamily::hopfield_projection, ActivationKernel::Kind::identity};
    if (name.rfind("qrcnn-", 0) == 0)
        return {ModelFamily::recurrent_correlation, kernel_kind_from_suffix(name.substr(6))};
    if (name.rfind("qrpnn-", 0) == 0)
        return {ModelFamily::recurrent_projection, kernel_kind_from_suffix(name.substr(6))};
    throw std::invalid_argument("unknown model name: " + name);
}

inline bool is_kernel_model(ModelFamily family) {
    return family == ModelFamily::recurrent_correlation ||
           family == ModelFamily::recurrent_projection;
}

inline std::string kernel_params_label(ModelFamily family, const ActivationKernel& kernel) {
    if (!is_kernel_model(family)) return "-";
    switch (kernel.kind()) {
        case ActivationKernel::Kind::identity: return "-";
        case ActivationKernel::Kind::high_order: return "q=" + format_double(kernel.parameter());
        case ActivationKernel::Kind::potential:
            return "L=" + format_double(kernel.parameter()) +
                   ";eps_p=" + format_double(kernel.epsilon());
        case ActivationKernel::Kind::exponential:
            return "alpha=" + format_double(kernel.parameter());
    }
    return "-";
}

inline std::string to_string(UpdateMode mode) {
    return mode == UpdateMode::synchronous ? "synchronous" : "asynchronous";
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

namespace detail {

/// Raw flag values plus the CLI11 options that carry them, so the resolver
/// can tell an explicit flag from a preset default.
struct FlagSet {
    std::string preset = "example1";
    std::string model = "qrpnn-exponential";
    std::string domain;
    std::size_t length = 0;
    std::size_t patterns = 0;
    int trials = 0;
    long max_iters = 0;
    std::uint64_t seed = 0;
    double high_order_degree = 0.0;
    double potential_order = 0.0;
    double potential_epsilon = 0.0;
    double exponential_rate = 0.0;
    std::string update_mode;
    double success_tol = 1e-3;
    double convergence_tol = 1e-6;
    int threads = 0;
    std::vector<double> noise;
    std::string out_path;
    std::string format = "summary";

    CLI::Option* domain_opt = nullptr;
    CLI::Option* length_opt = nullptr;
    CLI::Option* patterns_opt = nullptr;
    CLI::Option* trials_opt = nullptr;
    CLI::Option* max_iters_opt = nullptr;
    CLI::Option* degree_opt = nullptr;
    CLI::Option* order_opt = nullptr;
    CLI::Option* epsilon_opt = nullptr;
    CLI::Option* rate_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
};

enum class NoiseFlag { grid, single, none };

inline const CLI::Validator& degree_above_one() {
    static const CLI::Validator v(
        [](std::string& s) -> std::string {
            double value = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
            if (res.ec != std::errc{} || !(value > 1.0)) return "degree must be a number > 1";
            return {};
        },
        "DEGREE>1");
    return v;
}

inline void add_experiment_options(CLI::App* cmd, FlagSet& f, NoiseFlag noise_flag) {
    cmd->add_option("--preset", f.preset,
                    "parameter preset: example1 (bipolar) or example2 (quaternion)")
        ->check(CLI::IsMember({"example1", "example2"}));
    cmd->add_option("--model", f.model, "memory model")->check(CLI::IsMember(model_names()));
    f.domain_opt = cmd->add_option("--domain", f.domain, "pattern domain (overrides the preset)")
                       ->check(CLI::IsMember({"bipolar", "quaternion"}));
    f.length_opt =
        cmd->add_option("--n", f.length, "pattern length")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    f.patterns_opt = cmd->add_option("--p", f.patterns, "number of stored patterns")
                         ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    f.trials_opt =
        cmd->add_option("--trials", f.trials, "trials per noise level")->check(CLI::PositiveNumber);
    f.max_iters_opt = cmd->add_option("--max-iters", f.max_iters, "iteration cap per trial")
                          ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "base seed for the per-trial random streams");
    f.degree_opt = cmd->add_option("--q", f.high_order_degree, "high-order kernel degree")
                       ->check(degree_above_one());
    f.order_opt =
        cmd->add_option("--L", f.potential_order, "potential kernel order")->check(CLI::Range(1.0, 1e9));
    f.epsilon_opt = cmd->add_option("--epsilon-p", f.potential_epsilon,
                                    "potential kernel division guard")
                        ->check(CLI::PositiveNumber);
    f.rate_opt = cmd->add_option("--alpha", f.exponential_rate, "exponential kernel rate")
                     ->check(CLI::PositiveNumber);
    cmd->add_option("--update-mode", f.update_mode, "neuron update schedule")
        ->check(CLI::IsMember({"sync", "async"}));
    cmd->add_option("--success-tol", f.success_tol,
                    "max per-component distance that still counts as recall")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--conv-tol", f.convergence_tol, "stationarity tolerance between iterations")
        ->check(CLI::NonNegativeNumber);
    f.threads_opt =
        cmd->add_option("--threads", f.threads, "worker threads (0 = all hardware threads)")
            ->check(CLI::Range(0, 4096));
    if (noise_flag == NoiseFlag::grid) {
        cmd->add_option("--noise", f.noise, "noise levels to sweep (default 0.0 to 1.0 step 0.1)")
            ->check(CLI::Range(0.0, 1.0));
    } else if (noise_flag == NoiseFlag::single) {
        cmd->add_option("--noise", f.noise, "noise probability")->check(CLI::Range(0.0, 1.0));
    }
}

inline TrialConfig resolve_trial_config(const FlagSet& f) {
    ExperimentPreset preset = f.preset == "example2" ? example2_preset() : example1_preset();
    if (f.degree_opt->count() > 0) preset.high_order_degree = f.high_order_degree;
    if (f.order_opt->count() > 0) preset.potential_order = f.potential_order;
    if (f.epsilon_opt->count() > 0) preset.potential_epsilon = f.potential_epsilon;
    if (f.rate_opt->count() > 0) preset.exponential_rate = f.exponential_rate;

    const ModelName model = parse_model_name(f.model);
    if (!is_kernel_model(model.family) || model.kernel_kind != ActivationKernel::Kind::high_order) {
        if (f.degree_opt->count() > 0)
            throw CLI::ValidationError("--q", "only applies to high-order kernel models");
    }
    if (!is_kernel_model(model.family) || model.kernel_kind != ActivationKernel::Kind::potential) {
        if (f.order_opt->count() > 0)
            throw CLI::ValidationError("--L", "only applies to potential kernel models");
        if (f.epsilon_opt->count() > 0)
            throw CLI::ValidationError("--epsilon-p", "only applies to potential kernel models");
    }
    if (!is_kernel_model(model.family) ||
        model.kernel_kind != ActivationKernel::Kind::exponential) {
        if (f.rate_opt->count() > 0)
            throw CLI::ValidationError("--alpha", "only applies to exponential kernel models");
    }

    TrialConfig trial;
    trial.family = model.family;
    trial.kernel = kernel_from_preset(preset, model.kernel_kind);
    trial.domain = f.domain_opt->count() > 0
                       ? (f.domain == "quaternion" ? Domain::quaternion : Domain::bipolar)
                       : preset.domain;
    trial.length = f.length_opt->count() > 0 ? f.length : preset.length;
    trial.patterns = f.patterns_opt->count() > 0 ? f.patterns : preset.patterns;
    trial.trials = f.trials_opt->count() > 0 ? f.trials : preset.trials;
    trial.max_iters = f.max_iters_opt->count() > 0 ? f.max_iters : preset.max_iters;
    trial.seed = f.seed;
    if (f.update_mode == "sync") trial.update_mode = UpdateMode::synchronous;
    if (f.update_mode == "async") trial.update_mode = UpdateMode::asynchronous;
    trial.success_tol = f.success_tol;
    trial.convergence_tol = f.convergence_tol;
    if (f.threads_opt->count() > 0) {
        trial.threads = f.threads;
    } else if (const char* env = std::getenv("QAM_THREADS")) {
        trial.threads = std::atoi(env);
        if (trial.threads < 0) trial.threads = 0;
    }
    return trial;
}

struct Parser {
    CLI::App app{"quaternion-valued associative memory experiments"};
    FlagSet sweep_flags;
    FlagSet check_flags;
    FlagSet single_flags;
    CLI::App* sweep = nullptr;
    CLI::App* check = nullptr;
    CLI::App* single = nullptr;

    Parser() {
        app.name("qam");
        app.require_subcommand(1);
        sweep = app.add_subcommand("sweep", "recall probability across a noise grid");
        add_experiment_options(sweep, sweep_flags, NoiseFlag::grid);
        sweep->add_option("--out", sweep_flags.out_path, "CSV output path");
        sweep->add_option("--format", sweep_flags.format, "stdout format")
            ->check(CLI::IsMember({"summary", "csv"}));

        check = app.add_subcommand("fixed-point-check",
                                   "verify that every stored pattern is a fixed point");
        add_experiment_options(check, check_flags, NoiseFlag::none);

        single = app.add_subcommand("single-run", "one storage-and-recall trial");
        add_experiment_options(single, single_flags, NoiseFlag::single);
    }

    /// args in regular command-line order, program name excluded.
    CliConfig parse(std::vector<std::string> args) {
        std::reverse(args.begin(), args.end());
        app.parse(args);

        CliConfig config;
        if (sweep->parsed()) {
            config.command = CliConfig::Command::sweep;
            config.trial = resolve_trial_config(sweep_flags);
            config.noise_grid =
                sweep_flags.noise.empty() ? default_noise_grid() : sweep_flags.noise;
            config.out_path = sweep_flags.out_path;
            config.format = sweep_flags.format == "csv" ? CliConfig::Format::csv
                                                        : CliConfig::Format::summary;
        } else if (check->parsed()) {
            config.command = CliConfig::Command::fixed_point_check;
            config.trial = resolve_trial_config(check_flags);
        } else {
            config.command = CliConfig::Command::single_run;
            config.trial = resolve_trial_config(single_flags);
            if (!single_flags.noise.empty()) config.trial.noise_prob = single_flags.noise.back();
        }
        return config;
    }
};

}  // namespace detail

/// Parses command-line arguments (program name excluded). Throws
/// CLI::ParseError on invalid usage; the tool maps that to exit status 2.
inline CliConfig parse_args(const std::vector<std::string>& args) {
    detail::Parser parser;
    return parser.parse(args);
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline void emit_csv(const SweepResult& result, std::ostream& os) {
    const TrialConfig& c = result.config;
    const std::string model = model_label(c.family, c.kernel);
    const std::string domain = to_string(c.domain);
    const std::string params = kernel_params_label(c.family, c.kernel);
    os << "model,domain,n,p,kernel_params,noise_prob,trials,successes,recall_prob,mean_iters,seed\n";
    for (const NoiseLevelResult& level : result.levels) {
        os << model << ',' << domain << ',' << c.length << ',' << c.patterns << ',' << params
           << ',' << format_double(level.noise_prob) << ',' << level.trials << ','
           << level.successes << ',' << format_double(level.recall_probability) << ','
           << format_double(level.mean_iterations) << ',' << c.seed << '\n';
    }
}

inline void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    emit_csv(result, out);
    out.flush();
    if (!out) throw IoError("error while writing output file: " + path);
}

/// Human-readable report. The header echoes every resolved setting so a
/// run can never silently use an unexpected default.
inline void print_summary(const SweepResult& result, std::ostream& os) {
    const TrialConfig& c = result.config;
    os << "# model=" << model_label(c.family, c.kernel) << " domain=" << to_string(c.domain)
       << " n=" << c.length << " p=" << c.patterns
       << " kernel_params=" << kernel_params_label(c.family, c.kernel) << '\n';
    os << "# trials=" << c.trials << " max_iters=" << c.max_iters << " seed=" << c.seed
       << " update_mode=" << to_string(resolved_update_mode(c))
       << " success_tol=" << format_double(c.success_tol)
       << " convergence_tol=" << format_double(c.convergence_tol)
       << " threads=" << resolve_thread_count(c.threads) << '\n';
    os << "noise_prob  recall_prob  mean_iters  converged  train_failures\n";
    for (const NoiseLevelResult& level : result.levels) {
        os << format_double(level.noise_prob) << "  " << format_double(level.recall_probability)
           << "  " << format_double(level.mean_iterations) << "  " << level.converged_count << '/'
           << level.trials << "  " << level.training_failures << '\n';
    }
}

// ---------------------------------------------------------------------------
// Subcommand drivers
// ---------------------------------------------------------------------------

inline int cmd_sweep(const CliConfig& config, std::ostream& os) {
    const SweepResult result = run_sweep(config.trial, config.noise_grid);
    if (config.format == CliConfig::Format::csv) {
        emit_csv(result, os);
    } else {
        print_summary(result, os);
    }
    if (!config.out_path.empty()) {
        emit_csv(result, config.out_path);
    }
    return kExitOk;
}

/// Trains on one random memory set and verifies that each stored pattern
/// is left unchanged by a network update. Prints one distance per pattern.
inline int cmd_fixed_point_check(const CliConfig& config, std::ostream& os) {
    const TrialConfig& c = config.trial;
    Rng rng = trial_rng(c.seed, 0, 0);
    const FundamentalMemorySet memories =
        c.domain == Domain::bipolar ? random_bipolar_memories(c.length, c.patterns, rng)
                                    : random_quaternion_memories(c.length, c.patterns, rng);
    os << "# model=" << model_label(c.family, c.kernel) << " domain=" << to_string(c.domain)
       << " n=" << c.length << " p=" << c.patterns << " seed=" << c.seed
       << " update_mode=" << to_string(resolved_update_mode(c))
       << " success_tol=" << format_double(c.success_tol) << '\n';

    const TrainedMemory model = train_model(c.family, memories, c.kernel);
    const UpdateMode mode = resolved_update_mode(c);
    bool all_fixed = true;
    for (std::size_t xi = 0; xi < memories.size(); ++xi) {
        const NetworkState next = step(model, NetworkState{memories[xi], 0}, mode);
        const double dist = max_component_distance(next.x, memories[xi]);
        const bool fixed = dist <= c.success_tol;
        all_fixed = all_fixed && fixed;
        os << "memory " << xi << ": distance " << dist << (fixed ? "" : "  NOT A FIXED POINT")
           << '\n';
    }
    os << (all_fixed ? "all stored patterns are fixed points\n"
                     : "some stored patterns are not fixed points\n");
    return all_fixed ? kExitOk : kExitCheckFailed;
}

inline int cmd_single_run(const CliConfig& config, std::ostream& os) {
    const TrialConfig& c = config.trial;
    Rng rng = trial_rng(c.seed, 0, 0);
    const TrialOutcome outcome = run_trial(c, rng);
    os << "# model=" << model_label(c.family, c.kernel) << " domain=" << to_string(c.domain)
       << " n=" << c.length << " p=" << c.patterns
       << " noise_prob=" << format_double(c.noise_prob) << " seed=" << c.seed
       << " max_iters=" << c.max_iters
       << " update_mode=" << to_string(resolved_update_mode(c))
       << " success_tol=" << format_double(c.success_tol) << '\n';
    os << "success=" << (outcome.success ? "true" : "false")
       << " iterations=" << outcome.iterations
       << " converged=" << (outcome.converged ? "true" : "false")
       << " final_distance=" << outcome.final_distance
       << " training_failed=" << (outcome.training_failed ? "true" : "false") << '\n';
    return kExitOk;
}

inline int run_cli(std::vector<std::string> args, std::ostream& os = std::cout,
                   std::ostream& err = std::cerr) {
    detail::Parser parser;
    CliConfig config;
    try {
        config = parser.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        os << parser.app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        os << parser.app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        switch (config.command) {
            case CliConfig::Command::sweep: return cmd_sweep(config, os);
            case CliConfig::Command::fixed_point_check: return cmd_fixed_point_check(config, os);
            case CliConfig::Command::single_run: return cmd_single_run(config, os);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const SingularMatrixError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

inline int run_cli(int argc, const char* const* argv) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace qam
