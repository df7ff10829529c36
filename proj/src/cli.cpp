#include "stopsmith/cli.hpp"

#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "record.hpp"
#include "stopsmith/asymptotics.hpp"
#include "stopsmith/closed_forms.hpp"
#include "stopsmith/engine.hpp"
#include "stopsmith/models.hpp"
#include "stopsmith/verify.hpp"

namespace stopsmith::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;
constexpr std::int64_t kDefaultTrials = 1000000;

struct RunConfig {
    // model / family selection
    std::string model;
    std::string family;
    int n = 0;
    double q = 1.0;
    bool q_given = false;
    std::string weights_text;
    std::string weights_file;
    std::string perm_text;

    // strategy and estimation
    int m = 0;
    std::string direction = "min";
    std::int64_t trials = kDefaultTrials;
    std::int64_t count = 1;
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    double tol = 1e-14;

    // asymptotics
    std::string regime;
    std::string sign = "minus";
    double c = 1.0;
    double alpha = 0.5;

    // sweep range
    int m_from = 0;
    int m_to = -1;

    // output
    std::string format = "json";
    std::string output_path;
    std::string level = "quick";
};

std::optional<WeightVector> resolve_weights(const RunConfig& cfg) {
    if (!cfg.weights_file.empty()) return load_weights_file(cfg.weights_file);
    if (!cfg.weights_text.empty()) return parse_weights(cfg.weights_text, cfg.n);
    return std::nullopt;
}

// Text shown in records for the weight parameterisation.
std::string weights_label(const RunConfig& cfg) {
    if (!cfg.weights_file.empty()) return "file:" + cfg.weights_file;
    return cfg.weights_text;
}

SamplerSpec build_sampler(const RunConfig& cfg) {
    const SamplerKind kind = parse_sampler(cfg.model);
    std::optional<WeightVector> weights = resolve_weights(cfg);
    switch (kind) {
        case SamplerKind::Mallows:
        case SamplerKind::Uniform:
        case SamplerKind::SukhatmeGap:
            if (cfg.n < 1) throw ParseError("--model " + cfg.model + " needs --n");
            break;
        default:
            if (!weights)
                throw ParseError("--model " + cfg.model + " needs --weights or --weights-file");
    }
    return SamplerSpec::make(kind, cfg.n, cfg.q, std::move(weights));
}

ExactFamily build_family(const RunConfig& cfg) {
    if (cfg.family.empty()) throw ParseError("--family is required");
    std::optional<double> q;
    if (cfg.q_given) q = cfg.q;
    return ExactFamily::parse(cfg.family, q, resolve_weights(cfg));
}

std::string family_param_label(const RunConfig& cfg, const ExactFamily& family) {
    switch (family.kind()) {
        case ExactFamily::Kind::Classical: return "-";
        case ExactFamily::Kind::MallowsUp:
        case ExactFamily::Kind::MallowsDown: return format_double(family.q());
        case ExactFamily::Kind::LuceInvDown: return weights_label(cfg);
    }
    return "-";
}

RankDirection family_direction(const ExactFamily& family) {
    return family.kind() == ExactFamily::Kind::MallowsUp ? RankDirection::Max
                                                         : RankDirection::Min;
}

// Output destination: --output file or the provided stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw IoError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }

    std::ostream& out() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void emit_record(const Record& record, const RunConfig& cfg, std::ostream& out) {
    out << (cfg.format == "csv" ? record.csv() : record.json()) << '\n';
}

// ---- subcommands ----

void cmd_sample(const RunConfig& cfg, std::ostream& out) {
    if (cfg.count < 1) throw BadParameter("--count must be >= 1");
    const SamplerSpec sampler = build_sampler(cfg);
    Rng rng(cfg.seed);
    for (std::int64_t i = 0; i < cfg.count; ++i)
        out << to_one_line(sampler.sample(rng)) << '\n';
}

void cmd_pmf(const RunConfig& cfg, std::ostream& out) {
    const SamplerSpec sampler = build_sampler(cfg);
    const ModelSpec law = sampler.law();
    if (cfg.perm_text.empty()) throw ParseError("--perm is required");
    const Permutation p = Permutation::from_one_line(cfg.perm_text);
    Record record;
    record.add("family", family_name(law.family));
    record.add("n", law.n);
    record.add("perm", to_one_line(p));
    record.add("pmf", model_pmf(law, p));
    record.add("log_pmf", model_log_pmf(law, p));
    emit_record(record, cfg, out);
}

void cmd_exact(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < 1) throw ParseError("--n is required");
    const ExactFamily family = build_family(cfg);
    out << format_double(family.evaluate(cfg.n, cfg.m)) << '\n';
}

void cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    const SamplerSpec sampler = build_sampler(cfg);
    const ModelSpec law = sampler.law();
    const RankDirection dir = parse_direction(cfg.direction);
    const double probability = exact_success_by_enumeration(law, cfg.m, dir);
    Record record;
    record.add("family", family_name(law.family));
    record.add("n", law.n);
    record.add("m", cfg.m);
    record.add("direction", direction_name(dir));
    record.add("probability", probability);
    emit_record(record, cfg, out);
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const SamplerSpec sampler = build_sampler(cfg);
    const RankDirection dir = parse_direction(cfg.direction);
    const MonteCarloEstimate est =
        monte_carlo_success(sampler, cfg.m, dir, cfg.trials, cfg.seed, cfg.threads);
    Record record;
    record.add("family", sampler_name(sampler.kind));
    record.add("n", sampler.n);
    record.add("m", cfg.m);
    record.add("direction", direction_name(dir));
    record.add("trials", est.trials);
    record.add("successes", est.successes);
    record.add("p_hat", est.p_hat);
    record.add("std_err", est.std_err);
    record.add("seed", est.seed);
    emit_record(record, cfg, out);
}

void cmd_optimize(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < 1) throw ParseError("--n is required");
    const ExactFamily family = build_family(cfg);
    const ThresholdOptimum best = optimize_threshold(family, cfg.n);
    Record record;
    record.add("family", family.name());
    record.add("n", cfg.n);
    record.add("q_or_weights", family_param_label(cfg, family));
    record.add("m_star", best.m);
    record.add("value", best.value);
    emit_record(record, cfg, out);
}

void cmd_asymptotic(const RunConfig& cfg, std::ostream& out) {
    Record record;
    record.add("regime", cfg.regime);
    LimitResult result;
    if (cfg.regime == "critical") {
        const RankDirection dir = parse_direction(cfg.direction);
        const WindowSign sign = parse_sign(cfg.sign);
        result = regime_optimum(AsymptoticRegime::critical_window(cfg.c, sign), dir, cfg.tol);
        record.add("direction", direction_name(dir));
        record.add("sign", sign_name(sign));
        record.add("c", cfg.c);
    } else if (cfg.regime == "intermediate") {
        const RankDirection dir = parse_direction(cfg.direction);
        const WindowSign sign = parse_sign(cfg.sign);
        result = regime_optimum(AsymptoticRegime::intermediate(cfg.c, cfg.alpha, sign), dir,
                                cfg.tol);
        record.add("direction", direction_name(dir));
        record.add("sign", sign_name(sign));
        record.add("c", cfg.c);
        record.add("alpha", cfg.alpha);
    } else if (cfg.regime == "fixed-q") {
        if (!cfg.q_given) throw ParseError("--regime fixed-q needs --q");
        const RankDirection dir = parse_direction(cfg.direction);
        result = regime_optimum(AsymptoticRegime::fixed_q(cfg.q), dir, cfg.tol);
        record.add("direction", direction_name(dir));
        record.add("q", cfg.q);
    } else if (cfg.regime == "uniform") {
        result = regime_optimum(AsymptoticRegime::uniform(), RankDirection::Min, cfg.tol);
    } else if (cfg.regime == "sukhatme" || cfg.regime == "rev-sukhatme") {
        result = sukhatme_optimal_fraction(cfg.regime == "sukhatme"
                                               ? SukhatmeKind::Standard
                                               : SukhatmeKind::Reverse);
        record.add("direction", "min");
    } else {
        throw ParseError("unknown regime '" + cfg.regime + "'");
    }
    record.add("threshold_kind", threshold_kind_name(result.kind));
    record.add("threshold_value", result.value);
    record.add("limit_prob", result.limit_prob);
    if (result.co_optimal) record.add("co_optimal", true);
    emit_record(record, cfg, out);
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < 1) throw ParseError("--n is required");
    const ExactFamily family = build_family(cfg);
    const int m_from = cfg.m_from;
    const int m_to = cfg.m_to < 0 ? cfg.n - 1 : cfg.m_to;
    if (m_from < 0 || m_to > cfg.n - 1 || m_from > m_to)
        throw BadThreshold("sweep range [" + std::to_string(m_from) + ", " +
                           std::to_string(m_to) + "] outside {0.." +
                           std::to_string(cfg.n - 1) + "}");
    const std::vector<double> values = family.sweep(cfg.n);
    const std::string params = family_param_label(cfg, family);
    const std::string dir = direction_name(family_direction(family));
    out << "family,n,m,q_or_weights,direction,probability\n";
    for (int m = m_from; m <= m_to; ++m) {
        out << family.name() << ',' << cfg.n << ',' << m << ',' << params << ',' << dir
            << ',' << format_double(values[static_cast<std::size_t>(m)]) << '\n';
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const VerifyLevel level = parse_verify_level(cfg.level);
    const auto results = run_verification(level, cfg.seed, cfg.threads);
    std::size_t failures = 0;
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
            << std::string(width - r.name.size() + 2, ' ') << r.detail << "  ("
            << format_double(r.seconds) << "s)\n";
    }
    out << (failures == 0 ? "all checks passed"
                          : std::to_string(failures) + " check(s) failed")
        << " [" << results.size() << " run, level " << cfg.level << ", seed "
        << cfg.seed << "]\n";
    return failures == 0 ? 0 : 1;
}

void add_model_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--model", cfg.model,
                    "mallows | luce | luce-inv | p-shifted | uniform | exp-reduce | "
                    "sukhatme-gap")
        ->required();
    cmd->add_option("--n", cfg.n, "number of items");
    cmd->add_option("--q", cfg.q, "Mallows parameter (q > 0)");
    cmd->add_option("--weights", cfg.weights_text,
                    "inline list \"1,2,3\" or unit | geom:<q> | sukhatme | rev-sukhatme");
    cmd->add_option("--weights-file", cfg.weights_file, "one weight per line");
}

void add_family_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--family", cfg.family,
                    "classical | mallows-up | mallows-down | luce-inv-down")
        ->required();
    cmd->add_option("--n", cfg.n, "number of items")->required();
    cmd->add_option("--q", cfg.q, "Mallows parameter (q > 0)");
    cmd->add_option("--weights", cfg.weights_text, "weights for luce-inv-down");
    cmd->add_option("--weights-file", cfg.weights_file, "one weight per line");
}

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "json | csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", cfg.output_path, "write to a file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"secretary-problem toolkit: exact formulas, samplers and simulation\n"
                 "for Mallows and Luce arrival orders"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* sample = app.add_subcommand("sample", "draw permutations");
    add_model_options(sample, cfg);
    sample->add_option("--count", cfg.count, "number of permutations (default 1)");
    sample->add_option("--seed", cfg.seed, "RNG seed (default 1729)");
    add_output_options(sample, cfg);

    CLI::App* pmf = app.add_subcommand("pmf", "probability of one permutation");
    add_model_options(pmf, cfg);
    pmf->add_option("--perm", cfg.perm_text, "permutation, e.g. \"3 1 4 2\"")->required();
    add_output_options(pmf, cfg);

    CLI::App* exact = app.add_subcommand("exact", "closed-form success probability");
    add_family_options(exact, cfg);
    exact->add_option("--m", cfg.m, "cutoff (reject the first m items)")->required();
    add_output_options(exact, cfg);

    CLI::App* enumerate = app.add_subcommand("enumerate",
                                             "success probability by brute force (n <= 9)");
    add_model_options(enumerate, cfg);
    enumerate->add_option("--m", cfg.m, "cutoff")->required();
    enumerate->add_option("--direction", cfg.direction, "min | max (default min)");
    add_output_options(enumerate, cfg);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo success estimate");
    add_model_options(simulate, cfg);
    simulate->add_option("--m", cfg.m, "cutoff")->required();
    simulate->add_option("--direction", cfg.direction, "min | max (default min)");
    simulate->add_option("--trials", cfg.trials, "number of trials (default 1000000)");
    simulate->add_option("--seed", cfg.seed, "RNG seed (default 1729)");
    simulate->add_option("--threads", cfg.threads,
                         "worker cap; 0 = STOPSMITH_THREADS or hardware");
    add_output_options(simulate, cfg);

    CLI::App* optimize = app.add_subcommand("optimize", "best cutoff for a closed form");
    add_family_options(optimize, cfg);
    add_output_options(optimize, cfg);

    CLI::App* asymptotic = app.add_subcommand("asymptotic",
                                              "limiting optimal cutoff and value");
    asymptotic
        ->add_option("--regime", cfg.regime,
                     "critical | intermediate | fixed-q | uniform | sukhatme | rev-sukhatme")
        ->required();
    asymptotic->add_option("--direction", cfg.direction, "min | max");
    asymptotic->add_option("--sign", cfg.sign, "plus | minus (window sign)");
    asymptotic->add_option("--c", cfg.c, "window scale c > 0");
    asymptotic->add_option("--alpha", cfg.alpha, "window exponent in (0,1)");
    asymptotic->add_option("--q", cfg.q, "fixed q != 1");
    asymptotic->add_option("--tol", cfg.tol, "series truncation tolerance (default 1e-14)");
    add_output_options(asymptotic, cfg);

    CLI::App* sweep = app.add_subcommand("sweep", "CSV of success probability per cutoff");
    add_family_options(sweep, cfg);
    sweep->add_option("--m-from", cfg.m_from, "first cutoff (default 0)");
    sweep->add_option("--m-to", cfg.m_to, "last cutoff (default n-1)");
    sweep->add_option("--output", cfg.output_path, "write to a file instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--level", cfg.level, "quick | full (default quick)")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--seed", cfg.seed, "RNG seed (default 1729)");
    verify->add_option("--threads", cfg.threads,
                       "worker cap; 0 = STOPSMITH_THREADS or hardware");
    verify->add_option("--output", cfg.output_path, "write to a file instead of stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("stopsmith");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    for (const CLI::App* sub : app.get_subcommands()) {
        const CLI::Option* q_option = sub->get_option_no_throw("--q");
        if (q_option && q_option->count() > 0) cfg.q_given = true;
    }

    try {
        Sink sink(cfg.output_path, out);
        if (sample->parsed()) cmd_sample(cfg, sink.out());
        else if (pmf->parsed()) cmd_pmf(cfg, sink.out());
        else if (exact->parsed()) cmd_exact(cfg, sink.out());
        else if (enumerate->parsed()) cmd_enumerate(cfg, sink.out());
        else if (simulate->parsed()) cmd_simulate(cfg, sink.out());
        else if (optimize->parsed()) cmd_optimize(cfg, sink.out());
        else if (asymptotic->parsed()) cmd_asymptotic(cfg, sink.out());
        else if (sweep->parsed()) cmd_sweep(cfg, sink.out());
        else if (verify->parsed()) return cmd_verify(cfg, sink.out());
        return 0;
    } catch (const Error& e) {
        if (cfg.format == "json") {
            Record record;
            record.add("error", e.code());
            record.add("message", e.what());
            err << record.json() << '\n';
        } else {
            err << "error: " << e.what() << " (" << e.code() << ")\n";
        }
        return 1;
    }
}

}  // namespace stopsmith::cli
