#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "circlab/arithmetic.hpp"
#include "circlab/experiments.hpp"
#include "circlab/report.hpp"
#include "circlab/spectral.hpp"
#include "circlab/trig_poly.hpp"

namespace circlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Thrown by subcommand handlers for bad input that CLI11 cannot catch.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("CIRCLAB_OUT_DIR")) return env;
    return {};
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<double> random_row(const std::string& dist, std::size_t n, std::uint64_t seed) {
    const auto kind = parse_distribution(dist);
    if (!kind) throw UsageError("unknown distribution '" + dist + "'");
    return TrialStream(trial_seed(seed, 0)).samples(Distribution{*kind}, n);
}

struct RowOptions {
    std::vector<double> row;
    std::size_t n = 0;
    std::string dist = "normal";
    std::uint64_t seed = 1;
};

void add_row_options(CLI::App* app, RowOptions& o, const char* size_flag) {
    app->add_option("--row", o.row, "First row (comma separated)")->delimiter(',');
    app->add_option(size_flag, o.n, "Dimension (random row when --row is absent)");
    app->add_option("--dist", o.dist, "bernoulli|rademacher|uniform|normal");
    app->add_option("--seed", o.seed, "Seed for a random row");
}

json row_config(const RowOptions& o, std::size_t n) {
    if (!o.row.empty()) return json{{"n", n}, {"row", o.row}};
    return json{{"n", n}, {"dist", o.dist}, {"seed", o.seed}};
}

std::vector<double> resolve_row(const RowOptions& o) {
    if (!o.row.empty()) {
        if (o.n != 0 && o.n != o.row.size())
            throw UsageError("row has " + std::to_string(o.row.size()) + " entries but the size flag says " +
                             std::to_string(o.n));
        return o.row;
    }
    if (o.n == 0) throw UsageError("give either a row or a size");
    return random_row(o.dist, o.n, o.seed);
}

int emit(std::ostream& out, const std::string& format, const json& j, const std::string& csv) {
    if (format == "csv")
        out << csv;
    else
        out << j.dump(2) << '\n';
    return kOk;
}

int cmd_spectrum(const RowOptions& o, bool symmetric, const std::string& format, std::ostream& out) {
    std::vector<double> row;
    Spectrum s;
    if (symmetric) {
        if (o.n == 0) throw UsageError("--symmetric needs --n");
        const std::vector<double> free = o.row.empty() ? random_row(o.dist, o.n / 2 + 1, o.seed) : o.row;
        const SymmetricCirculantSpec spec(o.n, free);
        const CirculantSpec expanded = expand_symmetric_circulant(spec);
        const auto full = expanded.first_row.values();
        row.assign(full.begin(), full.end());
        s = symmetric_circulant_eigenvalues(spec);
    } else {
        row = resolve_row(o);
        s = circulant_eigenvalues(CirculantSpec(row));
    }
    const ConditionReport rep = circulant_extremes(s);
    json eig = json::array();
    for (const cplx& z : s.eigenvalues) eig.push_back({z.real(), z.imag()});
    json j{{"command", "spectrum"},
           {"config", row_config(o, row.size())},
           {"eigenvalues", eig},
           {"sigma_max", rep.sigma_max},
           {"sigma_min", rep.sigma_min},
           {"kappa", optional_json(rep.kappa)}};
    j["config"]["symmetric"] = symmetric;
    std::ostringstream csv;
    write_spectrum_csv(csv, s);
    return emit(out, format, j, csv.str());
}

int cmd_schur(const RowOptions& o, const std::string& normalization, bool check, const std::string& format,
              std::ostream& out) {
    const std::vector<double> row = resolve_row(o);
    const CirculantSpec spec(row);
    SchurOptions opts;
    if (normalization == "unitary")
        opts.normalization = FourierNormalization::Unitary;
    else if (normalization == "unnormalized")
        opts.normalization = FourierNormalization::Unnormalized;
    else
        throw UsageError("--normalization must be unitary or unnormalized");
    const SchurBlock block = build_schur_block(spec, opts);
    const SigmaMinResult sm = sigma_min_fast(block.matrix);
    json j{{"command", "schur"},
           {"config", row_config(o, row.size())},
           {"n", block.n},
           {"sigma_min", sm.value},
           {"fallback_used", sm.used_fallback}};
    j["config"]["normalization"] = normalization;
    int code = kOk;
    if (check) {
        DenseMatrix oracle = schur_block_oracle(spec).matrix;
        if (opts.normalization == FourierNormalization::Unnormalized)
            for (cplx& z : oracle.data()) z *= static_cast<double>(row.size());
        const double rel = (block.matrix - oracle).frobenius_norm() / oracle.frobenius_norm();
        j["oracle_relative_difference"] = rel;
        if (!(rel <= 1e-9)) code = kViolation;
    }
    std::ostringstream csv;
    write_matrix_csv(csv, block.matrix);
    emit(out, format, j, csv.str());
    return code;
}

int cmd_maxmod(const RowOptions& o, std::size_t oversampling, bool symmetric, const std::string& format,
               std::ostream& out) {
    const std::vector<double> row = resolve_row(o);
    const MaxModulusBracket b = max_modulus(TrigPolynomial(row, symmetric), oversampling);
    const double smax = circulant_extremes(circulant_eigenvalues(CirculantSpec(row))).sigma_max;
    json j{{"command", "maxmod"},
           {"config", row_config(o, row.size())},
           {"lower", b.lower},
           {"upper", b.upper},
           {"witness_x", b.witness_x},
           {"sigma_max_circulant", smax}};
    j["config"]["oversampling"] = oversampling;
    if (row.size() >= 2) {
        const SalemZygmundRatio r = salem_zygmund_ratio(b, row.size());
        j["ratio_lower"] = r.lower;
        j["ratio_upper"] = r.upper;
    }
    std::ostringstream csv;
    csv << std::setprecision(17) << "lower,upper,witness_x\n" << b.lower << ',' << b.upper << ',' << b.witness_x << '\n';
    emit(out, format, j, csv.str());
    return b.upper >= smax * (1.0 - 1e-12) ? kOk : kViolation;
}

json lcd_json(const LcdEstimate& e) {
    return json{{"L", e.L},
                {"lower_bound", e.lower_bound},
                {"upper_witness", optional_json(e.upper_witness)},
                {"witness_phi", optional_json(e.witness_phi)},
                {"witness_distance", e.witness_distance},
                {"search_resolution", e.search_resolution},
                {"simple_bound", e.simple_bound}};
}

struct LcdArgs {
    std::vector<double> vector;
    std::vector<std::size_t> vk;
    double L = 1.0;
    std::optional<double> theta_max, step, r_max;
    double r_step = 1e-2, phi_step = std::numbers::pi / 360.0;
};

int cmd_lcd(const LcdArgs& a, const std::string& format, std::ostream& out) {
    LcdEstimate e;
    json cfg{{"L", a.L}};
    bool witness_ok = true;
    if (!a.vk.empty()) {
        if (a.vk.size() != 2) throw UsageError("--vk takes n,k");
        const VkMatrix v = vk_matrix(a.vk[0], a.vk[1]);
        e = lcd_matrix2(v.matrix, a.L, {.r_max = a.r_max, .r_step = a.r_step, .phi_step = a.phi_step});
        cfg["vk"] = a.vk;
        if (e.upper_witness) {
            std::vector<double> x(a.vk[0]);
            const double t1 = *e.upper_witness * std::cos(*e.witness_phi);
            const double t2 = *e.upper_witness * std::sin(*e.witness_phi);
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = v.matrix(0, j).real() * t1 + v.matrix(1, j).real() * t2;
            witness_ok = lcd_inequality_holds(x, a.L);
        }
    } else {
        if (a.vector.empty()) throw UsageError("give --vector or --vk");
        e = lcd_vector(a.vector, a.L, {.theta_max = a.theta_max, .step = a.step});
        cfg["vector"] = a.vector;
        if (e.upper_witness) {
            std::vector<double> x(a.vector);
            for (double& v : x) v *= *e.upper_witness;
            witness_ok = lcd_inequality_holds(x, a.L);
        }
    }
    json j = lcd_json(e);
    j["command"] = "lcd";
    j["config"] = cfg;
    std::ostringstream csv;
    csv << std::setprecision(17) << "L,lower_bound,upper_witness,search_resolution\n"
        << e.L << ',' << e.lower_bound << ',';
    if (e.upper_witness) csv << *e.upper_witness;
    csv << ',' << e.search_resolution << '\n';
    emit(out, format, j, csv.str());
    const bool ok = e.lower_bound >= e.simple_bound && witness_ok &&
                    (!e.upper_witness || *e.upper_witness >= e.lower_bound);
    return ok ? kOk : kViolation;
}

struct LemmaArgs {
    std::string lemma;
    std::size_t m = 1000;
    std::size_t theta_grid = 360;
    std::vector<double> r_values;
    std::size_t n = 2000;
    std::size_t k_max = 50;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::uint64_t M_max = 1000;
};

int cmd_verify_lemmas(const LemmaArgs& a, const std::string& format, const std::string& out_dir,
                      std::ostream& out) {
    std::vector<LemmaSweepRow> rows;
    json cfg{{"lemma", a.lemma}};
    if (a.lemma == "cos-full") {
        std::vector<double> rs = a.r_values;
        if (rs.empty())
            for (int r = 2; r <= static_cast<int>(std::floor(static_cast<double>(a.m) / (24.0 * std::numbers::pi))); ++r)
                rs.push_back(r);
        cfg.update({{"m", a.m}, {"theta_grid", a.theta_grid}, {"r_values", rs}});
        for (double r : rs)
            for (std::size_t t = 0; t < a.theta_grid; ++t) {
                const double theta = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(a.theta_grid);
                rows.push_back({"full-r" + std::to_string(r) + "-t" + std::to_string(t),
                                {{"m", static_cast<double>(a.m)}, {"r", r}, {"theta", theta}},
                                verify_cosine_distance_full(a.m, r, theta)});
            }
    } else if (a.lemma == "cos-half") {
        const std::vector<double> rs = a.r_values.empty() ? std::vector<double>{1.0, 2.0, 4.0} : a.r_values;
        cfg.update({{"n", a.n}, {"k_max", a.k_max}, {"r_values", rs}});
        for (double r : rs)
            for (std::size_t k = 1; k <= a.k_max; ++k)
                rows.push_back({"half-k" + std::to_string(k) + "-r" + std::to_string(r),
                                {{"n", static_cast<double>(a.n)}, {"k", static_cast<double>(k)}, {"r", r}},
                                verify_cosine_distance_half(a.n, k, r)});
    } else if (a.lemma == "vk") {
        cfg.update({{"trials", a.trials}, {"seed", a.seed}});
        const TrialStream s(trial_seed(a.seed, 0));
        for (std::size_t t = 0; t < a.trials; ++t) {
            const auto n = static_cast<std::size_t>(3 + std::floor(s.uniform(2 * t) * 510.0));
            std::size_t k = 1 + static_cast<std::size_t>(std::floor(s.uniform(2 * t + 1) * static_cast<double>(n - 1)));
            if (2 * k == n) k = k + 1 < n ? k + 1 : k - 1;
            const VkMatrix v = vk_matrix(n, k);
            LemmaCheck c;
            c.applicable = true;
            c.distance = v.det;
            c.bound = v.expected;
            c.margin = 1e-9 * v.expected - std::abs(v.det - v.expected);
            c.holds = v.matches;
            rows.push_back({"vk-" + std::to_string(t), {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}}, c});
        }
    } else if (a.lemma == "gcd") {
        cfg["M_max"] = a.M_max;
        for (std::uint64_t M = 1; M <= a.M_max; ++M) {
            const auto root = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(M))));
            for (std::uint64_t y : {std::uint64_t{1}, std::uint64_t{2}, root, M}) {
                const GcdCensus g = gcd_census(M, y);
                LemmaCheck c;
                c.applicable = true;
                c.distance = static_cast<double>(g.exact_count);
                c.bound = static_cast<double>(g.totient_sum);
                c.holds = g.exact_count == g.totient_sum;
                c.margin = -std::abs(c.distance - c.bound);
                rows.push_back({"gcd-" + std::to_string(M) + "-" + std::to_string(y),
                                {{"M", static_cast<double>(M)}, {"y", static_cast<double>(y)}}, c});
            }
        }
    } else {
        throw UsageError("--lemma must be cos-full, cos-half, vk or gcd");
    }

    std::size_t applicable = 0, violations = 0;
    double min_margin = INFINITY;
    for (const auto& r : rows) {
        if (!r.check.applicable) continue;
        ++applicable;
        if (r.check.violation()) ++violations;
        min_margin = std::min(min_margin, r.check.margin);
    }
    std::ostringstream csv;
    write_lemma_sweep_csv(csv, rows);
    if (!out_dir.empty()) write_file(fs::path(out_dir) / (a.lemma + "_sweep.csv"), csv.str());
    json j{{"command", "verify-lemmas"},
           {"config", cfg},
           {"cases", rows.size()},
           {"applicable", applicable},
           {"violations", violations},
           {"min_margin", applicable ? json(min_margin) : json(nullptr)}};
    emit(out, format, j, csv.str());
    return violations == 0 ? kOk : kViolation;
}

struct ExperimentArgs {
    std::string config_file;
    std::string dist;
    std::vector<std::size_t> sizes;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> epsilons;
    double rho = 0.0, c0 = 0.0, xi_star = 0.0;
    std::size_t oversampling = 0, workers = 0;
    std::string normalization;
    bool symmetric = false, resample = false;
};

int cmd_experiment(const std::string& kind_name, const ExperimentArgs& a, const CLI::App& sub,
                   const std::string& format, const std::string& out_dir, std::ostream& out) {
    ExperimentConfig c;
    c.workers = std::max(1u, std::thread::hardware_concurrency());
    if (!a.config_file.empty()) {
        std::ifstream f(a.config_file);
        if (!f) throw UsageError("cannot open config file " + a.config_file);
        json j;
        try {
            f >> j;
        } catch (const json::exception& e) {
            throw UsageError(std::string("config file: ") + e.what());
        }
        // The summary JSON nests the config block; accept either form.
        c = config_from_json(j.contains("config") ? j.at("config") : j, c);
    }
    const auto kind = parse_experiment(kind_name);
    if (!kind) throw UsageError("unknown experiment '" + kind_name + "'");
    c.experiment = *kind;
    auto given = [&](const char* flag) { return sub.get_option(flag)->count() > 0; };
    if (given("--dist")) {
        const auto d = parse_distribution(a.dist);
        if (!d) throw UsageError("unknown distribution '" + a.dist + "'");
        c.distribution.kind = *d;
    }
    if (given("--sizes")) c.sizes = a.sizes;
    if (given("--trials")) c.trials = a.trials;
    if (given("--seed")) c.master_seed = a.seed;
    if (given("--epsilons")) c.epsilons = a.epsilons;
    if (given("--rho")) c.rho = a.rho;
    if (given("--c0")) c.c0 = a.c0;
    if (given("--symmetric")) c.symmetric = a.symmetric;
    if (given("--xi-star")) {
        c.xi_star_mode = XiStarMode::Fixed;
        c.xi_star = a.xi_star;
    }
    if (given("--oversampling")) c.oversampling = a.oversampling;
    if (given("--resample")) c.resample_singular = a.resample;
    if (given("--workers")) c.workers = std::max<std::size_t>(a.workers, 1);
    if (given("--normalization")) c = config_from_json(json{{"normalization", a.normalization}}, c);
    try {
        validate_config(c);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const ExperimentResult r = run_experiment(c);
    const json summary = result_json(r);
    std::ostringstream trials;
    write_trials_csv(trials, r);
    if (!out_dir.empty()) {
        const fs::path dir(out_dir);
        const std::string stem = experiment_name(c.experiment);
        write_file(dir / (stem + "_trials.csv"), trials.str());
        write_file(dir / (stem + "_summary.json"), summary.dump(2) + "\n");
        write_file(dir / (stem + "_config.json"), config_to_json(r.config).dump(2) + "\n");
        if (c.experiment == ExperimentKind::SigmaMax) {
            std::ostringstream ratio;
            write_ratio_csv(ratio, r);
            write_file(dir / (stem + "_ratio.csv"), ratio.str());
        }
        if (!r.tail.empty()) {
            std::ostringstream tail;
            write_tail_csv(tail, r);
            write_file(dir / (stem + "_tail.csv"), tail.str());
        }
    }
    emit(out, format, summary, trials.str());
    return r.violations == 0 ? kOk : kViolation;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra and condition numbers of random circulant and Toeplitz matrices", "circlab"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    std::string out_flag;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out-dir", out_flag, "Directory for output files (default: $CIRCLAB_OUT_DIR)");

    RowOptions spec_row;
    bool spec_sym = false;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and extreme singular values of a circulant");
    add_row_options(spectrum, spec_row, "--n");
    spectrum->add_flag("--symmetric", spec_sym, "Treat --row as the floor(n/2)+1 free coefficients");

    RowOptions schur_row;
    std::string normalization = "unitary";
    bool schur_check = false;
    auto* schur = app.add_subcommand("schur", "Schur block S_n of a 2n circulant");
    add_row_options(schur, schur_row, "--two-n");
    schur->add_option("--normalization", normalization, "unitary|unnormalized");
    schur->add_flag("--check", schur_check, "Compare against the dense inverse");

    RowOptions mm_row;
    std::size_t oversampling = 64;
    bool mm_sym = false;
    auto* maxmod = app.add_subcommand("maxmod", "Certified sup-norm bracket of a trigonometric polynomial");
    add_row_options(maxmod, mm_row, "--n");
    maxmod->add_option("--oversampling", oversampling, "Grid factor K > 4");
    maxmod->add_flag("--symmetric", mm_sym, "Coefficients are palindromic");

    LcdArgs lcd_args;
    auto* lcd = app.add_subcommand("lcd", "Interval estimate of the least common denominator");
    lcd->add_option("--vector", lcd_args.vector, "Vector v")->delimiter(',');
    lcd->add_option("--vk", lcd_args.vk, "Use V_k for n,k")->delimiter(',');
    lcd->add_option("--L", lcd_args.L, "LCD parameter")->check(CLI::PositiveNumber);
    lcd->add_option("--theta-max", lcd_args.theta_max);
    lcd->add_option("--step", lcd_args.step);
    lcd->add_option("--r-max", lcd_args.r_max);
    lcd->add_option("--r-step", lcd_args.r_step);
    lcd->add_option("--phi-step", lcd_args.phi_step);

    LemmaArgs lemma_args;
    auto* lemmas = app.add_subcommand("verify-lemmas", "Exhaustive sweeps of the lattice-distance lemmas");
    lemmas->add_option("--lemma", lemma_args.lemma, "cos-full|cos-half|vk|gcd")->required();
    lemmas->add_option("--m", lemma_args.m);
    lemmas->add_option("--theta-grid", lemma_args.theta_grid);
    lemmas->add_option("--r-values", lemma_args.r_values)->delimiter(',');
    lemmas->add_option("--n", lemma_args.n);
    lemmas->add_option("--k-max", lemma_args.k_max);
    lemmas->add_option("--trials", lemma_args.trials);
    lemmas->add_option("--seed", lemma_args.seed);
    lemmas->add_option("--M-max", lemma_args.M_max);

    ExperimentArgs ex;
    std::string ex_kind;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
    experiment->add_option("kind", ex_kind, "table1|sigmax|sigmin|kappa|rect|interlace")
        ->required()
        ->check(CLI::IsMember({"table1", "sigmax", "sigmin", "kappa", "rect", "interlace"}));
    experiment->add_option("--config", ex.config_file, "JSON config; flags override its values");
    experiment->add_option("--dist", ex.dist, "bernoulli|rademacher|uniform|normal");
    experiment->add_option("--sizes,--n,--two-n", ex.sizes, "Matrix sizes")->delimiter(',');
    experiment->add_option("--trials", ex.trials, "Trials per size");
    experiment->add_option("--seed", ex.seed, "Master seed");
    experiment->add_option("--epsilons", ex.epsilons)->delimiter(',');
    experiment->add_option("--rho", ex.rho);
    experiment->add_option("--c0", ex.c0);
    experiment->add_flag("--symmetric", ex.symmetric);
    experiment->add_option("--xi-star", ex.xi_star, "Fix the embedding corner coefficient");
    experiment->add_option("--oversampling", ex.oversampling);
    experiment->add_option("--normalization", ex.normalization, "unitary|unnormalized");
    experiment->add_flag("--resample", ex.resample, "Redraw singular-embedding trials");
    experiment->add_option("--workers", ex.workers, "Worker threads (results do not depend on it)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    const std::string out_dir = default_out_dir(out_flag);
    try {
        if (*spectrum) return cmd_spectrum(spec_row, spec_sym, format, out);
        if (*schur) return cmd_schur(schur_row, normalization, schur_check, format, out);
        if (*maxmod) return cmd_maxmod(mm_row, oversampling, mm_sym, format, out);
        if (*lcd) return cmd_lcd(lcd_args, format, out);
        if (*lemmas) return cmd_verify_lemmas(lemma_args, format, out_dir, out);
        if (*experiment) return cmd_experiment(ex_kind, ex, *experiment, format, out_dir, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace circlab::cli
