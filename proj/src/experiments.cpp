#include "circlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "circlab/trig_poly.hpp"

namespace circlab {

std::optional<ExperimentKind> parse_experiment(const std::string& name) {
    if (name == "table1") return ExperimentKind::Table1;
    if (name == "sigmax") return ExperimentKind::SigmaMax;
    if (name == "sigmin") return ExperimentKind::SigmaMin;
    if (name == "kappa") return ExperimentKind::Kappa;
    if (name == "rect") return ExperimentKind::Rect;
    if (name == "interlace") return ExperimentKind::Interlace;
    return std::nullopt;
}

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Table1: return "table1";
        case ExperimentKind::SigmaMax: return "sigmax";
        case ExperimentKind::SigmaMin: return "sigmin";
        case ExperimentKind::Kappa: return "kappa";
        case ExperimentKind::Rect: return "rect";
        case ExperimentKind::Interlace: return "interlace";
    }
    return "unknown";
}

void validate_config(const ExperimentConfig& c) {
    if (c.sizes.empty()) throw std::invalid_argument("no matrix sizes given");
    if (c.trials == 0) throw std::invalid_argument("trials must be positive");
    for (std::size_t n : c.sizes) {
        if (n == 0) throw std::invalid_argument("matrix size must be positive");
        if (c.experiment == ExperimentKind::Table1 && n % 2 != 0)
            throw std::invalid_argument("table1 needs an even circulant size 2n");
        if ((c.experiment == ExperimentKind::SigmaMax || c.experiment == ExperimentKind::Kappa) && n < 2)
            throw std::invalid_argument("size must be at least 2 for the sqrt(n log n) normalization");
    }
    if (c.experiment == ExperimentKind::SigmaMin && !c.symmetric && !(c.rho > 0.0 && c.rho < 0.25))
        throw std::invalid_argument("rho must lie in (0, 1/4)");
    if ((c.experiment == ExperimentKind::SigmaMin || c.experiment == ExperimentKind::Kappa) && c.epsilons.empty())
        throw std::invalid_argument("no epsilon values given");
    for (double e : c.epsilons)
        if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("epsilon values must be finite and >= 0");
    if (c.oversampling != 0 && c.oversampling <= 4) throw std::invalid_argument("oversampling must exceed 4");
    if (!(c.interlace_tolerance >= 0.0)) throw std::invalid_argument("interlace tolerance must be >= 0");
}

namespace {

ToeplitzSpec trial_toeplitz(const ExperimentConfig& c, std::size_t n, const TrialStream& s, std::size_t attempt,
                            double& xi_star) {
    const std::size_t per = 2 * n;
    const std::uint64_t first = static_cast<std::uint64_t>(attempt) * per;
    auto vals = s.samples(c.distribution, 2 * n - 1, first);
    xi_star = c.xi_star_mode == XiStarMode::Fixed ? c.xi_star : s.sample(c.distribution, first + 2 * n - 1);
    return ToeplitzSpec::from_values(n, std::move(vals));
}

double sqrt_n_log_n(std::size_t n) {
    const double x = static_cast<double>(n);
    return std::sqrt(x * std::log(x));
}

// Runs f(global_index, n) for every (size, trial) pair on a fixed pool of
// threads, storing each record at its own index.
template <class F>
std::vector<TrialRecord> run_trials(const ExperimentConfig& c, F&& f) {
    const std::size_t total = c.sizes.size() * c.trials;
    std::vector<TrialRecord> out(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                const std::size_t n = c.sizes[i / c.trials];
                TrialRecord r = f(TrialStream(trial_seed(c.master_seed, i)), n);
                r.trial = i;
                r.n = n;
                r.seed = trial_seed(c.master_seed, i);
                out[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(c.workers, 1, std::max<std::size_t>(total, 1));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

void finish(ExperimentResult& res) {
    const auto& c = res.config;
    for (std::size_t si = 0; si < c.sizes.size(); ++si) {
        SizeSummary s;
        s.n = c.sizes[si];
        std::vector<double> values;
        for (std::size_t t = 0; t < c.trials; ++t) {
            const TrialRecord& r = res.records[si * c.trials + t];
            if (r.value && std::isfinite(*r.value))
                values.push_back(*r.value);
            else
                ++s.excluded;
        }
        s.included = values.size();
        if (!values.empty()) s.stats = summarize(values);
        res.summaries.push_back(std::move(s));
    }
    for (const auto& r : res.records) {
        if (r.flags.violation) ++res.violations;
        if (r.flags.singular_embedding) ++res.singular_trials;
    }
}

std::span<const TrialRecord> size_block(const ExperimentResult& res, std::size_t si) {
    return std::span<const TrialRecord>(res.records).subspan(si * res.config.trials, res.config.trials);
}

void fill_circulant_extremes(TrialRecord& r, const Spectrum& lambda) {
    const ConditionReport rep = circulant_extremes(lambda);
    r.sigma_max = rep.sigma_max;
    r.sigma_min = rep.sigma_min;
    r.kappa = rep.kappa;
    r.flags.singular_embedding = rep.singular();
}

}  // namespace

std::vector<double> trial_row(const ExperimentConfig& c, std::size_t n, const TrialStream& s, std::size_t attempt) {
    switch (c.experiment) {
        case ExperimentKind::Table1:
            return s.samples(c.distribution, n, static_cast<std::uint64_t>(attempt) * n);
        case ExperimentKind::Rect:
        case ExperimentKind::Interlace: {
            double xi_star = 0.0;
            const ToeplitzSpec t = trial_toeplitz(c, n, s, attempt, xi_star);
            const CirculantSpec embedded = embed_toeplitz(t, xi_star);
            const auto row = embedded.first_row.values();
            return {row.begin(), row.end()};
        }
        default: break;
    }
    if (c.symmetric) {
        const std::size_t free = n / 2 + 1;
        const CirculantSpec full = expand_symmetric_circulant(SymmetricCirculantSpec(n, s.samples(c.distribution, free)));
        const auto row = full.first_row.values();
        return {row.begin(), row.end()};
    }
    return s.samples(c.distribution, n);
}

ExperimentResult run_table1(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentResult res;
    res.config = config;
    res.config.experiment = ExperimentKind::Table1;
    res.statistic = config.normalization == FourierNormalization::Unnormalized ? "two_n_sigma_min_S" : "sigma_min_S";
    const ExperimentConfig& c = res.config;

    res.records = run_trials(c, [&](const TrialStream& s, std::size_t two_n) {
        TrialRecord r;
        for (std::size_t attempt = 0;; ++attempt) {
            const CirculantSpec spec(trial_row(c, two_n, s, attempt));
            const Spectrum lambda = circulant_eigenvalues(spec);
            r = TrialRecord{};
            r.flags.resamples = attempt;
            fill_circulant_extremes(r, lambda);
            try {
                SchurOptions opts;
                opts.normalization = c.normalization;
                const SchurBlock block = build_schur_block(spec, opts);
                const SigmaMinResult sm = sigma_min_fast(block.matrix);
                r.flags.fallback_used = sm.used_fallback;
                if (sm.singular) {
                    r.flags.singular_embedding = true;
                } else {
                    r.sigmin_S = sm.value;
                    r.value = sm.value;
                }
            } catch (const SingularEmbeddingError&) {
                r.flags.singular_embedding = true;
            }
            if (!r.flags.singular_embedding || !c.resample_singular || attempt >= c.max_resamples) break;
        }
        return r;
    });
    finish(res);
    return res;
}

ExperimentResult run_sigma_max_tail(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentResult res;
    res.config = config;
    res.config.experiment = ExperimentKind::SigmaMax;
    res.statistic = "sigma_max_over_sqrt_n_log_n";
    const ExperimentConfig& c = res.config;

    res.records = run_trials(c, [&](const TrialStream& s, std::size_t n) {
        TrialRecord r;
        const auto row = trial_row(c, n, s);
        const Spectrum lambda = circulant_eigenvalues(CirculantSpec(row));
        fill_circulant_extremes(r, lambda);
        const double norm = sqrt_n_log_n(n);
        r.value = r.sigma_max / norm;
        if (c.oversampling > 0) {
            const MaxModulusBracket b = max_modulus(TrigPolynomial(row, c.symmetric), c.oversampling);
            r.ratio_lower = b.lower / norm;
            r.ratio_upper = b.upper / norm;
            if (b.upper < r.sigma_max * (1.0 - 1e-12)) r.flags.violation = true;
        }
        // The leading half block of an even circulant is a Toeplitz matrix.
        if (n % 2 == 0 && n <= 128) {
            const DenseMatrix t = materialize_circulant(CirculantSpec(row)).block(0, 0, n / 2, n / 2);
            if (dense_svd(t).max() > r.sigma_max * (1.0 + 1e-10)) r.flags.violation = true;
        }
        return r;
    });
    finish(res);

    const auto& first = res.summaries.front();
    if (first.stats) res.fitted_constant = first.stats->q99;
    if (res.fitted_constant) {
        for (std::size_t si = 0; si < c.sizes.size(); ++si) {
            TailRow row;
            row.n = c.sizes[si];
            row.threshold = *res.fitted_constant;
            for (const auto& r : size_block(res, si)) {
                ++row.count;
                if (r.value && *r.value > row.threshold) ++row.hits;
            }
            row.interval = wilson_interval(row.hits, row.count);
            res.tail.push_back(row);
        }
    }
    return res;
}

ExperimentResult run_sigma_min_tail(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentResult res;
    res.config = config;
    res.config.experiment = ExperimentKind::SigmaMin;
    res.statistic = "sigma_min";
    const ExperimentConfig& c = res.config;

    res.records = run_trials(c, [&](const TrialStream& s, std::size_t n) {
        TrialRecord r;
        fill_circulant_extremes(r, circulant_eigenvalues(CirculantSpec(trial_row(c, n, s))));
        r.value = r.sigma_min;
        return r;
    });
    finish(res);

    const double exponent = c.symmetric ? 0.51 : c.rho;
    for (std::size_t si = 0; si < c.sizes.size(); ++si) {
        const std::size_t n = c.sizes[si];
        for (double eps : c.epsilons) {
            TailRow row;
            row.n = n;
            row.epsilon = eps;
            row.threshold = eps * std::pow(static_cast<double>(n), -exponent);
            for (const auto& r : size_block(res, si)) {
                ++row.count;
                if (r.sigma_min <= row.threshold || r.flags.singular_embedding) ++row.hits;
            }
            row.interval = wilson_interval(row.hits, row.count);
            res.tail.push_back(row);
        }
    }
    return res;
}

ExperimentResult run_condition_number(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentResult res;
    res.config = config;
    res.config.experiment = ExperimentKind::Kappa;
    res.statistic = "kappa_over_n_rho_sqrt_n_log_n";
    const ExperimentConfig& c = res.config;
    auto scale = [&](std::size_t n) {
        const double x = static_cast<double>(n);
        return std::pow(x, c.rho + 0.5) * std::sqrt(std::log(x));
    };

    res.records = run_trials(c, [&](const TrialStream& s, std::size_t n) {
        TrialRecord r;
        fill_circulant_extremes(r, circulant_eigenvalues(CirculantSpec(trial_row(c, n, s))));
        if (r.kappa) {
            if (*r.kappa < 1.0 - 1e-12) r.flags.violation = true;
            r.value = *r.kappa / scale(n);
        }
        return r;
    });
    finish(res);

    // Coverage of the event kappa <= (c0 / eps) n^{rho + 1/2} (log n)^{1/2}.
    for (std::size_t si = 0; si < c.sizes.size(); ++si) {
        const std::size_t n = c.sizes[si];
        for (double eps : c.epsilons) {
            TailRow row;
            row.n = n;
            row.epsilon = eps;
            row.threshold = eps > 0.0 ? c.c0 / eps * scale(n) : INFINITY;
            for (const auto& r : size_block(res, si)) {
                ++row.count;
                if (r.kappa && *r.kappa <= row.threshold) ++row.hits;
            }
            row.interval = wilson_interval(row.hits, row.count);
            res.tail.push_back(row);
        }
    }
    res.fitted_constant = c.c0;
    return res;
}

ExperimentResult run_rectangular(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentResult res;
    res.config = config;
    res.config.experiment = ExperimentKind::Rect;
    res.statistic = "kappa_A";
    const ExperimentConfig& c = res.config;

    res.records = run_trials(c, [&](const TrialStream& s, std::size_t n) {
        TrialRecord r;
        const CirculantSpec spec(trial_row(c, n, s));
        fill_circulant_extremes(r, circulant_eigenvalues(spec));
        const SingularValues sa = dense_svd(materialize_circulant(spec).block(0, 0, 2 * n, n));
        const double tol = c.interlace_tolerance * r.sigma_max;
        if (sa.max() > r.sigma_max + tol || sa.min() < r.sigma_min - tol) r.flags.violation = true;
        if (sa.min() > 0.0) {
            r.value = sa.max() / sa.min();
            if (r.kappa && *r.value > *r.kappa * (1.0 + c.interlace_tolerance)) r.flags.violation = true;
        }
        return r;
    });
    finish(res);
    return res;
}

ExperimentResult run_interlacing_suite(const ExperimentConfig& config) {
    validate_config(config);
    ExperimentResult res;
    res.config = config;
    res.config.experiment = ExperimentKind::Interlace;
    res.statistic = "relative_min_slack";
    const ExperimentConfig& c = res.config;

    res.records = run_trials(c, [&](const TrialStream& s, std::size_t n) {
        TrialRecord r;
        double xi_star = 0.0;
        const ToeplitzSpec t = trial_toeplitz(c, n, s, 0, xi_star);
        const CirculantSpec embedded = embed_toeplitz(t, xi_star);
        fill_circulant_extremes(r, circulant_eigenvalues(embedded));
        const InterlacingReport rep = verify_interlacing(t, xi_star, c.interlace_tolerance);
        r.flags.singular_embedding = r.flags.singular_embedding || rep.singular_embedding;
        r.flags.violation = !rep.ok();
        double slack = std::min(rep.slack_a, rep.slack_b);
        if (rep.clause_c) slack = std::min(slack, rep.slack_c);
        if (r.sigma_max > 0.0) r.value = slack / r.sigma_max;
        if (n <= c.cauchy_max_n) {
            const DenseMatrix stacked = materialize_circulant(embedded).block(0, 0, 2 * n, n);
            if (!cauchy_interlacing_check(stacked)) r.flags.violation = true;
        }
        return r;
    });
    finish(res);
    return res;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    switch (config.experiment) {
        case ExperimentKind::Table1: return run_table1(config);
        case ExperimentKind::SigmaMax: return run_sigma_max_tail(config);
        case ExperimentKind::SigmaMin: return run_sigma_min_tail(config);
        case ExperimentKind::Kappa: return run_condition_number(config);
        case ExperimentKind::Rect: return run_rectangular(config);
        case ExperimentKind::Interlace: return run_interlacing_suite(config);
    }
    throw std::invalid_argument("unknown experiment");
}

}  // namespace circlab
