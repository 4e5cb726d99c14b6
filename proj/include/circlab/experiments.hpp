#pragma once

// Monte Carlo experiments over random circulant and Toeplitz matrices. Each
// trial is a pure function of (config, trial index); records come back sorted
// by trial index whatever the worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circlab/random.hpp"
#include "circlab/spectral.hpp"
#include "circlab/stats.hpp"

namespace circlab {

enum class ExperimentKind { Table1, SigmaMax, SigmaMin, Kappa, Rect, Interlace };

std::optional<ExperimentKind> parse_experiment(const std::string& name);
std::string experiment_name(ExperimentKind kind);

enum class XiStarMode { Random, Fixed };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Table1;
    // Matrix dimensions; for table1 these are the circulant sizes 2n, for rect
    // and interlace the Toeplitz size n.
    std::vector<std::size_t> sizes{2048};
    std::size_t trials = 100;  // per size
    Distribution distribution{};
    std::uint64_t master_seed = 1;
    std::vector<double> epsilons{1.0};
    double rho = 0.2;
    double c0 = 1.0;          // constant of the condition-number event
    bool symmetric = false;   // symmetric circulants (sigmax, sigmin, kappa)
    XiStarMode xi_star_mode = XiStarMode::Random;
    double xi_star = 0.0;     // used when xi_star_mode == Fixed
    std::size_t oversampling = 64;  // max-modulus bracket; 0 disables it
    FourierNormalization normalization = FourierNormalization::Unnormalized;
    bool resample_singular = false;
    std::size_t max_resamples = 64;
    std::size_t workers = 1;
    double interlace_tolerance = 1e-8;
    std::size_t cauchy_max_n = 16;  // Cauchy prefix check runs up to this n
};

// Throws std::invalid_argument describing the first problem found.
void validate_config(const ExperimentConfig& config);

struct TrialFlags {
    bool singular_embedding = false;
    bool fallback_used = false;
    bool violation = false;
    std::size_t resamples = 0;
};

struct TrialRecord {
    std::size_t trial = 0;  // global index across sizes
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    std::optional<double> kappa;
    std::optional<double> sigmin_S;
    std::optional<double> ratio_lower, ratio_upper;  // max-modulus bracket / sqrt(n log n)
    std::optional<double> value;  // the statistic summarized for this experiment
    TrialFlags flags;
};

struct SizeSummary {
    std::size_t n = 0;
    std::size_t included = 0;
    std::size_t excluded = 0;  // singular trials left out of the statistics
    std::optional<SummaryStats> stats;
};

struct TailRow {
    std::size_t n = 0;
    double epsilon = 0.0;
    double threshold = 0.0;
    std::size_t hits = 0;
    std::size_t count = 0;
    WilsonInterval interval;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string statistic;
    std::vector<TrialRecord> records;
    std::vector<SizeSummary> summaries;
    std::vector<TailRow> tail;
    std::optional<double> fitted_constant;
    std::size_t violations = 0;
    std::size_t singular_trials = 0;
};

// Circulant row drawn for a trial: 2n coefficients for table1, n for the tail
// experiments (symmetrized when requested), and the embedding row of a random
// Toeplitz T_n for rect and interlace.
std::vector<double> trial_row(const ExperimentConfig& config, std::size_t n, const TrialStream& stream,
                              std::size_t attempt = 0);

ExperimentResult run_table1(const ExperimentConfig& config);
ExperimentResult run_sigma_max_tail(const ExperimentConfig& config);
ExperimentResult run_sigma_min_tail(const ExperimentConfig& config);
ExperimentResult run_condition_number(const ExperimentConfig& config);
ExperimentResult run_rectangular(const ExperimentConfig& config);
ExperimentResult run_interlacing_suite(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace circlab
