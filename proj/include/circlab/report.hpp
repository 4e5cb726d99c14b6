#pragma once

// CSV and JSON artifacts for experiment results. The config block uses the same
// schema as the CLI config file, so an emitted config can be fed back in.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "circlab/experiments.hpp"

namespace circlab {

inline constexpr int kSchemaVersion = 1;

nlohmann::json config_to_json(const ExperimentConfig& c);
// Missing keys keep the values already in `base`; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

nlohmann::json summary_json(const SummaryStats& s);

// {schema_version, experiment, statistic, config, count, min, mean, q01..q99,
// bins, per_size, tail, violations, singular_trials}. The top-level statistics
// describe the first size.
nlohmann::json result_json(const ExperimentResult& r);

// trial,seed,sigma_max,sigma_min,kappa,sigmin_S,flags
void write_trials_csv(std::ostream& out, const ExperimentResult& r);
// trial,n,dist,ratio_lower,ratio_upper
void write_ratio_csv(std::ostream& out, const ExperimentResult& r);
// n,epsilon,threshold,hits,count,estimate,wilson_lo,wilson_hi
void write_tail_csv(std::ostream& out, const ExperimentResult& r);

std::string flags_string(const TrialFlags& f);

}  // namespace circlab
