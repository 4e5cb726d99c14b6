#include "circlab/report.hpp"

#include <iomanip>
#include <ostream>
#include <set>
#include <stdexcept>

namespace circlab {

using nlohmann::json;

namespace {

std::string normalization_name(FourierNormalization f) {
    return f == FourierNormalization::Unitary ? "unitary" : "unnormalized";
}

void put(std::ostream& out, const std::optional<double>& v) {
    if (v) out << *v;
}

}  // namespace

json config_to_json(const ExperimentConfig& c) {
    return json{
        {"experiment", experiment_name(c.experiment)},
        {"sizes", c.sizes},
        {"trials", c.trials},
        {"distribution", distribution_name(c.distribution.kind)},
        {"scale", c.distribution.scale},
        {"shift", c.distribution.shift},
        {"seed", c.master_seed},
        {"epsilons", c.epsilons},
        {"rho", c.rho},
        {"c0", c.c0},
        {"symmetric", c.symmetric},
        {"xi_star_mode", c.xi_star_mode == XiStarMode::Fixed ? "fixed" : "random"},
        {"xi_star", c.xi_star},
        {"oversampling", c.oversampling},
        {"normalization", normalization_name(c.normalization)},
        {"resample_singular", c.resample_singular},
        {"max_resamples", c.max_resamples},
        {"interlace_tolerance", c.interlace_tolerance},
        {"cauchy_max_n", c.cauchy_max_n},
    };
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known{
        "experiment", "sizes", "trials", "distribution", "scale", "shift", "seed", "epsilons", "rho", "c0",
        "symmetric", "xi_star_mode", "xi_star", "oversampling", "normalization", "resample_singular",
        "max_resamples", "interlace_tolerance", "cauchy_max_n", "workers"};
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");

    if (j.contains("experiment")) {
        const auto k = parse_experiment(j.at("experiment").get<std::string>());
        if (!k) throw std::invalid_argument("unknown experiment '" + j.at("experiment").get<std::string>() + "'");
        c.experiment = *k;
    }
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("distribution")) {
        const auto d = parse_distribution(j.at("distribution").get<std::string>());
        if (!d) throw std::invalid_argument("unknown distribution '" + j.at("distribution").get<std::string>() + "'");
        c.distribution.kind = *d;
    }
    if (j.contains("scale")) c.distribution.scale = j.at("scale").get<double>();
    if (j.contains("shift")) c.distribution.shift = j.at("shift").get<double>();
    if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
    if (j.contains("rho")) c.rho = j.at("rho").get<double>();
    if (j.contains("c0")) c.c0 = j.at("c0").get<double>();
    if (j.contains("symmetric")) c.symmetric = j.at("symmetric").get<bool>();
    if (j.contains("xi_star_mode")) {
        const auto m = j.at("xi_star_mode").get<std::string>();
        if (m == "fixed")
            c.xi_star_mode = XiStarMode::Fixed;
        else if (m == "random")
            c.xi_star_mode = XiStarMode::Random;
        else
            throw std::invalid_argument("xi_star_mode must be 'random' or 'fixed'");
    }
    if (j.contains("xi_star")) c.xi_star = j.at("xi_star").get<double>();
    if (j.contains("oversampling")) c.oversampling = j.at("oversampling").get<std::size_t>();
    if (j.contains("normalization")) {
        const auto m = j.at("normalization").get<std::string>();
        if (m == "unitary")
            c.normalization = FourierNormalization::Unitary;
        else if (m == "unnormalized")
            c.normalization = FourierNormalization::Unnormalized;
        else
            throw std::invalid_argument("normalization must be 'unitary' or 'unnormalized'");
    }
    if (j.contains("resample_singular")) c.resample_singular = j.at("resample_singular").get<bool>();
    if (j.contains("max_resamples")) c.max_resamples = j.at("max_resamples").get<std::size_t>();
    if (j.contains("interlace_tolerance")) c.interlace_tolerance = j.at("interlace_tolerance").get<double>();
    if (j.contains("cauchy_max_n")) c.cauchy_max_n = j.at("cauchy_max_n").get<std::size_t>();
    if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
    return c;
}

json summary_json(const SummaryStats& s) {
    json bins = json::array();
    for (const auto& b : s.bins) bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
    return json{{"count", s.count}, {"min", s.min}, {"mean", s.mean}, {"q01", s.q01}, {"q25", s.q25},
                {"q50", s.q50},     {"q75", s.q75}, {"q99", s.q99},   {"max", s.max},   {"bins", bins}};
}

json result_json(const ExperimentResult& r) {
    json out{{"schema_version", kSchemaVersion},
             {"experiment", experiment_name(r.config.experiment)},
             {"statistic", r.statistic},
             {"config", config_to_json(r.config)}};
    if (!r.summaries.empty() && r.summaries.front().stats) out.update(summary_json(*r.summaries.front().stats));
    else out["count"] = 0;

    json per_size = json::array();
    for (const auto& s : r.summaries) {
        json e{{"n", s.n}, {"included", s.included}, {"excluded", s.excluded}};
        if (s.stats) e["summary"] = summary_json(*s.stats);
        per_size.push_back(std::move(e));
    }
    out["per_size"] = std::move(per_size);

    json tail = json::array();
    for (const auto& t : r.tail)
        tail.push_back({{"n", t.n},
                        {"epsilon", t.epsilon},
                        {"threshold", t.threshold},
                        {"hits", t.hits},
                        {"count", t.count},
                        {"estimate", t.interval.estimate},
                        {"wilson_lo", t.interval.lo},
                        {"wilson_hi", t.interval.hi}});
    out["tail"] = std::move(tail);
    if (r.fitted_constant) out["fitted_constant"] = *r.fitted_constant;
    out["violations"] = r.violations;
    out["singular_trials"] = r.singular_trials;
    return out;
}

std::string flags_string(const TrialFlags& f) {
    std::string s;
    auto add = [&](const char* name) {
        if (!s.empty()) s += '|';
        s += name;
    };
    if (f.singular_embedding) add("singular");
    if (f.fallback_used) add("fallback");
    if (f.violation) add("violation");
    if (f.resamples > 0) add(("resampled" + std::to_string(f.resamples)).c_str());
    return s;
}

void write_trials_csv(std::ostream& out, const ExperimentResult& r) {
    out << "trial,seed,sigma_max,sigma_min,kappa,sigmin_S,flags\n" << std::setprecision(17);
    for (const auto& t : r.records) {
        out << t.trial << ',' << t.seed << ',' << t.sigma_max << ',' << t.sigma_min << ',';
        put(out, t.kappa);
        out << ',';
        put(out, t.sigmin_S);
        out << ',' << flags_string(t.flags) << '\n';
    }
}

void write_ratio_csv(std::ostream& out, const ExperimentResult& r) {
    out << "trial,n,dist,ratio_lower,ratio_upper\n" << std::setprecision(17);
    const std::string dist = distribution_name(r.config.distribution.kind);
    for (const auto& t : r.records) {
        out << t.trial << ',' << t.n << ',' << dist << ',';
        put(out, t.ratio_lower);
        out << ',';
        put(out, t.ratio_upper);
        out << '\n';
    }
}

void write_tail_csv(std::ostream& out, const ExperimentResult& r) {
    out << "n,epsilon,threshold,hits,count,estimate,wilson_lo,wilson_hi\n" << std::setprecision(17);
    for (const auto& t : r.tail)
        out << t.n << ',' << t.epsilon << ',' << t.threshold << ',' << t.hits << ',' << t.count << ','
            << t.interval.estimate << ',' << t.interval.lo << ',' << t.interval.hi << '\n';
}

}  // namespace circlab
