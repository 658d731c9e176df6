#pragma once

// Reproduction of the optimality examples as CSV/JSON tables.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matcon/estimate.hpp"

namespace matcon {

enum class ExperimentId { Sec71, Sec72, Sec73, Sec74, RademacherSharpness };

std::optional<ExperimentId> parse_experiment(std::string_view name);
std::string experiment_name(ExperimentId id);

struct ExperimentSpec {
    ExperimentId id = ExperimentId::Sec71;
    std::vector<std::size_t> ds;
    std::size_t n = 0;  ///< ignored by sec73 and sec74
    MCConfig cfg;

    /// Nonempty grid with every d >= 1; n >= 1 where the model uses it.
    void validate() const;
};

/// Default grid and n for an experiment:
///   sec71, rademacher_sharpness: d in {16, 64, 256}, n = 400
///   sec72: d in {4, 16, 64}, n = 100
///   sec73: d in {4, 16, 64}
///   sec74: d in {8, 32, 128}
ExperimentSpec default_experiment(ExperimentId id);

/// Estimator used when none is requested: median-of-means for sec74, the
/// plain mean elsewhere.
EstimatorKind default_estimator(ExperimentId id);

/// `ratio` by experiment:
///   sec71                 mc_sqnorm / (2 ln d)
///   sec72                 sqrt(mc_sqnorm) * ln ln d / ln d   (nan for d < 3)
///   sec73                 sqrt(mc_sqnorm) / sqrt(d)
///   sec74                 sqrt(mc_sqnorm) / d
///   rademacher_sharpness  sqrt(mc_sqnorm) / sqrt(2 ln d)
/// sec74 appends a row named "sec74_fit" whose ratio is the least-squares
/// slope of ln L^2 against ln d; its other numeric fields are nan.
struct ExperimentRow {
    std::string experiment;
    std::size_t d = 0;
    std::size_t n = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double v = 0.0;
    double L = 0.0;
    double C = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double mc_sqnorm_mean = 0.0;
    double mc_se = 0.0;
    double ratio = 0.0;
    bool sandwich_ok = true;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    bool all_sandwich_ok = true;
    std::optional<double> fitted_exponent;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Least-squares slope of ln y against ln x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string experiment_csv_header();
std::string experiment_csv(const ExperimentResult& result);
nlohmann::ordered_json experiment_json(const ExperimentResult& result);

/// Single line plot of ratio against d (log-scaled x axis).
std::string experiment_svg(const ExperimentResult& result);

}  // namespace matcon
