#pragma once

// Seeded Monte Carlo estimation over an IndependentSumModel and assembly of
// bound reports. Every result is a pure function of (model, cfg): samples are
// generated by index from a counter-based RNG, stored by index, and reduced in
// index order, so the worker count never changes an output bit.

#include <optional>
#include <string>
#include <vector>

#include "matcon/bounds.hpp"
#include "matcon/estimate.hpp"
#include "matcon/models.hpp"

namespace matcon {

/// Per-sample ||Z|| and max_i ||S_i||^2, indexed by sample.
std::vector<SampleRealization> collect_samples(const IndependentSumModel& model, const MCConfig& cfg);

/// E||Z||^r for r in {1, 2}.
Estimate estimate_norm_moment(const IndependentSumModel& model, int r, const MCConfig& cfg);

/// E max_i ||S_i||^2.
Estimate estimate_max_summand_sq(const IndependentSumModel& model, const MCConfig& cfg);

struct EmpiricalMoments {
    SecondMoments moments;
    /// Entrywise standard errors, row-major, matching moments.outer / .inner.
    std::vector<double> outer_se;
    std::vector<double> inner_se;
    std::size_t samples = 0;
};

/// Sample means of ZZ* and Z*Z (symmetrized). Requires a centered model.
EmpiricalMoments empirical_second_moments(const IndependentSumModel& model, const MCConfig& cfg);

enum class Provenance { Analytic, Empirical, MonteCarlo };
std::string provenance_name(Provenance p);

struct BoundReport {
    std::string model;
    std::size_t d1 = 0;
    std::size_t d2 = 0;
    std::size_t n = 0;
    double v = 0.0;
    Provenance v_provenance = Provenance::Analytic;
    double L = 0.0;
    Provenance L_provenance = Provenance::Analytic;
    double C = 0.0;
    double lower = 0.0;  ///< second-moment lower estimate
    double upper = 0.0;
    double first_moment_lower = 0.0;
    Estimate mc_norm;    ///< E||Z||
    Estimate mc_sqnorm;  ///< E||Z||^2
    double k = 3.0;
    bool sandwich_ok = false;

    /// Present when the input model was not centered: the report then
    /// describes R - E R, and these carry ||E R|| and the triangle-inequality
    /// envelope for (E||R||^2)^{1/2}.
    std::optional<double> mean_norm;
    std::optional<double> envelope_lower;
    std::optional<double> envelope_upper;
};

/// True iff the interval mean +- k*spread for E||Z||^2, mapped through the
/// square root, meets [lower, upper].
bool sandwich_holds(double lower, double upper, const Estimate& sqnorm, double k);

/// Assembles v, L (analytic when available), C, the matched interval, and
/// Monte Carlo estimates. Uncentered models are centered first.
BoundReport bound_report(const IndependentSumModel& model, const MCConfig& cfg);

}  // namespace matcon
