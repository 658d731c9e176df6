#pragma once

// Closed-form bound quantities for E||Z||: the variance and large-deviation
// parameters, the dimensional constant, the matched two-sided estimate, the
// Rademacher-series bound and its trace-moment chain, and the per-case upper
// and lower bounds (PSD, centered Hermitian, centered rectangular).

#include <cstddef>
#include <optional>
#include <span>

#include "matcon/estimate.hpp"
#include "matcon/linalg.hpp"
#include "matcon/models.hpp"

namespace matcon {

/// Lower-bound constants for the second and first moment.
inline constexpr double kSecondMomentLowerConstant = 0.25;
inline constexpr double kFirstMomentLowerConstant = 0.125;

/// ceil(log x) with the natural log and the standard ceiling.
int ceil_log(double x);

/// 4 * (1 + 2 * ceil(log(d1 + d2))).
double dimensional_constant(std::size_t d1, std::size_t d2);
/// 4 * (1 + 2 * ceil(log d)), used by the square (PSD / Hermitian) cases.
double dimensional_constant(std::size_t d);

enum class MomentKind { Second, First };

struct BoundInputs {
    double v = 0.0;
    double L = 0.0;
    std::size_t d1 = 1;
    std::size_t d2 = 1;
    MomentKind moment = MomentKind::Second;

    /// Throws std::invalid_argument unless v, L >= 0, dims >= 1, and
    /// (L == 0 implies v == 0).
    void validate() const;
};

struct BoundInterval {
    double lower = 0.0;
    double upper = 0.0;
    double constant = 0.0;
};

/// sqrt(c v) + c L <= (E||Z||^2)^{1/2} (or E||Z||) <= sqrt(C v) + C L.
BoundInterval main_interval(const BoundInputs& inputs);

/// max(||E[ZZ*]||, ||E[Z*Z]||). Throws std::domain_error for an uncentered
/// model.
double variance_param(const IndependentSumModel& model, const SecondMoments& moments);

/// E max_i X_i for independent X_i with finite supports given as
/// (value, probability) lists.
double expected_max_discrete(std::span<const std::vector<std::pair<double, double>>> distributions);

/// Exact L^2 = E max_i ||S_i||^2 when every summand's norm has finite support.
std::optional<double> analytic_large_dev_sq(const IndependentSumModel& model);

enum class ParamMode { Analytic, MonteCarlo };

/// L = (E max_i ||S_i||^2)^{1/2}. Analytic mode returns nullopt when a
/// summand family has no finite-support norm; MonteCarlo mode always
/// succeeds and averages max_i ||S_i||^2 over cfg.samples realizations.
std::optional<double> large_dev_param(const IndependentSumModel& model, ParamMode mode, const MCConfig& cfg);

/// sqrt(1 + 2 ceil(log d)) * ||sum H_i^2||^{1/2}; 0 for an empty list.
double rademacher_bound(std::span<const HermitianMatrix> h);

/// (2p-1)!! with (-1)!! = 1.
double double_factorial_odd(unsigned p);

/// (d (2p-1)!! ||sum H_i^2||^p)^{1/(2p)}; +infinity for p = 0.
double trace_moment_bound(std::span<const HermitianMatrix> h, unsigned p);

enum class NormCase { Psd, Hermitian, Rectangular };

/// Inputs for the per-case bounds.
///   Psd:         variance = ||E W||,  max_term = E max_i ||T_i||
///   Hermitian:   variance = ||E X^2||, max_term = E max_i ||Y_i||^2
///   Rectangular: variance = max(||E ZZ*||, ||E Z*Z||), max_term = E max_i ||S_i||^2
/// The dimensional constant uses d1 for the square cases and d1 + d2 for
/// the rectangular case.
struct CaseStats {
    double variance = 0.0;
    double max_term = 0.0;
    std::size_t d1 = 1;
    std::size_t d2 = 1;
};

double case_upper(NormCase which, const CaseStats& stats);
double case_lower(NormCase which, const CaseStats& stats);

}  // namespace matcon
