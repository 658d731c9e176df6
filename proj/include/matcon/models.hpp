#pragma once

// Independent sums Z = sum_i S_i: summand families, samplers, closed-form
// moments, and centering.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matcon/linalg.hpp"
#include "matcon/rng.hpp"

namespace matcon {

/// eps * H with a Rademacher sign eps.
struct FixedRademacher {
    explicit FixedRademacher(HermitianMatrix matrix);
    HermitianMatrix h;
    double norm;
};

/// g * H with a standard normal g.
struct FixedGaussian {
    explicit FixedGaussian(HermitianMatrix matrix);
    HermitianMatrix h;
    double norm;
};

/// scale * eps * E_ii in dimension d.
struct ScaledBasisRademacher {
    std::size_t index;
    double scale;
    std::size_t dim;
};

/// (delta - p) * E_ii with delta ~ Bernoulli(p).
struct CenteredBernoulliBasis {
    std::size_t index;
    double p;
    std::size_t dim;
};

/// eps * E_ij in dimension d.
struct RademacherEntry {
    std::size_t row;
    std::size_t col;
    std::size_t dim;
};

/// P * E_ii where P is symmetric with P{|P| >= t} = t^-4 for t >= 1.
struct ParetoDiagonal {
    std::size_t index;
    std::size_t dim;
};

struct Outcome {
    double probability;
    RectMatrix value;
    double norm;
};

/// A random matrix with finitely many outcomes.
class FiniteSummand {
  public:
    /// Probabilities must be positive and sum to 1 within 1e-12; all matrices
    /// share a shape.
    explicit FiniteSummand(std::vector<std::pair<double, RectMatrix>> outcomes);

    const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
    std::size_t rows() const noexcept { return outcomes_.front().value.rows(); }
    std::size_t cols() const noexcept { return outcomes_.front().value.cols(); }
    const RectMatrix& mean() const noexcept { return mean_; }
    bool is_centered() const noexcept { return centered_; }
    /// Outcomes shifted by -mean.
    FiniteSummand centered() const;

  private:
    std::vector<Outcome> outcomes_;
    RectMatrix mean_;
    bool centered_ = false;
};

using SummandSpec = std::variant<FixedRademacher, FixedGaussian, ScaledBasisRademacher, CenteredBernoulliBasis,
                                 RademacherEntry, ParetoDiagonal, FiniteSummand>;

std::pair<std::size_t, std::size_t> summand_shape(const SummandSpec& spec);
std::string family_name(const SummandSpec& spec);

class IndependentSumModel {
  public:
    /// `n` is a descriptive count carried into reports; 0 means "number of
    /// summands".
    IndependentSumModel(std::string name, std::size_t d1, std::size_t d2, std::vector<SummandSpec> summands,
                        std::size_t n = 0);

    const std::string& name() const noexcept { return name_; }
    std::size_t d1() const noexcept { return d1_; }
    std::size_t d2() const noexcept { return d2_; }
    std::size_t n() const noexcept { return n_; }
    const std::vector<SummandSpec>& summands() const noexcept { return summands_; }
    std::size_t size() const noexcept { return summands_.size(); }
    bool centered() const noexcept { return centered_; }
    /// Every summand is Hermitian-valued (square and symmetric by family).
    bool hermitian() const noexcept { return hermitian_; }

  private:
    std::string name_;
    std::size_t d1_;
    std::size_t d2_;
    std::size_t n_;
    std::vector<SummandSpec> summands_;
    bool centered_ = true;
    bool hermitian_ = true;
};

enum class Example { Sec71, Sec72, Sec73, Sec74 };

std::optional<Example> parse_example(std::string_view name);
std::string example_name(Example e);

/// Sec71: sum_{i<=d, j<=n} n^{-1/2} eps_ij E_ii
/// Sec72: sum_{i<=d, j<=n} (delta_ij - 1/n) E_ii, delta ~ Bernoulli(1/n)
/// Sec73: sum_{i,j<=d} eps_ij E_ij  (n ignored)
/// Sec74: sum_{i<=d} P_i E_ii       (n ignored)
IndependentSumModel make_example(Example which, std::size_t d, std::size_t n);

/// Fixed-matrix Rademacher series with Hermitian coefficients whose real and
/// imaginary parts are independent seeded standard normals.
IndependentSumModel make_random_rademacher(std::size_t d, std::size_t n, RngSeed seed);
HermitianMatrix random_hermitian(std::size_t d, CounterRng& rng);

// ---------------------------------------------------------------------------
// Sampling

/// One realization of one summand: coefficient * (dense matrix or E_rc).
struct SummandDraw {
    double coefficient = 0.0;
    const RectMatrix* dense = nullptr;
    std::size_t row = 0;
    std::size_t col = 0;
    double base_norm = 0.0;

    double norm() const noexcept { return std::abs(coefficient) * base_norm; }
    void accumulate_into(RectMatrix& z) const;
    RectMatrix to_matrix(std::size_t d1, std::size_t d2) const;
};

/// Draws summand `position` for sample `index`; the returned draw may point
/// into `spec`.
SummandDraw draw_summand(const SummandSpec& spec, RngSeed seed, std::uint64_t index, std::uint64_t position);

/// Realizations of every summand for sample `index`.
std::vector<RectMatrix> sample_summands(const IndependentSumModel& model, RngSeed seed, std::uint64_t index);

struct SampleRealization {
    double norm = 0.0;            ///< ||Z||
    double max_summand_sq = 0.0;  ///< max_i ||S_i||^2
};

/// Accumulates Z for sample `index` into `z` (resized/zeroed as needed) and
/// returns its norm statistics.
SampleRealization realize_sum(const IndependentSumModel& model, RngSeed seed, std::uint64_t index, RectMatrix& z);

/// sign * u^{-1/4}; |result| has survival function t^{-4} on t >= 1.
double pareto_sample(double u, int sign);

// ---------------------------------------------------------------------------
// Moments

struct SecondMoments {
    HermitianMatrix outer;  ///< E[Z Z*], d1 x d1
    HermitianMatrix inner;  ///< E[Z* Z], d2 x d2
};

/// E[S S*] and E[S* S] of one summand (raw, not centered).
SecondMoments summand_second_moments(const SummandSpec& spec);
RectMatrix summand_mean(const SummandSpec& spec);

/// Exact sum of per-summand second moments; requires a centered model.
std::optional<SecondMoments> analytic_second_moments(const IndependentSumModel& model);

/// Distribution of ||S||^2 when it has finite support, as (value, probability).
std::optional<std::vector<std::pair<double, double>>> norm_sq_distribution(const SummandSpec& spec);

struct CenteringResult {
    IndependentSumModel model;
    RectMatrix mean_sum;  ///< E R = sum_i E S_i
};

/// Replaces each summand by S_i - E S_i.
CenteringResult center(const IndependentSumModel& model);

}  // namespace matcon
