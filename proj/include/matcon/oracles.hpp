#pragma once

// Numerical checkers for the auxiliary matrix inequalities and identities,
// plus an exact expectation engine for finite-support independent sums.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "matcon/linalg.hpp"
#include "matcon/models.hpp"
#include "matcon/rng.hpp"

namespace matcon {

enum class FactKind { Heinz, GmAmTrace, SumSquares, TraceProduct, Monotonicity, DiffPowers, DoubleFactorial, DilationSquare };

inline constexpr FactKind kAllFactKinds[] = {FactKind::Heinz,        FactKind::GmAmTrace,    FactKind::SumSquares,
                                             FactKind::TraceProduct, FactKind::Monotonicity, FactKind::DiffPowers,
                                             FactKind::DoubleFactorial, FactKind::DilationSquare};

std::string fact_name(FactKind kind);

struct HeinzPayload {
    double theta;
    double lambda;
    double mu;
};
struct GmAmPayload {
    HermitianMatrix h, w, y;
    unsigned r;
    unsigned q;
};
struct SumSquaresPayload {
    std::vector<HermitianMatrix> a;
};
struct TraceProductPayload {
    HermitianMatrix h, a;
};
struct MonotonicityPayload {
    HermitianMatrix a, h;
};
struct DiffPowersPayload {
    HermitianMatrix w, y;
    unsigned p;
};
struct DoubleFactorialPayload {
    unsigned p;
};
struct DilationSquarePayload {
    RectMatrix b;
};

using FactPayload = std::variant<HeinzPayload, GmAmPayload, SumSquaresPayload, TraceProductPayload,
                                 MonotonicityPayload, DiffPowersPayload, DoubleFactorialPayload, DilationSquarePayload>;

/// A validated instance of one fact. Construction throws
/// std::invalid_argument when the payload violates the fact's hypotheses
/// (for example a non-PSD matrix where PSD is required).
class FactCase {
  public:
    explicit FactCase(FactPayload payload);
    FactKind kind() const noexcept { return kind_; }
    const FactPayload& payload() const noexcept { return payload_; }

  private:
    FactKind kind_;
    FactPayload payload_;
};

/// Identity kinds report lhs = residual norm and rhs = 0.
struct CheckResult {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs
    double tolerance = 0.0;
};

/// Test hook: a deliberately broken checker the harness must catch.
enum class FaultInjection { None, HalveGmAmRhs };

/// Tolerance for inequality checks on PSD inputs.
inline constexpr double kPsdTolerance = 1e-10;

CheckResult verify_fact(const FactCase& c, FaultInjection fault = FaultInjection::None);

/// Replayable random instance: dimensions <= 6, r <= 3, p <= 6 (p <= 12 for
/// DoubleFactorial).
FactCase random_fact_case(FactKind kind, RngSeed seed, std::uint64_t index);

/// Exact E||sum_i S_i||^r by enumerating every outcome combination in
/// mixed-radix order. Throws std::length_error if the combination count
/// exceeds `cap`.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;
double brute_force_expected_norm(std::span<const FiniteSummand> summands, unsigned r,
                                 std::uint64_t cap = kEnumerationCap);

/// Number of outcome combinations, saturating at UINT64_MAX.
std::uint64_t outcome_combinations(std::span<const FiniteSummand> summands);

/// Compares M = (E||sum(S_i - E S_i)||^r)^{1/r} with the Rademacher
/// symmetrizations of the centered summands (R) and of the raw summands
/// (R_raw). Holds iff R/2 <= M <= 2R and M <= 2 R_raw, each up to tolerance.
struct SymmetrizationResult {
    bool holds = false;
    double m = 0.0;
    double r_centered = 0.0;
    double r_raw = 0.0;
    double tolerance = 0.0;
};
SymmetrizationResult symmetrization_check(std::span<const FiniteSummand> summands, unsigned r,
                                          std::uint64_t cap = kEnumerationCap);

/// Each S_i replaced by eps_i S_i: outcomes (p/2, M) and (p/2, -M).
FiniteSummand rademacher_modulated(const FiniteSummand& s);

/// Random finite-support summands for the symmetrization sweep.
std::vector<FiniteSummand> random_finite_family(std::size_t n, std::size_t d1, std::size_t d2,
                                                std::size_t max_outcomes, CounterRng& rng);

}  // namespace matcon
