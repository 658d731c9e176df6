#include "matcon/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "matcon/bounds.hpp"

namespace matcon {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double inequality_tolerance(double rhs) { return 1e-9 * std::max(1.0, std::abs(rhs)); }

CheckResult inequality(double lhs, double rhs) {
    const double tol = inequality_tolerance(rhs);
    return CheckResult{lhs <= rhs + tol, lhs, rhs, rhs - lhs, tol};
}

CheckResult identity(double residual, double scale) {
    const double tol = 1e-9 * std::max(1.0, scale);
    return CheckResult{residual <= tol, residual, 0.0, -residual, tol};
}

void require_psd(const HermitianMatrix& a, const char* what) {
    const double tol = kPsdTolerance * std::max(1.0, a.matrix().frobenius_norm());
    if (!is_psd(a, tol)) throw std::invalid_argument(std::string(what) + " must be positive semidefinite");
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fact payload matrices differ in dimension");
}

double real_trace(const RectMatrix& m) { return trace(m).real(); }

FactKind kind_of(const FactPayload& p) {
    return std::visit(overloaded{
                          [](const HeinzPayload&) { return FactKind::Heinz; },
                          [](const GmAmPayload&) { return FactKind::GmAmTrace; },
                          [](const SumSquaresPayload&) { return FactKind::SumSquares; },
                          [](const TraceProductPayload&) { return FactKind::TraceProduct; },
                          [](const MonotonicityPayload&) { return FactKind::Monotonicity; },
                          [](const DiffPowersPayload&) { return FactKind::DiffPowers; },
                          [](const DoubleFactorialPayload&) { return FactKind::DoubleFactorial; },
                          [](const DilationSquarePayload&) { return FactKind::DilationSquare; },
                      },
                      p);
}

void validate(const FactPayload& payload) {
    std::visit(overloaded{
                   [](const HeinzPayload& p) {
                       if (!(p.theta >= 0.0 && p.theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
                       if (!(p.lambda >= 0.0) || !(p.mu >= 0.0) || !std::isfinite(p.lambda) || !std::isfinite(p.mu))
                           throw std::invalid_argument("lambda and mu must be finite and nonnegative");
                   },
                   [](const GmAmPayload& p) {
                       require_same_dim(p.h, p.w);
                       require_same_dim(p.h, p.y);
                       if (p.q > 2 * p.r) throw std::invalid_argument("q must satisfy 0 <= q <= 2r");
                   },
                   [](const SumSquaresPayload& p) {
                       if (p.a.empty()) throw std::invalid_argument("sum of squares needs at least one matrix");
                       for (const auto& a : p.a) {
                           require_same_dim(p.a.front(), a);
                           require_psd(a, "sum-of-squares terms");
                       }
                   },
                   [](const TraceProductPayload& p) {
                       require_same_dim(p.h, p.a);
                       require_psd(p.a, "the trace-product weight");
                   },
                   [](const MonotonicityPayload& p) {
                       require_same_dim(p.a, p.h);
                       const double scale = std::max({1.0, p.a.matrix().frobenius_norm(), p.h.matrix().frobenius_norm()});
                       if (!loewner_leq(p.a, p.h, kPsdTolerance * scale))
                           throw std::invalid_argument("monotonicity needs A <= H in the Loewner order");
                   },
                   [](const DiffPowersPayload& p) {
                       require_same_dim(p.w, p.y);
                       if (p.p == 0) throw std::invalid_argument("the telescoping identity needs p >= 1");
                   },
                   [](const DoubleFactorialPayload&) {},
                   [](const DilationSquarePayload&) {},
               },
               payload);
}

}  // namespace

std::string fact_name(FactKind kind) {
    switch (kind) {
        case FactKind::Heinz: return "heinz";
        case FactKind::GmAmTrace: return "gm_am_trace";
        case FactKind::SumSquares: return "sum_squares";
        case FactKind::TraceProduct: return "trace_product";
        case FactKind::Monotonicity: return "monotonicity";
        case FactKind::DiffPowers: return "diff_powers";
        case FactKind::DoubleFactorial: return "double_factorial";
        case FactKind::DilationSquare: return "dilation_square";
    }
    return "unknown";
}

FactCase::FactCase(FactPayload payload) : kind_(kind_of(payload)), payload_(std::move(payload)) { validate(payload_); }

CheckResult verify_fact(const FactCase& c, FaultInjection fault) {
    return std::visit(
        overloaded{
            [](const HeinzPayload& p) {
                const double lhs = std::pow(p.lambda, p.theta) * std::pow(p.mu, 1.0 - p.theta) +
                                   std::pow(p.lambda, 1.0 - p.theta) * std::pow(p.mu, p.theta);
                return inequality(lhs, p.lambda + p.mu);
            },
            [fault](const GmAmPayload& p) {
                const unsigned r2 = 2 * p.r;
                const RectMatrix& h = p.h.matrix();
                const RectMatrix wq = matrix_power(p.w, p.q).matrix();
                const RectMatrix wc = matrix_power(p.w, r2 - p.q).matrix();
                const RectMatrix yq = matrix_power(p.y, p.q).matrix();
                const RectMatrix yc = matrix_power(p.y, r2 - p.q).matrix();
                const double lhs = real_trace(h * wq * h * yc) + real_trace(h * wc * h * yq);
                const RectMatrix sum = matrix_power(p.w, r2).matrix() + matrix_power(p.y, r2).matrix();
                double rhs = real_trace(matrix_power(p.h, 2).matrix() * sum);
                if (fault == FaultInjection::HalveGmAmRhs) rhs *= 0.5;
                return inequality(lhs, rhs);
            },
            [](const SumSquaresPayload& p) {
                HermitianMatrix squares = HermitianMatrix::zero(p.a.front().dim());
                HermitianMatrix sum = squares;
                double max_norm = 0.0;
                for (const auto& a : p.a) {
                    squares += matrix_power(a, 2);
                    sum += a;
                    max_norm = std::max(max_norm, spectral_norm(a));
                }
                return inequality(spectral_norm(squares), max_norm * spectral_norm(sum));
            },
            [](const TraceProductPayload& p) {
                return inequality(real_trace(p.h.matrix() * p.a.matrix()), spectral_norm(p.h) * trace(p.a));
            },
            [](const MonotonicityPayload& p) { return inequality(lambda_max(p.a), lambda_max(p.h)); },
            [](const DiffPowersPayload& p) {
                const unsigned top = 2 * p.p - 1;
                RectMatrix lhs = matrix_power(p.w, top).matrix() - matrix_power(p.y, top).matrix();
                const RectMatrix diff = p.w.matrix() - p.y.matrix();
                const double scale = std::pow(std::max({1.0, spectral_norm(p.w), spectral_norm(p.y)}), top) *
                                     static_cast<double>(p.w.dim() * top);
                for (unsigned q = 0; q + 1 <= top; ++q) {
                    lhs -= matrix_power(p.w, q).matrix() * diff * matrix_power(p.y, top - 1 - q).matrix();
                }
                return identity(lhs.frobenius_norm(), scale);
            },
            [](const DoubleFactorialPayload& p) {
                const double rhs = std::pow((2.0 * p.p + 1.0) / std::numbers::e, static_cast<double>(p.p));
                return inequality(double_factorial_odd(p.p), rhs);
            },
            [](const DilationSquarePayload& p) {
                const HermitianMatrix h = dilation(p.b);
                RectMatrix residual = matrix_power(h, 2).matrix();
                residual -= block_diagonal(gram_outer(p.b), gram_inner(p.b)).matrix();
                const double scale = p.b.frobenius_norm() * p.b.frobenius_norm();
                return identity(residual.frobenius_norm(), scale);
            },
        },
        c.payload());
}

namespace {

RectMatrix random_rect(std::size_t rows, std::size_t cols, CounterRng& rng) {
    RectMatrix m(rows, cols);
    for (auto& z : m.entries()) z = Complex{rng.gaussian(), rng.gaussian()};
    return m;
}

std::size_t random_dim(CounterRng& rng, std::size_t max_dim) {
    return 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_dim));
}

unsigned random_uint(CounterRng& rng, unsigned lo, unsigned hi) {
    return lo + static_cast<unsigned>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

HermitianMatrix random_psd(std::size_t d, CounterRng& rng) {
    // Rank varies from 1 to d so singular PSD inputs are exercised too.
    return gram_outer(random_rect(d, random_dim(rng, d), rng));
}

double random_scalar(CounterRng& rng) {
    if (rng.uniform() < 0.05) return 0.0;
    return -std::log(rng.uniform_open0()) * std::pow(10.0, 6.0 * rng.uniform() - 3.0);
}

constexpr std::size_t kMaxDim = 6;

}  // namespace

FactCase random_fact_case(FactKind kind, RngSeed seed, std::uint64_t index) {
    CounterRng rng(seed, index, static_cast<std::uint64_t>(kind) + 1);
    const std::size_t d = random_dim(rng, kMaxDim);
    switch (kind) {
        case FactKind::Heinz: {
            const double theta = rng.uniform() < 0.1 ? (rng.sign() > 0 ? 1.0 : 0.0) : rng.uniform();
            const double lambda = random_scalar(rng);
            return FactCase(HeinzPayload{theta, lambda, random_scalar(rng)});
        }
        case FactKind::GmAmTrace: {
            const unsigned r = random_uint(rng, 0, 3);
            const unsigned q = random_uint(rng, 0, 2 * r);
            auto h = random_hermitian(d, rng);
            auto w = random_hermitian(d, rng);
            return FactCase(GmAmPayload{std::move(h), std::move(w), random_hermitian(d, rng), r, q});
        }
        case FactKind::SumSquares: {
            std::vector<HermitianMatrix> a;
            const unsigned n = random_uint(rng, 1, 6);
            for (unsigned i = 0; i < n; ++i) a.push_back(random_psd(d, rng));
            return FactCase(SumSquaresPayload{std::move(a)});
        }
        case FactKind::TraceProduct: {
            auto h = random_hermitian(d, rng);
            return FactCase(TraceProductPayload{std::move(h), random_psd(d, rng)});
        }
        case FactKind::Monotonicity: {
            auto a = random_hermitian(d, rng);
            HermitianMatrix h = a + random_psd(d, rng);
            return FactCase(MonotonicityPayload{std::move(a), std::move(h)});
        }
        case FactKind::DiffPowers: {
            const unsigned p = random_uint(rng, 1, 6);
            auto w = random_hermitian(d, rng);
            return FactCase(DiffPowersPayload{std::move(w), random_hermitian(d, rng), p});
        }
        case FactKind::DoubleFactorial:
            return FactCase(DoubleFactorialPayload{random_uint(rng, 0, 12)});
        case FactKind::DilationSquare:
            return FactCase(DilationSquarePayload{random_rect(d, random_dim(rng, kMaxDim), rng)});
    }
    throw std::invalid_argument("unknown fact kind");
}

std::uint64_t outcome_combinations(std::span<const FiniteSummand> summands) {
    std::uint64_t total = 1;
    for (const auto& s : summands) {
        const std::uint64_t k = s.outcomes().size();
        if (total > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
        total *= k;
    }
    return total;
}

double brute_force_expected_norm(std::span<const FiniteSummand> summands, unsigned r, std::uint64_t cap) {
    if (r == 0) throw std::invalid_argument("moment order must be positive");
    if (summands.empty()) return 0.0;
    const std::uint64_t total = outcome_combinations(summands);
    if (total > cap) throw std::length_error("outcome enumeration exceeds the cap");
    const std::size_t rows = summands.front().rows();
    const std::size_t cols = summands.front().cols();
    for (const auto& s : summands)
        if (s.rows() != rows || s.cols() != cols) throw std::invalid_argument("summand shapes differ");

    const std::size_t n = summands.size();
    std::vector<std::size_t> digit(n, 0);
    RectMatrix z(rows, cols);
    double expectation = 0.0;
    for (std::uint64_t step = 0; step < total; ++step) {
        z.set_zero();
        double prob = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Outcome& o = summands[i].outcomes()[digit[i]];
            z += o.value;
            prob *= o.probability;
        }
        expectation += prob * std::pow(spectral_norm(z), static_cast<double>(r));
        // Mixed-radix increment, least significant digit first.
        for (std::size_t i = 0; i < n; ++i) {
            if (++digit[i] < summands[i].outcomes().size()) break;
            digit[i] = 0;
        }
    }
    return expectation;
}

FiniteSummand rademacher_modulated(const FiniteSummand& s) {
    std::vector<std::pair<double, RectMatrix>> out;
    out.reserve(2 * s.outcomes().size());
    for (const auto& o : s.outcomes()) {
        out.emplace_back(0.5 * o.probability, o.value);
        out.emplace_back(0.5 * o.probability, -1.0 * o.value);
    }
    return FiniteSummand(std::move(out));
}

SymmetrizationResult symmetrization_check(std::span<const FiniteSummand> summands, unsigned r, std::uint64_t cap) {
    std::vector<FiniteSummand> centered;
    std::vector<FiniteSummand> signed_centered;
    std::vector<FiniteSummand> signed_raw;
    for (const auto& s : summands) {
        centered.push_back(s.centered());
        signed_centered.push_back(rademacher_modulated(centered.back()));
        signed_raw.push_back(rademacher_modulated(s));
    }
    const double inv = 1.0 / static_cast<double>(r);
    SymmetrizationResult out;
    out.m = std::pow(brute_force_expected_norm(centered, r, cap), inv);
    out.r_centered = std::pow(brute_force_expected_norm(signed_centered, r, cap), inv);
    out.r_raw = std::pow(brute_force_expected_norm(signed_raw, r, cap), inv);
    out.tolerance = 1e-9 * std::max({1.0, out.m, out.r_centered, out.r_raw});
    out.holds = 0.5 * out.r_centered <= out.m + out.tolerance && out.m <= 2.0 * out.r_centered + out.tolerance &&
                out.m <= 2.0 * out.r_raw + out.tolerance;
    return out;
}

std::vector<FiniteSummand> random_finite_family(std::size_t n, std::size_t d1, std::size_t d2,
                                                std::size_t max_outcomes, CounterRng& rng) {
    std::vector<FiniteSummand> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = random_dim(rng, max_outcomes);
        std::vector<double> weights(k);
        double total = 0.0;
        for (auto& w : weights) total += (w = 0.05 + rng.uniform());
        std::vector<std::pair<double, RectMatrix>> outcomes;
        double assigned = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            // The last probability absorbs rounding so the total is exactly 1.
            const double p = j + 1 == k ? 1.0 - assigned : weights[j] / total;
            assigned += p;
            outcomes.emplace_back(p, random_rect(d1, d2, rng));
        }
        out.emplace_back(std::move(outcomes));
    }
    return out;
}

}  // namespace matcon
