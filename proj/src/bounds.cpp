#include "matcon/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "matcon/montecarlo.hpp"

namespace matcon {

int ceil_log(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("ceil_log needs a positive argument");
    return static_cast<int>(std::ceil(std::log(x)));
}

double dimensional_constant(std::size_t d1, std::size_t d2) {
    if (d1 == 0 || d2 == 0) throw std::invalid_argument("dimensions must be positive");
    return dimensional_constant(d1 + d2);
}

double dimensional_constant(std::size_t d) {
    if (d == 0) throw std::invalid_argument("dimension must be positive");
    return 4.0 * (1.0 + 2.0 * ceil_log(static_cast<double>(d)));
}

void BoundInputs::validate() const {
    if (!(v >= 0.0) || !(L >= 0.0) || !std::isfinite(v) || !std::isfinite(L)) {
        throw std::invalid_argument("v and L must be finite and nonnegative");
    }
    if (d1 == 0 || d2 == 0) throw std::invalid_argument("dimensions must be positive");
    if (L == 0.0 && v != 0.0) throw std::invalid_argument("L = 0 forces v = 0 (all summands vanish)");
}

BoundInterval main_interval(const BoundInputs& inputs) {
    inputs.validate();
    const double c =
        inputs.moment == MomentKind::Second ? kSecondMomentLowerConstant : kFirstMomentLowerConstant;
    const double C = dimensional_constant(inputs.d1, inputs.d2);
    return BoundInterval{std::sqrt(c * inputs.v) + c * inputs.L, std::sqrt(C * inputs.v) + C * inputs.L, C};
}

double variance_param(const IndependentSumModel& model, const SecondMoments& moments) {
    if (!model.centered()) throw std::domain_error("variance parameter needs a centered model; call center()");
    if (moments.outer.dim() != model.d1() || moments.inner.dim() != model.d2()) {
        throw std::invalid_argument("second-moment shapes do not match the model");
    }
    return std::max(spectral_norm(moments.outer), spectral_norm(moments.inner));
}

namespace {

using Distribution = std::vector<std::pair<double, double>>;

// E max over independent variables, where group g contributes `count` iid
// copies: P(max <= t) = prod_g F_g(t)^count.
double expected_max_grouped(const std::vector<std::pair<Distribution, std::size_t>>& groups) {
    if (groups.empty()) return 0.0;
    std::vector<double> support;
    for (const auto& [dist, count] : groups)
        for (const auto& [value, prob] : dist) support.push_back(value);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    double previous_cdf = 0.0;
    double expectation = 0.0;
    for (double t : support) {
        double cdf = 1.0;
        for (const auto& [dist, count] : groups) {
            double f = 0.0;
            for (const auto& [value, prob] : dist)
                if (value <= t) f += prob;
            cdf *= std::pow(std::min(f, 1.0), static_cast<double>(count));
        }
        expectation += t * (cdf - previous_cdf);
        previous_cdf = cdf;
    }
    return expectation;
}

}  // namespace

double expected_max_discrete(std::span<const Distribution> distributions) {
    std::vector<std::pair<Distribution, std::size_t>> groups;
    for (const auto& d : distributions) groups.emplace_back(d, 1);
    return expected_max_grouped(groups);
}

std::optional<double> analytic_large_dev_sq(const IndependentSumModel& model) {
    std::vector<Distribution> dists;
    dists.reserve(model.size());
    for (const auto& s : model.summands()) {
        auto d = norm_sq_distribution(s);
        if (!d) return std::nullopt;
        dists.push_back(std::move(*d));
    }
    // Identical summand distributions are common (sec71/72/73); collapse them
    // into one CDF raised to the multiplicity.
    std::sort(dists.begin(), dists.end());
    std::vector<std::pair<Distribution, std::size_t>> groups;
    for (auto& d : dists) {
        if (!groups.empty() && groups.back().first == d) {
            ++groups.back().second;
        } else {
            groups.emplace_back(std::move(d), 1);
        }
    }
    return expected_max_grouped(groups);
}

std::optional<double> large_dev_param(const IndependentSumModel& model, ParamMode mode, const MCConfig& cfg) {
    if (mode == ParamMode::Analytic) {
        const auto sq = analytic_large_dev_sq(model);
        if (!sq) return std::nullopt;
        return std::sqrt(*sq);
    }
    return std::sqrt(std::max(0.0, estimate_max_summand_sq(model, cfg).mean));
}

namespace {

HermitianMatrix sum_of_squares(std::span<const HermitianMatrix> h) {
    HermitianMatrix acc = HermitianMatrix::zero(h.front().dim());
    for (const auto& m : h) {
        if (m.dim() != acc.dim()) throw std::invalid_argument("Rademacher series needs a common dimension");
        acc += matrix_power(m, 2);
    }
    return acc;
}

}  // namespace

double rademacher_bound(std::span<const HermitianMatrix> h) {
    if (h.empty()) return 0.0;
    const double d = static_cast<double>(h.front().dim());
    const double variance = spectral_norm(sum_of_squares(h));
    return std::sqrt(1.0 + 2.0 * ceil_log(d)) * std::sqrt(variance);
}

double double_factorial_odd(unsigned p) {
    double out = 1.0;
    for (unsigned i = 1; i < p; ++i) out *= static_cast<double>(2 * i + 1);
    return out;
}

double trace_moment_bound(std::span<const HermitianMatrix> h, unsigned p) {
    if (p == 0) return std::numeric_limits<double>::infinity();
    if (h.empty()) return 0.0;
    const double d = static_cast<double>(h.front().dim());
    const double variance = spectral_norm(sum_of_squares(h));
    // (d (2p-1)!!)^{1/(2p)} * variance^{1/2}, evaluated in log space.
    const double log_factor = (std::log(d) + std::log(double_factorial_odd(p))) / (2.0 * p);
    return std::exp(log_factor) * std::sqrt(variance);
}

namespace {

void require_nonnegative(const CaseStats& s) {
    if (!(s.variance >= 0.0) || !(s.max_term >= 0.0)) throw std::invalid_argument("case statistics must be >= 0");
    if (s.d1 == 0 || s.d2 == 0) throw std::invalid_argument("dimensions must be positive");
}

double case_constant(NormCase which, const CaseStats& s) {
    return which == NormCase::Rectangular ? dimensional_constant(s.d1, s.d2) : dimensional_constant(s.d1);
}

}  // namespace

double case_upper(NormCase which, const CaseStats& stats) {
    require_nonnegative(stats);
    const double C = case_constant(which, stats);
    switch (which) {
        case NormCase::Psd: {
            const double root = std::sqrt(stats.variance) + std::sqrt(C) * std::sqrt(stats.max_term);
            return root * root;
        }
        case NormCase::Hermitian:
        case NormCase::Rectangular:
            return std::sqrt(C) * std::sqrt(stats.variance) + C * std::sqrt(stats.max_term);
    }
    return 0.0;
}

double case_lower(NormCase which, const CaseStats& stats) {
    require_nonnegative(stats);
    switch (which) {
        case NormCase::Psd: {
            const double root = std::sqrt(stats.variance) + std::sqrt(stats.max_term);
            return 0.25 * root * root;
        }
        case NormCase::Hermitian:
        case NormCase::Rectangular:
            return 0.5 * std::sqrt(stats.variance) + 0.25 * std::sqrt(stats.max_term);
    }
    return 0.0;
}

}  // namespace matcon
