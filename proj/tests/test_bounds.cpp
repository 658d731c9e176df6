#include <doctest.h>
#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "matcon/bounds.hpp"
#include "matcon/oracles.hpp"

using namespace matcon;

TEST_CASE("dimensional constant uses the standard ceiling") {
    CHECK(dimensional_constant(1, 1) == 12.0);
    CHECK(dimensional_constant(4, 4) == 28.0);
    CHECK(dimensional_constant(2, 2) == 20.0);
    CHECK(dimensional_constant(1) == 4.0);
    double prev = 0.0;
    for (std::size_t d = 1; d < 2000; ++d) {
        const double c = dimensional_constant(d);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK_THROWS_AS(dimensional_constant(0, 3), std::invalid_argument);
}

TEST_CASE("matched interval") {
    const auto zero = main_interval(BoundInputs{0.0, 0.0, 3, 3, MomentKind::Second});
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == 0.0);

    const auto b = main_interval(BoundInputs{1.0, 0.1, 2, 2, MomentKind::Second});
    CHECK(b.lower == doctest::Approx(0.525));
    CHECK(b.constant == 20.0);
    CHECK(b.upper == doctest::Approx(std::sqrt(20.0) + 2.0));

    const auto f = main_interval(BoundInputs{1.0, 0.1, 2, 2, MomentKind::First});
    CHECK(f.lower == doctest::Approx(std::sqrt(0.125) + 0.0125));
    CHECK(f.upper == b.upper);

    // Both endpoints increase strictly in v and in L.
    const auto bv = main_interval(BoundInputs{1.5, 0.1, 2, 2, MomentKind::Second});
    const auto bl = main_interval(BoundInputs{1.0, 0.2, 2, 2, MomentKind::Second});
    CHECK(bv.lower > b.lower);
    CHECK(bv.upper > b.upper);
    CHECK(bl.lower > b.lower);
    CHECK(bl.upper > b.upper);

    CHECK_THROWS_AS(main_interval(BoundInputs{1.0, 0.0, 2, 2, MomentKind::Second}), std::invalid_argument);
    CHECK_THROWS_AS(main_interval(BoundInputs{-1.0, 1.0, 2, 2, MomentKind::Second}), std::invalid_argument);
}

TEST_CASE("exact large-deviation parameter for discrete norms") {
    using Dist = std::vector<std::pair<double, double>>;
    // max of two fair coins on {0, 1}: E max = 3/4
    const std::vector<Dist> coins{{{0.0, 0.5}, {1.0, 0.5}}, {{0.0, 0.5}, {1.0, 0.5}}};
    CHECK(expected_max_discrete(coins) == doctest::Approx(0.75));
    const std::vector<Dist> mixed{{{2.0, 1.0}}, {{1.0, 0.5}, {3.0, 0.5}}};
    CHECK(expected_max_discrete(mixed) == doctest::Approx(2.5));
    CHECK(expected_max_discrete(std::vector<Dist>{}) == 0.0);

    CounterRng rng(RngSeed{2}, 0, 0);
    std::vector<SummandSpec> s;
    double max_sq = 0.0;
    for (int i = 0; i < 4; ++i) {
        FixedRademacher f(random_hermitian(3, rng));
        max_sq = std::max(max_sq, f.norm * f.norm);
        s.emplace_back(std::move(f));
    }
    const IndependentSumModel m("fr", 3, 3, std::move(s));
    MCConfig cfg;
    CHECK(*large_dev_param(m, ParamMode::Analytic, cfg) == doctest::Approx(std::sqrt(max_sq)));
    cfg.seed = RngSeed{1};
    cfg.samples = 10;
    CHECK(*large_dev_param(m, ParamMode::MonteCarlo, cfg) == doctest::Approx(std::sqrt(max_sq)));
    CHECK_FALSE(large_dev_param(make_example(Example::Sec74, 3, 0), ParamMode::Analytic, cfg).has_value());
}

TEST_CASE("variance parameter rejects uncentered models") {
    const RectMatrix a = RectMatrix::identity(2);
    const IndependentSumModel m("b", 2, 2, {FiniteSummand({{1.0, a}})});
    const SecondMoments sm{HermitianMatrix::identity(2), HermitianMatrix::identity(2)};
    CHECK_THROWS_AS(variance_param(m, sm), std::domain_error);
}

TEST_CASE("Rademacher bound") {
    CHECK(rademacher_bound(std::vector<HermitianMatrix>{}) == 0.0);
    // Single H in d = 2: sqrt(1 + 2 ceil(log 2)) ||H|| = sqrt(3) ||H||.
    CounterRng rng(RngSeed{6}, 0, 0);
    const HermitianMatrix h = random_hermitian(2, rng);
    const std::vector<HermitianMatrix> one{h};
    CHECK(rademacher_bound(one) == doctest::Approx(std::sqrt(3.0) * spectral_norm(h)));
    // sum H_i^2 = I_d gives sqrt(1 + 2 ceil(log d)).
    std::vector<HermitianMatrix> units;
    for (std::size_t i = 0; i < 5; ++i) units.emplace_back(RectMatrix::unit(5, 5, i, i));
    CHECK(rademacher_bound(units) == doctest::Approx(std::sqrt(1.0 + 2.0 * std::ceil(std::log(5.0)))));
    // d = 1 is tight.
    const std::vector<HermitianMatrix> scalar{HermitianMatrix(RectMatrix(1, 1, {Complex{2.0, 0.0}}))};
    CHECK(rademacher_bound(scalar) == doctest::Approx(2.0));
}

TEST_CASE("Rademacher bound dominates exact enumeration") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        CounterRng rng(RngSeed{77}, i, 0);
        const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 6);
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 8);
        std::vector<HermitianMatrix> h;
        std::vector<FiniteSummand> fs;
        for (std::size_t k = 0; k < n; ++k) {
            h.push_back(random_hermitian(d, rng));
            fs.emplace_back(std::vector<std::pair<double, RectMatrix>>{{0.5, h.back().matrix()},
                                                                       {0.5, -1.0 * h.back().matrix()}});
        }
        const double exact = std::sqrt(brute_force_expected_norm(fs, 2));
        CHECK((rademacher_bound(h) - exact) / rademacher_bound(h) >= -1e-9);
        // E tr X^2 = tr sum H_i^2 exactly.
        HermitianMatrix sq = HermitianMatrix::zero(d);
        for (const auto& m : h) sq += matrix_power(m, 2);
        double etr = 0.0;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            HermitianMatrix x = HermitianMatrix::zero(d);
            for (std::size_t k = 0; k < n; ++k) x += ((mask >> k) & 1 ? 1.0 : -1.0) * h[k];
            etr += trace(matrix_power(x, 2)) / static_cast<double>(total);
        }
        CHECK(etr == doctest::Approx(trace(sq)).epsilon(1e-10));
    }
}

TEST_CASE("trace-moment bound") {
    CHECK(double_factorial_odd(0) == 1.0);
    CHECK(double_factorial_odd(1) == 1.0);
    CHECK(double_factorial_odd(3) == 15.0);
    CHECK(double_factorial_odd(5) == 945.0);
    CounterRng rng(RngSeed{12}, 0, 0);
    std::vector<HermitianMatrix> h;
    for (int i = 0; i < 3; ++i) h.push_back(random_hermitian(4, rng));
    CHECK(std::isinf(trace_moment_bound(h, 0)));
    HermitianMatrix sq = HermitianMatrix::zero(4);
    for (const auto& m : h) sq += matrix_power(m, 2);
    CHECK(trace_moment_bound(h, 1) == doctest::Approx(std::sqrt(4.0 * spectral_norm(sq))));
    // d = 4: p = ceil(log 4) = 2, (4 * 3)^{1/4} <= sqrt(5).
    const double tm = trace_moment_bound(h, 2);
    CHECK(tm == doctest::Approx(std::pow(12.0, 0.25) * std::sqrt(spectral_norm(sq))));
    CHECK(tm <= rademacher_bound(h) * (1.0 + 1e-12));
    for (std::size_t d = 2; d <= 200; ++d) {
        std::vector<HermitianMatrix> id{HermitianMatrix::identity(d)};
        const unsigned p = static_cast<unsigned>(ceil_log(static_cast<double>(d)));
        CHECK(trace_moment_bound(id, p) <= rademacher_bound(id) * (1.0 + 1e-12));
    }
}

TEST_CASE("per-case bounds") {
    // PSD with E max = 0 collapses to ||E W||.
    CHECK(case_upper(NormCase::Psd, CaseStats{3.0, 0.0, 4, 4}) == doctest::Approx(3.0));
    CHECK(case_upper(NormCase::Hermitian, CaseStats{1.0, 0.0, 2, 2}) == doctest::Approx(std::sqrt(12.0)));
    CHECK(case_lower(NormCase::Psd, CaseStats{4.0, 1.0, 3, 3}) == doctest::Approx(2.25));
    CHECK(case_lower(NormCase::Rectangular, CaseStats{0.0, 0.0, 3, 5}) == 0.0);
    CHECK_THROWS_AS(case_upper(NormCase::Psd, CaseStats{-1.0, 0.0, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(case_lower(NormCase::Hermitian, CaseStats{1.0, -1.0, 2, 2}), std::invalid_argument);

    CounterRng rng(RngSeed{99}, 0, 0);
    for (int t = 0; t < 1000; ++t) {
        const CaseStats s{std::exp(8.0 * rng.uniform() - 4.0), std::exp(8.0 * rng.uniform() - 4.0),
                          1 + static_cast<std::size_t>(rng.uniform() * 50),
                          1 + static_cast<std::size_t>(rng.uniform() * 50)};
        for (NormCase c : {NormCase::Psd, NormCase::Hermitian, NormCase::Rectangular})
            CHECK(case_lower(c, s) <= case_upper(c, s));
        // The rectangular bound equals the Hermitian bound on the dilation, d = d1 + d2.
        const CaseStats dil{s.variance, s.max_term, s.d1 + s.d2, s.d1 + s.d2};
        CHECK(case_upper(NormCase::Rectangular, s) ==
              doctest::Approx(case_upper(NormCase::Hermitian, dil)).epsilon(1e-12));
    }
}

TEST_CASE("PSD lower-bound components hold on an enumerable PSD model") {
    // W = sum_i T_i with T_i in {0, A_i} with probability 1/2 each.
    CounterRng rng(RngSeed{31}, 0, 0);
    std::vector<FiniteSummand> fs;
    RectMatrix mean(3, 3);
    for (int i = 0; i < 4; ++i) {
        RectMatrix b(3, 2);
        for (auto& z : b.entries()) z = Complex{rng.gaussian(), rng.gaussian()};
        const RectMatrix a = gram_outer(b).matrix();
        fs.emplace_back(std::vector<std::pair<double, RectMatrix>>{{0.5, RectMatrix(3, 3)}, {0.5, a}});
        mean.add_scaled(a, 0.5);
    }
    const double e_norm = brute_force_expected_norm(fs, 1);
    CHECK(spectral_norm(mean) <= e_norm + 1e-12);
    std::vector<std::vector<std::pair<double, double>>> dists;
    for (const auto& f : fs) {
        std::vector<std::pair<double, double>> d;
        for (const auto& o : f.outcomes()) d.emplace_back(o.norm, o.probability);
        dists.push_back(d);
    }
    CHECK(expected_max_discrete(dists) <= e_norm + 1e-12);
}
