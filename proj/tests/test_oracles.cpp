#include <doctest.h>
#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "matcon/oracles.hpp"

using namespace matcon;

namespace {

HermitianMatrix herm(std::uint64_t seed, std::size_t d) {
    CounterRng rng(RngSeed{seed}, 0, 0);
    return random_hermitian(d, rng);
}

FiniteSummand signs(const RectMatrix& m) { return FiniteSummand({{0.5, m}, {0.5, -1.0 * m}}); }

}  // namespace

TEST_CASE("Heinz inequality examples") {
    const CheckResult r = verify_fact(FactCase(HeinzPayload{0.5, 4.0, 1.0}));
    CHECK(r.holds);
    CHECK(r.lhs == doctest::Approx(4.0));
    CHECK(r.rhs == doctest::Approx(5.0));
    CHECK(r.slack == doctest::Approx(1.0));
    CHECK(verify_fact(FactCase(HeinzPayload{0.0, 3.0, 0.0})).holds);
    CHECK_THROWS_AS(FactCase(HeinzPayload{1.5, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(FactCase(HeinzPayload{0.5, -1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("double factorial bound") {
    const CheckResult r = verify_fact(FactCase(DoubleFactorialPayload{3}));
    CHECK(r.holds);
    CHECK(r.lhs == 15.0);
    CHECK(r.rhs == doctest::Approx(std::pow(7.0 / std::numbers::e, 3)));
    CHECK(r.rhs == doctest::Approx(17.07).epsilon(1e-3));
    for (unsigned p = 0; p <= 12; ++p) CHECK(verify_fact(FactCase(DoubleFactorialPayload{p})).holds);
}

TEST_CASE("GM-AM trace inequality") {
    const CheckResult r = verify_fact(FactCase(GmAmPayload{herm(1, 3), herm(2, 3), herm(3, 3), 2, 1}));
    CHECK(r.holds);
    CHECK(r.slack >= 0.0);
    // r = 0 forces equality: 2 tr H^2 on both sides.
    const CheckResult eq = verify_fact(FactCase(GmAmPayload{herm(1, 3), herm(2, 3), herm(3, 3), 0, 0}));
    CHECK(eq.lhs == doctest::Approx(eq.rhs));
    CHECK_THROWS_AS(FactCase(GmAmPayload{herm(1, 3), herm(2, 3), herm(3, 3), 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FactCase(GmAmPayload{herm(1, 3), herm(2, 2), herm(3, 3), 1, 1}), std::invalid_argument);
}

TEST_CASE("fault injection breaks the GM-AM checker") {
    const CheckResult bad =
        verify_fact(FactCase(GmAmPayload{herm(1, 3), herm(2, 3), herm(3, 3), 0, 0}), FaultInjection::HalveGmAmRhs);
    CHECK_FALSE(bad.holds);
}

TEST_CASE("PSD preconditions are enforced, not projected") {
    const HermitianMatrix neg = -1.0 * HermitianMatrix::identity(2);
    CHECK_THROWS_AS(FactCase(TraceProductPayload{herm(1, 2), neg}), std::invalid_argument);
    CHECK_THROWS_AS(FactCase(SumSquaresPayload{{HermitianMatrix::identity(2), neg}}), std::invalid_argument);
    CHECK_THROWS_AS(FactCase(MonotonicityPayload{HermitianMatrix::identity(2), HermitianMatrix::zero(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FactCase(DiffPowersPayload{herm(1, 2), herm(2, 2), 0}), std::invalid_argument);
}

TEST_CASE("identity kinds report a residual") {
    const CheckResult dp = verify_fact(FactCase(DiffPowersPayload{herm(4, 3), herm(5, 3), 3}));
    CHECK(dp.holds);
    CHECK(dp.rhs == 0.0);
    CHECK(dp.lhs <= dp.tolerance);
    RectMatrix b(2, 3);
    CounterRng rng(RngSeed{3}, 0, 0);
    for (auto& z : b.entries()) z = Complex{rng.gaussian(), rng.gaussian()};
    const CheckResult ds = verify_fact(FactCase(DilationSquarePayload{b}));
    CHECK(ds.holds);
    CHECK(ds.lhs <= 1e-12 * std::max(1.0, b.frobenius_norm() * b.frobenius_norm()));
}

TEST_CASE("random fact cases are valid, replayable, and hold") {
    for (FactKind kind : kAllFactKinds) {
        for (std::uint64_t i = 0; i < 300; ++i) {
            const FactCase c = random_fact_case(kind, RngSeed{5}, i);
            CHECK(c.kind() == kind);
            const CheckResult r = verify_fact(c);
            CHECK_MESSAGE(r.holds, fact_name(kind) << " case " << i);
            const CheckResult again = verify_fact(random_fact_case(kind, RngSeed{5}, i));
            CHECK(again.lhs == r.lhs);
        }
    }
}

TEST_CASE("brute-force expectation") {
    const HermitianMatrix h = herm(10, 3);
    const std::vector<FiniteSummand> one{signs(h.matrix())};
    CHECK(brute_force_expected_norm(one, 2) == doctest::Approx(std::pow(spectral_norm(h), 2)));

    const std::vector<FiniteSummand> diag{signs(RectMatrix::unit(2, 2, 0, 0)), signs(RectMatrix::unit(2, 2, 1, 1))};
    CHECK(brute_force_expected_norm(diag, 2) == doctest::Approx(1.0));

    CHECK_THROWS_AS(brute_force_expected_norm(one, 0), std::invalid_argument);
    std::vector<FiniteSummand> many(21, signs(h.matrix()));
    CHECK(outcome_combinations(many) == (std::uint64_t{1} << 21));
    CHECK_THROWS_AS(brute_force_expected_norm(many, 2), std::length_error);
    const std::vector<FiniteSummand> mixed{signs(RectMatrix(2, 2)), signs(RectMatrix(2, 3))};
    CHECK_THROWS_AS(brute_force_expected_norm(mixed, 1), std::invalid_argument);
}

TEST_CASE("brute-force expectation is permutation invariant") {
    CounterRng rng(RngSeed{44}, 0, 0);
    auto family = random_finite_family(5, 3, 2, 3, rng);
    const double base = brute_force_expected_norm(family, 2);
    std::reverse(family.begin(), family.end());
    CHECK(std::abs(brute_force_expected_norm(family, 2) - base) <= 1e-12 * std::max(1.0, base));
    std::rotate(family.begin(), family.begin() + 2, family.end());
    CHECK(std::abs(brute_force_expected_norm(family, 2) - base) <= 1e-12 * std::max(1.0, base));
}

TEST_CASE("symmetrization") {
    SUBCASE("already symmetric single summand") {
        const RectMatrix m(2, 2, {1, 2, 3, 4});
        const std::vector<FiniteSummand> s{signs(m)};
        const SymmetrizationResult r = symmetrization_check(s, 1);
        CHECK(r.holds);
        CHECK(r.m == doctest::Approx(spectral_norm(m)));
        CHECK(r.r_centered == doctest::Approx(spectral_norm(m)));
    }
    SUBCASE("deterministic summands give M = 0 exactly") {
        const std::vector<FiniteSummand> s{FiniteSummand({{1.0, RectMatrix::identity(2)}}),
                                           FiniteSummand({{1.0, RectMatrix::unit(2, 2, 0, 1)}})};
        const SymmetrizationResult r = symmetrization_check(s, 2);
        CHECK(r.m == 0.0);
        CHECK(r.r_centered == 0.0);
        CHECK(r.r_raw > 0.0);
        CHECK(r.holds);
    }
    SUBCASE("random two-outcome summands") {
        for (std::uint64_t i = 0; i < 40; ++i) {
            CounterRng rng(RngSeed{2}, i, 0);
            const auto family = random_finite_family(3, 2, 2, 2, rng);
            CHECK(symmetrization_check(family, 1 + static_cast<unsigned>(i % 2)).holds);
        }
    }
}

TEST_CASE("rademacher modulation halves probabilities") {
    const FiniteSummand f({{0.25, RectMatrix::identity(2)}, {0.75, RectMatrix::unit(2, 2, 0, 0)}});
    const FiniteSummand g = rademacher_modulated(f);
    CHECK(g.outcomes().size() == 4);
    CHECK(g.is_centered());
    CHECK(g.outcomes()[1].probability == doctest::Approx(0.125));
}
