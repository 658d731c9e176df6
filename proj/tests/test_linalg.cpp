#include <doctest.h>
#include <stdexcept>

#include <cmath>

#include "matcon/linalg.hpp"
#include "matcon/rng.hpp"
#include "support/reference.hpp"

using namespace matcon;

namespace {

RectMatrix random_rect(std::size_t r, std::size_t c, CounterRng& rng) {
    RectMatrix m(r, c);
    for (auto& z : m.entries()) z = Complex{rng.gaussian(), rng.gaussian()};
    return m;
}

HermitianMatrix random_herm(std::size_t d, CounterRng& rng) {
    RectMatrix m = random_rect(d, d, rng);
    return HermitianMatrix(0.5 * (m + m.adjoint()));
}

}  // namespace

TEST_CASE("rect matrix construction rejects bad shapes and entries") {
    CHECK_THROWS_AS(RectMatrix(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(RectMatrix(2, 2, std::vector<Complex>(3)), std::invalid_argument);
    CHECK_THROWS_AS(RectMatrix(1, 1, {Complex{NAN, 0.0}}), std::invalid_argument);
    const RectMatrix e = RectMatrix::unit(2, 3, 1, 2);
    CHECK(e(1, 2) == Complex{1.0, 0.0});
    CHECK(e.frobenius_norm() == doctest::Approx(1.0));
}

TEST_CASE("adjoint and products") {
    RectMatrix a(2, 3, {{1, 1}, {2, 0}, {0, -1}, {3, 0}, {0, 2}, {1, 0}});
    const RectMatrix at = a.adjoint();
    CHECK(at.rows() == 3);
    CHECK(at(2, 0) == Complex{0, 1});
    const RectMatrix g = a * at;
    // (a a*)_{00} = |1+i|^2 + 4 + 1
    CHECK(g(0, 0).real() == doctest::Approx(7.0));
    CHECK_THROWS_AS(a * a, std::invalid_argument);
}

TEST_CASE("hermitian construction records and rejects asymmetry") {
    RectMatrix m(2, 2, {{1, 0}, {2, 1}, {2, -1}, {3, 0}});
    HermitianMatrix h(m);
    CHECK(h.defect() == 0.0);
    RectMatrix bad(2, 2, {{1, 0}, {2, 0}, {0, 0}, {3, 0}});
    CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);
    // Rounding-level asymmetry is accepted and averaged away.
    RectMatrix tiny = m;
    tiny(0, 1) += Complex{1e-15, 0};
    HermitianMatrix ht(tiny);
    CHECK(ht(0, 1) == std::conj(ht(1, 0)));
    CHECK(ht.defect() > 0.0);
}

TEST_CASE("eigenvalues match the closed form on random 2x2 inputs") {
    CounterRng rng(RngSeed{42}, 0, 0);
    for (int t = 0; t < 200; ++t) {
        const double a = rng.gaussian(), c = rng.gaussian();
        const Complex b{rng.gaussian(), rng.gaussian()};
        HermitianMatrix h(RectMatrix(2, 2, {a, b, std::conj(b), c}));
        const auto [hi, lo] = ref::eig2(a, b, c);
        const auto ev = eigenvalues(h);
        CHECK(ev[0] == doctest::Approx(hi).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(lo).epsilon(1e-12));
    }
}

TEST_CASE("eigendecomposition reconstructs the matrix") {
    CounterRng rng(RngSeed{5}, 0, 0);
    for (std::size_t d = 1; d <= 8; ++d) {
        const HermitianMatrix h = random_herm(d, rng);
        const EigDecomposition e = eig_hermitian(h);
        CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
        RectMatrix lam(d, d);
        for (std::size_t i = 0; i < d; ++i) lam(i, i) = e.eigenvalues[i];
        const RectMatrix back = e.basis * lam * e.basis.adjoint();
        CHECK((back - h.matrix()).frobenius_norm() <= 1e-10 * std::max(1.0, h.matrix().frobenius_norm()));
        const RectMatrix gram = e.basis.adjoint() * e.basis;
        CHECK((gram - RectMatrix::identity(d)).frobenius_norm() <= 1e-10);
        double tr = 0.0;
        for (double v : e.eigenvalues) tr += v;
        CHECK(tr == doctest::Approx(trace(h)).epsilon(1e-10));
    }
}

TEST_CASE("spectral norm agrees with power iteration") {
    CounterRng rng(RngSeed{9}, 0, 0);
    for (std::size_t r = 1; r <= 5; ++r) {
        for (std::size_t c = 1; c <= 5; ++c) {
            const RectMatrix m = random_rect(r, c, rng);
            CHECK(spectral_norm(m) == doctest::Approx(ref::power_norm(m)).epsilon(1e-8));
        }
    }
    const std::vector<double> diag{-3.0, 2.0, 0.5};
    CHECK(spectral_norm(RectMatrix::diagonal(diag)) == 3.0);
    const HermitianMatrix h = random_herm(4, rng);
    CHECK(spectral_norm(h) == doctest::Approx(spectral_norm(h.matrix())).epsilon(1e-10));
}

TEST_CASE("Loewner order and PSD test") {
    const HermitianMatrix i2 = HermitianMatrix::identity(2);
    const HermitianMatrix z2 = HermitianMatrix::zero(2);
    CHECK(loewner_leq(z2, i2, 0.0));
    CHECK_FALSE(loewner_leq(i2, z2, 1e-12));
    CHECK(is_psd(i2, 0.0));
    CHECK_FALSE(is_psd(-1.0 * i2, 1e-12));
    CHECK_THROWS_AS(loewner_leq(i2, HermitianMatrix::identity(3), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(loewner_leq(i2, i2, -1.0), std::invalid_argument);
}

TEST_CASE("matrix powers, trace, and dilation") {
    CounterRng rng(RngSeed{17}, 0, 0);
    const HermitianMatrix h = random_herm(3, rng);
    CHECK(matrix_power(h, 0).matrix() == RectMatrix::identity(3));
    const RectMatrix cube = h.matrix() * h.matrix() * h.matrix();
    CHECK((matrix_power(h, 3).matrix() - cube).frobenius_norm() <= 1e-12 * cube.frobenius_norm());
    CHECK_THROWS_AS(trace(RectMatrix(2, 3)), std::invalid_argument);

    const RectMatrix b = random_rect(2, 3, rng);
    const HermitianMatrix dil = dilation(b);
    CHECK(dil.dim() == 5);
    // The dilation's norm equals the norm of B, and its spectrum is symmetric.
    CHECK(spectral_norm(dil) == doctest::Approx(spectral_norm(b)).epsilon(1e-10));
    CHECK(lambda_min(dil) == doctest::Approx(-lambda_max(dil)).epsilon(1e-10));
    const HermitianMatrix sq = matrix_power(dil, 2);
    const HermitianMatrix blocks = block_diagonal(gram_outer(b), gram_inner(b));
    CHECK((sq.matrix() - blocks.matrix()).frobenius_norm() <= 1e-12 * std::max(1.0, blocks.matrix().frobenius_norm()));
}

TEST_CASE("diagonal fast path matches the general path") {
    CounterRng rng(RngSeed{3}, 0, 0);
    RectMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = Complex{rng.gaussian(), rng.gaussian()};
    CHECK(m.is_diagonal());
    const double fast = spectral_norm(m);
    CHECK(fast == doctest::Approx(ref::power_norm(m)).epsilon(1e-10));
}
