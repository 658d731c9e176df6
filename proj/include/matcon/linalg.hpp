#pragma once

// Dense complex linear algebra: rectangular and Hermitian matrices, a cyclic
// complex Jacobi eigensolver, the spectral norm, the Loewner order, and the
// Hermitian dilation.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matcon {

using Complex = std::complex<double>;

/// Thrown when the Jacobi sweep cap is reached before the off-diagonal mass
/// falls below tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dense d1 x d2 complex matrix, row-major.
class RectMatrix {
  public:
    RectMatrix() = default;
    /// Zero matrix. Both dimensions must be positive.
    RectMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major entries; rejects a size mismatch or any
    /// non-finite entry.
    RectMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static RectMatrix identity(std::size_t d);
    /// Matrix unit E_ij: a one in position (i, j), zeros elsewhere.
    static RectMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
    static RectMatrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<Complex> entries() noexcept { return entries_; }

    RectMatrix adjoint() const;
    double frobenius_norm() const;
    /// True when every entry off the main diagonal is exactly zero.
    bool is_diagonal() const;

    RectMatrix& operator+=(const RectMatrix& other);
    RectMatrix& operator-=(const RectMatrix& other);
    RectMatrix& operator*=(Complex scale);
    /// this += scale * other
    void add_scaled(const RectMatrix& other, Complex scale);
    void set_zero();

    friend RectMatrix operator+(RectMatrix lhs, const RectMatrix& rhs) { return lhs += rhs; }
    friend RectMatrix operator-(RectMatrix lhs, const RectMatrix& rhs) { return lhs -= rhs; }
    friend RectMatrix operator*(RectMatrix lhs, Complex s) { return lhs *= s; }
    friend RectMatrix operator*(Complex s, RectMatrix rhs) { return rhs *= s; }
    friend RectMatrix operator*(const RectMatrix& lhs, const RectMatrix& rhs);

    friend bool operator==(const RectMatrix&, const RectMatrix&) = default;

  private:
    void require_same_shape(const RectMatrix& other, const char* what) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// A d x d matrix equal to its conjugate transpose.
///
/// Construction symmetrizes the input as (M + M*)/2 and records the
/// pre-symmetrization defect max|M - M*|/2 (entrywise). Inputs whose defect
/// exceeds 1e-12 * max(1, ||M||_F) are rejected with std::invalid_argument.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const RectMatrix& m);

    static HermitianMatrix identity(std::size_t d);
    static HermitianMatrix zero(std::size_t d);

    std::size_t dim() const noexcept { return m_.rows(); }
    const RectMatrix& matrix() const noexcept { return m_; }
    double defect() const noexcept { return defect_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    HermitianMatrix& operator+=(const HermitianMatrix& other);
    HermitianMatrix& operator-=(const HermitianMatrix& other);
    HermitianMatrix& operator*=(double scale);

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

  private:
    RectMatrix m_;
    double defect_ = 0.0;
};

/// Eigenvalues sorted descending (stable), with basis vectors stored as the
/// matching columns of `basis`.
struct EigDecomposition {
    std::vector<double> eigenvalues;
    RectMatrix basis;

    double lambda_max() const { return eigenvalues.front(); }
    double lambda_min() const { return eigenvalues.back(); }
    /// Column k of the basis as a vector.
    std::vector<Complex> vector(std::size_t k) const;
};

inline constexpr int kJacobiSweepCap = 30;
inline constexpr double kJacobiRelTol = 1e-12;

EigDecomposition eig_hermitian(const HermitianMatrix& h);
/// Eigenvalues only (descending); skips basis accumulation.
std::vector<double> eigenvalues(const HermitianMatrix& h);

double lambda_max(const HermitianMatrix& h);
double lambda_min(const HermitianMatrix& h);

/// Largest singular value. Diagonal-pattern inputs are read off directly;
/// otherwise sqrt(lambda_max) of the smaller Gram matrix.
double spectral_norm(const RectMatrix& m);
/// max(lambda_max, -lambda_min).
double spectral_norm(const HermitianMatrix& h);

/// True iff lambda_min(h - a) >= -tol.
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& h, double tol);
bool is_psd(const HermitianMatrix& a, double tol);

HermitianMatrix matrix_power(const HermitianMatrix& h, unsigned r);

Complex trace(const RectMatrix& m);
double trace(const HermitianMatrix& h);

/// [[0, B], [B*, 0]]
HermitianMatrix dilation(const RectMatrix& b);

/// M M* and M* M, returned Hermitian.
HermitianMatrix gram_outer(const RectMatrix& m);
HermitianMatrix gram_inner(const RectMatrix& m);

/// Block diagonal [[a, 0], [0, b]].
HermitianMatrix block_diagonal(const HermitianMatrix& a, const HermitianMatrix& b);

std::string to_string(const RectMatrix& m);

}  // namespace matcon
