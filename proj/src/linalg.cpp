#include "matcon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace matcon {

namespace {

void require_positive_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// RectMatrix

RectMatrix::RectMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    require_positive_dims(rows, cols);
}

RectMatrix::RectMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require_positive_dims(rows, cols);
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("entry count does not match " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
    for (const auto& z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("matrix entries must be finite");
        }
    }
}

RectMatrix RectMatrix::identity(std::size_t d) {
    RectMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

RectMatrix RectMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    if (i >= rows || j >= cols) throw std::invalid_argument("unit matrix index out of range");
    RectMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
}

RectMatrix RectMatrix::diagonal(std::span<const double> values) {
    RectMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

RectMatrix RectMatrix::adjoint() const {
    RectMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double RectMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

bool RectMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != Complex{}) return false;
    return true;
}

void RectMatrix::require_same_shape(const RectMatrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument(std::string("shape mismatch in ") + what);
    }
}

RectMatrix& RectMatrix::operator+=(const RectMatrix& other) {
    require_same_shape(other, "addition");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

RectMatrix& RectMatrix::operator-=(const RectMatrix& other) {
    require_same_shape(other, "subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

RectMatrix& RectMatrix::operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
}

void RectMatrix::add_scaled(const RectMatrix& other, Complex scale) {
    require_same_shape(other, "add_scaled");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += scale * other.entries_[k];
}

void RectMatrix::set_zero() { std::fill(entries_.begin(), entries_.end(), Complex{}); }

RectMatrix operator*(const RectMatrix& lhs, const RectMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw std::invalid_argument("shape mismatch in product");
    RectMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const RectMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("Hermitian matrix must be square");
    const std::size_t d = m.rows();
    RectMatrix sym(d, d);
    double defect_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Complex a = m(i, j);
            const Complex b = std::conj(m(j, i));
            sym(i, j) = 0.5 * (a + b);
            defect_sq += std::norm(0.5 * (a - b));
        }
    }
    for (std::size_t i = 0; i < d; ++i) sym(i, i) = sym(i, i).real();
    defect_ = std::sqrt(defect_sq);
    if (defect_ > 1e-12 * std::max(1.0, m.frobenius_norm())) {
        throw std::invalid_argument("matrix is not Hermitian (defect " + std::to_string(defect_) + ")");
    }
    m_ = std::move(sym);
}

HermitianMatrix HermitianMatrix::identity(std::size_t d) { return HermitianMatrix(RectMatrix::identity(d)); }

HermitianMatrix HermitianMatrix::zero(std::size_t d) { return HermitianMatrix(RectMatrix(d, d)); }

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
    m_ += other.m_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
    m_ -= other.m_;
    return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double scale) {
    m_ *= scale;
    return *this;
}

// ---------------------------------------------------------------------------
// Eigensolver

std::vector<Complex> EigDecomposition::vector(std::size_t k) const {
    std::vector<Complex> v(basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i) v[i] = basis(i, k);
    return v;
}

namespace {

double off_diagonal_mass(const RectMatrix& a) {
    double s = 0.0;
    const std::size_t d = a.rows();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Cyclic Jacobi with complex rotations. Each rotation first removes the phase
// of a(p,q) and then applies the real symmetric Jacobi rotation, so that
// A <- U* A U with U = diag-phase * Givens.
void jacobi(RectMatrix& a, RectMatrix* v) {
    const std::size_t d = a.rows();
    const double scale = a.frobenius_norm();
    const double target = kJacobiRelTol * scale;
    if (d == 1 || off_diagonal_mass(a) <= target) return;

    for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Rotation negligible relative to both diagonal entries.
                if (mag < 1e-300 ||
                    (std::abs(app) + 1e18 * mag == std::abs(app) && std::abs(aqq) + 1e18 * mag == std::abs(aqq))) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const Complex phase = apq / mag;  // e^{i phi}
                const Complex phase_c = std::conj(phase);
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Columns: A <- A U
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * phase_c * akq;
                    a(k, q) = s * akp + c * phase_c * akq;
                }
                // Rows: A <- U* A
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                if (v != nullptr) {
                    RectMatrix& vm = *v;
                    for (std::size_t k = 0; k < d; ++k) {
                        const Complex vkp = vm(k, p);
                        const Complex vkq = vm(k, q);
                        vm(k, p) = c * vkp - s * phase_c * vkq;
                        vm(k, q) = s * vkp + c * phase_c * vkq;
                    }
                }
            }
        }
        if (off_diagonal_mass(a) <= target) return;
    }
    throw ConvergenceError("Jacobi eigensolver did not converge within " + std::to_string(kJacobiSweepCap) +
                           " sweeps");
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    return order;
}

}  // namespace

EigDecomposition eig_hermitian(const HermitianMatrix& h) {
    RectMatrix a = h.matrix();
    const std::size_t d = a.rows();
    RectMatrix v = RectMatrix::identity(d);
    jacobi(a, &v);

    std::vector<double> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = a(i, i).real();
    const auto order = descending_order(diag);

    EigDecomposition out;
    out.eigenvalues.resize(d);
    out.basis = RectMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (std::size_t i = 0; i < d; ++i) out.basis(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& h) {
    RectMatrix a = h.matrix();
    jacobi(a, nullptr);
    std::vector<double> diag(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) diag[i] = a(i, i).real();
    std::stable_sort(diag.begin(), diag.end(), std::greater<>());
    return diag;
}

double lambda_max(const HermitianMatrix& h) { return eigenvalues(h).front(); }

double lambda_min(const HermitianMatrix& h) { return eigenvalues(h).back(); }

// ---------------------------------------------------------------------------
// Norms, order, powers, trace

HermitianMatrix gram_outer(const RectMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    RectMatrix g(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < c; ++k) s += m(i, k) * std::conj(m(j, k));
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
        g(i, i) = g(i, i).real();
    }
    return HermitianMatrix(g);
}

HermitianMatrix gram_inner(const RectMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    RectMatrix g(c, c);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i; j < c; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < r; ++k) s += std::conj(m(k, i)) * m(k, j);
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
        g(i, i) = g(i, i).real();
    }
    return HermitianMatrix(g);
}

double spectral_norm(const RectMatrix& m) {
    if (m.is_diagonal()) {
        double best = 0.0;
        for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) best = std::max(best, std::abs(m(i, i)));
        return best;
    }
    const HermitianMatrix g = m.rows() <= m.cols() ? gram_outer(m) : gram_inner(m);
    return std::sqrt(std::max(0.0, lambda_max(g)));
}

double spectral_norm(const HermitianMatrix& h) {
    const auto ev = eigenvalues(h);
    return std::max(ev.front(), -ev.back());
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& h, double tol) {
    if (a.dim() != h.dim()) throw std::invalid_argument("loewner_leq: dimension mismatch");
    if (tol < 0.0) throw std::invalid_argument("loewner_leq: tolerance must be nonnegative");
    return lambda_min(h - a) >= -tol;
}

bool is_psd(const HermitianMatrix& a, double tol) { return loewner_leq(HermitianMatrix::zero(a.dim()), a, tol); }

HermitianMatrix matrix_power(const HermitianMatrix& h, unsigned r) {
    RectMatrix acc = RectMatrix::identity(h.dim());
    for (unsigned k = 0; k < r; ++k) acc = h.matrix() * acc;
    // Rounding in long products can leave an asymmetry above the constructor's
    // tolerance; the exact power is Hermitian, so average explicitly.
    RectMatrix sym = acc;
    const std::size_t d = acc.rows();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) sym(i, j) = 0.5 * (acc(i, j) + std::conj(acc(j, i)));
    return HermitianMatrix(sym);
}

Complex trace(const RectMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("trace of a non-square matrix");
    Complex s{};
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
    return s;
}

double trace(const HermitianMatrix& h) { return trace(h.matrix()).real(); }

HermitianMatrix dilation(const RectMatrix& b) {
    const std::size_t d1 = b.rows();
    const std::size_t d2 = b.cols();
    RectMatrix out(d1 + d2, d1 + d2);
    for (std::size_t i = 0; i < d1; ++i) {
        for (std::size_t j = 0; j < d2; ++j) {
            out(i, d1 + j) = b(i, j);
            out(d1 + j, i) = std::conj(b(i, j));
        }
    }
    return HermitianMatrix(out);
}

HermitianMatrix block_diagonal(const HermitianMatrix& a, const HermitianMatrix& b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    RectMatrix out(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = b(i, j);
    return HermitianMatrix(out);
}

std::string to_string(const RectMatrix& m) {
    std::ostringstream os;
    os.precision(6);
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            const Complex z = m(i, j);
            os << z.real();
            if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace matcon
