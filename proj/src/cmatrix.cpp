#include "bell3/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bell3 {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": shapes " + a.shape() + " and " + b.shape() +
                                " differ");
    }
}

void require_square(const CMatrix& m, const char* op) {
    if (!m.is_square()) {
        throw DimensionMismatch(std::string(op) + ": matrix " + m.shape() + " is not square");
    }
}

}  // namespace

NotHermitian::NotHermitian(double asymmetry, double norm)
    : std::domain_error([&] {
          std::ostringstream os;
          os << "matrix is not Hermitian: ||M - M^dagger||_F = " << asymmetry
             << " (||M||_F = " << norm << ")";
          return os.str();
      }()),
      asymmetry_(asymmetry) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionMismatch("CMatrix: dimensions must be positive");
    }
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw DimensionMismatch("CMatrix: dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw DimensionMismatch("CMatrix: " + std::to_string(data_.size()) +
                                " entries for shape " + shape());
    }
    for (const auto& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::domain_error("CMatrix: non-finite entry");
        }
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return CMatrix(n, n, std::move(e));
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    const std::size_t n = diag.size();
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
    return CMatrix(n, n, std::move(e));
}

std::string CMatrix::shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    std::vector<Complex> e(rows * cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    e[(i * b.rows() + k) * cols + (j * b.cols() + l)] = aij * b(k, l);
        }
    return CMatrix(rows, cols, std::move(e));
}

CMatrix dagger(const CMatrix& m) {
    std::vector<Complex> e(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e[j * m.rows() + i] = std::conj(m(i, j));
    return CMatrix(m.cols(), m.rows(), std::move(e));
}

CMatrix conj(const CMatrix& m) {
    std::vector<Complex> e(m.entries().begin(), m.entries().end());
    for (auto& z : e) z = std::conj(z);
    return CMatrix(m.rows(), m.cols(), std::move(e));
}

CMatrix transpose(const CMatrix& m) {
    std::vector<Complex> e(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e[j * m.rows() + i] = m(i, j);
    return CMatrix(m.cols(), m.rows(), std::move(e));
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: inner dimensions of " + a.shape() + " and " + b.shape() +
                                " disagree");
    }
    std::vector<Complex> e(a.rows() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) e[i * b.cols() + j] += aik * b(k, j);
        }
    return CMatrix(a.rows(), b.cols(), std::move(e));
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "add");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
    return CMatrix(a.rows(), a.cols(), std::move(e));
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "sub");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
    return CMatrix(a.rows(), a.cols(), std::move(e));
}

CMatrix scale(const CMatrix& m, Complex s) {
    std::vector<Complex> e(m.entries().begin(), m.entries().end());
    for (auto& z : e) z *= s;
    return CMatrix(m.rows(), m.cols(), std::move(e));
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

Complex trace(const CMatrix& m) {
    require_square(m, "trace");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

bool is_unitary(const CMatrix& m, double tol) {
    if (!m.is_square()) return false;
    return frobenius_norm(dagger(m) * m - CMatrix::identity(m.rows())) <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (!m.is_square()) return false;
    return frobenius_norm(m - dagger(m)) <= tol * std::max(frobenius_norm(m), 1.0);
}

CMatrix mat_power(const CMatrix& m, unsigned k) {
    require_square(m, "mat_power");
    CMatrix result = CMatrix::identity(m.rows());
    CMatrix base = m;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double atol, double rtol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        const Complex x = a.entries()[i];
        const Complex y = b.entries()[i];
        if (std::abs(x - y) > atol + rtol * std::max(std::abs(x), std::abs(y))) return false;
    }
    return true;
}

CMatrix orthonormalize_columns(const CMatrix& m) {
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    std::vector<CVector> cols(k, CVector(n));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) cols[j][i] = m(i, j);

    for (std::size_t j = 0; j < k; ++j) {
        const double original = norm2(cols[j]);
        for (std::size_t p = 0; p < j; ++p) {
            const Complex c = inner(cols[p], cols[j]);
            for (std::size_t i = 0; i < n; ++i) cols[j][i] -= c * cols[p][i];
        }
        const double nrm = norm2(cols[j]);
        if (nrm <= 1e-12 * std::max(original, 1e-300)) {
            throw std::domain_error("orthonormalize_columns: column " + std::to_string(j) +
                                    " is linearly dependent");
        }
        for (auto& z : cols[j]) z /= nrm;
    }

    std::vector<Complex> e(n * k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) e[i * k + j] = cols[j][i];
    return CMatrix(n, k, std::move(e));
}

CVector apply(const CMatrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw DimensionMismatch("apply: matrix " + m.shape() + " and vector of length " +
                                std::to_string(v.size()));
    }
    CVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) throw DimensionMismatch("inner: vector lengths differ");
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm2(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

CVector kron(std::span<const Complex> u, std::span<const Complex> v) {
    CVector out;
    out.reserve(u.size() * v.size());
    for (const auto& a : u)
        for (const auto& b : v) out.push_back(a * b);
    return out;
}

EigenDecomposition hermitian_eigen(const CMatrix& m, double tol) {
    require_square(m, "hermitian_eigen");
    const std::size_t n = m.rows();
    const double norm = frobenius_norm(m);
    const double asym = frobenius_norm(m - dagger(m));
    if (asym > tol * norm) throw NotHermitian(asym, norm);

    // Working copies: a is overwritten by V^dagger a V, v accumulates V.
    std::vector<Complex> a(m.entries().begin(), m.entries().end());
    std::vector<Complex> v(n * n);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto A = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
    auto V = [&](std::size_t i, std::size_t j) -> Complex& { return v[i * n + j]; };

    // Symmetrize exactly so the diagonal is real from the start.
    for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = A(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (A(i, j) + std::conj(A(j, i)));
            A(i, j) = avg;
            A(j, i) = std::conj(avg);
        }
    }

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(A(i, j));
        return std::sqrt(s);
    };

    const double target = 1e-14 * norm;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_mass() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = A(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = apq / mag;  // e^{i phi}

                // Real Jacobi rotation on the phase-stripped 2x2 block
                // [[app, mag], [mag, aqq]].
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Rotation G on (p,q): G_pp = c, G_pq = s, G_qp = -s conj(phase),
                // G_qq = c conj(phase).
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                // a <- a G (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = A(k, p);
                    const Complex akq = A(k, q);
                    A(k, p) = akp * gpp + akq * gqp;
                    A(k, q) = akp * gpq + akq * gqq;
                }
                // a <- G^dagger a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = A(p, k);
                    const Complex aqk = A(q, k);
                    A(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    A(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = V(k, p);
                    const Complex vkq = V(k, q);
                    V(k, p) = vkp * gpp + vkq * gqp;
                    V(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    if (off_mass() > target) {
        throw ConvergenceError("hermitian_eigen: no convergence after " +
                               std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return A(i, i).real() < A(j, j).real();
    });

    EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
    std::vector<Complex> vecs(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = A(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) vecs[r * n + c] = V(r, order[c]);
    }
    out.vectors = CMatrix(n, n, std::move(vecs));
    return out;
}

}  // namespace bell3
