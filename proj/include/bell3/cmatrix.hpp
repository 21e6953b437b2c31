#pragma once

// Dense complex matrices for the small (<= ~36x36) operators used throughout
// the toolkit. Values are immutable once built; every operation returns a new
// matrix.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bell3 {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Default comparison tolerances (absolute + relative).
inline constexpr double kAbsTol = 1e-12;
inline constexpr double kRelTol = 1e-10;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::domain_error {
public:
    NotHermitian(double asymmetry, double norm);
    double asymmetry() const noexcept { return asymmetry_; }

private:
    double asymmetry_;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CMatrix {
public:
    /// rows x cols zero matrix.
    CMatrix(std::size_t rows, std::size_t cols);
    /// Row-major entries; throws if the length is wrong or any entry is not finite.
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const Complex> entries() const noexcept { return data_; }

    std::string shape() const;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& m);
/// Entrywise complex conjugate in the computational basis.
CMatrix conj(const CMatrix& m);
CMatrix transpose(const CMatrix& m);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix sub(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& m, Complex s);

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }
inline CMatrix operator+(const CMatrix& a, const CMatrix& b) { return add(a, b); }
inline CMatrix operator-(const CMatrix& a, const CMatrix& b) { return sub(a, b); }
inline CMatrix operator*(Complex s, const CMatrix& m) { return scale(m, s); }
inline CMatrix operator*(double s, const CMatrix& m) { return scale(m, Complex{s, 0.0}); }

double frobenius_norm(const CMatrix& m);
Complex trace(const CMatrix& m);
/// ||m^dagger m - I||_F <= tol.
bool is_unitary(const CMatrix& m, double tol);
/// ||m - m^dagger||_F <= tol * max(||m||_F, 1).
bool is_hermitian(const CMatrix& m, double tol);
/// m^k for k >= 0; m must be square.
CMatrix mat_power(const CMatrix& m, unsigned k);

/// |a - b| <= atol + rtol * max(|a|, |b|) entrywise.
bool approx_equal(const CMatrix& a, const CMatrix& b, double atol = kAbsTol, double rtol = kRelTol);

/// Modified Gram-Schmidt on the columns, left to right. Throws if a column
/// is numerically dependent on the previous ones.
CMatrix orthonormalize_columns(const CMatrix& m);

// Vectors.
CVector apply(const CMatrix& m, std::span<const Complex> v);
Complex inner(std::span<const Complex> u, std::span<const Complex> v);  // <u|v>
double norm2(std::span<const Complex> v);
CVector kron(std::span<const Complex> u, std::span<const Complex> v);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column i pairs with values[i]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Iterates
/// until the off-diagonal Frobenius mass is <= 1e-14 * ||m||_F.
/// Throws NotHermitian if ||m - m^dagger||_F > tol * ||m||_F.
EigenDecomposition hermitian_eigen(const CMatrix& m, double tol = kAbsTol);

}  // namespace bell3
