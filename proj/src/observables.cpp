#include "bell3/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bell3/rng.hpp"

namespace bell3 {

Complex omega() {
    return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
}

CMatrix clock_matrix() {
    const Complex w = omega();
    const std::vector<Complex> d{1.0, w, w * w};
    return CMatrix::diagonal(d);
}

CMatrix shift() {
    std::vector<Complex> e(9);
    for (std::size_t i = 0; i < 3; ++i) e[i * 3 + (i + 1) % 3] = 1.0;
    return CMatrix(3, 3, std::move(e));
}

Order3Report check_order3(const CMatrix& m, double tol) {
    if (!m.is_square()) throw DimensionMismatch("check_order3: matrix " + m.shape() + " is not square");
    const CMatrix id = CMatrix::identity(m.rows());
    const CMatrix md = dagger(m);
    const CMatrix m2 = m * m;
    Order3Report r{};
    r.cube_residual = frobenius_norm(m2 * m - id);
    r.unitarity_residual = frobenius_norm(md * m - id);
    r.square_dagger_residual = frobenius_norm(m2 - md);
    r.tol = tol;
    r.pass = r.cube_residual <= tol && r.unitarity_residual <= tol && r.square_dagger_residual <= tol;
    return r;
}

NotAnObservable::NotAnObservable(const Order3Report& report)
    : std::domain_error([&] {
          std::ostringstream os;
          os << "not an order-3 observable: ||M^3-I|| = " << report.cube_residual
             << ", ||M^dagger M - I|| = " << report.unitarity_residual
             << ", ||M^2 - M^dagger|| = " << report.square_dagger_residual;
          return os.str();
      }()),
      report_(report) {}

Observable::Observable(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() % 3 != 0) {
        throw DimensionMismatch("Observable: dimension must be a multiple of 3, got " + matrix_.shape());
    }
    const Order3Report r = check_order3(matrix_, kTolerance);
    if (!r.pass) throw NotAnObservable(r);
}

Observable clock() { return Observable(clock_matrix()); }

Kappa::Kappa(Complex value) : value_(value) {
    if (std::abs(std::abs(value) - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "kappa must have unit modulus, |kappa| = " << std::abs(value);
        throw std::domain_error(os.str());
    }
}

Kappa Kappa::from_angle(double radians) { return Kappa(std::polar(1.0, radians)); }

Complex Kappa::diagonal_coefficient() const { return value_ * value_ + 2.0 / value_; }

Complex Kappa::incompatibility_coefficient() const { return value_ * value_ - 1.0 / value_; }

bool Kappa::is_degenerate() const { return std::abs(incompatibility_coefficient()) < 1e-8; }

T3Observable t3(const Kappa& kappa) {
    const CMatrix z = clock_matrix();
    const CMatrix x = shift();
    const CMatrix zx = z * x;
    const CMatrix zx2 = zx * x;
    const Complex p = kappa.diagonal_coefficient() / 3.0;
    const Complex q = kappa.incompatibility_coefficient() / 3.0;
    CMatrix m = p * z + q * zx + q * zx2;

    const bool degenerate = kappa.is_degenerate();
    std::string note;
    if (degenerate) {
        note = "degenerate: kappa^3 = 1 makes (kappa^2 - 1/kappa) vanish, so T_3 commutes with Z "
               "and the pair is not genuinely incompatible";
    }
    return T3Observable{Observable(std::move(m)), degenerate, std::move(note)};
}

CMatrix b1_general(const B1Coefficients& k) {
    const CMatrix id = CMatrix::identity(3);
    const CMatrix z = clock_matrix();
    const CMatrix z2 = z * z;
    const CMatrix x = shift();
    const CMatrix x2 = x * x;
    return k.a * z + k.b * z2 + x * (k.c * id + k.d * z + k.e * z2) +
           x2 * (k.f * id + k.g * z + k.h * z2);
}

Observable random_order3(std::size_t dim, std::uint64_t seed) {
    if (dim != 3 && dim != 6 && dim != 9) {
        throw std::invalid_argument("random_order3: dim must be 3, 6 or 9, got " + std::to_string(dim));
    }
    XorShift64Star rng(seed);
    const CMatrix u = random_unitary(dim, rng);
    const Complex w = omega();
    const Complex spectrum[3] = {1.0, w, w * w};
    std::vector<Complex> d(dim);
    const std::size_t block = dim / 3;
    for (std::size_t i = 0; i < dim; ++i) d[i] = spectrum[i / block];
    return Observable(u * CMatrix::diagonal(d) * dagger(u));
}

}  // namespace bell3
