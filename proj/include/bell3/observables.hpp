#pragma once

// Three-outcome observables: unitary matrices with M^3 = I and M^2 = M^dagger.

#include <cstdint>
#include <string>

#include "bell3/cmatrix.hpp"

namespace bell3 {

/// omega = exp(2 pi i / 3).
Complex omega();
/// Z = diag(1, omega, omega^2).
CMatrix clock_matrix();
/// X = sum_i |i><i+1| (mod 3), so X|0> = |2>.
CMatrix shift();

struct Order3Report {
    double cube_residual;           // ||M^3 - I||_F
    double unitarity_residual;      // ||M^dagger M - I||_F
    double square_dagger_residual;  // ||M^2 - M^dagger||_F
    double tol;
    bool pass;
};

Order3Report check_order3(const CMatrix& m, double tol);

class NotAnObservable : public std::domain_error {
public:
    explicit NotAnObservable(const Order3Report& report);
    const Order3Report& report() const noexcept { return report_; }

private:
    Order3Report report_;
};

/// Square matrix of dimension 3n passing check_order3 at 1e-10.
class Observable {
public:
    static constexpr double kTolerance = 1e-10;

    /// Throws NotAnObservable (or DimensionMismatch) if the invariants fail.
    explicit Observable(CMatrix matrix);

    const CMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

private:
    CMatrix matrix_;
};

Observable clock();

/// Unit-modulus complex parameter kappa = exp(2i(theta_alpha - theta_beta)).
class Kappa {
public:
    /// Throws std::domain_error if ||value| - 1| > 1e-12.
    explicit Kappa(Complex value);
    static Kappa from_angle(double radians);

    Complex value() const noexcept { return value_; }
    /// kappa^2 + 2/kappa
    Complex diagonal_coefficient() const;
    /// kappa^2 - 1/kappa; vanishes exactly when kappa^3 = 1.
    Complex incompatibility_coefficient() const;
    /// |kappa^2 - 1/kappa| < 1e-8.
    bool is_degenerate() const;

private:
    Complex value_;
};

struct T3Observable {
    Observable observable;
    /// kappa^3 = 1: T_3 collapses to kappa^2 Z and commutes with Z.
    bool degenerate;
    std::string note;
};

/// T_3(kappa) = [(k^2 + 2/k) Z + (k^2 - 1/k) ZX + (k^2 - 1/k) ZX^2] / 3.
T3Observable t3(const Kappa& kappa);

/// Coefficients of B_1 = aZ + bZ^2 + X(c + dZ + eZ^2) + X^2(f + gZ + hZ^2).
struct B1Coefficients {
    Complex a, b, c, d, e, f, g, h;
};

CMatrix b1_general(const B1Coefficients& k);

/// U D U^dagger with D holding 1, omega, omega^2 each dim/3 times and U a
/// seeded random unitary. dim must be 3, 6 or 9.
Observable random_order3(std::size_t dim, std::uint64_t seed);

}  // namespace bell3
