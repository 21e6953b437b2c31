#pragma once

#include <array>
#include <string>
#include <vector>

#include "bell3/cmatrix.hpp"
#include "bell3/observables.hpp"

namespace bell3 {

/// Bell coefficients alpha, beta, gamma, delta in signed polar form:
/// alpha = r_alpha * exp(i theta_alpha), etc. Amplitudes may be negative
/// until normalize() folds the sign into the angle.
struct BellParameters {
    double theta_alpha = 0.0;
    double theta_beta = 0.0;
    double theta_gamma = 0.0;
    double theta_delta = 0.0;
    double r_alpha = 0.0;
    double r_beta = 0.0;
    double r_gamma = 0.0;
    double r_delta = 0.0;

    /// Polar form with non-negative amplitudes read off the complex values.
    static BellParameters from_complex(Complex alpha, Complex beta, Complex gamma, Complex delta);

    Complex alpha() const { return std::polar(1.0, theta_alpha) * r_alpha; }
    Complex beta() const { return std::polar(1.0, theta_beta) * r_beta; }
    Complex gamma() const { return std::polar(1.0, theta_gamma) * r_gamma; }
    Complex delta() const { return std::polar(1.0, theta_delta) * r_delta; }

    /// |alpha|^2 + |beta|^2 + |gamma|^2 + |delta|^2
    double sum_of_squares() const;
};

class ConstraintError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Amplitudes solving alpha^2/alpha* + beta^2/beta* = 1 (and the gamma/delta
/// analogue) for the given phases:
///   r_alpha = -sin 3theta_beta / sin 3(theta_alpha - theta_beta)
///   r_beta  =  sin 3theta_alpha / sin 3(theta_alpha - theta_beta)
/// and likewise for gamma, delta. Signs are kept as computed.
/// Throws ConstraintError (c2) when a denominator vanishes.
BellParameters amplitudes_from_angles(double theta_alpha, double theta_beta, double theta_gamma,
                                      double theta_delta);

/// Replaces each negative amplitude r by |r| and shifts its angle by +pi,
/// which leaves every complex coefficient unchanged. Idempotent.
BellParameters normalize(const BellParameters& p);

/// kappa = exp(2i(theta_alpha - theta_beta)); requires c1, i.e. the same value
/// from (theta_gamma - theta_delta), to 1e-10.
Kappa kappa(const BellParameters& p);

struct ConstraintEntry {
    std::string label;        // "c1" ... "c5", "incompatibility"
    std::string description;
    /// Equality constraints: residual, satisfied when <= threshold.
    /// Exclusion constraints (c2, incompatibility): distance from the
    /// forbidden set, satisfied when > threshold.
    double value;
    double threshold;
    bool satisfied;
};

struct ConstraintReport {
    std::vector<ConstraintEntry> entries;

    bool all_satisfied() const;
    const ConstraintEntry& at(const std::string& label) const;
    std::string summary() const;
};

inline constexpr double kEqualityThreshold = 1e-10;
inline constexpr double kExclusionThreshold = 1e-8;

ConstraintReport check_constraints(const BellParameters& p);

/// Real and imaginary parts of alpha^2/alpha* + beta^2/beta* - 1 and of the
/// gamma/delta analogue, in that order.
std::array<double, 4> c4_components(const BellParameters& p);

/// Parameter family with theta_alpha = theta_beta + pi/6,
/// theta_delta = theta_beta + pi/6, theta_gamma = theta_delta + pi/6,
/// amplitudes from amplitudes_from_angles(), then normalized.
/// theta_beta must lie in the open interval (0, pi/6).
BellParameters family_point(double theta_beta);

}  // namespace bell3
