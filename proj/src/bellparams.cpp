#include "bell3/bellparams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bell3 {

namespace {

constexpr double kPi = std::numbers::pi;

/// Distance from x to the nearest integer multiple of step.
double lattice_distance(double x, double step) {
    const double k = std::round(x / step);
    return std::abs(x - k * step);
}

double amplitude_denominator(double theta_1, double theta_2, const char* pair) {
    const double d = std::sin(3.0 * (theta_1 - theta_2));
    if (std::abs(d) < 1e-14) {
        std::ostringstream os;
        os << "c2 violated: sin 3(theta_" << pair << ") = " << d
           << " vanishes (phase difference on the n*pi/3 lattice)";
        throw ConstraintError(os.str());
    }
    return d;
}

/// z^2 / z*, which equals r e^{3 i theta} for z = r e^{i theta}.
Complex cubic_ratio(double r, double theta) { return std::polar(1.0, 3.0 * theta) * r; }

}  // namespace

BellParameters BellParameters::from_complex(Complex alpha, Complex beta, Complex gamma, Complex delta) {
    BellParameters p;
    p.r_alpha = std::abs(alpha);
    p.r_beta = std::abs(beta);
    p.r_gamma = std::abs(gamma);
    p.r_delta = std::abs(delta);
    p.theta_alpha = std::arg(alpha);
    p.theta_beta = std::arg(beta);
    p.theta_gamma = std::arg(gamma);
    p.theta_delta = std::arg(delta);
    return p;
}

double BellParameters::sum_of_squares() const {
    return r_alpha * r_alpha + r_beta * r_beta + r_gamma * r_gamma + r_delta * r_delta;
}

BellParameters amplitudes_from_angles(double theta_alpha, double theta_beta, double theta_gamma,
                                      double theta_delta) {
    const double d_ab = amplitude_denominator(theta_alpha, theta_beta, "alpha - theta_beta");
    const double d_gd = amplitude_denominator(theta_gamma, theta_delta, "gamma - theta_delta");
    BellParameters p;
    p.theta_alpha = theta_alpha;
    p.theta_beta = theta_beta;
    p.theta_gamma = theta_gamma;
    p.theta_delta = theta_delta;
    p.r_alpha = -std::sin(3.0 * theta_beta) / d_ab;
    p.r_beta = std::sin(3.0 * theta_alpha) / d_ab;
    p.r_gamma = -std::sin(3.0 * theta_delta) / d_gd;
    p.r_delta = std::sin(3.0 * theta_gamma) / d_gd;
    return p;
}

BellParameters normalize(const BellParameters& p) {
    BellParameters out = p;
    auto fold = [](double& r, double& theta) {
        if (r < 0.0) {
            r = -r;
            theta += kPi;
        }
    };
    fold(out.r_alpha, out.theta_alpha);
    fold(out.r_beta, out.theta_beta);
    fold(out.r_gamma, out.theta_gamma);
    fold(out.r_delta, out.theta_delta);
    return out;
}

Kappa kappa(const BellParameters& p) {
    const Complex from_ab = std::polar(1.0, 2.0 * (p.theta_alpha - p.theta_beta));
    const Complex from_gd = std::polar(1.0, 2.0 * (p.theta_gamma - p.theta_delta));
    if (std::abs(from_ab - from_gd) > 1e-10) {
        std::ostringstream os;
        os.precision(15);
        os << "c1 violated: kappa from (alpha, beta) = " << from_ab << " but from (gamma, delta) = "
           << from_gd;
        throw ConstraintError(os.str());
    }
    return Kappa(from_ab);
}

std::array<double, 4> c4_components(const BellParameters& p) {
    const Complex ab = cubic_ratio(p.r_alpha, p.theta_alpha) + cubic_ratio(p.r_beta, p.theta_beta) - 1.0;
    const Complex gd = cubic_ratio(p.r_gamma, p.theta_gamma) + cubic_ratio(p.r_delta, p.theta_delta) - 1.0;
    return {ab.real(), ab.imag(), gd.real(), gd.imag()};
}

bool ConstraintReport::all_satisfied() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.satisfied; });
}

const ConstraintEntry& ConstraintReport::at(const std::string& label) const {
    for (const auto& e : entries)
        if (e.label == label) return e;
    throw std::out_of_range("ConstraintReport: no entry " + label);
}

std::string ConstraintReport::summary() const {
    std::ostringstream os;
    os.precision(6);
    for (const auto& e : entries) {
        os << e.label << (e.satisfied ? " ok" : " FAIL") << " (" << e.value << ")";
        if (&e != &entries.back()) os << ", ";
    }
    return os.str();
}

ConstraintReport check_constraints(const BellParameters& p) {
    ConstraintReport report;
    auto equality = [&](std::string label, std::string description, double residual) {
        report.entries.push_back({std::move(label), std::move(description), residual,
                                  kEqualityThreshold, residual <= kEqualityThreshold});
    };
    auto exclusion = [&](std::string label, std::string description, double margin) {
        report.entries.push_back({std::move(label), std::move(description), margin,
                                  kExclusionThreshold, margin > kExclusionThreshold});
    };

    const double diff_ab = p.theta_alpha - p.theta_beta;
    const double diff_gd = p.theta_gamma - p.theta_delta;
    equality("c1", "theta_alpha - theta_beta = theta_gamma - theta_delta + n pi",
             lattice_distance(diff_ab - diff_gd, kPi));

    double c2_margin = std::min(lattice_distance(diff_ab, kPi / 3.0), lattice_distance(diff_gd, kPi / 3.0));
    for (double theta : {p.theta_alpha, p.theta_beta, p.theta_gamma, p.theta_delta}) {
        c2_margin = std::min(c2_margin, lattice_distance(theta, kPi / 3.0));
    }
    exclusion("c2", "phases and phase differences off the n pi/3 lattice", c2_margin);

    equality("c3", "|alpha|^2 + |beta|^2 + |gamma|^2 + |delta|^2 = 2",
             std::abs(p.sum_of_squares() - 2.0));

    const auto c4 = c4_components(p);
    equality("c4", "alpha^2/alpha* + beta^2/beta* = gamma^2/gamma* + delta^2/delta* = 1",
             std::max(std::hypot(c4[0], c4[1]), std::hypot(c4[2], c4[3])));

    const Complex c5 = p.alpha() * std::conj(p.beta()) + p.gamma() * std::conj(p.delta());
    equality("c5", "alpha beta* + gamma delta* = 0", std::abs(c5));

    const Complex k = std::polar(1.0, 2.0 * diff_ab);
    exclusion("incompatibility", "kappa^2 - 1/kappa != 0", std::abs(k * k - 1.0 / k));
    return report;
}

BellParameters family_point(double theta_beta) {
    if (!(theta_beta > 0.0 && theta_beta < kPi / 6.0)) {
        std::ostringstream os;
        os.precision(15);
        os << "family_point: theta_beta = " << theta_beta
           << " outside the open interval (0, pi/6); the endpoints are excluded by c2";
        throw std::domain_error(os.str());
    }
    const double theta_alpha = theta_beta + kPi / 6.0;
    const double theta_delta = theta_beta + kPi / 6.0;
    const double theta_gamma = theta_delta + kPi / 6.0;
    return normalize(amplitudes_from_angles(theta_alpha, theta_beta, theta_gamma, theta_delta));
}

}  // namespace bell3
