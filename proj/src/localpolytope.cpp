#include "bell3/localpolytope.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bell3/belloperator.hpp"

namespace bell3 {

namespace {

constexpr double kPi = std::numbers::pi;

Complex omega_power(int k) {
    const Complex w = omega();
    const Complex powers[3] = {1.0, w, w * w};
    return powers[((k % 3) + 3) % 3];
}

double vertex_denominator(double t1, double t2) {
    const double d = std::sin(3.0 * (t1 - t2));
    if (std::abs(d) < 1e-14) {
        throw ConstraintError("vertex_value: sin 3(phase difference) vanishes (c2 violated)");
    }
    return d;
}

}  // namespace

double deterministic_value(const DeterministicStrategy& s, const BellParameters& p) {
    const Complex wb0 = omega_power(s.b0);
    const Complex wb1 = omega_power(s.b1);
    const Complex z = omega_power(s.a0) * (p.alpha() * wb0 + p.beta() * wb1) +
                      omega_power(s.a1) * (p.gamma() * wb0 + p.delta() * wb1);
    return 2.0 * z.real();
}

ClassicalOptimum enumerate_classical(const BellParameters& p) {
    ClassicalOptimum best{-std::numeric_limits<double>::infinity(), {}};
    for (int a0 = 0; a0 < 3; ++a0)
        for (int a1 = 0; a1 < 3; ++a1)
            for (int b0 = 0; b0 < 3; ++b0)
                for (int b1 = 0; b1 < 3; ++b1) {
                    const DeterministicStrategy s{a0, a1, b0, b1};
                    const double v = deterministic_value(s, p);
                    if (v > best.value + 1e-12) best = {v, s};
                }
    return best;
}

double vertex_value(const BellParameters& p, const VertexAssignment& v) {
    const double ta = p.theta_alpha, tb = p.theta_beta, tg = p.theta_gamma, td = p.theta_delta;
    const double d_ab = vertex_denominator(ta, tb);
    const double d_gd = vertex_denominator(tg, td);
    const double step = 2.0 * kPi / 3.0;
    return -2.0 * std::sin(3.0 * tb) * std::cos(ta + v.s_alpha * step) / d_ab +
           2.0 * std::sin(3.0 * ta) * std::cos(tb + v.s_beta * step) / d_ab -
           2.0 * std::sin(3.0 * td) * std::cos(tg + v.s_gamma * step) / d_gd +
           2.0 * std::sin(3.0 * tg) * std::cos(td + v.s_delta * step) / d_gd;
}

bool is_realizable(const VertexAssignment& v) {
    return ((v.s_alpha - v.s_beta - v.s_gamma + v.s_delta) % 3 + 3) % 3 == 0;
}

double max_vertex_value(const BellParameters& p) {
    double best = -std::numeric_limits<double>::infinity();
    for (int sa : {0, 1, -1})
        for (int sb : {0, 1, -1})
            for (int sg : {0, 1, -1})
                for (int sd : {0, 1, -1}) {
                    const VertexAssignment v{sa, sb, sg, sd};
                    if (is_realizable(v)) best = std::max(best, vertex_value(p, v));
                }
    return best;
}

double classical_formula(double theta_beta) {
    if (!(theta_beta > 0.0 && theta_beta < kPi / 6.0)) {
        std::ostringstream os;
        os.precision(15);
        os << "classical_formula: theta_beta = " << theta_beta << " outside (0, pi/6)";
        throw std::domain_error(os.str());
    }
    const double t = theta_beta;
    if (t <= kPi / 12.0) return 3.0 * std::cos(2.0 * t) + std::cos(4.0 * t);
    return 3.0 * std::sin(2.0 * t + kPi / 6.0) + std::sin(4.0 * t - kPi / 6.0);
}

std::vector<SweepRecord> sweep(double theta_from, double theta_to, int steps) {
    if (steps < 2) throw std::invalid_argument("sweep: steps must be at least 2");
    if (!(theta_from > 0.0 && theta_to < kPi / 6.0 && theta_from < theta_to)) {
        std::ostringstream os;
        os.precision(15);
        os << "sweep: range [" << theta_from << ", " << theta_to
           << "] must be increasing and strictly inside (0, pi/6)";
        throw std::domain_error(os.str());
    }
    std::vector<SweepRecord> records;
    records.reserve(static_cast<std::size_t>(steps));
    const double h = (theta_to - theta_from) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        const double t = i + 1 == steps ? theta_to : theta_from + i * h;
        const BellParameters p = family_point(t);
        records.push_back({t, enumerate_classical(p).value, classical_formula(t), tsirelson_bound(p),
                           check_constraints(p).all_satisfied()});
    }
    return records;
}

}  // namespace bell3
