#include "bell3/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bell3 {

ConstraintFailure::ConstraintFailure(ConstraintReport report)
    : ConstraintError("constraints not satisfied: " + report.summary()), report_(std::move(report)) {}

CVector maximally_entangled_state() {
    CVector psi(9);
    const double amp = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 3; ++i) psi[i * 3 + i] = amp;
    return psi;
}

CanonicalRealization canonical_realization(const BellParameters& p) {
    ConstraintReport report = check_constraints(p);
    if (!report.all_satisfied()) throw ConstraintFailure(std::move(report));

    const Kappa k = kappa(p);
    const T3Observable t = t3(k);
    const CMatrix z = clock_matrix();
    const CMatrix& t3m = t.observable.matrix();
    Observable a0(conj(bob_combination_0(p, z, t3m)));
    Observable a1(conj(bob_combination_1(p, z, t3m)));
    return CanonicalRealization{
        Realization(maximally_entangled_state(), std::move(a0), std::move(a1), clock(), t.observable), k};
}

double NullifierResiduals::max() const { return std::max({l1, l1_dagger, l2, l2_dagger}); }

NullifierResiduals verify_nullifiers(const BellParameters& p, const Realization& r) {
    const Nullifiers l = nullifiers(p, r);
    const CVector& psi = r.state();
    return {norm2(bell3::apply(l.l1, psi)), norm2(bell3::apply(dagger(l.l1), psi)), norm2(bell3::apply(l.l2, psi)),
            norm2(bell3::apply(dagger(l.l2), psi))};
}

AlgebraClosure algebra_dimension(const CMatrix& g1, const CMatrix& g2) {
    if (!g1.is_square() || g1.rows() != g2.rows() || g1.cols() != g2.cols()) {
        throw DimensionMismatch("algebra_dimension: generators " + g1.shape() + " and " + g2.shape() +
                                " must be square of equal size");
    }
    const std::size_t d = g1.rows();
    const std::size_t full = d * d;

    AlgebraClosure out;
    std::vector<CVector> orthonormal;  // Gram-Schmidt image of out.basis
    double max_norm = 0.0;

    auto try_add = [&](const CMatrix& m) {
        if (out.basis.size() == full) return false;
        CVector v(m.entries().begin(), m.entries().end());
        max_norm = std::max(max_norm, norm2(v));
        // Two passes of classical Gram-Schmidt for stability.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : orthonormal) {
                const Complex c = inner(q, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
            }
        }
        const double r = norm2(v);
        if (r <= 1e-9 * max_norm) return false;
        for (auto& z : v) z /= r;
        orthonormal.push_back(std::move(v));
        out.basis.push_back(m);
        return true;
    };

    try_add(CMatrix::identity(d));
    try_add(g1);
    try_add(g2);

    constexpr int kMaxRounds = 6;
    bool stable = false;
    for (int round = 0; round < kMaxRounds && !stable; ++round) {
        const std::vector<CMatrix> current = out.basis;
        bool grew = false;
        for (const auto& x : current)
            for (const auto& y : current) grew = try_add(x * y) || grew;
        stable = !grew || out.basis.size() == full;
    }
    if (!stable) {
        throw ConvergenceError("algebra_dimension: closure did not stabilize within " +
                               std::to_string(kMaxRounds) + " rounds");
    }
    out.dimension = out.basis.size();
    return out;
}

CMatrix recover_shift(const CMatrix& b0, const CMatrix& b1, const Kappa& kappa) {
    const CMatrix z = clock_matrix();
    if (b0.rows() != 3 || b0.cols() != 3 || b1.rows() != 3 || b1.cols() != 3) {
        throw DimensionMismatch("recover_shift: expects 3x3 generators, got " + b0.shape() + " and " +
                                b1.shape());
    }
    if (frobenius_norm(b0 - z) > 1e-12) {
        throw std::invalid_argument("recover_shift: B0 must be the clock matrix Z");
    }
    const Complex a = kappa.diagonal_coefficient() / 3.0;
    const Complex b = kappa.incompatibility_coefficient() / 3.0;
    if (std::abs(b) < 1e-8) {
        std::ostringstream os;
        os << "recover_shift: kappa^2 - 1/kappa = " << 3.0 * b
           << " vanishes, so B1 carries no off-diagonal part to recover X from";
        throw ConstraintError(os.str());
    }

    const Complex w = omega();
    const CMatrix id = CMatrix::identity(3);
    const CMatrix m1 = (1.0 / b) * (b0 * b0 * (b1 - a * b0));
    const CMatrix m2 = b0 * b0;
    auto projector = [&](Complex phase) { return (1.0 / 3.0) * (id + phase * b0 + (phase * phase) * m2); };
    const CMatrix m3 = projector(1.0);          // diag(1, 0, 0)
    const CMatrix m4 = projector(1.0 / w);      // diag(0, 1, 0)
    const CMatrix m5 = projector(1.0 / (w * w));  // diag(0, 0, 1)
    const CMatrix sq = m1 * m1;
    return m4 * sq * m5 + m3 * sq * m4 + m5 * sq * m3;
}

CMatrix recover_shift(const CMatrix& b0, const CMatrix& b1, const BellParameters& p) {
    return recover_shift(b0, b1, kappa(p));
}

StageError::StageError(std::string stage, const std::string& what)
    : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}

CertificationReport certify(double theta_beta, const CertificationThresholds& thresholds) {
    auto stage = [](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
    };

    CertificationReport report;
    report.theta_beta = theta_beta;
    report.thresholds = thresholds;
    report.parameters = stage("family", [&] { return family_point(theta_beta); });
    const BellParameters& p = report.parameters;
    report.constraints = stage("constraints", [&] { return check_constraints(p); });
    if (!report.constraints.all_satisfied()) {
        throw StageError("constraints", "constraints not satisfied: " + report.constraints.summary());
    }
    const CanonicalRealization canon = stage("realization", [&] { return canonical_realization(p); });
    const Realization& r = canon.realization;

    report.nullifiers = stage("nullifiers", [&] { return verify_nullifiers(p, r); });
    report.bell_value = stage("bell_value", [&] { return bell_value(p, r); });
    report.spectral_max = stage("spectral_max", [&] { return spectral_max(build_w(p, r)); });
    report.algebra_dimension_b = stage("incompatibility", [&] {
        return algebra_dimension(r.b0().matrix(), r.b1().matrix()).dimension;
    });
    report.algebra_dimension_a = stage("incompatibility", [&] {
        return algebra_dimension(r.a0().matrix(), r.a1().matrix()).dimension;
    });
    report.shift_recovery_residual = stage("shift_recovery", [&] {
        return frobenius_norm(recover_shift(r.b0().matrix(), r.b1().matrix(), canon.kappa) - shift());
    });

    report.verdict = report.constraints.all_satisfied() &&
                     report.nullifiers.within(thresholds.nullifier) &&
                     std::abs(report.bell_value - 4.0) <= thresholds.bell_value &&
                     std::abs(report.spectral_max - 4.0) <= thresholds.spectral_max &&
                     report.algebra_dimension_b == 9 && report.algebra_dimension_a == 9 &&
                     report.shift_recovery_residual <= thresholds.shift_recovery;
    return report;
}

}  // namespace bell3
