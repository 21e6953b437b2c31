#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bell3/belloperator.hpp"
#include "bell3/bellparams.hpp"
#include "bell3/observables.hpp"

namespace bell3 {

/// The realization that reaches the quantum bound 4:
///   state = (|00> + |11> + |22>)/sqrt(3),
///   B0 = Z, B1 = T_3(kappa),
///   A0 = conj(alpha Z + beta T_3), A1 = conj(gamma Z + delta T_3),
/// with conj taken entrywise in the computational basis (the basis in which
/// Z is diagonal and the state is written).
struct CanonicalRealization {
    Realization realization;
    Kappa kappa;
};

class ConstraintFailure : public ConstraintError {
public:
    explicit ConstraintFailure(ConstraintReport report);
    const ConstraintReport& report() const noexcept { return report_; }

private:
    ConstraintReport report_;
};

/// Throws ConstraintFailure when check_constraints() fails (including the
/// incompatibility condition kappa^2 != 1/kappa).
CanonicalRealization canonical_realization(const BellParameters& p);

/// (|00> + |11> + |22>)/sqrt(3)
CVector maximally_entangled_state();

struct NullifierResiduals {
    double l1 = 0.0;         // ||L1 psi||
    double l1_dagger = 0.0;  // ||L1^dagger psi||
    double l2 = 0.0;
    double l2_dagger = 0.0;

    double max() const;
    bool within(double tol) const { return max() <= tol; }
};

NullifierResiduals verify_nullifiers(const BellParameters& p, const Realization& r);

struct AlgebraClosure {
    std::vector<CMatrix> basis;  // linearly independent spanning set
    std::size_t dimension = 0;
};

/// Span of all words in {I, g1, g2}, grown by pairwise products of the
/// current basis until the dimension stops changing. Linear independence is
/// decided by Gram-Schmidt on the vectorized matrices with threshold 1e-9
/// times the largest norm seen. Dimension d^2 means the generators share no
/// invariant subspace. Throws ConvergenceError after 6 rounds without
/// stabilizing.
AlgebraClosure algebra_dimension(const CMatrix& g1, const CMatrix& g2);

/// Recovers the shift X from B0 = Z and B1 = aZ + bZX + bZX² using only
/// algebra operations:
///   M1 = Z^2 (B1 - a B0) / b = X + X^2,
///   M3, M4, M5 = diagonal projectors (1 + w^-k Z + w^-2k Z^2)/3,
///   M6 = M4 M1^2 M5 + M3 M1^2 M4 + M5 M1^2 M3 = X.
/// a = (k^2 + 2/k)/3 and b = (k^2 - 1/k)/3 are read from kappa.
/// Throws ConstraintError when |b| < 1e-8 and DimensionMismatch /
/// std::invalid_argument when b0 is not Z.
CMatrix recover_shift(const CMatrix& b0, const CMatrix& b1, const Kappa& kappa);
CMatrix recover_shift(const CMatrix& b0, const CMatrix& b1, const BellParameters& p);

struct CertificationThresholds {
    double nullifier = 1e-9;
    double bell_value = 1e-9;
    double spectral_max = 1e-8;
    double shift_recovery = 1e-9;
};

struct CertificationReport {
    double theta_beta = 0.0;
    BellParameters parameters;
    ConstraintReport constraints;
    NullifierResiduals nullifiers;
    double bell_value = 0.0;
    double spectral_max = 0.0;
    std::size_t algebra_dimension_b = 0;  // A(Z, T_3)
    std::size_t algebra_dimension_a = 0;  // A(conj C0, conj C1)
    double shift_recovery_residual = 0.0;
    CertificationThresholds thresholds;
    bool verdict = false;
};

/// A failure inside certify(), labelled with the pipeline stage.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what);
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// family_point -> check_constraints -> canonical_realization ->
/// verify_nullifiers -> bell_value / spectral_max -> algebra_dimension on
/// both pairs -> recover_shift.
CertificationReport certify(double theta_beta, const CertificationThresholds& thresholds = {});

}  // namespace bell3
