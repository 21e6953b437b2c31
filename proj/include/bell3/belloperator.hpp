#pragma once

#include "bell3/bellparams.hpp"
#include "bell3/cmatrix.hpp"
#include "bell3/observables.hpp"

namespace bell3 {

/// A pure state on H_A (x) H_B together with Alice's (a0, a1) and Bob's
/// (b0, b1) observables.
class Realization {
public:
    /// Throws DimensionMismatch on inconsistent dimensions and
    /// std::domain_error if | ||state|| - 1 | > 1e-12.
    Realization(CVector state, Observable a0, Observable a1, Observable b0, Observable b1);

    const CVector& state() const noexcept { return state_; }
    const Observable& a0() const noexcept { return a0_; }
    const Observable& a1() const noexcept { return a1_; }
    const Observable& b0() const noexcept { return b0_; }
    const Observable& b1() const noexcept { return b1_; }
    std::size_t dim_a() const noexcept { return a0_.dim(); }
    std::size_t dim_b() const noexcept { return b0_.dim(); }

private:
    CVector state_;
    Observable a0_, a1_, b0_, b1_;
};

/// Hermitian Bell operator
///   W = A0 (x) C0 + A1 (x) C1 + h.c.,  C0 = alpha B0 + beta B1,
///                                       C1 = gamma B0 + delta B1.
class BellOperatorMatrix {
public:
    /// Throws NotHermitian if ||w - w^dagger||_F > 1e-12 ||w||_F.
    explicit BellOperatorMatrix(CMatrix w);
    const CMatrix& matrix() const noexcept { return w_; }

private:
    CMatrix w_;
};

struct Nullifiers {
    CMatrix l1;  // 1 - A0 (x) (alpha B0 + beta B1)
    CMatrix l2;  // 1 - A1 (x) (gamma B0 + delta B1)
};

/// Bob-side combinations C0 = alpha B0 + beta B1 and C1 = gamma B0 + delta B1.
CMatrix bob_combination_0(const BellParameters& p, const CMatrix& b0, const CMatrix& b1);
CMatrix bob_combination_1(const BellParameters& p, const CMatrix& b0, const CMatrix& b1);

BellOperatorMatrix build_w(const BellParameters& p, const Realization& r);
Nullifiers nullifiers(const BellParameters& p, const Realization& r);

/// ||W + (1/2) sum_i (L_i^dagger L_i + L_i L_i^dagger) - (2 + sum |.|^2) I||_F.
/// Throws ConstraintError when |alpha beta* + gamma delta*| > 1e-10, since the
/// identity only holds once the cross terms cancel.
double sos_residual(const BellParameters& p, const Realization& r);

/// Same identity check on bare matrices. The identity needs only unitary
/// A-side operators, so a0 and a1 need not be order-3 here.
double sos_residual(const BellParameters& p, const CMatrix& a0, const CMatrix& a1, const CMatrix& b0,
                    const CMatrix& b1);

/// 2 + |alpha|^2 + |beta|^2 + |gamma|^2 + |delta|^2
double tsirelson_bound(const BellParameters& p);

/// <psi|W|psi>. Throws std::logic_error if the imaginary part exceeds 1e-12.
double bell_value(const BellParameters& p, const Realization& r);

/// Largest eigenvalue of W.
double spectral_max(const BellOperatorMatrix& w);

}  // namespace bell3
