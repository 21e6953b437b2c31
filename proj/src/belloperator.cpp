#include "bell3/belloperator.hpp"

#include <cmath>
#include <sstream>

namespace bell3 {

Realization::Realization(CVector state, Observable a0, Observable a1, Observable b0, Observable b1)
    : state_(std::move(state)),
      a0_(std::move(a0)),
      a1_(std::move(a1)),
      b0_(std::move(b0)),
      b1_(std::move(b1)) {
    if (a0_.dim() != a1_.dim()) {
        throw DimensionMismatch("Realization: Alice's observables have dimensions " +
                                std::to_string(a0_.dim()) + " and " + std::to_string(a1_.dim()));
    }
    if (b0_.dim() != b1_.dim()) {
        throw DimensionMismatch("Realization: Bob's observables have dimensions " +
                                std::to_string(b0_.dim()) + " and " + std::to_string(b1_.dim()));
    }
    if (state_.size() != a0_.dim() * b0_.dim()) {
        throw DimensionMismatch("Realization: state length " + std::to_string(state_.size()) +
                                " does not match " + std::to_string(a0_.dim()) + " x " +
                                std::to_string(b0_.dim()));
    }
    const double n = norm2(state_);
    if (std::abs(n - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "Realization: state norm " << n << " is not 1";
        throw std::domain_error(os.str());
    }
}

BellOperatorMatrix::BellOperatorMatrix(CMatrix w) : w_(std::move(w)) {
    if (!w_.is_square()) throw DimensionMismatch("BellOperatorMatrix: " + w_.shape() + " not square");
    const double norm = frobenius_norm(w_);
    const double asym = frobenius_norm(w_ - dagger(w_));
    if (asym > 1e-12 * norm) throw NotHermitian(asym, norm);
}

CMatrix bob_combination_0(const BellParameters& p, const CMatrix& b0, const CMatrix& b1) {
    return p.alpha() * b0 + p.beta() * b1;
}

CMatrix bob_combination_1(const BellParameters& p, const CMatrix& b0, const CMatrix& b1) {
    return p.gamma() * b0 + p.delta() * b1;
}

namespace {

struct Terms {
    CMatrix t0;  // A0 (x) C0
    CMatrix t1;  // A1 (x) C1
};

Terms tensor_terms(const BellParameters& p, const CMatrix& a0, const CMatrix& a1, const CMatrix& b0,
                   const CMatrix& b1) {
    if (a0.rows() != a1.rows() || b0.rows() != b1.rows()) {
        throw DimensionMismatch("Bell operator: observables " + a0.shape() + "/" + a1.shape() +
                                " and " + b0.shape() + "/" + b1.shape() + " are inconsistent");
    }
    return {kron(a0, bob_combination_0(p, b0, b1)), kron(a1, bob_combination_1(p, b0, b1))};
}

Terms tensor_terms(const BellParameters& p, const Realization& r) {
    return tensor_terms(p, r.a0().matrix(), r.a1().matrix(), r.b0().matrix(), r.b1().matrix());
}

CMatrix hermitian_sum(const Terms& t) {
    const CMatrix half = t.t0 + t.t1;
    const CMatrix w = half + dagger(half);
    // Exact symmetrization; the sum above is Hermitian only up to rounding.
    return 0.5 * (w + dagger(w));
}

}  // namespace

BellOperatorMatrix build_w(const BellParameters& p, const Realization& r) {
    return BellOperatorMatrix(hermitian_sum(tensor_terms(p, r)));
}

Nullifiers nullifiers(const BellParameters& p, const Realization& r) {
    const Terms t = tensor_terms(p, r);
    const CMatrix id = CMatrix::identity(t.t0.rows());
    return {id - t.t0, id - t.t1};
}

double sos_residual(const BellParameters& p, const Realization& r) {
    return sos_residual(p, r.a0().matrix(), r.a1().matrix(), r.b0().matrix(), r.b1().matrix());
}

double sos_residual(const BellParameters& p, const CMatrix& a0, const CMatrix& a1, const CMatrix& b0,
                    const CMatrix& b1) {
    const Complex cross = p.alpha() * std::conj(p.beta()) + p.gamma() * std::conj(p.delta());
    if (std::abs(cross) > 1e-10) {
        std::ostringstream os;
        os << "sum-of-squares identity requires alpha beta* + gamma delta* = 0, got |.| = "
           << std::abs(cross);
        throw ConstraintError(os.str());
    }
    const Terms t = tensor_terms(p, a0, a1, b0, b1);
    const CMatrix w = hermitian_sum(t);
    const CMatrix id = CMatrix::identity(w.rows());
    const CMatrix l1 = id - t.t0;
    const CMatrix l2 = id - t.t1;
    const CMatrix l1d = dagger(l1);
    const CMatrix l2d = dagger(l2);
    const CMatrix squares = l1d * l1 + l1 * l1d + l2d * l2 + l2 * l2d;
    return frobenius_norm(w + 0.5 * squares - tsirelson_bound(p) * id);
}

double tsirelson_bound(const BellParameters& p) { return 2.0 + p.sum_of_squares(); }

double bell_value(const BellParameters& p, const Realization& r) {
    const CMatrix w = build_w(p, r).matrix();
    const Complex v = inner(r.state(), bell3::apply(w, r.state()));
    if (std::abs(v.imag()) > 1e-12) {
        std::ostringstream os;
        os << "bell_value: quadratic form has imaginary part " << v.imag();
        throw std::logic_error(os.str());
    }
    return v.real();
}

double spectral_max(const BellOperatorMatrix& w) {
    return hermitian_eigen(w.matrix()).values.back();
}

}  // namespace bell3
