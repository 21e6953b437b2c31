#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bell3/belloperator.hpp"
#include "bell3/localpolytope.hpp"
#include "bell3/rng.hpp"
#include "bell3/selftest.hpp"

using namespace bell3;
using std::numbers::pi;

namespace {

CVector basis_state(std::size_t dim, std::size_t index) {
    CVector v(dim);
    v[index] = 1.0;
    return v;
}

Observable phase_observable(int label) {
    return Observable(scale(CMatrix::identity(3), std::pow(omega(), label)));
}

Realization with_state(const Realization& r, CVector state) {
    return Realization(std::move(state), r.a0(), r.a1(), r.b0(), r.b1());
}

Observable conjugated(const CMatrix& u, const Observable& o) { return Observable(u * o.matrix() * dagger(u)); }

}  // namespace

TEST_CASE("build_w examples") {
    const CMatrix z = clock_matrix();
    const BellParameters p = BellParameters::from_complex(1.0, 0.0, 1.0, 0.0);
    const Realization r(basis_state(9, 0), Observable(dagger(z)), Observable(dagger(z)), Observable(z),
                        Observable(z));
    const CMatrix w = build_w(p, r).matrix();
    const CMatrix expected = 2.0 * (kron(dagger(z), z) + kron(z, dagger(z)));
    CHECK(approx_equal(w, expected));
    CHECK(std::abs(trace(w)) < 1e-13);

    const BellOperatorMatrix zero = build_w(BellParameters{}, r);
    CHECK(frobenius_norm(zero.matrix()) == 0.0);
    CHECK(spectral_max(zero) == 0.0);

    CHECK_THROWS(BellOperatorMatrix(kron(shift(), CMatrix::identity(3))));
}

TEST_CASE("canonical Bell operator spectrum") {
    const BellParameters p = family_point(pi / 12);
    const Realization r = canonical_realization(p).realization;
    const BellOperatorMatrix w = build_w(p, r);
    CHECK(is_hermitian(w.matrix(), 1e-12));

    // Spectrum frozen from the numpy oracle: {-2 x4, 0 x2, 2 x2, 4}.
    const auto e = hermitian_eigen(w.matrix());
    const double expected[] = {-2, -2, -2, -2, 0, 0, 2, 2, 4};
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(e.values[i] - expected[i]) < 1e-10);

    CHECK(std::abs(spectral_max(w) - 4.0) <= 1e-9);
    CHECK(std::abs(bell_value(p, r) - 4.0) <= 1e-10);

    const Realization r24 = canonical_realization(family_point(pi / 24)).realization;
    CHECK(std::abs(spectral_max(build_w(family_point(pi / 24), r24)) - 4.0) <= 1e-9);
}

TEST_CASE("nullifiers") {
    const BellParameters half = BellParameters::from_complex(0.5, 0.5, 0.25, 0.75);
    const Observable id(CMatrix::identity(3));
    const Realization trivial(basis_state(9, 0), id, id, id, id);
    const Nullifiers l = nullifiers(half, trivial);
    CHECK(frobenius_norm(l.l1) < 1e-15);
    CHECK(frobenius_norm(l.l2) < 1e-15);

    const BellParameters p = family_point(pi / 12);
    const Realization r = canonical_realization(p).realization;
    const NullifierResiduals n = verify_nullifiers(p, r);
    CHECK(n.max() <= 1e-10);

    const Realization product = with_state(r, basis_state(9, 0));
    const NullifierResiduals np = verify_nullifiers(p, product);
    // ||L1|00>|| frozen from the numpy oracle.
    CHECK(np.l1 == doctest::Approx(0.9428090415820632).epsilon(1e-12));
    CHECK(np.l1_dagger > 0.1);
}

TEST_CASE("sos_residual examples") {
    const BellParameters p = family_point(pi / 12);
    const Realization r = canonical_realization(p).realization;
    CHECK(sos_residual(p, r) <= 1e-10);

    for (std::size_t dim : {3u, 6u}) {
        const Realization rr(basis_state(dim * dim, 0), random_order3(dim, 1), random_order3(dim, 2),
                             random_order3(dim, 3), random_order3(dim, 4));
        CHECK(sos_residual(p, rr) <= 1e-10);
    }

    BellParameters bad = p;
    bad.theta_delta += 0.3;
    CHECK_THROWS_AS(sos_residual(bad, r), ConstraintError);
}

TEST_CASE("tsirelson_bound") {
    CHECK(tsirelson_bound(family_point(0.3)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(tsirelson_bound(BellParameters{}) == 2.0);
    CHECK(tsirelson_bound(BellParameters::from_complex(1.0, 0.0, 0.0, 0.0)) == 3.0);
}

TEST_CASE("bell_value on basis states") {
    const BellParameters p = family_point(pi / 12);
    const Realization r = canonical_realization(p).realization;
    double sum = 0.0;
    for (std::size_t i = 0; i < 9; ++i) sum += bell_value(p, with_state(r, basis_state(9, i)));
    CHECK(std::abs(sum / 9.0) < 1e-12);
    CHECK(std::abs(trace(build_w(p, r).matrix())) < 1e-12);

    // <00|W|00> frozen from the numpy oracle.
    CHECK(bell_value(p, with_state(r, basis_state(9, 0))) == doctest::Approx(2.2222222222222223).epsilon(1e-12));
}

TEST_CASE("deterministic embedding reproduces the classical optimum") {
    for (double tb : {pi / 12, pi / 24, 0.4}) {
        const BellParameters p = family_point(tb);
        const ClassicalOptimum best = enumerate_classical(p);
        const auto& s = best.argmax;
        const Realization r(basis_state(9, 0), phase_observable(s.a0), phase_observable(s.a1),
                            phase_observable(s.b0), phase_observable(s.b1));
        CHECK(std::abs(bell_value(p, r) - best.value) <= 1e-10);

        const DeterministicStrategy zero{};
        const Realization r0(basis_state(9, 4), phase_observable(0), phase_observable(0), phase_observable(0),
                             phase_observable(0));
        CHECK(std::abs(bell_value(p, r0) - deterministic_value(zero, p)) <= 1e-12);
    }
}

TEST_CASE("realization validation") {
    const Observable z = bell3::clock();
    CHECK_THROWS(Realization(CVector(9, 0.0), z, z, z, z));
    CHECK_THROWS(Realization(basis_state(18, 0), z, z, z, random_order3(6, 1)));
    CHECK_THROWS(Realization(basis_state(8, 0), z, z, z, z));
}

TEST_CASE("property: SOS identity for 100 random draws") {
    XorShift64Star rng(1234);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double tb = 0.01 + (pi / 6 - 0.02) * rng.uniform();
        const BellParameters p = family_point(tb);
        const std::size_t da = (t % 2 == 0) ? 3 : 6;
        const std::size_t db = (t % 4 < 2) ? 3 : 6;
        const std::uint64_t s = 100 + 4 * static_cast<std::uint64_t>(t);
        const Observable a0 = random_order3(da, s), a1 = random_order3(da, s + 1);
        const Observable b0 = random_order3(db, s + 2), b1 = random_order3(db, s + 3);
        worst = std::max(worst, sos_residual(p, a0.matrix(), a1.matrix(), b0.matrix(), b1.matrix()));

        const Realization r(basis_state(da * db, 0), a0, a1, b0, b1);
        CHECK(spectral_max(build_w(p, r)) <= tsirelson_bound(p) + 1e-9);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("property: SOS identity holds for general unitaries on the A side") {
    XorShift64Star rng(77);
    for (int t = 0; t < 30; ++t) {
        const BellParameters p = family_point(0.02 + 0.48 * rng.uniform());
        const CMatrix u0 = random_unitary(4, rng);
        const CMatrix u1 = random_unitary(4, rng);
        const Observable b0 = random_order3(3, 900 + t), b1 = random_order3(3, 950 + t);
        CHECK(sos_residual(p, u0, u1, b0.matrix(), b1.matrix()) <= 1e-10);
    }
}

TEST_CASE("property: bell value is invariant under local unitaries") {
    const BellParameters p = family_point(0.2);
    const Realization r = canonical_realization(p).realization;
    const double reference = bell_value(p, r);
    XorShift64Star rng(20);
    for (int t = 0; t < 20; ++t) {
        const CMatrix u = random_unitary(3, rng);
        const CMatrix v = random_unitary(3, rng);
        const CVector psi = bell3::apply(kron(u, v), r.state());
        const Realization g(psi, conjugated(u, r.a0()), conjugated(u, r.a1()), conjugated(v, r.b0()),
                            conjugated(v, r.b1()));
        CHECK(std::abs(bell_value(p, g) - reference) <= 1e-10);
    }
}
