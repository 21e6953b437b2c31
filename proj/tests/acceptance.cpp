// One line per acceptance criterion. Extra arguments are paths of the unit
// test executables; AC9 runs them and times the whole suite.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "bell3/belloperator.hpp"
#include "bell3/localpolytope.hpp"
#include "bell3/rng.hpp"
#include "bell3/selftest.hpp"

using namespace bell3;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("AC%d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void ac1() {
    const auto t0 = Clock::now();
    std::vector<double> points{pi / 12};
    for (int i = 0; i < 10; ++i) points.push_back(pi / 48 + (pi / 6 - pi / 24) * (i + 0.5) / 10.0);
    double worst = 0.0;
    for (double tb : points) {
        const BellParameters p = family_point(tb);
        const Realization r = canonical_realization(p).realization;
        worst = std::max(worst, std::abs(spectral_max(build_w(p, r)) - 4.0));
    }
    const double dt = seconds_since(t0);
    report(1, worst <= 1e-9 && dt < 1.0,
           "Tsirelson bound: max |spectral_max - 4| = " + num(worst) + " over 11 points (tol 1e-9), " +
               num(dt) + " s (limit 1 s)");
}

void ac2() {
    const double e = enumerate_classical(family_point(pi / 12)).value;
    const double f = classical_formula(pi / 12);
    const bool pass = std::abs(e - 3.09808) <= 1e-4 && std::abs(f - 3.09808) <= 1e-4 && std::abs(e - f) <= 1e-8;
    report(2, pass,
           "SATWAP point: enumeration " + std::to_string(e) + ", formula " + std::to_string(f) +
               ", |diff| = " + num(std::abs(e - f)) + " (tol 1e-4 to 3.09808, 1e-8 mutual)");
}

void ac3() {
    const auto t0 = Clock::now();
    const auto rec = sweep(pi / 612, 101 * pi / 612, 101);
    std::size_t argmin = 0, nearest = 0;
    double worst = 0.0, top = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (rec[i].beta_c_formula < rec[argmin].beta_c_formula) argmin = i;
        if (std::abs(rec[i].theta_beta - pi / 12) < std::abs(rec[nearest].theta_beta - pi / 12)) nearest = i;
        if (rec[i].constraints_ok)
            worst = std::max(worst, std::abs(rec[i].beta_c_enumerated - rec[i].beta_c_formula));
        top = std::max({top, rec[i].beta_c_enumerated, rec[i].beta_c_formula});
    }
    const double dt = seconds_since(t0);
    const bool pass = rec.size() == 101 && argmin == nearest && worst <= 1e-8 && top < 4.0 && dt < 5.0;
    report(3, pass,
           "Figure sweep: 101 points, argmin index " + std::to_string(argmin) + " (nearest pi/12: " +
               std::to_string(nearest) + "), max |enum - formula| = " + num(worst) + " (tol 1e-8), max value " +
               std::to_string(top) + " < 4, " + num(dt) + " s (limit 5 s)");
}

void ac4() {
    XorShift64Star rng(2025);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const BellParameters p = family_point(0.01 + (pi / 6 - 0.02) * rng.uniform());
        const std::size_t da = (t % 2 == 0) ? 3 : 6;
        const std::size_t db = (t % 4 < 2) ? 3 : 6;
        const std::uint64_t s = 7000 + 4 * static_cast<std::uint64_t>(t);
        worst = std::max(worst, sos_residual(p, random_order3(da, s).matrix(), random_order3(da, s + 1).matrix(),
                                             random_order3(db, s + 2).matrix(),
                                             random_order3(db, s + 3).matrix()));
    }
    report(4, worst <= 1e-10, "SOS identity: max residual " + num(worst) + " over 100 draws, dims {3,6} (tol 1e-10)");
}

void ac5() {
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const BellParameters p = family_point(pi / 48 + (pi / 6 - pi / 24) * i / 24.0);
        worst = std::max(worst, verify_nullifiers(p, canonical_realization(p).realization).max());
    }
    report(5, worst <= 1e-9, "Nullifiers: max residual " + num(worst) + " over 25 points (tol 1e-9)");
}

void ac6() {
    XorShift64Star rng(6);
    int full = 0, tested = 0;
    while (tested < 50) {
        const Complex k = std::polar(1.0, 2 * pi * rng.uniform());
        bool near_root = false;
        for (int j = 0; j < 3; ++j) near_root |= std::abs(k - std::polar(1.0, 2 * pi * j / 3)) < 1e-3;
        if (near_root) continue;
        ++tested;
        full += algebra_dimension(clock_matrix(), t3(Kappa(k)).observable.matrix()).dimension == 9 ? 1 : 0;
    }
    const std::size_t degenerate = algebra_dimension(clock_matrix(), t3(Kappa(1.0)).observable.matrix()).dimension;
    const Kappa k3 = Kappa::from_angle(pi / 3);
    const double shift_res = frobenius_norm(recover_shift(clock_matrix(), t3(k3).observable.matrix(), k3) - shift());
    report(6, full == 50 && degenerate == 3 && shift_res <= 1e-9,
           "Incompatibility: dimension 9 for " + std::to_string(full) + "/50 kappa, dimension " +
               std::to_string(degenerate) + " at kappa=1, shift recovery " + num(shift_res) + " (tol 1e-9)");
}

void ac7() {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const BellParameters p = family_point((pi / 6) * (i + 0.5) / 200.0);
        const ConstraintReport r = check_constraints(p);
        for (const char* label : {"c1", "c3", "c4", "c5"}) worst = std::max(worst, r.at(label).value);
        worst = std::max(worst, std::abs(tsirelson_bound(p) - 4.0));
    }
    report(7, worst <= 1e-10, "Constraints: max residual of c1,c3,c4,c5 and sum rule " + num(worst) +
                                  " over 200 points (tol 1e-10)");
}

void ac8() {
    XorShift64Star rng(8);
    const std::size_t dims[] = {3, 9, 27};
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const CMatrix m = random_hermitian(dims[t % 3], rng);
        const auto e = hermitian_eigen(m);
        std::vector<Complex> d(e.values.begin(), e.values.end());
        const CMatrix rebuilt = e.vectors * CMatrix::diagonal(d) * dagger(e.vectors);
        worst = std::max(worst, frobenius_norm(rebuilt - m) / frobenius_norm(m));
    }
    report(8, worst <= 1e-10,
           "Eigensolver: max reconstruction / ||M||_F = " + num(worst) + " over 200 matrices, dims {3,9,27} (tol 1e-10)");
}

void ac9(Clock::time_point start, const std::vector<std::string>& suites) {
    int suite_failures = 0;
    for (const auto& exe : suites) {
        const std::string cmd = "\"" + exe + "\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) ++suite_failures;
    }
    const double dt = seconds_since(start);
    report(9, dt < 60.0 && suite_failures == 0,
           "Runtime: " + std::to_string(suites.size()) + " unit suites plus AC1-8 in " + num(dt) +
               " s (limit 60 s), " + std::to_string(suite_failures) + " suite failures");
}

}  // namespace

int main(int argc, char** argv) {
    const auto start = Clock::now();
    const std::vector<std::string> suites(argv + 1, argv + argc);
    void (*checks[])() = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8};
    for (int i = 0; i < 8; ++i) {
        try {
            checks[i]();
        } catch (const std::exception& e) {
            report(i + 1, false, std::string("exception: ") + e.what());
        }
    }
    ac9(start, suites);
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
