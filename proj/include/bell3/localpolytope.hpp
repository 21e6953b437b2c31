#pragma once

// Classical (local deterministic) bounds, computed three independent ways:
// exhaustive enumeration over the 81 deterministic strategies, the vertex
// formula in terms of the phases, and the closed form along the parameter
// family.

#include <vector>

#include "bell3/bellparams.hpp"

namespace bell3 {

/// Outcome labels in {0, 1, 2}: each observable is replaced by omega^label.
struct DeterministicStrategy {
    int a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

/// Phase offsets s in {0, 1, -1} for the vertex formula.
struct VertexAssignment {
    int s_alpha = 0, s_beta = 0, s_gamma = 0, s_delta = 0;
};

/// 2 Re[w^a0 (alpha w^b0 + beta w^b1) + w^a1 (gamma w^b0 + delta w^b1)].
double deterministic_value(const DeterministicStrategy& s, const BellParameters& p);

struct ClassicalOptimum {
    double value;
    DeterministicStrategy argmax;
};

/// Maximum over all 81 strategies. Ties go to the lexicographically smallest
/// (a0, a1, b0, b1); values within 1e-12 of each other count as ties.
ClassicalOptimum enumerate_classical(const BellParameters& p);

/// Vertex value in terms of phases, with amplitudes taken from
/// amplitudes_from_angles():
///   -2 sin 3tb cos(ta + s_a 2pi/3) / sin 3(ta - tb)
///   +2 sin 3ta cos(tb + s_b 2pi/3) / sin 3(ta - tb)
///   -2 sin 3td cos(tg + s_g 2pi/3) / sin 3(tg - td)
///   +2 sin 3tg cos(td + s_d 2pi/3) / sin 3(tg - td)
/// Throws ConstraintError (c2) on a vanishing denominator.
double vertex_value(const BellParameters& p, const VertexAssignment& v);

/// True when s_alpha - s_beta == s_gamma - s_delta (mod 3), i.e. the offsets
/// come from one outcome per observable.
bool is_realizable(const VertexAssignment& v);

/// Maximum of vertex_value over the 27 realizable assignments.
double max_vertex_value(const BellParameters& p);

/// Closed-form classical value along family_point():
///   3 cos 2t + cos 4t                     for 0 < t <= pi/12
///   3 sin(2t + pi/6) + sin(4t - pi/6)     for pi/12 <= t < pi/6
/// Throws std::domain_error outside (0, pi/6).
double classical_formula(double theta_beta);

struct SweepRecord {
    double theta_beta;
    double beta_c_enumerated;
    double beta_c_formula;
    double tsirelson;
    bool constraints_ok;
};

/// Uniform grid of `steps` points from theta_from to theta_to inclusive,
/// both strictly inside (0, pi/6). Points failing check_constraints are kept
/// and flagged.
std::vector<SweepRecord> sweep(double theta_from, double theta_to, int steps);

}  // namespace bell3
