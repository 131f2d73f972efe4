#pragma once

#include "rotalg/algebra.hpp"

#include <vector>

namespace rotalg {

/**
 * Recipe for approximating the zero-mode projection by averaging over
 * conjugations by the characters z -> e^{2 pi i f_j z}, f_j = j q for
 * j = 1..M. Conjugation multiplies coefficient n by e^{-2 pi i f_j n theta},
 * so the average damps every mode 1 <= |n| <= N by the Dirichlet factor
 *
 *   g_n = (1/M) sum_j e^{-2 pi i j q n theta},   |g_n| = |sin(pi M q n theta)|
 *                                                        / (M |sin(pi q n theta)|),
 *
 * and predicted_error = max over 1 <= |n| <= N of |g_n|.
 */
struct AveragingPlan {
    int N = 0;
    double epsilon = 0.0;  // requested damping target
    long long M = 0;
    long long q = 0;
    std::vector<long long> frequencies;  // j q, j = 1..M
    double predicted_error = 0.0;        // achieved max |g_n|, evaluated exactly
};

// Searches stride q among small continued-fraction denominators of theta and
// M among powers of two and multiples of larger denominators, both capped at
// 10^6, for a plan with predicted_error <= epsilon. The winning candidate is
// re-verified by direct summation of the phases before it is returned.
// Throws NoPlanFound when the search space is exhausted.
AveragingPlan plan_average(int N, double epsilon, const RotationParameter& rotation);

// Same plan shape with M and q fixed by the caller; predicted_error is
// evaluated by direct summation.
AveragingPlan make_plan(int N, long long q, long long M, const RotationParameter& rotation);

// u* F u for a unimodular u (|u| = 1 everywhere, checked; throws
// NotUnimodular). Single-character u is recognized and checked exactly.
AlgebraElement conjugate_by_unimodular(const AlgebraElement& f, const TorusFunction& u);

struct AverageResult {
    AlgebraElement average;
    double error_bound = 0.0;  // certified upper bound on ||avg - embed(F(0))||_A
    double tail_bound = 0.0;   // contribution of the modes beyond the plan's N
};

// Runs the plan: averages the M conjugates of F with compensated summation
// per coefficient. The zero mode is reproduced exactly; the error bound is
// tail + predicted_error * (weighted norm of the modes 1 <= |n| <= N) plus a
// rounding allowance.
AverageResult average_toward_p(const AlgebraElement& f, const AveragingPlan& plan);

} // namespace rotalg
