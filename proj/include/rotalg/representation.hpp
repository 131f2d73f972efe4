#pragma once

#include "rotalg/algebra.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace rotalg {

/**
 * Finite section of the regular representation on l^2 of the orbit
 * {z0 + m theta}. Basis vectors are indexed m = -L..L and the element acts by
 *
 *   (pi(F) xi)(m) = sum_n F(n)(z0 + m theta) xi(m - n),
 *
 * so entry (m, m - n) of the matrix is F(n)(z0 + m theta). Truncation only
 * cuts matrix units near the boundary rows; interior columns are exact.
 */
struct TruncatedOperator {
    int L = 0;
    double z0 = 0.0;
    Eigen::MatrixXcd matrix;
};

// Throws TooSmallL unless L >= width(F).
TruncatedOperator represent(const AlgebraElement& f, int L, double z0);

// Lower bound: largest singular value of any requested finite section.
// Upper bound: the unweighted coefficient sum, which dominates the operator
// norm of the full representation.
Interval opnorm_estimate(const AlgebraElement& f, const std::vector<int>& Ls,
                         const std::vector<double>& z0s);

// Eigenvalues of the finite section, ascending. Requires F = F* up to a
// small coefficient tolerance (throws NotSelfAdjoint otherwise).
std::vector<double> eig_selfadjoint(const AlgebraElement& f, int L, double z0);

struct EigRecord {
    int L = 0;
    double z0 = 0.0;
    std::vector<double> eigenvalues;    // ascending
    std::vector<double> interior_mass;  // per eigenvector: mass on |m| <= L/2
};

EigRecord eig_report(const AlgebraElement& f, int L, double z0);

struct RadiusResult {
    std::vector<double> sequence;  // s_k = upper(||F^k||_A)^{1/k}, k = 1..nmax
    double certified_upper = 0.0;  // min over the sequence
};

// Submultiplicativity makes every s_k an upper bound for the spectral radius
// in the weighted algebra; the certified value is their minimum.
RadiusResult spectral_radius_a(const AlgebraElement& f, int nmax);

struct InversionResult {
    std::optional<AlgebraElement> inverse;  // present exactly when certified
    int terms_used = 0;
    double growth_ratio = 0.0;      // ||R^k||_A ratio between the last two powers
    double residual_right = 0.0;    // upper(||F G - u_0||_A) when certified
    double residual_left = 0.0;     // upper(||G F - u_0||_A) when certified
    std::string note;
};

// Attempts to invert F by a Neumann series around the invertible zero mode:
// with rho ~ 1/F(0) and R = u_0 - embed(rho) F, candidate inverses are the
// partial sums (sum_k R^k) embed(rho). Success requires both residuals to
// pass below tol; otherwise the result reports the observed growth of
// ||R^k||_A and carries no inverse.
InversionResult invert_in_a(const AlgebraElement& f, double tol, int max_terms);

// True when both ||a b - u_0||_A and ||b a - u_0||_A are certified below tol.
bool quasi_inverse_check(const AlgebraElement& a, const AlgebraElement& b, double tol);

/**
 * Numerical evidence report for the element u_1 - lambda u_0 with
 * 1 < |lambda| < sigma. Three independent checks:
 *
 *  1. invertibility of the full operator: the smallest singular value of the
 *     finite section stays above |lambda| - 1 (a bound that survives the
 *     truncation because the shift is an isometry);
 *  2. the finite-section inverse reproduces the coefficients -lambda^{-n-1}
 *     of the inverse in the big algebra along its diagonals;
 *  3. the weighted norms of the partial coefficient sums S_N grow
 *     geometrically with ratio sigma / |lambda| > 1, so no weighted-summable
 *     inverse can exist.
 */
struct WitnessReport {
    Complex lambda;
    int N = 0;
    int L = 0;
    double sigma = 0.0;

    double smallest_singular_value = 0.0;
    double singular_lower_bound = 0.0;
    bool invertibility_ok = false;

    double inverse_diagonal_max_dev = 0.0;
    int inverse_diagonal_depth = 0;
    bool inverse_coefficients_ok = false;

    std::vector<double> partial_sum_lower_bounds;  // certified lower, N' = 0..N
    std::vector<double> ratio_sequence;            // consecutive ratios, N' = 1..N
    double ratio_limit = 0.0;                      // sigma / |lambda|
    bool divergence_ok = false;

    std::string verdict;
    std::string note;
};

WitnessReport nonspectrality_witness(Complex lambda, int N, int L,
                                     const RotationParameter& rotation, const Weight& weight);

} // namespace rotalg
