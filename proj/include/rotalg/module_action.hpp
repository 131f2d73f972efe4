#pragma once

#include "rotalg/algebra.hpp"

#include <vector>

namespace rotalg {

// Element of the one-sided module C(T) with its sup-norm bracket cached.
struct ModuleVector {
    TorusFunction fn;
    Interval sup;

    ModuleVector() = default;
    explicit ModuleVector(TorusFunction f) : fn(std::move(f)), sup(fn.sup_norm()) {}
};

/**
 * Action of the crossed product on C(T) that scales the unitaries instead of
 * rotating them away:
 *
 *   act(F, phi) = sum_n sigma^n F(n) . (phi translated by n theta).
 *
 * The point of the construction: act(u_n, 1) = sigma^n, so the module is
 * bounded (||act(F, phi)|| <= ||F||_A ||phi||) but no renorming of C(T) can
 * make every u_n act isometrically.
 */
ModuleVector act(const AlgebraElement& f, const ModuleVector& phi);

// sum_n sigma^n sup-upper(F(n)): certified bound on the operator norm of
// act(F, .); never exceeds upper(||F||_A).
double action_bound(const AlgebraElement& f);

struct NonunitarizabilityReport {
    std::vector<double> norms;   // ||act(u_n, 1)||, n = 0..nmax
    std::vector<double> ratios;  // norms[n] / norms[n-1], n = 1..nmax
};

// Tabulates how the canonical unitaries stretch the unit constant.
NonunitarizabilityReport nonunitarizability_report(int nmax, const RotationParameter& rotation,
                                                   const Weight& weight);

struct CoveringTranslates {
    std::vector<int> indices;  // chosen translates n_1, ..., n_k
    TorusFunction chi;         // sum_i sigma^{n_i} psi(. - n_i theta)
    double grid_min = 0.0;
    double slack = 0.0;          // derivative allowance at the chosen grid
    double certified_min = 0.0;  // grid_min - slack, positive on success
};

/**
 * Greedy cover of the circle by half-max superlevel sets of translated
 * copies of a nonnegative psi. Candidates are tried in the order
 * 0, 1, -1, 2, -2, ... (so ties favour small |n|, positive first) and each
 * round picks the candidate covering the most still-uncovered grid points.
 * Success is certified by a positive lower bound for chi on a fine grid.
 * Throws NotCovered if k translates never suffice, DomainError when psi is
 * not real, nonnegative and not identically zero.
 */
CoveringTranslates find_covering_translates(const ModuleVector& psi,
                                            const RotationParameter& rotation,
                                            const Weight& weight, int kmax,
                                            int candidate_range = 64, std::int64_t grid = 0);

struct CyclicSolution {
    AlgebraElement element;      // F with act(F, phi) ~ 1
    std::vector<int> translates; // the covering translates behind chi
    double chi_lower = 0.0;      // certified lower bound for chi
    double residual = 0.0;       // certified sup |act(F, phi) - 1|
};

/**
 * Solves act(F, phi) = 1 approximately for a nonzero phi: with
 * psi = |phi|^2 and T = sum_i u_{n_i} over covering translates,
 * chi = act(T, psi) is bounded below, and F = embed(1/chi) T embed(conj phi)
 * maps phi onto 1 up to the reciprocal's tolerance. The reciprocal degree is
 * raised along a ladder until the certified residual passes tol.
 */
CyclicSolution cyclic_solver(const ModuleVector& phi, double tol,
                             const RotationParameter& rotation, const Weight& weight);

} // namespace rotalg
