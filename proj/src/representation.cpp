#include "rotalg/representation.hpp"

#include "rotalg/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotalg {

namespace {

// Coefficientwise distance max_n sup-upper(F(n) - G(n)), enough to decide
// self-adjointness without weights.
double coeff_distance(const AlgebraElement& a, const AlgebraElement& b) {
    double dev = 0.0;
    AlgebraElement diff = a - b;
    for (const auto& [n, fn] : diff.terms()) {
        dev = std::max(dev, fn.sup_norm().upper);
    }
    return dev;
}

} // namespace

TruncatedOperator represent(const AlgebraElement& f, int L, double z0) {
    if (L < f.width()) {
        std::ostringstream msg;
        msg << "finite section needs L >= " << f.width() << ", got " << L;
        throw TooSmallL(msg.str());
    }
    const int dim = 2 * L + 1;
    const double theta = f.rotation().value();
    TruncatedOperator out;
    out.L = L;
    out.z0 = z0;
    out.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [n, fn] : f.terms()) {
        for (int m = -L; m <= L; ++m) {
            const int col = m - n;
            if (col < -L || col > L) continue;
            const double point = z0 + static_cast<double>(m) * theta;
            out.matrix(m + L, col + L) = fn.evaluate(point);
        }
    }
    return out;
}

Interval opnorm_estimate(const AlgebraElement& f, const std::vector<int>& Ls,
                         const std::vector<double>& z0s) {
    if (Ls.empty() || z0s.empty()) {
        throw DomainError("opnorm_estimate: need at least one L and one base point");
    }
    double lower = 0.0;
    for (int L : Ls) {
        for (double z0 : z0s) {
            const TruncatedOperator op = represent(f, L, z0);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op.matrix);
            lower = std::max(lower, svd.singularValues()(0));
        }
    }
    // Finite sections are compressions, so their norms never exceed the
    // operator norm; the coefficient sum bounds it from above.
    const double upper = f.norm_l1().upper;
    return {std::min(lower, upper), upper};
}

std::vector<double> eig_selfadjoint(const AlgebraElement& f, int L, double z0) {
    const double dev = coeff_distance(f, f.adjoint());
    if (!(dev <= 1e-12)) {
        std::ostringstream msg;
        msg << "element is not self-adjoint: coefficient deviation " << dev;
        throw NotSelfAdjoint(msg.str());
    }
    const TruncatedOperator op = represent(f, L, z0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix);
    const auto& vals = solver.eigenvalues();
    return std::vector<double>(vals.data(), vals.data() + vals.size());
}

EigRecord eig_report(const AlgebraElement& f, int L, double z0) {
    const double dev = coeff_distance(f, f.adjoint());
    if (!(dev <= 1e-12)) {
        std::ostringstream msg;
        msg << "element is not self-adjoint: coefficient deviation " << dev;
        throw NotSelfAdjoint(msg.str());
    }
    const TruncatedOperator op = represent(f, L, z0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix);
    EigRecord rec;
    rec.L = L;
    rec.z0 = z0;
    const int dim = 2 * L + 1;
    rec.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    rec.interior_mass.reserve(static_cast<std::size_t>(dim));
    const int half = L / 2;
    for (int j = 0; j < dim; ++j) {
        double mass = 0.0;
        for (int m = -half; m <= half; ++m) {
            mass += std::norm(solver.eigenvectors()(m + L, j));
        }
        rec.interior_mass.push_back(mass);
    }
    return rec;
}

RadiusResult spectral_radius_a(const AlgebraElement& f, int nmax) {
    if (nmax < 1) throw DomainError("spectral_radius_a: nmax must be at least 1");
    RadiusResult out;
    out.sequence.reserve(static_cast<std::size_t>(nmax));
    AlgebraElement power = f;
    for (int k = 1; k <= nmax; ++k) {
        if (k > 1) power = power * f;
        const double up = power.norm_a().upper;
        out.sequence.push_back(std::pow(up, 1.0 / static_cast<double>(k)));
    }
    out.certified_upper = *std::min_element(out.sequence.begin(), out.sequence.end());
    return out;
}

bool quasi_inverse_check(const AlgebraElement& a, const AlgebraElement& b, double tol) {
    const AlgebraElement one = AlgebraElement::unit(a.rotation(), a.weight());
    const double right = ((a * b) - one).norm_a().upper;
    const double left = ((b * a) - one).norm_a().upper;
    return right < tol && left < tol;
}

InversionResult invert_in_a(const AlgebraElement& f, double tol, int max_terms) {
    if (tol <= 0.0) throw DomainError("invert_in_a: tol must be positive");
    if (max_terms < 1) throw DomainError("invert_in_a: max_terms must be at least 1");

    InversionResult res;
    const TorusFunction zero_mode = f.project_zero();
    if (zero_mode.is_zero()) {
        res.note = "zero mode vanishes; this Neumann scheme has no pivot";
        return res;
    }

    TorusFunction rho;
    try {
        rho = reciprocal(zero_mode, 1e-10, 256);
    } catch (const DomainError& e) {
        res.note = std::string("zero mode is not invertible in C(T): ") + e.what();
        return res;
    } catch (const PlanError& e) {
        res.note = std::string("zero mode reciprocal not certified: ") + e.what();
        return res;
    }

    const AlgebraElement one = AlgebraElement::unit(f.rotation(), f.weight());
    const AlgebraElement pre = AlgebraElement::embed(rho, f.rotation(), f.weight());
    const AlgebraElement r = one - pre * f;

    // Partial sums of sum_k R^k, tracked with the norms of the powers. Once
    // the power norms both shrink below where they can still matter and the
    // residual certifies, we are done.
    AlgebraElement partial = one;
    AlgebraElement r_power = one;
    double prev_norm = 1.0;
    double last_norm = 1.0;
    for (int k = 1; k <= max_terms; ++k) {
        r_power = r_power * r;
        partial = partial + r_power;
        prev_norm = last_norm;
        last_norm = r_power.norm_a().upper;
        res.terms_used = k;
        if (last_norm < 0.25 * tol) break;
    }
    res.growth_ratio = (prev_norm > 0.0) ? last_norm / prev_norm : 0.0;

    if (!(last_norm < 0.25 * tol)) {
        std::ostringstream msg;
        msg << "Neumann powers stopped at ||R^" << res.terms_used << "||_A <= " << last_norm
            << " (ratio " << res.growth_ratio << "); no certificate at tol " << tol;
        res.note = msg.str();
        return res;
    }

    AlgebraElement candidate = partial * pre;
    const double right = ((f * candidate) - one).norm_a().upper;
    const double left = ((candidate * f) - one).norm_a().upper;
    res.residual_right = right;
    res.residual_left = left;
    if (right < tol && left < tol) {
        res.inverse = std::move(candidate);
        res.note = "certified two-sided inverse";
    } else {
        std::ostringstream msg;
        msg << "candidate failed the a-posteriori check: residuals (" << right << ", " << left
            << ") vs tol " << tol;
        res.note = msg.str();
    }
    return res;
}

WitnessReport nonspectrality_witness(Complex lambda, int N, int L,
                                     const RotationParameter& rotation, const Weight& weight) {
    if (N < 2 || L < 2) throw DomainError("nonspectrality_witness: need N >= 2 and L >= 2");
    const double mod = std::abs(lambda);
    if (!(mod > 1.0) || !(mod < weight.sigma())) {
        std::ostringstream msg;
        msg << "witness requires 1 < |lambda| < sigma, got |lambda| = " << mod
            << " with sigma = " << weight.sigma();
        throw OutOfRange(msg.str());
    }

    WitnessReport rep;
    rep.lambda = lambda;
    rep.N = N;
    rep.L = L;
    rep.sigma = weight.sigma();

    const AlgebraElement shift = AlgebraElement::unit(rotation, weight, 1);
    const AlgebraElement one = AlgebraElement::unit(rotation, weight);
    const AlgebraElement witness = shift - one.scaled(lambda);

    // Check 1: sections of u_1 - lambda are uniformly invertible. Since the
    // truncated shift never increases length, ||(S - lambda) xi|| >=
    // |lambda| ||xi|| - ||S xi|| >= (|lambda| - 1) ||xi||.
    const TruncatedOperator op = represent(witness, L, 0.0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op.matrix);
    rep.smallest_singular_value = svd.singularValues()(2 * L);
    rep.singular_lower_bound = mod - 1.0;
    rep.invertibility_ok =
        rep.smallest_singular_value >= rep.singular_lower_bound - 1e-10;

    // Check 2: the section inverse carries -lambda^{-n-1} on diagonal n. The
    // truncated shift is nilpotent, so the finite inverse is the exact
    // Neumann sum and interior diagonals match the full inverse exactly.
    const int dim = 2 * L + 1;
    const Eigen::MatrixXcd inv =
        op.matrix.partialPivLu().solve(Eigen::MatrixXcd::Identity(dim, dim));
    const int depth = std::min(N, 2 * L);
    rep.inverse_diagonal_depth = depth;
    double dev = 0.0;
    Complex power = 1.0 / lambda;  // lambda^{-(n+1)} at n = 0
    for (int n = 0; n <= depth; ++n) {
        const Complex expected = -power;
        for (int m = -L; m <= L; ++m) {
            const int col = m - n;
            if (col < -L) continue;
            dev = std::max(dev, std::abs(inv(m + L, col + L) - expected));
        }
        power /= lambda;
    }
    rep.inverse_diagonal_max_dev = dev;
    rep.inverse_coefficients_ok = dev < 1e-10;

    // Check 3: partial sums S_N = -sum_{n<=N} lambda^{-n-1} u_n of the formal
    // inverse have weighted norm growing like (sigma/|lambda|)^N. Lower
    // bounds come from the certified norm intervals of the partial sums.
    AlgebraElement partial(rotation, weight);
    Complex coeff = -1.0 / lambda;
    for (int n = 0; n <= N; ++n) {
        partial.add_term(n, TorusFunction::constant(coeff));
        rep.partial_sum_lower_bounds.push_back(partial.norm_a().lower);
        coeff /= lambda;
    }
    for (int n = 1; n <= N; ++n) {
        const double prev = rep.partial_sum_lower_bounds[static_cast<std::size_t>(n - 1)];
        const double curr = rep.partial_sum_lower_bounds[static_cast<std::size_t>(n)];
        rep.ratio_sequence.push_back(prev > 0.0 ? curr / prev : 0.0);
    }
    rep.ratio_limit = weight.sigma() / mod;
    const double final_ratio = rep.ratio_sequence.back();
    rep.divergence_ok = std::abs(final_ratio - rep.ratio_limit) <= 0.01 * rep.ratio_limit;

    const bool all = rep.invertibility_ok && rep.inverse_coefficients_ok && rep.divergence_ok;
    rep.verdict = all ? "element of A, invertible in B, A-norm of unique inverse diverges"
                      : "evidence incomplete at these sizes";
    rep.note =
        "Lower bounds are certified from finite data; divergence of the partial sums is "
        "reported as evidence, not as a finite proof of non-membership of the inverse.";
    return rep;
}

} // namespace rotalg
