#include "rotalg/averaging.hpp"

#include "rotalg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace rotalg {

namespace {

constexpr long long kCeiling = 1000000;

// Fractional part of k * theta in [0, 1), split through fma so the reduction
// is faithful for k up to ~1e15.
double frac_times(long long k, double theta) {
    const double kd = static_cast<double>(k);
    const double prod = kd * theta;
    const double err = std::fma(kd, theta, -prod);
    double frac = std::fmod(prod, 1.0) + err;
    frac -= std::floor(frac);
    return (frac >= 1.0) ? 0.0 : frac;
}

// |sin(pi M x) / (M sin(pi x))| with the convention 1 when sin(pi x) ~ 0.
double dirichlet_magnitude(double x, long long M) {
    const double denom = std::abs(std::sin(std::numbers::pi * x));
    if (denom < 1e-15) return 1.0;
    const double numer = std::abs(std::sin(std::numbers::pi * std::fmod(
        static_cast<double>(M) * x, 1.0)));
    return numer / (static_cast<double>(M) * denom);
}

// Predicted error of the (q, M) scheme by the closed form, cheap enough for
// the search loop.
double predicted_closed_form(int N, long long q, long long M, double theta) {
    double worst = 0.0;
    for (int n = 1; n <= N; ++n) {
        worst = std::max(worst, dirichlet_magnitude(frac_times(q * n, theta), M));
    }
    return worst;
}

// Predicted error by direct summation of the M phases per mode, evaluating
// each phase independently so no rounding accumulates.
double predicted_direct(int N, long long q, long long M, double theta) {
    double worst = 0.0;
    for (int n = 1; n <= N; ++n) {
        const long long stride = q * static_cast<long long>(n);
        Complex acc(0.0, 0.0);
        for (long long j = 1; j <= M; ++j) {
            acc += unit_phase(-stride * j, theta);
        }
        worst = std::max(worst, std::abs(acc) / static_cast<double>(M));
    }
    return worst;
}

std::vector<long long> stride_candidates(const RotationParameter& rotation) {
    std::vector<long long> qs{1};
    for (const auto& [p, q] : rotation.convergents()) {
        if (q <= 2000) qs.push_back(q);
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

std::vector<long long> size_candidates(const RotationParameter& rotation) {
    std::set<long long> ms;
    for (long long m = 1; m <= 8; ++m) ms.insert(m);
    for (long long m = 16; m <= kCeiling; m *= 2) ms.insert(m);
    for (const auto& [p, q] : rotation.convergents()) {
        for (long long mult : {1ll, 2ll, 3ll}) {
            const long long m = mult * q;
            if (m <= kCeiling) ms.insert(m);
        }
    }
    return std::vector<long long>(ms.begin(), ms.end());
}

AveragingPlan assemble(int N, double epsilon, long long q, long long M, double predicted) {
    AveragingPlan plan;
    plan.N = N;
    plan.epsilon = epsilon;
    plan.M = M;
    plan.q = q;
    plan.frequencies.reserve(static_cast<std::size_t>(M));
    for (long long j = 1; j <= M; ++j) plan.frequencies.push_back(j * q);
    plan.predicted_error = predicted;
    return plan;
}

} // namespace

AveragingPlan make_plan(int N, long long q, long long M, const RotationParameter& rotation) {
    if (N < 0) throw DomainError("make_plan: N must be nonnegative");
    if (q < 1 || M < 1) throw DomainError("make_plan: q and M must be positive");
    const double predicted = (N == 0) ? 0.0 : predicted_direct(N, q, M, rotation.value());
    return assemble(N, predicted, q, M, predicted);
}

AveragingPlan plan_average(int N, double epsilon, const RotationParameter& rotation) {
    if (N < 0) throw DomainError("plan_average: N must be nonnegative");
    if (!(epsilon > 0.0)) {
        throw NoPlanFound("plan_average: epsilon must be positive; exact cancellation of the "
                          "off-zero modes is not attempted");
    }
    if (N == 0) return assemble(0, epsilon, 1, 1, 0.0);

    const double theta = rotation.value();
    auto convergent_backed = rotation;
    std::vector<std::pair<long long, long long>> local;
    if (rotation.convergents().empty()) {
        local = continued_fraction_convergents(theta, kCeiling);
        convergent_backed = RotationParameter(theta, rotation.declared_irrational(), local);
    }
    const std::vector<long long> qs = stride_candidates(convergent_backed);
    const std::vector<long long> ms = size_candidates(convergent_backed);

    double best_pred = 2.0;
    long long best_q = 0, best_m = 0;
    for (long long M : ms) {
        for (long long q : qs) {
            const double pred = predicted_closed_form(N, q, M, theta);
            if (pred < best_pred) {
                best_pred = pred;
                best_q = q;
                best_m = M;
            }
            if (pred <= 0.98 * epsilon) {
                // Closed form passed with margin; confirm by direct summation.
                const double exact = predicted_direct(N, q, M, theta);
                if (exact <= epsilon) {
                    return assemble(N, epsilon, q, M, exact);
                }
            }
        }
    }
    std::ostringstream msg;
    msg << "no averaging plan reaches epsilon = " << epsilon << " for N = " << N
        << " with M <= " << kCeiling << "; best candidate (q = " << best_q << ", M = " << best_m
        << ") predicts " << best_pred;
    throw NoPlanFound(msg.str());
}

AlgebraElement conjugate_by_unimodular(const AlgebraElement& f, const TorusFunction& u) {
    if (u.is_zero()) throw NotUnimodular("conjugating function is identically zero");
    if (u.coeffs().size() == 1) {
        // A single character has constant modulus |c| everywhere.
        const double amp = std::abs(u.coeffs().begin()->second);
        if (std::abs(amp - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "character amplitude " << amp << " is not unimodular";
            throw NotUnimodular(msg.str());
        }
    } else {
        const std::int64_t grid =
            std::min<std::int64_t>(std::max<std::int64_t>(8 * (u.degree() + 1), 256), 1 << 14);
        for (std::int64_t j = 0; j < grid; ++j) {
            const double z = static_cast<double>(j) / static_cast<double>(grid);
            if (std::abs(std::abs(u.evaluate(z)) - 1.0) > 1e-9) {
                std::ostringstream msg;
                msg << "|u| deviates from 1 at z = " << z;
                throw NotUnimodular(msg.str());
            }
        }
    }
    const AlgebraElement right = AlgebraElement::embed(u, f.rotation(), f.weight());
    const AlgebraElement left = AlgebraElement::embed(u.conjugate(), f.rotation(), f.weight());
    return left * f * right;
}

AverageResult average_toward_p(const AlgebraElement& f, const AveragingPlan& plan) {
    if (plan.M < 1 || plan.frequencies.size() != static_cast<std::size_t>(plan.M)) {
        throw DomainError("average_toward_p: malformed plan");
    }
    const auto [head, tail] = f.truncate_support(plan.N);

    // Kahan-compensated running sums per (n, k) coefficient slot, so the M
    // near-identical contributions to the zero mode cancel to a few ulp.
    std::map<int, std::map<std::int64_t, std::pair<Complex, Complex>>> acc;
    const double inv_m = 1.0 / static_cast<double>(plan.M);
    for (const long long fj : plan.frequencies) {
        const AlgebraElement conj = conjugate_by_unimodular(f, TorusFunction::character(fj));
        for (const auto& [n, fn] : conj.terms()) {
            auto& slots = acc[n];
            for (const auto& [k, c] : fn.coeffs()) {
                auto& [sum, comp] = slots[k];
                const Complex value = c * inv_m;
                const Complex y = value - comp;
                const Complex t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        }
    }

    AverageResult out{AlgebraElement(f.rotation(), f.weight()), 0.0, tail};
    for (const auto& [n, slots] : acc) {
        TorusFunction::CoeffMap coeffs;
        for (const auto& [k, sc] : slots) coeffs[k] = sc.first;
        out.average.add_term(n, TorusFunction::from_coeffs(std::move(coeffs)));
    }

    // Modes beyond N contribute at most `tail`; modes 1 <= |n| <= N are damped
    // to predicted_error of their weighted mass; the allowance covers the
    // floating-point dust of the M-fold average.
    double mid_upper = 0.0;
    for (const auto& [n, fn] : head.terms()) {
        if (n != 0) mid_upper += f.weight().omega(n) * fn.sup_norm().upper;
    }
    const double allowance = 1e-12 * (1.0 + f.norm_a().upper);
    out.error_bound = tail + plan.predicted_error * mid_upper + allowance;
    return out;
}

} // namespace rotalg
