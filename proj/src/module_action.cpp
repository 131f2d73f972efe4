#include "rotalg/module_action.hpp"

#include "rotalg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace rotalg {

ModuleVector act(const AlgebraElement& f, const ModuleVector& phi) {
    TorusFunction out;
    const double theta = f.rotation().value();
    const Weight& w = f.weight();
    for (const auto& [n, fn] : f.terms()) {
        const TorusFunction moved = phi.fn.translate(static_cast<double>(n) * theta);
        out = out + (fn * moved).scaled(Complex(w.signed_scale(n), 0.0));
    }
    return ModuleVector(std::move(out));
}

double action_bound(const AlgebraElement& f) {
    double acc = 0.0;
    for (const auto& [n, fn] : f.terms()) {
        acc += f.weight().signed_scale(n) * fn.sup_norm().upper;
    }
    return acc;
}

NonunitarizabilityReport nonunitarizability_report(int nmax, const RotationParameter& rotation,
                                                   const Weight& weight) {
    if (nmax < 1) throw DomainError("nonunitarizability_report: nmax must be at least 1");
    NonunitarizabilityReport rep;
    const ModuleVector one(TorusFunction::constant(Complex(1.0, 0.0)));
    for (int n = 0; n <= nmax; ++n) {
        const AlgebraElement u = AlgebraElement::unit(rotation, weight, n);
        rep.norms.push_back(act(u, one).sup.upper);
    }
    for (int n = 1; n <= nmax; ++n) {
        rep.ratios.push_back(rep.norms[static_cast<std::size_t>(n)] /
                             rep.norms[static_cast<std::size_t>(n - 1)]);
    }
    return rep;
}

namespace {

// Candidate order 0, 1, -1, 2, -2, ...: scanning in this order makes the
// greedy tie-break "smallest |n|, positive first" automatic.
std::vector<int> candidate_order(int range) {
    std::vector<int> out{0};
    for (int n = 1; n <= range; ++n) {
        out.push_back(n);
        out.push_back(-n);
    }
    return out;
}

} // namespace

CoveringTranslates find_covering_translates(const ModuleVector& psi,
                                            const RotationParameter& rotation,
                                            const Weight& weight, int kmax,
                                            int candidate_range, std::int64_t grid) {
    if (kmax < 1) throw DomainError("find_covering_translates: kmax must be at least 1");
    const TorusFunction& p = psi.fn;
    if (p.is_zero()) throw DomainError("find_covering_translates: psi is identically zero");

    const std::int64_t deg = p.degree();
    const std::int64_t g = (grid > 0)
        ? grid
        : std::min<std::int64_t>(std::max<std::int64_t>(64 * (deg + 1), 4096), 1 << 14);

    // Sample psi once; reality and nonnegativity are preconditions.
    std::vector<double> vals(static_cast<std::size_t>(g));
    double top = 0.0;
    const double step = 1.0 / static_cast<double>(g);
    for (std::int64_t j = 0; j < g; ++j) {
        const Complex v = p.evaluate(static_cast<double>(j) * step);
        if (std::abs(v.imag()) > 1e-10) {
            throw DomainError("find_covering_translates: psi is not real-valued");
        }
        if (v.real() < -1e-10) {
            throw DomainError("find_covering_translates: psi takes negative values");
        }
        vals[static_cast<std::size_t>(j)] = std::max(v.real(), 0.0);
        top = std::max(top, vals[static_cast<std::size_t>(j)]);
    }
    if (top <= 0.0) throw DomainError("find_covering_translates: psi vanishes on the grid");

    // Half of the global max is a poor level for peaky psi: the arcs shrink
    // with the peak and the cover needs many translates. The median keeps
    // every arc at half the circle whenever psi is spread out; the
    // positivity certificate below only needs the level to be positive.
    std::vector<double> order(vals);
    const auto mid = order.begin() + static_cast<std::ptrdiff_t>(order.size() / 2);
    std::nth_element(order.begin(), mid, order.end());
    double level = std::min(0.5 * top, *mid);
    if (level <= 0.0) level = 0.5 * top;

    // Grid membership of the superlevel set shifted by n theta. Selection
    // uses the nearest grid shift; correctness rests on the certificate, not
    // on these approximate sets.
    const double theta = rotation.value();
    const std::vector<int> candidates = candidate_order(candidate_range);
    std::vector<std::vector<std::uint8_t>> covers;
    covers.reserve(candidates.size());
    for (const int n : candidates) {
        const double shift = wrap_unit(static_cast<double>(n) * theta);
        const auto offset = static_cast<std::int64_t>(std::llround(shift * static_cast<double>(g)));
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(g));
        for (std::int64_t j = 0; j < g; ++j) {
            std::int64_t src = (j - offset) % g;
            if (src < 0) src += g;
            mask[static_cast<std::size_t>(j)] =
                vals[static_cast<std::size_t>(src)] > level ? 1 : 0;
        }
        covers.push_back(std::move(mask));
    }

    std::vector<std::uint8_t> uncovered(static_cast<std::size_t>(g), 1);
    std::vector<std::int64_t> gains(candidates.size(), 0);
    std::int64_t remaining = g;
    CoveringTranslates result;
    while (static_cast<int>(result.indices.size()) < kmax) {
        std::int64_t best_gain = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            std::int64_t gain = 0;
            const auto& mask = covers[c];
            for (std::int64_t j = 0; j < g; ++j) {
                gain += uncovered[static_cast<std::size_t>(j)] & mask[static_cast<std::size_t>(j)];
            }
            gains[c] = gain;
            best_gain = std::max(best_gain, gain);
        }
        if (best_gain == 0) {
            std::ostringstream msg;
            msg << "superlevel sets of the first " << candidates.size()
                << " translates cannot cover the circle (" << remaining
                << " grid points left after " << result.indices.size() << " picks)";
            throw NotCovered(msg.str());
        }
        // Take the earliest candidate whose gain is within a factor two of
        // the best. A far translate n carries weight sigma^n into chi, so a
        // marginally larger arc never justifies the exponential cost it adds
        // to the positivity slack and to every norm downstream.
        std::size_t best = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (2 * gains[c] >= best_gain) {
                best = c;
                break;
            }
        }
        result.indices.push_back(candidates[best]);
        const auto& mask = covers[best];
        for (std::int64_t j = 0; j < g; ++j) {
            if (mask[static_cast<std::size_t>(j)]) uncovered[static_cast<std::size_t>(j)] = 0;
        }
        remaining -= gains[best];
        if (remaining == 0) break;
    }
    if (remaining != 0) {
        std::ostringstream msg;
        msg << "no cover within k = " << kmax << " translates (" << remaining
            << " grid points uncovered)";
        throw NotCovered(msg.str());
    }

    // Certify: chi = act(sum u_{n_i}, psi) through the same code path the
    // solver uses, bounded below on a fresh grid with derivative slack.
    AlgebraElement t(rotation, weight);
    for (const int n : result.indices) {
        t = t + AlgebraElement::unit(rotation, weight, n);
    }
    result.chi = act(t, psi).fn;
    const double chi_sup = result.chi.sup_norm().upper;
    std::int64_t cert_grid =
        std::min<std::int64_t>(std::max<std::int64_t>(16 * (result.chi.degree() + 1), 4096), 1 << 16);
    for (;;) {
        double low = result.chi.evaluate(0.0).real();
        const double cert_step = 1.0 / static_cast<double>(cert_grid);
        for (std::int64_t j = 1; j < cert_grid; ++j) {
            low = std::min(low, result.chi.evaluate(static_cast<double>(j) * cert_step).real());
        }
        result.grid_min = low;
        // Between grid points the real part moves by at most pi K ||chi|| / G.
        result.slack = std::numbers::pi * static_cast<double>(result.chi.degree()) * chi_sup /
                       static_cast<double>(cert_grid);
        result.certified_min = low - result.slack;
        if (result.certified_min > 0.0 || cert_grid >= (1 << 16)) break;
        // The margin was eaten by the slack, not by the data; refine.
        cert_grid = std::min<std::int64_t>(4 * cert_grid, 1 << 16);
    }
    if (!(result.certified_min > 0.0)) {
        std::ostringstream msg;
        msg << "cover found but the positivity certificate failed: grid min " << result.grid_min
            << " vs slack " << result.slack;
        throw NotCovered(msg.str());
    }
    return result;
}

CyclicSolution cyclic_solver(const ModuleVector& phi, double tol,
                             const RotationParameter& rotation, const Weight& weight) {
    if (tol <= 0.0) throw DomainError("cyclic_solver: tol must be positive");
    if (phi.fn.is_zero() || !(phi.sup.lower > 0.0)) {
        throw DomainError("cyclic_solver: phi must not be identically zero");
    }

    // psi = |phi|^2 is real and nonnegative by construction.
    const ModuleVector psi(phi.fn.conjugate() * phi.fn);
    CoveringTranslates cover = find_covering_translates(psi, rotation, weight, 32);

    AlgebraElement t(rotation, weight);
    for (const int n : cover.indices) {
        t = t + AlgebraElement::unit(rotation, weight, n);
    }
    const AlgebraElement phi_bar =
        AlgebraElement::embed(phi.fn.conjugate(), rotation, weight);

    const ModuleVector one(TorusFunction::constant(Complex(1.0, 0.0)));
    const double floor_value = std::min(1e-3, 0.5 * cover.certified_min);
    std::string last_failure;
    for (const std::int64_t maxdeg : {64, 128, 256, 512, 1024}) {
        TorusFunction rho;
        try {
            rho = reciprocal(cover.chi, 0.5 * tol, maxdeg, floor_value);
        } catch (const ToleranceNotMet& e) {
            last_failure = e.what();
            continue;
        }
        const AlgebraElement f =
            AlgebraElement::embed(rho, rotation, weight) * t * phi_bar;
        const TorusFunction defect = act(f, phi).fn - one.fn;
        const double residual = defect.sup_norm().upper;
        if (residual < tol) {
            return CyclicSolution{f, cover.indices, cover.certified_min, residual};
        }
        std::ostringstream msg;
        msg << "residual " << residual << " at maxdeg " << maxdeg;
        last_failure = msg.str();
    }
    std::ostringstream msg;
    msg << "cyclic_solver: tolerance " << tol << " not reached along the degree ladder ("
        << last_failure << ")";
    throw ToleranceNotMet(msg.str());
}

} // namespace rotalg
