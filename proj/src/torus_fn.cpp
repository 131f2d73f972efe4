#include "rotalg/torus_fn.hpp"

#include "rotalg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace rotalg {

namespace {

constexpr std::int64_t kMaxGrid = 1 << 16;

std::int64_t auto_grid(std::int64_t degree) {
    return std::min<std::int64_t>(std::max<std::int64_t>(8 * (degree + 1), 256), kMaxGrid);
}

} // namespace

double wrap_unit(double z) {
    double r = z - std::floor(z);
    return (r >= 1.0) ? 0.0 : r;
}

Complex unit_phase(std::int64_t k, double t) {
    const double kd = static_cast<double>(k);
    const double prod = kd * t;
    // Exact product tail: kd * t = prod + err with err free of rounding.
    const double err = std::fma(kd, t, -prod);
    // fmod is exact, so frac carries the full fractional information.
    const double frac = std::fmod(prod, 1.0) + err;
    const double angle = 2.0 * std::numbers::pi * frac;
    return Complex(std::cos(angle), std::sin(angle));
}

TorusFunction TorusFunction::constant(Complex c) {
    CoeffMap m;
    if (c != Complex(0.0, 0.0)) m[0] = c;
    return from_coeffs(std::move(m));
}

TorusFunction TorusFunction::character(std::int64_t k, Complex amplitude) {
    CoeffMap m;
    if (amplitude != Complex(0.0, 0.0)) m[k] = amplitude;
    return from_coeffs(std::move(m));
}

TorusFunction TorusFunction::from_coeffs(CoeffMap coeffs, double drop_tol) {
    double top = 0.0;
    for (const auto& [k, c] : coeffs) top = std::max(top, std::abs(c));
    TorusFunction out;
    if (top == 0.0) return out;
    const double cut = drop_tol * top;
    for (auto& [k, c] : coeffs) {
        if (std::abs(c) > cut) out.coeffs_.emplace(k, c);
    }
    return out;
}

Complex TorusFunction::coeff(std::int64_t k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

std::int64_t TorusFunction::degree() const {
    std::int64_t deg = 0;
    for (const auto& [k, c] : coeffs_) deg = std::max(deg, std::abs(k));
    return deg;
}

Complex TorusFunction::evaluate(double z) const {
    Complex acc(0.0, 0.0);
    for (const auto& [k, c] : coeffs_) acc += c * unit_phase(k, z);
    return acc;
}

TorusFunction TorusFunction::translate(double t) const {
    // (phi translated by t)(z) = phi(z - t): coefficient k picks up e^{-2 pi i k t}.
    TorusFunction out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k, c * unit_phase(-k, t));
    return out;
}

TorusFunction TorusFunction::conjugate() const {
    TorusFunction out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(-k, std::conj(c));
    return out;
}

TorusFunction TorusFunction::operator+(const TorusFunction& rhs) const {
    CoeffMap m = coeffs_;
    for (const auto& [k, c] : rhs.coeffs_) {
        auto [it, fresh] = m.emplace(k, c);
        if (!fresh) it->second += c;
    }
    return from_coeffs(std::move(m));
}

TorusFunction TorusFunction::operator-(const TorusFunction& rhs) const {
    return *this + rhs.scaled(Complex(-1.0, 0.0));
}

TorusFunction TorusFunction::operator*(const TorusFunction& rhs) const {
    CoeffMap m;
    for (const auto& [k1, c1] : coeffs_) {
        for (const auto& [k2, c2] : rhs.coeffs_) {
            auto [it, fresh] = m.emplace(k1 + k2, c1 * c2);
            if (!fresh) it->second += c1 * c2;
        }
    }
    return from_coeffs(std::move(m));
}

TorusFunction TorusFunction::scaled(Complex a) const {
    if (a == Complex(0.0, 0.0)) return TorusFunction();
    TorusFunction out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k, a * c);
    return out;
}

Interval TorusFunction::sup_norm(std::int64_t grid) const {
    if (coeffs_.empty()) return {0.0, 0.0};
    const std::int64_t deg = degree();
    std::int64_t g = (grid > 0) ? grid : auto_grid(deg);
    // Raise short grids to the Bernstein validity threshold when that stays
    // affordable; past the cap we keep the grid and lose only tightness.
    const std::int64_t need = 8 * (deg + 1);
    if (g < need) g = std::min(need, kMaxGrid);

    double grid_max = 0.0;
    const double step = 1.0 / static_cast<double>(g);
    for (std::int64_t j = 0; j < g; ++j) {
        grid_max = std::max(grid_max, std::abs(evaluate(static_cast<double>(j) * step)));
    }

    double upper = l1_coeff_norm();
    if (g >= need) {
        // With ||phi'|| <= 2 pi K ||phi|| and grid spacing 1/G, the true sup
        // exceeds the grid max by at most a factor 1/(1 - pi K / G), which is
        // dominated by (1 + 2 pi K / G) for G >= 2 pi K.
        const double slack = 2.0 * std::numbers::pi * static_cast<double>(deg) * grid_max
                             / static_cast<double>(g);
        upper = std::min(upper, grid_max + slack);
    }
    return {grid_max, std::max(upper, grid_max)};
}

double TorusFunction::l1_coeff_norm() const {
    double acc = 0.0;
    for (const auto& [k, c] : coeffs_) acc += std::abs(c);
    return acc;
}

TorusFunction reciprocal(const TorusFunction& phi, double tol,
                         std::int64_t maxdeg, double floor_value) {
    if (maxdeg < 0) throw DomainError("reciprocal: maxdeg must be nonnegative");
    if (tol <= 0.0) throw DomainError("reciprocal: tol must be positive");
    if (phi.is_zero()) throw NotBoundedAway("reciprocal: function is identically zero");

    const std::int64_t deg = phi.degree();
    const std::int64_t samples =
        std::max<std::int64_t>(2 * maxdeg + 1, 4 * (deg + 1));

    // Positivity sweep on a finer grid than the sampling grid. A dip below
    // floor_value means 1/phi is too wild for a degree-maxdeg approximation
    // to be worth attempting.
    {
        const std::int64_t check = std::min<std::int64_t>(std::max<std::int64_t>(4 * samples, 1024), 1 << 16);
        double low = std::abs(phi.evaluate(0.0));
        const double step = 1.0 / static_cast<double>(check);
        for (std::int64_t j = 1; j < check; ++j) {
            low = std::min(low, std::abs(phi.evaluate(static_cast<double>(j) * step)));
        }
        if (low < floor_value) {
            std::ostringstream msg;
            msg << "reciprocal: |phi| falls to " << low << " on the check grid, below the floor "
                << floor_value;
            throw NotBoundedAway(msg.str());
        }
    }

    // Sample 1/phi and take a discrete Fourier transform, keeping |k| <= maxdeg.
    std::vector<Complex> inv(static_cast<std::size_t>(samples));
    const double step = 1.0 / static_cast<double>(samples);
    double max_inv = 0.0;
    for (std::int64_t j = 0; j < samples; ++j) {
        const Complex v = 1.0 / phi.evaluate(static_cast<double>(j) * step);
        inv[static_cast<std::size_t>(j)] = v;
        max_inv = std::max(max_inv, std::abs(v));
    }
    // Coefficients below the summation noise floor of the transform carry no
    // information; keeping them would plant spurious high modes whose degrees
    // poison later products. The floor bounds the accumulated rounding of a
    // length-`samples` sum of values of magnitude <= max_inv.
    const double noise_floor = 4.0 * static_cast<double>(samples)
                               * std::numeric_limits<double>::epsilon() * max_inv;
    TorusFunction::CoeffMap coeffs;
    const double scale = 1.0 / static_cast<double>(samples);
    for (std::int64_t k = -maxdeg; k <= maxdeg; ++k) {
        Complex acc(0.0, 0.0);
        for (std::int64_t j = 0; j < samples; ++j) {
            acc += inv[static_cast<std::size_t>(j)] * unit_phase(-k, static_cast<double>(j) * step);
        }
        const Complex c = acc * scale;
        if (std::abs(c) > noise_floor) coeffs[k] = c;
    }
    TorusFunction rho = TorusFunction::from_coeffs(std::move(coeffs));

    // Certify on a grid four times finer than the sampling grid.
    TorusFunction residual = rho * phi - TorusFunction::constant(Complex(1.0, 0.0));
    const std::int64_t cert_grid =
        std::max<std::int64_t>(4 * samples, 8 * (residual.degree() + 1));
    const Interval r = residual.sup_norm(std::min<std::int64_t>(cert_grid, 1 << 16));
    if (!(r.upper < tol)) {
        std::ostringstream msg;
        msg << "reciprocal: residual sup bound " << r.upper << " does not reach tol " << tol
            << " at maxdeg " << maxdeg;
        throw ToleranceNotMet(msg.str());
    }
    return rho;
}

} // namespace rotalg
