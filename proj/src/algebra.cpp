#include "rotalg/algebra.hpp"

#include "rotalg/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rotalg {

std::vector<std::pair<long long, long long>>
continued_fraction_convergents(double theta, long long qmax) {
    std::vector<std::pair<long long, long long>> out;
    // Standard recurrence p_i = a_i p_{i-1} + p_{i-2}, same for q.
    long long p_prev = 0, q_prev = 1;  // index -2
    long long p_curr = 1, q_curr = 0;  // index -1
    double x = theta;
    for (int i = 0; i < 64; ++i) {
        const double a_floor = std::floor(x);
        if (a_floor < 0.0 || a_floor > 1e15) break;
        const long long a = static_cast<long long>(a_floor);
        if (i > 0 && a == 0) break;  // partial quotients past the first are >= 1
        if (q_curr > 0 && a > (4 * qmax) / q_curr) break;  // q would blow past qmax
        const long long p = a * p_curr + p_prev;
        const long long q = a * q_curr + q_prev;
        if (q > qmax || q <= 0) break;
        if (p > 0) out.emplace_back(p, q);
        p_prev = p_curr;
        q_prev = q_curr;
        p_curr = p;
        q_curr = q;
        const double frac = x - a_floor;
        if (frac < 1e-12) break;  // the double has no further reliable digits
        x = 1.0 / frac;
    }
    return out;
}

RotationParameter::RotationParameter(double theta, bool irrational,
                                     std::vector<std::pair<long long, long long>> convergents)
    : theta_(theta), irrational_(irrational), convergents_(std::move(convergents)) {
    if (!(theta > 0.0) || !(theta < 1.0)) {
        std::ostringstream msg;
        msg << "rotation parameter must lie in (0, 1), got " << theta;
        throw DomainError(msg.str());
    }
    for (const auto& [p, q] : convergents_) {
        if (q <= 0) throw DomainError("convergent denominators must be positive");
        const double gap = std::abs(theta_ - static_cast<double>(p) / static_cast<double>(q));
        if (!(gap < 1.0 / (static_cast<double>(q) * static_cast<double>(q)))) {
            std::ostringstream msg;
            msg << "stated convergent " << p << "/" << q << " violates |theta - p/q| < 1/q^2";
            throw DomainError(msg.str());
        }
    }
}

RotationParameter RotationParameter::golden() {
    const double theta = (std::sqrt(5.0) - 1.0) / 2.0;
    return RotationParameter(theta, true, continued_fraction_convergents(theta, 1000000));
}

Weight::Weight() : sigma_(std::numbers::e) {}

Weight::Weight(double sigma) : sigma_(sigma) {
    if (!(sigma >= 1.0)) {
        std::ostringstream msg;
        msg << "weight base must satisfy sigma >= 1, got " << sigma;
        throw DomainError(msg.str());
    }
}

double Weight::omega(int n) const {
    return std::pow(sigma_, std::abs(static_cast<double>(n)));
}

double Weight::signed_scale(int n) const {
    return std::pow(sigma_, static_cast<double>(n));
}

AlgebraElement::AlgebraElement(RotationParameter rotation, Weight weight)
    : rotation_(std::move(rotation)), weight_(weight) {}

AlgebraElement AlgebraElement::unit(const RotationParameter& rotation, const Weight& weight,
                                    int n) {
    AlgebraElement out(rotation, weight);
    out.terms_.emplace(n, TorusFunction::constant(Complex(1.0, 0.0)));
    return out;
}

AlgebraElement AlgebraElement::embed(const TorusFunction& phi, const RotationParameter& rotation,
                                     const Weight& weight) {
    AlgebraElement out(rotation, weight);
    if (!phi.is_zero()) out.terms_.emplace(0, phi);
    return out;
}

const TorusFunction& AlgebraElement::term(int n) const {
    static const TorusFunction kZero;
    auto it = terms_.find(n);
    return it == terms_.end() ? kZero : it->second;
}

int AlgebraElement::width() const {
    int w = 0;
    for (const auto& [n, fn] : terms_) w = std::max(w, std::abs(n));
    return w;
}

std::vector<int> AlgebraElement::support() const {
    std::vector<int> out;
    out.reserve(terms_.size());
    for (const auto& [n, fn] : terms_) out.push_back(n);
    return out;
}

AlgebraElement& AlgebraElement::add_term(int n, const TorusFunction& fn) {
    auto it = terms_.find(n);
    if (it == terms_.end()) {
        if (!fn.is_zero()) terms_.emplace(n, fn);
        return *this;
    }
    TorusFunction sum = it->second + fn;
    if (sum.is_zero()) {
        terms_.erase(it);
    } else {
        it->second = std::move(sum);
    }
    return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
    require_same_parameters(rhs);
    AlgebraElement out = *this;
    for (const auto& [n, fn] : rhs.terms_) out.add_term(n, fn);
    return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const {
    return *this + rhs.scaled(Complex(-1.0, 0.0));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
    require_same_parameters(rhs);
    AlgebraElement out(rotation_, weight_);
    const double theta = rotation_.value();
    // (F G)(m + k) += F(m) . (G(k) translated by m theta); iteration order is
    // fixed (increasing m, then increasing k) so results are deterministic.
    for (const auto& [m, fm] : terms_) {
        const double shift = static_cast<double>(m) * theta;
        for (const auto& [k, gk] : rhs.terms_) {
            out.add_term(m + k, fm * gk.translate(shift));
        }
    }
    return out;
}

AlgebraElement AlgebraElement::scaled(Complex a) const {
    AlgebraElement out(rotation_, weight_);
    if (a == Complex(0.0, 0.0)) return out;
    for (const auto& [n, fn] : terms_) out.terms_.emplace(n, fn.scaled(a));
    return out;
}

AlgebraElement AlgebraElement::adjoint() const {
    AlgebraElement out(rotation_, weight_);
    const double theta = rotation_.value();
    // F*(n) = conj(F(-n)(. - n theta)); unitaries satisfy u_n* = u_{-n}.
    for (const auto& [m, fm] : terms_) {
        const int n = -m;
        out.terms_.emplace(n, fm.translate(static_cast<double>(n) * theta).conjugate());
    }
    return out;
}

Interval AlgebraElement::norm_a(std::int64_t grid) const {
    Interval acc{0.0, 0.0};
    for (const auto& [n, fn] : terms_) {
        const double w = weight_.omega(n);
        const Interval s = fn.sup_norm(grid);
        acc.lower += w * s.lower;
        acc.upper += w * s.upper;
    }
    return acc;
}

Interval AlgebraElement::norm_l1(std::int64_t grid) const {
    Interval acc{0.0, 0.0};
    for (const auto& [n, fn] : terms_) {
        const Interval s = fn.sup_norm(grid);
        acc.lower += s.lower;
        acc.upper += s.upper;
    }
    return acc;
}

TorusFunction AlgebraElement::project_zero() const {
    return term(0);
}

std::pair<AlgebraElement, double> AlgebraElement::truncate_support(int N) const {
    if (N < 0) throw DomainError("truncate_support: N must be nonnegative");
    AlgebraElement head(rotation_, weight_);
    double tail = 0.0;
    for (const auto& [n, fn] : terms_) {
        if (std::abs(n) <= N) {
            head.terms_.emplace(n, fn);
        } else {
            tail += weight_.omega(n) * fn.sup_norm().upper;
        }
    }
    return {head, tail};
}

bool AlgebraElement::same_parameters(const AlgebraElement& rhs) const {
    return rotation_.value() == rhs.rotation_.value() &&
           weight_.sigma() == rhs.weight_.sigma();
}

void AlgebraElement::require_same_parameters(const AlgebraElement& rhs) const {
    if (!same_parameters(rhs)) {
        std::ostringstream msg;
        msg << "mixed algebra parameters: (theta = " << rotation_.value()
            << ", sigma = " << weight_.sigma() << ") vs (theta = " << rhs.rotation_.value()
            << ", sigma = " << rhs.weight_.sigma() << ")";
        throw MismatchedParameters(msg.str());
    }
}

} // namespace rotalg
