#pragma once

#include <stdexcept>
#include <string>

namespace fracrel {

enum class NonlinKind { Model, Power, PowerSum, LogLin };

/// Tagged nonlinearity family with f, F = ∫₀^t f, and f'. All members are
/// odd in t (the power-type kinds via odd extension), so F is even and
/// F(0) = f(0) = 0.
///
///   Model(c):      f(t) = c t³/(1+t²), asymptotically linear with slope c
///   Power(p):      f(t) = |t|^{p-2} t, p >= 2
///   PowerSum(α,γ): f(t) = sgn(t)(|t|^α + |t|^γ), α, γ > 1
///   LogLin:        f(t) = sgn(t) |t| ln(1+|t|)
class Nonlinearity {
public:
    static Nonlinearity model(double c) {
        if (!(c > 0.0)) throw std::invalid_argument("Nonlinearity: model constant must be positive");
        Nonlinearity n;
        n.kind_ = NonlinKind::Model;
        n.a_ = c;
        return n;
    }
    static Nonlinearity power(double p) {
        if (!(p >= 2.0)) throw std::invalid_argument("Nonlinearity: power exponent must be >= 2");
        Nonlinearity n;
        n.kind_ = NonlinKind::Power;
        n.a_ = p;
        return n;
    }
    static Nonlinearity power_sum(double alpha, double gamma) {
        if (!(alpha > 1.0 && gamma > 1.0))
            throw std::invalid_argument("Nonlinearity: power-sum exponents must be > 1");
        Nonlinearity n;
        n.kind_ = NonlinKind::PowerSum;
        n.a_ = alpha;
        n.b_ = gamma;
        return n;
    }
    static Nonlinearity loglin() {
        Nonlinearity n;
        n.kind_ = NonlinKind::LogLin;
        return n;
    }

    NonlinKind kind() const { return kind_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }

    double f(double t) const;
    double F(double t) const;
    double fprime(double t) const;

    /// lim_{t→∞} f(t)/t: the model constant for Model, 1 for Power(2),
    /// +inf for the superlinear kinds.
    double asymptotic_slope() const;

    std::string describe() const;

private:
    Nonlinearity() = default;
    NonlinKind kind_ = NonlinKind::Model;
    double a_ = 0.0;
    double b_ = 0.0;
};

} // namespace fracrel
