#include "fracrel/nonlinearity.hpp"

#include <cmath>
#include <limits>

namespace fracrel {

namespace {
inline double sgn(double t) { return t < 0.0 ? -1.0 : 1.0; }
} // namespace

double Nonlinearity::f(double t) const {
    switch (kind_) {
        case NonlinKind::Model:
            return a_ * t * t * t / (1.0 + t * t);
        case NonlinKind::Power:
            return t == 0.0 ? 0.0 : std::pow(std::abs(t), a_ - 2.0) * t;
        case NonlinKind::PowerSum: {
            const double at = std::abs(t);
            return sgn(t) * (std::pow(at, a_) + std::pow(at, b_));
        }
        case NonlinKind::LogLin: {
            const double at = std::abs(t);
            return sgn(t) * at * std::log1p(at);
        }
    }
    return 0.0;
}

double Nonlinearity::F(double t) const {
    switch (kind_) {
        case NonlinKind::Model:
            return 0.5 * a_ * (t * t - std::log1p(t * t));
        case NonlinKind::Power:
            return std::pow(std::abs(t), a_) / a_;
        case NonlinKind::PowerSum: {
            const double at = std::abs(t);
            return std::pow(at, a_ + 1.0) / (a_ + 1.0) + std::pow(at, b_ + 1.0) / (b_ + 1.0);
        }
        case NonlinKind::LogLin: {
            const double at = std::abs(t);
            return 0.5 * (at * at - 1.0) * std::log1p(at) - 0.25 * at * at + 0.5 * at;
        }
    }
    return 0.0;
}

double Nonlinearity::fprime(double t) const {
    switch (kind_) {
        case NonlinKind::Model: {
            const double t2 = t * t;
            const double d = 1.0 + t2;
            return a_ * t2 * (3.0 + t2) / (d * d);
        }
        case NonlinKind::Power:
            return t == 0.0 && a_ < 3.0 && a_ != 2.0 ? 0.0 : (a_ - 1.0) * std::pow(std::abs(t), a_ - 2.0);
        case NonlinKind::PowerSum: {
            const double at = std::abs(t);
            return a_ * std::pow(at, a_ - 1.0) + b_ * std::pow(at, b_ - 1.0);
        }
        case NonlinKind::LogLin: {
            const double at = std::abs(t);
            return std::log1p(at) + at / (1.0 + at);
        }
    }
    return 0.0;
}

double Nonlinearity::asymptotic_slope() const {
    switch (kind_) {
        case NonlinKind::Model:
            return a_;
        case NonlinKind::Power:
            return a_ == 2.0 ? 1.0 : std::numeric_limits<double>::infinity();
        case NonlinKind::PowerSum:
        case NonlinKind::LogLin:
            return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

std::string Nonlinearity::describe() const {
    switch (kind_) {
        case NonlinKind::Model:
            return "model(c=" + std::to_string(a_) + ")";
        case NonlinKind::Power:
            return "power(p=" + std::to_string(a_) + ")";
        case NonlinKind::PowerSum:
            return "power_sum(alpha=" + std::to_string(a_) + ", gamma=" + std::to_string(b_) + ")";
        case NonlinKind::LogLin:
            return "loglin";
    }
    return "?";
}

} // namespace fracrel
