#include "fracrel/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrel {

namespace {
void require_order(double s, const char* who) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument(std::string(who) + ": order must lie in (0,1), got " + std::to_string(s));
}
} // namespace

double k_constant(double s) {
    require_order(s, "k_constant");
    return std::pow(2.0, 1.0 - 2.0 * s) * std::tgamma(1.0 - s) / std::tgamma(s);
}

double c1_constant(double s) {
    require_order(s, "c1_constant");
    return k_constant(s) / (2.0 * s);
}

double c2_constant(double s) {
    require_order(s, "c2_constant");
    return std::pow(2.0, 0.5 * (1.0 - s)) * std::sqrt(M_PI) / std::tgamma(0.5 * s);
}

double tail_constant(double s) {
    require_order(s, "tail_constant");
    return std::pow(2.0, 0.5 * (1.0 - 2.0 * s)) * std::sqrt(M_PI) / std::tgamma(s);
}

} // namespace fracrel
