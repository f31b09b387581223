#pragma once

#include <functional>
#include <vector>

namespace fracrel {

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (cached per n; Newton on Legendre roots).
const GaussRule& gauss_legendre(int n);

/// ∫_a^b f dx with one n-point Gauss-Legendre panel.
double gl_panel(const std::function<double(double)>& f, double a, double b, int n = 8);

/// Composite rule over geometrically graded panels [a·r^j, a·r^{j+1}] up to b.
double gl_geometric(const std::function<double(double)>& f, double a, double b,
                    double ratio = 2.0, int n = 8);

} // namespace fracrel
