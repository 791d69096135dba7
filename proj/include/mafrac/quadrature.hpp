#pragma once

#include <functional>
#include <vector>

namespace mafrac {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
/// Supported n: 1..16 (computed once by Newton iteration on P_n).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

/// Integral of f over [a,b] with one n-point Gauss-Legendre panel.
double gauss_panel(const std::function<double(double)>& f, double a, double b, int n = 8);

/// Integral of f over [a,b] subdivided into `panels` equal panels.
double gauss_composite(const std::function<double(double)>& f, double a, double b,
                       int panels, int n = 8);

/// Geometric grid a, a*ratio, ... capped at b (last point forced to b).
/// Requires 0 < a < b, ratio > 1.
std::vector<double> geometric_grid(double a, double b, double ratio);

/// Integral of f over the graded grid, one Gauss panel per subinterval.
double gauss_graded(const std::function<double(double)>& f, const std::vector<double>& grid,
                    int n = 8);

/// Integral over (0, b] of z^p * f(z) with p > -1 and f continuous at 0:
/// geometric panels on [z0, b] plus the analytic startpoint correction
/// f(0) * z0^{p+1}/(p+1) for the omitted (0, z0] mass.  f is evaluated as
/// the full integrand divided by the weight; the weight is applied here.
double power_weighted_integral(const std::function<double(double)>& f, double b, double p,
                               double z0 = 1e-12, double ratio = 1.15, int n = 10);

} // namespace mafrac
