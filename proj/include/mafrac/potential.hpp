#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace mafrac {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Convex potential bundle: value, gradient and Hessian evaluators over
/// dimension n in {1,2}.  The Hessian must be symmetric positive definite
/// at every queried point.
struct Potential {
    int dim = 1;
    std::string label;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;

    /// phi(x) = c|x|^2, c > 0.
    static Potential quad(int dim, double c);
    /// phi(x) = 0.5 <Ax,x> for SPD A (dimension from A).
    static Potential aniso(const Mat& A);
    /// phi(x) = |x|^p / p, p > 2, n = 1.  Hessian undefined at x = 0.
    static Potential power1d(double p);
    /// phi(x) = |x|^2/2 + eps*|x|^4.
    static Potential perturbed_quad(int dim, double eps);
};

/// Point helpers for the two supported dimensions.
Vec pt(double x);
Vec pt(double x, double y);

/// Quasi-distance delta_phi(x0,x) = phi(x) - phi(x0) - <grad phi(x0), x-x0>.
/// Nonnegative by convexity; zero iff x == x0 for strictly convex phi.
double delta(const Potential& phi, const Vec& x0, const Vec& x);

/// Monge-Ampere density mu_phi(x) = det D^2 phi(x).
/// Throws std::domain_error if the Hessian is not positive definite at x.
double mu_density(const Potential& phi, const Vec& x);

} // namespace mafrac
