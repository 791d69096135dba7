#include "mafrac/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace mafrac {

Vec pt(double x) {
    Vec v(1);
    v << x;
    return v;
}

Vec pt(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

Potential Potential::quad(int dim, double c) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("quad: dim must be 1 or 2");
    if (c <= 0.0) throw std::invalid_argument("quad: c must be positive");
    Potential p;
    p.dim = dim;
    p.label = "quad";
    p.value = [c](const Vec& x) { return c * x.squaredNorm(); };
    p.gradient = [c](const Vec& x) { return Vec(2.0 * c * x); };
    p.hessian = [c, dim](const Vec&) { return Mat(2.0 * c * Mat::Identity(dim, dim)); };
    return p;
}

Potential Potential::aniso(const Mat& A) {
    if (A.rows() != A.cols() || (A.rows() != 1 && A.rows() != 2))
        throw std::invalid_argument("aniso: A must be 1x1 or 2x2");
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-14 * A.cwiseAbs().maxCoeff())
        throw std::invalid_argument("aniso: A must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("aniso: A must be positive definite");
    Potential p;
    p.dim = static_cast<int>(A.rows());
    p.label = "aniso";
    p.value = [A](const Vec& x) { return 0.5 * x.dot(A * x); };
    p.gradient = [A](const Vec& x) { return Vec(A * x); };
    p.hessian = [A](const Vec&) { return A; };
    return p;
}

Potential Potential::power1d(double p_exp) {
    if (p_exp <= 2.0) throw std::invalid_argument("power1d: need p > 2");
    Potential p;
    p.dim = 1;
    p.label = "power1d";
    p.value = [p_exp](const Vec& x) { return std::pow(std::abs(x[0]), p_exp) / p_exp; };
    p.gradient = [p_exp](const Vec& x) {
        double ax = std::abs(x[0]);
        return pt(std::pow(ax, p_exp - 1.0) * (x[0] >= 0.0 ? 1.0 : -1.0));
    };
    p.hessian = [p_exp](const Vec& x) {
        Mat H(1, 1);
        H(0, 0) = (p_exp - 1.0) * std::pow(std::abs(x[0]), p_exp - 2.0);
        return H;
    };
    return p;
}

Potential Potential::perturbed_quad(int dim, double eps) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("perturbed_quad: dim must be 1 or 2");
    if (eps < 0.0) throw std::invalid_argument("perturbed_quad: eps must be >= 0");
    Potential p;
    p.dim = dim;
    p.label = "perturbedQuad";
    p.value = [eps](const Vec& x) {
        double r2 = x.squaredNorm();
        return 0.5 * r2 + eps * r2 * r2;
    };
    p.gradient = [eps](const Vec& x) {
        double r2 = x.squaredNorm();
        return Vec(x * (1.0 + 4.0 * eps * r2));
    };
    p.hessian = [eps, dim](const Vec& x) {
        double r2 = x.squaredNorm();
        Mat H = (1.0 + 4.0 * eps * r2) * Mat::Identity(dim, dim);
        H += 8.0 * eps * x * x.transpose();
        return H;
    };
    return p;
}

double delta(const Potential& phi, const Vec& x0, const Vec& x) {
    return phi.value(x) - phi.value(x0) - phi.gradient(x0).dot(x - x0);
}

double mu_density(const Potential& phi, const Vec& x) {
    Mat H = phi.hessian(x);
    double det = H.determinant();
    // definiteness check: 1x1 needs positive entry, 2x2 also a positive diagonal
    if (det <= 0.0 || H(0, 0) <= 0.0)
        throw std::domain_error("mu_density: Hessian not positive definite at queried point");
    return det;
}

} // namespace mafrac
