#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mafrac/potential.hpp"
#include "mafrac/section.hpp"

namespace mafrac {

/// Product potential Phi(x,z) = phi(x) + h_s(z), with the power profile
/// h_s(z) = s^2/(1-s) |z|^{1/s} whose Hessian factor |z|^{1/s-2} is the
/// density of its own Monge-Ampere measure. The companion exponent a = 1-2s
/// is kept alongside s.
struct TensorPotential {
    Potential base;
    double s = 0.5;
    double a = 0.0;
    Potential zpot; ///< h_s wrapped as a 1-d potential

    TensorPotential(Potential base_potential, double s_in);

    double hs(double z) const;
    double hs_prime(double z) const;
    double hs_second(double z) const;

    double value(const Vec& x, double z) const;
    double delta_z(double z0, double z) const;
    /// Full first-order increment of Phi at (x0,z0), evaluated from the joint
    /// formula rather than the split into base and profile parts.
    double delta(const Vec& x0, double z0, const Vec& x, double z) const;
    double mu(const Vec& x, double z) const;
};

/// Section of h_s at center z0 and height rho: the interval [zl, zr] with
/// delta_z(z0, .) = rho at both ends.
std::pair<double, double> hs_section(const TensorPotential& T, double z0, double rho);

/// Closed-form h_s measure of an interval, hs'(zr) - hs'(zl).
double mu_hs_measure(const TensorPotential& T, double zl, double zr);

struct InclusionReport {
    int trials = 0;
    int violations = 0;
    bool ok = true;
    std::string witness; ///< first violating point, if any
};

/// Randomized check of the sandwich S_Phi(X0,R) within S_phi(x0,R) x S_hs(z0,R)
/// within S_Phi(X0,2R), by membership tests on sampled points.
InclusionReport tensor_section_inclusions(const TensorPotential& T, const Vec& x0, double z0,
                                          double R, int trials, unsigned seed = 1234);

/// mu_Phi measure of S_Phi((x0,z0),R) by Fubini: per base point the z slice
/// contributes its closed-form h_s measure.
double tensor_measure(const TensorPotential& T, const Vec& x0, double z0, double R,
                      int resolution = 64);

/// Empirical dilation doubling constant for Phi: max over samples (x0,z0,R)
/// of mu_Phi(S) / mu_Phi(half S), the half dilation taken about the Lebesgue
/// center of mass of the tensor section.
double tensor_doubling_estimate(const TensorPotential& T,
                                const std::vector<std::tuple<Vec, double, double>>& samples,
                                int resolution = 64);

/// Energy of the gradient increment of Phi over S_Phi((x0,z0),R) against
/// mu_Phi. The z part reduces to closed forms; the base part is integrated
/// with panels graded toward the slice-collapse boundary.
double tensor_quasi_distance_energy(const TensorPotential& T, const Vec& x0, double z0, double R,
                                    int resolution = 64);

/// Integral over S_Phi((x0,z0),R) of F(x,z) mu_phi(x) |z|^p dx dz, by Fubini
/// with graded base panels and weighted z-slice quadrature. p = 1/s-2 gives
/// d mu_Phi; p = 0 drops the profile weight. resolution scales the panel
/// counts of both directions.
double tensor_weighted_integral(const TensorPotential& T, const Vec& x0, double z0, double R,
                                double p, const std::function<double(const Vec&, double)>& F,
                                int resolution = 48);

} // namespace mafrac
