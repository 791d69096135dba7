#pragma once

#include <functional>
#include <vector>

#include "mafrac/fractional.hpp"
#include "mafrac/operators.hpp"
#include "mafrac/tensor.hpp"

namespace mafrac {

/// Scalar field on a tensor section with first derivatives, supplied as
/// callbacks so analytic fields and mode-sum reconstructions plug in alike.
/// `dz` at z = 0 should return the one-sided limit from z > 0; the section
/// integrals only consume its square there.
struct SampleFunction {
    std::function<double(const Vec&, double)> value;
    std::function<Vec(const Vec&, double)> grad_x; ///< gradient in the base variable
    std::function<double(const Vec&, double)> dz;  ///< derivative in the profile variable
};

/// One inner-ratio row of a Harnack measurement.
struct HarnackEntry {
    double kappa = 0.0; ///< inner height ratio, inner section is S(x0, kappa R)
    double sup = 0.0;
    double inf = 0.0;
    double quotient = 1.0;      ///< sup / inf over inner nodes
    double constant = 0.0;      ///< sup / (inf + R^s sup|f|), the instance constant
    double sigma_mean = 0.0;    ///< (average of v^{1/2} over the outer section)^2
    double weak_constant = 0.0; ///< sigma_mean / (inf + R^s sup|f|)
    int inner_nodes = 0;
};

/// Harnack measurement for v = L^{-s} f on sections nested around x0. The
/// reported constants are instance values: the smallest constants making the
/// sup bound (and its weak, sigma-mean variant) hold for this datum and mesh.
struct HarnackReport {
    double s = 0.5;
    double R = 0.0;
    double K9 = 0.0;    ///< outer height ratio, outer section is S(x0, K9 R)
    double fsup = 0.0;  ///< sup of f over the outer section
    int resolution = 0; ///< interior node count of the solve mesh
    std::vector<HarnackEntry> entries;
    Vec v; ///< the solved profile, interior-indexed, for reuse by callers
};

/// Solves v = L^{-s} f on the operators' section and measures sup/inf ratios
/// of v over the inner sections S(x0, kappa R), one entry per kappa in input
/// order. Requires f >= 0, the outer section S(x0, K9 R) compactly inside the
/// mesh, and at least 50 interior nodes in every inner section.
HarnackReport harnack_quotient(const DiscreteOperators& ops, double s, const Vec& f,
                               const Vec& x0, double R, const std::vector<double>& kappas,
                               double K9 = 9.0);

/// Power-law fit |v(x0) - v(x)| <= C delta(x0,x)^q over section nodes.
struct HolderFit {
    double exponent = 0.0;
    double coefficient = 0.0;
    double r2 = 1.0; ///< coefficient of determination of the log-log fit
    int pairs = 0;   ///< node pairs entering the regression
};

/// Log-log regression of |v(x0) - v(x)| against delta(x0, x) over the nodes
/// of S(x0, R) inside the meshed section. The anchor value is taken at the
/// node nearest to x0. Throws when fewer than 30 pairs carry signal; a
/// constant v short-circuits to coefficient 0.
HolderFit holder_seminorm(const Section& sec, const Vec& v, const Vec& x0, double R);

struct PoincareReport {
    double lhs = 0.0;    ///< mean of |G - mean G| over the section
    double rhs = 0.0;    ///< sqrt(R) * sqrt(mean gradient energy on the dilate)
    double ratio = 0.0;  ///< lhs / rhs, 0 when the energy vanishes
    double volume = 0.0; ///< mu_Phi measure of the section
};

/// Measures the oscillation mean of G over S_Phi((x0,z0), R) against the
/// dilated gradient energy sqrt(R) (mean over S_Phi((x0,z0), K2 R) of
/// <(D2 phi)^{-1} grad G, grad G> + |z|^{2-1/s} G_z^2)^{1/2}. The ratio is an
/// observed lower bound for the Poincare constant of the section family.
PoincareReport poincare_check(const TensorPotential& T, const Vec& x0, double z0, double R,
                              const SampleFunction& G, double K2 = 2.0, int resolution = 48);

struct FabesReport {
    double mean_abs = 0.0; ///< mean of |G| over the section
    double eps = 0.0;      ///< measure fraction of the zero set of G
    double kernel = 0.0;   ///< dilated gradient-energy kernel, as in PoincareReport::rhs
    double bound = 0.0;    ///< (1 + 1/eps) * kp * 1.1 * kernel
    double margin = 0.0;   ///< bound / mean_abs
    bool ok = false;
};

/// Checks the vanishing-set mean bound: a function that is zero on an eps
/// fraction of the section has |G|-mean controlled by (1 + 1/eps) times the
/// Poincare ratio kp (padded by a 1.1 safety factor) times the gradient
/// kernel. The zero fraction is estimated on the quadrature grid.
FabesReport fabes_check(const TensorPotential& T, const Vec& x0, double z0, double R,
                        const SampleFunction& G, double kp, double K2 = 2.0, int resolution = 48);

struct LogEnergyReport {
    double lhs = 0.0;   ///< mean of |grad^Phi log H|^2 over the section
    double bound = 0.0; ///< 32 (n + 2) Kd^2 / R
    double hmin = 0.0;  ///< smallest H value met by the quadrature
    bool ok = false;
};

/// Mean logarithmic gradient energy of a positive field H over
/// S_Phi((x0,z0), R) against the doubling-driven bound 32 (n+2) Kd^2 / R,
/// n the base dimension. Throws when the quadrature meets H <= 0.
LogEnergyReport log_energy_check(const TensorPotential& T, const Vec& x0, double z0, double R,
                                 const SampleFunction& H, double Kd, int resolution = 48);

} // namespace mafrac
