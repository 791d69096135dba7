#pragma once

#include <vector>

#include "mafrac/operators.hpp"

namespace mafrac {

enum class ExtVar { y_form, z_form };
enum class TraceMethod { analytic, difference_quotient };

/// Mode-sum solution of the degenerate extension problem over a spectral
/// basis: U(x,w) = sum_k u_k c_k(w) e_k(x), where the profile c_k solves the
/// extension ODE for eigenvalue lambda_k and equals 1 at w = 0.  The y-form
/// carries the weight y^{1-2s}; the z-form is its reparametrization through
/// z = (y/2s)^{2s} and satisfies z^{2-1/s} d_zz = lambda per mode.  The field
/// only references the basis; keep the owning operators alive while using it.
struct ExtensionField {
    const SpectralBasis* basis = nullptr;
    double s = 0.5;
    Vec uk;                    ///< coefficients of the boundary datum
    ExtVar var = ExtVar::y_form;
    std::vector<double> grid;  ///< evaluation grid in the extension variable

    /// Per-mode profile at height w (c_k(y) or its z-form twin), 1 at w = 0.
    double profile(int k, double w) const;
    /// d/dw of the profile.  At w = 0 the z-form limit is the Neumann trace
    /// value -d_s lambda^s; the y-form derivative needs w > 0.
    double profile_deriv(int k, double w) const;
    /// Nodal values of the field at height w.
    Vec slice(double w) const;
    /// Height-zero data, the synthesis of uk.
    Vec boundary() const;
};

/// Default extension-variable grid: geometric grading, ratio 1.15, from
/// 1e-10 up to 40/sqrt(lambda1), where the slowest mode profile has fully
/// decayed.
std::vector<double> extension_grid(double lambda1);

/// Extension of u through the weighted divergence-form problem: coefficients
/// are taken in the basis, profiles are the Bessel-K solutions normalized to
/// 1 at the bottom.  Throws std::invalid_argument for s outside (0,1), a
/// size mismatch, or a grid that is not positive ascending.
ExtensionField solve_extension_div(const SpectralBasis& basis, double s, const Vec& u,
                                   std::vector<double> y_grid);

/// Toggle between the y-form and z-form of the same field.  Grids map
/// through z = (y/2s)^{2s} and back; the round trip is the identity.
ExtensionField change_variables(const ExtensionField& field);

/// Bottom trace of the conormal derivative.  analytic: the closed-form
/// per-mode limit, d_s lambda^s u_k for a z-form field (-lim V_z) and
/// c_s lambda^s u_k for a y-form one (-lim y^a U_y).  difference_quotient:
/// Richardson-extrapolated one-sided quotients (v - V(.,z_j))/z_j over
/// decreasing z-levels (default 2^-10..2^-20), estimating d_s L^s v; the
/// error exponent is fitted from the levels.  Throws std::runtime_error if
/// the extrapolants fail to settle.
Vec neumann_trace(const ExtensionField& field, TraceMethod method,
                  const std::vector<double>& z_levels = {});

/// The separable exact solution attached to a section: with
/// v(x) = R - delta(x0,x) and alpha(x) = n/v(x), the z-form extension of v
/// is v(x) g(z; alpha) and its trace is d_s n^s v(x)^{1-s}.  Values are
/// indexed by interior node.
struct ClosedFormExample {
    double s = 0.5;
    Vec vphi;   ///< R - delta at interior nodes
    Vec trace;  ///< d_s n^s vphi^{1-s}
    int n = 1;  ///< base dimension

    /// Profile g(z) at interior node i, equal to 1 at z = 0.
    double g(int i, double z) const;
    /// dg/dz at interior node i, z > 0.
    double g_deriv(int i, double z) const;
    /// V(x_i, z) = vphi_i g_i(z).
    double value(int i, double z) const;
};

ClosedFormExample closed_form_example(const Section& sec, double s);

/// Two sides of an energy identity and their relative gap.
struct EnergyReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    bool ok = false;
};

/// Weighted y-form energy against its closed form:
/// sum_k u_k^2 int_0^inf y^{1-2s} (lambda_k c_k^2 + c_k'^2) dy
/// versus c_s sum_k lambda_k^s u_k^2.  Graded per-mode quadrature with
/// analytic corrections for the truncated endpoint.  tol sets report.ok.
EnergyReport energy_identity_check(const SpectralBasis& basis, double s, const Vec& u,
                                   double tol = 1e-6);

/// z-form energy sum_k u_k^2 int (lambda_k b_k^2 z^{1/s-2} + b_k'^2) dz
/// versus (2s)^{2s-1} c_s sum_k lambda_k^s u_k^2.
EnergyReport finite_energy_check(const SpectralBasis& basis, double s, const Vec& u,
                                 double tol = 1e-4);

/// Log-log refinement study of the z-form PDE residual
/// -L V + z^{2-1/s} V_zz at a fixed height, with V_zz replaced by a second
/// difference of half-width dz and L applied spectrally.  slope is the
/// least-squares fit of log(residual) against log(dz).
struct ResidualStudy {
    std::vector<double> dz;
    std::vector<double> residual; ///< max abs over interior nodes
    double slope = 0.0;
};

ResidualStudy pde_residual_study(const ExtensionField& field, double z_center,
                                 const std::vector<double>& dz_list);

} // namespace mafrac
