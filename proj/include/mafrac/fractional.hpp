#pragma once

#include <vector>

#include "mafrac/operators.hpp"

namespace mafrac {

enum class FieldOrigin { spectral, semigroup, extension_trace, closed_form };

/// Result of a fractional-power computation on a section: interior nodal
/// values, spectral coefficients when the route produced them, and the
/// estimated quadrature error for semigroup routes.
struct FracField {
    double s = 0.5;
    FieldOrigin origin = FieldOrigin::spectral;
    Vec nodal;
    Vec coeff;
    double quad_error = 0.0;
};

/// Sum lambda_k^s v_k e_k over the given basis.
FracField frac_apply_spectral(const SpectralBasis& basis, double s, const Vec& v);

/// Sum lambda_k^{-s} f_k e_k; left inverse of frac_apply_spectral.
FracField frac_solve_spectral(const SpectralBasis& basis, double s, const Vec& f);

/// Quadrature controls for the semigroup (Bochner integral) routes. Panel
/// counts double until two refinements agree below tol; the heat solves use
/// either the exact eigenexp stepper or Crank-Nicolson with t/cn_steps steps
/// per evaluation (the eigen-free oracle).
struct FracQuad {
    double split = 0.0; ///< integral split point A; 0 selects 1/lambda_1
    int panel_nodes = 10;
    int min_panels = 8;
    int max_doublings = 7;
    double tol = 1e-10;
    Scheme::Kind scheme = Scheme::eigenexp;
    double cn_steps = 500.0;

    static FracQuad CrankNicolson() {
        FracQuad q;
        q.scheme = Scheme::crank_nicolson;
        q.tol = 1e-4;
        q.panel_nodes = 8;
        q.min_panels = 6;
        return q;
    }
};

/// L^s v through (1/Gamma(-s)) int_0^inf (e^{-tL}v - v) t^{-1-s} dt. The
/// lower piece is regularized by t = tau^{1/(1-s)}; on the upper piece the
/// constant part integrates in closed form and the heat part is truncated
/// once e^{-lambda_1 T}||v|| drops below 1e-14. Throws if panel doubling
/// cannot reach the requested tolerance.
FracField frac_apply_semigroup(const DiscreteOperators& ops, double s, const Vec& v,
                               const FracQuad& quad = {});

/// L^{-s} f through (1/Gamma(s)) int_0^inf e^{-tL} f t^{s-1} dt with the
/// constant-Jacobian substitution t = tau^{1/s} on the lower piece.
FracField frac_solve_semigroup(const DiscreteOperators& ops, double s, const Vec& f,
                               const FracQuad& quad = {});

struct InterpolationReport {
    double lhs = 0.0;   ///< sup norm of L^s v
    double bound = 0.0; ///< (2^{1-s}/Gamma(2-s)) ||Lv||^s ||v||^{1-s}
    double ratio = 0.0;
    bool ok = false;
};

/// Fractional interpolation inequality between ||v||, ||Lv|| and ||L^s v||
/// in the sup norm.
InterpolationReport interpolation_check(const DiscreteOperators& ops, const SpectralBasis& basis,
                                        double s, const Vec& v);

struct MaxPrincipleReport {
    std::vector<int> zeros; ///< interior indices where v vanishes
    double worst = 0.0;     ///< max of (L^s v) over the zeros
    bool ok = false;        ///< worst <= 1e-10
};

/// Nonlocal maximum principle: v >= 0 with interior zeros forces L^s v <= 0
/// there. Requires at least one zero; v must be nonnegative.
MaxPrincipleReport max_principle_check(const SpectralBasis& basis, double s, const Vec& v);

/// Smallest generalized eigenvalue by inverse iteration; used for quadrature
/// split points without a full decomposition.
double lambda1_estimate(const DiscreteOperators& ops);

} // namespace mafrac
