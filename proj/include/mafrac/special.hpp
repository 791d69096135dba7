#pragma once

namespace mafrac::special {

/// Gamma function via Lanczos approximation (g = 7, 9 terms), reflection
/// formula for x < 0.5.  Relative error <= 1e-13 on [-10, 30] away from
/// the poles.  Throws std::domain_error at nonpositive integers.
double gamma_fn(double x);

/// Modified Bessel function of the second kind K_nu(r) for nu in (0,2),
/// r > 0.  Small arguments (r <= 2) use the reflection series through
/// I_{+nu} and I_{-nu} arranged in Temme's cancellation-free form, which
/// passes smoothly through integer nu (the log-limit terms are built in);
/// large arguments use the Thompson-Barnett continued fraction.  Relative
/// error ~1e-14 over nu in [0.05, 1.95], r in [1e-6, 50].
double bessel_k(double nu, double r);

} // namespace mafrac::special

namespace mafrac {

/// The two trace constants of the fractional calculus and the weight
/// exponent a = 1-2s.  d_s converts the z-variable Neumann limit into
/// L^s, c_s the y-variable weighted limit; they satisfy
/// c_s = d_s / (2s)^{2s-1} and d_{1/2} = c_{1/2} = 1.
struct FracParams {
    double s;
    double a;    // 1 - 2s
    double d_s;  // s^{2s} Gamma(1-s) / Gamma(1+s)
    double c_s;  // Gamma(1-s) / (4^{s-1/2} Gamma(s))
    explicit FracParams(double s);
};

} // namespace mafrac
