#include "mafrac/special.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace mafrac::special {

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    }
    // Lanczos, g = 7
    static const double lg[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};
    double z = x - 1.0;
    double acc = lg[0];
    for (int i = 1; i < 9; ++i) acc += lg[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

// Coefficients of 1/Gamma(t) = sum a_k t^k (Abramowitz & Stegun 6.1.34),
// equivalently 1/Gamma(1+t) = sum a_{k+1} t^k.
static const double inv_gamma_a[26] = {
    1.0000000000000000,  0.5772156649015329,  -0.6558780715202538,
    -0.0420026350340952, 0.1665386113822915,  -0.0421977345555443,
    -0.0096219715278770, 0.0072189432466630,  -0.0011651675918591,
    -0.0002152416741149, 0.0001280502823882,  -0.0000201348547807,
    -0.0000012504934821, 0.0000011330272320,  -0.0000002056338417,
    0.0000000061160950,  0.0000000050020075,  -0.0000000011812746,
    0.0000000001043427,  0.0000000000077823,  -0.0000000000036968,
    0.0000000000005100,  -0.0000000000000206, -0.0000000000000054,
    0.0000000000000014,  0.0000000000000001};

// For |mu| <= 1/2: gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu),
// gam1 = (gammi - gampl)/(2 mu) continued through mu = 0,
// gam2 = (gammi + gampl)/2.  The even/odd splits avoid cancellation.
static void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    double podd = 0.0, peven = 0.0, mp = 1.0;  // mp = mu^k
    for (int k = 0; k < 26; ++k) {
        if (k % 2 == 0)
            peven += inv_gamma_a[k] * mp;
        else
            podd += inv_gamma_a[k] * mp;
        mp *= mu;
    }
    gampl = peven + podd;
    gammi = peven - podd;
    gam1 = (mu == 0.0) ? -inv_gamma_a[1] : -podd / mu;
    gam2 = peven;
}

// Temme series for K_mu(x), K_{mu+1}(x), |mu| <= 1/2, 0 < x <= 2.
static void bessel_k_series(double x, double mu, double& kmu, double& kmu1) {
    const double eps = DBL_EPSILON;
    double x2 = 0.5 * x;
    double pimu = M_PI * mu;
    double fact = (std::abs(pimu) < 1e-15) ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    double fact2 = (std::abs(e) < 1e-15) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    double ee = std::exp(e);
    double p = 0.5 * ee / gampl;
    double q = 0.5 / (ee * gammi);
    double c = 1.0;
    double d2 = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= 10000; ++i) {
        ff = (i * ff + p + q) / (i * i - mu * mu);
        c *= d2 / i;
        p /= (i - mu);
        q /= (i + mu);
        double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::abs(del) < std::abs(sum) * eps) break;
    }
    if (i > 10000) throw std::runtime_error("bessel_k: series failed to converge");
    kmu = sum;
    kmu1 = sum1 * 2.0 / x;
}

// Thompson-Barnett CF2 for K_mu(x), K_{mu+1}(x), |mu| <= 1/2, x > 2.
static void bessel_k_cf2(double x, double mu, double& kmu, double& kmu1) {
    const double eps = DBL_EPSILON;
    double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    if (i > 10000) throw std::runtime_error("bessel_k: continued fraction failed to converge");
    h = a1 * h;
    kmu = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
    kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

double bessel_k(double nu, double r) {
    if (r <= 0.0) throw std::domain_error("bessel_k: requires r > 0");
    if (nu <= 0.0 || nu >= 2.0) throw std::domain_error("bessel_k: order restricted to (0,2)");
    int m = static_cast<int>(std::lround(nu));
    double mu = nu - m;  // |mu| <= 1/2
    double kmu, kmu1;
    if (r <= 2.0)
        bessel_k_series(r, mu, kmu, kmu1);
    else
        bessel_k_cf2(r, mu, kmu, kmu1);
    // upward recurrence K_{v+1} = K_{v-1} + (2v/r) K_v
    for (int j = 1; j <= m; ++j) {
        double knext = kmu + (mu + j) * (2.0 / r) * kmu1;
        kmu = kmu1;
        kmu1 = knext;
    }
    return kmu;
}

} // namespace mafrac::special

namespace mafrac {

FracParams::FracParams(double s_in) : s(s_in) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FracParams: s must be in (0,1)");
    a = 1.0 - 2.0 * s;
    d_s = std::pow(s, 2.0 * s) * special::gamma_fn(1.0 - s) / special::gamma_fn(1.0 + s);
    c_s = special::gamma_fn(1.0 - s) / (std::pow(4.0, s - 0.5) * special::gamma_fn(s));
}

} // namespace mafrac
