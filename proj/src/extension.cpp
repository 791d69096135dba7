#include "mafrac/extension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mafrac/quadrature.hpp"
#include "mafrac/special.hpp"

namespace mafrac {

namespace {

double mnorm(const Vec& Mdiag, const Vec& v) { return std::sqrt(v.dot(Mdiag.cwiseProduct(v))); }

// (2^{1-s}/Gamma(s)) w^s K_s(w), the profile normalized to 1 at w = 0
double bessel_profile(double s, double w) {
    if (w == 0.0) return 1.0;
    if (w > 705.0) return 0.0; // K_s underflows
    return std::pow(2.0, 1.0 - s) / special::gamma_fn(s) * std::pow(w, s) *
           special::bessel_k(s, w);
}

// d/dy of bessel_profile(s, sqrt(lambda) y)
double bessel_profile_deriv(double s, double lambda, double y) {
    double w = std::sqrt(lambda) * y;
    if (w > 705.0) return 0.0;
    return -std::pow(2.0, 1.0 - s) / special::gamma_fn(s) * std::sqrt(lambda) * std::pow(w, s) *
           special::bessel_k(1.0 - s, w);
}

double y_of_z(double s, double z) { return 2.0 * s * std::pow(z, 0.5 / s); }
double z_of_y(double s, double y) { return std::pow(y / (2.0 * s), 2.0 * s); }

} // namespace

double ExtensionField::profile(int k, double w) const {
    if (w < 0.0) throw std::domain_error("extension: profile argument must be nonnegative");
    double y = var == ExtVar::y_form ? w : y_of_z(s, w);
    return bessel_profile(s, std::sqrt(basis->lambda(k)) * y);
}

double ExtensionField::profile_deriv(int k, double w) const {
    if (w < 0.0) throw std::domain_error("extension: profile argument must be nonnegative");
    double lambda = basis->lambda(k);
    if (var == ExtVar::y_form) {
        if (w == 0.0)
            throw std::domain_error("extension: y-form profile derivative needs y > 0");
        return bessel_profile_deriv(s, lambda, w);
    }
    if (w == 0.0) return -FracParams(s).d_s * std::pow(lambda, s);
    double wbes = 2.0 * s * std::sqrt(lambda) * std::pow(w, 0.5 / s);
    if (wbes > 705.0) return 0.0;
    return -2.0 * std::pow(s, s) / special::gamma_fn(s) * std::pow(lambda, 0.5 * (s + 1.0)) *
           std::pow(w, 0.5 / s - 0.5) * special::bessel_k(1.0 - s, wbes);
}

Vec ExtensionField::slice(double w) const {
    Vec c = uk;
    for (int k = 0; k < c.size(); ++k) c(k) *= profile(k, w);
    return basis->synth(c);
}

Vec ExtensionField::boundary() const { return basis->synth(uk); }

std::vector<double> extension_grid(double lambda1) {
    return geometric_grid(1e-10, 40.0 / std::sqrt(lambda1), 1.15);
}

ExtensionField solve_extension_div(const SpectralBasis& basis, double s, const Vec& u,
                                   std::vector<double> y_grid) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("extension: s must lie in (0,1)");
    if (u.size() != basis.E.rows())
        throw std::invalid_argument("extension: datum size does not match the basis");
    if (y_grid.empty()) y_grid = extension_grid(basis.lambda(0));
    for (size_t i = 0; i < y_grid.size(); ++i)
        if (!(y_grid[i] > 0.0) || (i > 0 && y_grid[i] <= y_grid[i - 1]))
            throw std::invalid_argument("extension: grid must be positive ascending");
    ExtensionField f;
    f.basis = &basis;
    f.s = s;
    f.uk = basis.coeffs(u);
    f.var = ExtVar::y_form;
    f.grid = std::move(y_grid);
    return f;
}

ExtensionField change_variables(const ExtensionField& field) {
    ExtensionField out = field;
    out.var = field.var == ExtVar::y_form ? ExtVar::z_form : ExtVar::y_form;
    for (double& w : out.grid)
        w = field.var == ExtVar::y_form ? z_of_y(field.s, w) : y_of_z(field.s, w);
    return out;
}

Vec neumann_trace(const ExtensionField& field, TraceMethod method,
                  const std::vector<double>& z_levels) {
    const SpectralBasis& basis = *field.basis;
    FracParams fp(field.s);
    if (method == TraceMethod::analytic) {
        double factor = field.var == ExtVar::z_form ? fp.d_s : fp.c_s;
        Vec c = field.uk;
        for (int k = 0; k < c.size(); ++k) c(k) *= factor * std::pow(basis.lambda(k), field.s);
        return basis.synth(c);
    }

    ExtensionField fz = field.var == ExtVar::z_form ? field : change_variables(field);
    std::vector<double> levels = z_levels;
    if (levels.empty())
        for (int j = 10; j <= 20; ++j) levels.push_back(std::pow(2.0, -j));
    if (levels.size() < 3)
        throw std::invalid_argument("neumann_trace: need at least three z-levels");
    std::sort(levels.begin(), levels.end(), std::greater<double>());

    Vec v0 = fz.boundary();
    std::vector<Vec> D;
    for (double z : levels) D.push_back((v0 - fz.slice(z)) / z);

    // successive-difference norms estimate the leading error exponent
    std::vector<double> d;
    for (size_t j = 0; j + 1 < D.size(); ++j) d.push_back(mnorm(basis.Mdiag, D[j + 1] - D[j]));
    std::vector<double> lg;
    for (size_t j = d.size() >= 3 ? d.size() - 3 : 0; j + 1 < d.size(); ++j)
        if (d[j] > 0.0 && d[j + 1] > 0.0) lg.push_back(std::log2(d[j] / d[j + 1]));
    double gamma = lg.empty() ? 1.0 : lg.back();
    if (lg.size() >= 2) gamma = 0.5 * (lg[lg.size() - 1] + lg[lg.size() - 2]);
    gamma = std::clamp(gamma, 0.05, 2.0);

    double denom = std::pow(2.0, gamma) - 1.0;
    std::vector<Vec> R;
    for (size_t j = 0; j + 1 < D.size(); ++j) R.push_back(D[j + 1] + (D[j + 1] - D[j]) / denom);
    std::vector<double> e;
    for (size_t j = 0; j + 1 < R.size(); ++j) e.push_back(mnorm(basis.Mdiag, R[j + 1] - R[j]));
    size_t best = 0;
    for (size_t j = 1; j < e.size(); ++j)
        if (e[j] < e[best]) best = j;
    double scale = mnorm(basis.Mdiag, R[best + 1]);
    size_t m = e.size();
    // growth at the tail only matters above the round-off floor of the quotients
    if (m >= 3 && e[m - 1] > e[m - 2] && e[m - 2] > e[m - 3] && e[m - 1] > 1e-6 * scale)
        throw std::runtime_error("neumann_trace: extrapolation estimates are not settling");
    return R[best + 1];
}

double ClosedFormExample::g(int i, double z) const {
    if (z == 0.0) return 1.0;
    double alpha = n / vphi(i);
    double w = 2.0 * s * std::sqrt(alpha) * std::pow(z, 0.5 / s);
    return bessel_profile(s, w);
}

double ClosedFormExample::g_deriv(int i, double z) const {
    double alpha = n / vphi(i);
    double w = 2.0 * s * std::sqrt(alpha) * std::pow(z, 0.5 / s);
    if (w > 705.0) return 0.0;
    return -2.0 * std::pow(s, s) / special::gamma_fn(s) * std::pow(alpha, 0.5 * (s + 1.0)) *
           std::pow(z, 0.5 / s - 0.5) * special::bessel_k(1.0 - s, w);
}

double ClosedFormExample::value(int i, double z) const { return vphi(i) * g(i, z); }

ClosedFormExample closed_form_example(const Section& sec, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("extension: s must lie in (0,1)");
    ClosedFormExample ex;
    ex.s = s;
    ex.n = sec.dim();
    int ni = static_cast<int>(sec.interior.size());
    ex.vphi.resize(ni);
    for (int i = 0; i < ni; ++i)
        ex.vphi(i) = sec.R - delta(sec.phi, sec.x0, sec.nodes.row(sec.interior[i]).transpose());
    FracParams fp(s);
    ex.trace = fp.d_s * std::pow(double(ex.n), s) *
               ex.vphi.array().pow(1.0 - s).matrix();
    return ex;
}

EnergyReport energy_identity_check(const SpectralBasis& basis, double s, const Vec& u,
                                   double tol) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("extension: s must lie in (0,1)");
    if (u.size() != basis.E.rows())
        throw std::invalid_argument("extension: datum size does not match the basis");
    FracParams fp(s);
    EnergyReport rep;
    Vec c = basis.coeffs(u);
    double cmax = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    for (int k = 0; k < c.size(); ++k) {
        if (std::abs(c(k)) <= 1e-13 * cmax) continue;
        double lambda = basis.lambda(k);
        double Y = 40.0 / std::sqrt(lambda);
        // weight y^{1-2s} carries c^2, weight y^{2s-1} carries the rest of c'^2
        auto f1 = [&](double y) {
            double c = bessel_profile(s, std::sqrt(lambda) * y);
            return lambda * c * c;
        };
        auto f2 = [&](double y) -> double {
            if (y == 0.0) {
                double lim = fp.c_s * std::pow(lambda, s);
                return lim * lim;
            }
            double cp = bessel_profile_deriv(s, lambda, y);
            return std::pow(y, 2.0 - 4.0 * s) * cp * cp;
        };
        double mode = power_weighted_integral(f1, Y, 1.0 - 2.0 * s) +
                      power_weighted_integral(f2, Y, 2.0 * s - 1.0);
        rep.lhs += c(k) * c(k) * mode;
        rep.rhs += fp.c_s * std::pow(lambda, s) * c(k) * c(k);
    }
    rep.gap = rep.rhs > 0.0 ? std::abs(rep.lhs - rep.rhs) / rep.rhs : std::abs(rep.lhs);
    rep.ok = rep.gap <= tol;
    return rep;
}

EnergyReport finite_energy_check(const SpectralBasis& basis, double s, const Vec& u, double tol) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("extension: s must lie in (0,1)");
    if (u.size() != basis.E.rows())
        throw std::invalid_argument("extension: datum size does not match the basis");
    FracParams fp(s);
    EnergyReport rep;
    Vec c = basis.coeffs(u);
    double cmax = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    for (int k = 0; k < c.size(); ++k) {
        if (std::abs(c(k)) <= 1e-13 * cmax) continue;
        double lambda = basis.lambda(k);
        double Z = z_of_y(s, 40.0 / std::sqrt(lambda));
        auto fb = [&](double z) {
            double b = bessel_profile(s, std::sqrt(lambda) * y_of_z(s, z));
            return lambda * b * b;
        };
        auto fbz = [&](double z) -> double {
            double trace = fp.d_s * std::pow(lambda, s);
            if (z == 0.0) return trace * trace;
            double w = 2.0 * s * std::sqrt(lambda) * std::pow(z, 0.5 / s);
            if (w > 705.0) return 0.0;
            double bp = -2.0 * std::pow(s, s) / special::gamma_fn(s) *
                        std::pow(lambda, 0.5 * (s + 1.0)) * std::pow(z, 0.5 / s - 0.5) *
                        special::bessel_k(1.0 - s, w);
            return bp * bp;
        };
        double mode = power_weighted_integral(fb, Z, 1.0 / s - 2.0) +
                      power_weighted_integral(fbz, Z, 0.0);
        rep.lhs += c(k) * c(k) * mode;
        rep.rhs += std::pow(2.0 * s, 2.0 * s - 1.0) * fp.c_s * std::pow(lambda, s) * c(k) * c(k);
    }
    rep.gap = rep.rhs > 0.0 ? std::abs(rep.lhs - rep.rhs) / rep.rhs : std::abs(rep.lhs);
    rep.ok = rep.gap <= tol;
    return rep;
}

ResidualStudy pde_residual_study(const ExtensionField& field, double z_center,
                                 const std::vector<double>& dz_list) {
    ExtensionField fz = field.var == ExtVar::z_form ? field : change_variables(field);
    const SpectralBasis& basis = *fz.basis;
    double s = fz.s;
    Vec lc = fz.uk;
    for (int k = 0; k < lc.size(); ++k)
        lc(k) *= basis.lambda(k) * fz.profile(k, z_center);
    Vec LV = basis.synth(lc);
    double weight = std::pow(z_center, 2.0 - 1.0 / s);

    ResidualStudy study;
    for (double dz : dz_list) {
        if (dz <= 0.0 || dz >= z_center)
            throw std::invalid_argument("pde_residual_study: need 0 < dz < z_center");
        Vec vzz = (fz.slice(z_center - dz) - 2.0 * fz.slice(z_center) + fz.slice(z_center + dz)) /
                  (dz * dz);
        study.dz.push_back(dz);
        study.residual.push_back((weight * vzz - LV).cwiseAbs().maxCoeff());
    }
    // least-squares slope of log residual against log dz
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(study.dz.size());
    for (int i = 0; i < m; ++i) {
        double x = std::log(study.dz[i]), y = std::log(std::max(study.residual[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    study.slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    return study;
}

} // namespace mafrac
