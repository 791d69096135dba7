#include "mafrac/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mafrac {

namespace {

void require_field(const SampleFunction& G, const char* who) {
    if (!G.value || !G.grad_x || !G.dz) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s: sample function callbacks are incomplete", who);
        throw std::invalid_argument(buf);
    }
}

// mean over the dilated section of the intrinsic gradient energy
// <(D2 phi)^{-1} grad G, grad G> + |z|^{2-1/s} G_z^2. The z-weight of the
// second term cancels against the mu_Phi profile density, so it integrates
// with a flat weight.
double mean_gradient_energy(const TensorPotential& T, const Vec& x0, double z0, double R,
                            const SampleFunction& G, int resolution) {
    double p = 1.0 / T.s - 2.0;
    double vol = tensor_weighted_integral(
        T, x0, z0, R, p, [](const Vec&, double) { return 1.0; }, resolution);
    double base = tensor_weighted_integral(
        T, x0, z0, R, p,
        [&](const Vec& x, double z) {
            Vec g = G.grad_x(x, z);
            return g.dot(T.base.hessian(x).ldlt().solve(g));
        },
        resolution);
    double prof = tensor_weighted_integral(
        T, x0, z0, R, 0.0,
        [&](const Vec& x, double z) {
            double gz = G.dz(x, z);
            return gz * gz;
        },
        resolution);
    return (base + prof) / vol;
}

} // namespace

HarnackReport harnack_quotient(const DiscreteOperators& ops, double s, const Vec& f,
                               const Vec& x0, double R, const std::vector<double>& kappas,
                               double K9) {
    if (s <= 0.0 || s >= 1.0)
        throw std::invalid_argument("harnack_quotient: s must lie in (0,1)");
    if (R <= 0.0) throw std::invalid_argument("harnack_quotient: R must be positive");
    if (kappas.empty()) throw std::invalid_argument("harnack_quotient: no inner ratios given");
    for (double k : kappas)
        if (k <= 0.0 || k > K9)
            throw std::invalid_argument("harnack_quotient: inner ratios must lie in (0, K9]");

    const Section& sec = ops.sec;
    if (f.size() != static_cast<Eigen::Index>(sec.interior.size()))
        throw std::invalid_argument("harnack_quotient: datum size does not match the interior");
    double fscale = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
    if (f.size() && f.minCoeff() < -1e-12 * std::max(1.0, fscale))
        throw std::invalid_argument("harnack_quotient: datum must be nonnegative");

    // the outer section has to sit strictly inside the meshed region
    for (int i = 0; i < sec.node_count(); ++i)
        if (sec.is_boundary[i] && delta(sec.phi, x0, sec.nodes.row(i).transpose()) <= K9 * R)
            throw std::invalid_argument(
                "harnack_quotient: outer section S(x0, K9 R) reaches the mesh boundary");

    HarnackReport rep;
    rep.s = s;
    rep.R = R;
    rep.K9 = K9;
    rep.resolution = static_cast<int>(sec.interior.size());
    rep.v = frac_solve_spectral(ops.full_basis(), s, f).nodal;

    // node distances and the sup of f over the outer section
    std::vector<double> dist(sec.interior.size());
    double wsum = 0.0, wpsum = 0.0;
    for (size_t j = 0; j < sec.interior.size(); ++j) {
        dist[j] = delta(sec.phi, x0, sec.nodes.row(sec.interior[j]).transpose());
        if (dist[j] < K9 * R) {
            rep.fsup = std::max(rep.fsup, f(j));
            double w = ops.Mdiag(j);
            wsum += w;
            wpsum += w * std::sqrt(std::max(0.0, rep.v(j)));
        }
    }
    double sigma_mean = wsum > 0.0 ? (wpsum / wsum) * (wpsum / wsum) : 0.0;
    double tail = std::pow(R, s) * rep.fsup;

    for (double kappa : kappas) {
        HarnackEntry e;
        e.kappa = kappa;
        e.sigma_mean = sigma_mean;
        double sup = -std::numeric_limits<double>::infinity();
        double inf = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < sec.interior.size(); ++j) {
            if (dist[j] >= kappa * R) continue;
            ++e.inner_nodes;
            sup = std::max(sup, rep.v(j));
            inf = std::min(inf, rep.v(j));
        }
        if (e.inner_nodes < 50) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "harnack_quotient: inner section at kappa %.4g holds %d nodes, need 50",
                          kappa, e.inner_nodes);
            throw std::runtime_error(buf);
        }
        e.sup = sup;
        e.inf = inf;
        if (sup == 0.0 && inf == 0.0)
            e.quotient = 1.0; // zero datum: v vanishes identically
        else
            e.quotient = inf > 0.0 ? sup / inf : std::numeric_limits<double>::infinity();
        double denom = inf + tail;
        e.constant = denom > 0.0 ? sup / denom : 0.0;
        e.weak_constant = denom > 0.0 ? sigma_mean / denom : 0.0;
        rep.entries.push_back(e);
    }
    return rep;
}

HolderFit holder_seminorm(const Section& sec, const Vec& v, const Vec& x0, double R) {
    if (R <= 0.0) throw std::invalid_argument("holder_seminorm: R must be positive");
    if (v.size() != static_cast<Eigen::Index>(sec.interior.size()))
        throw std::invalid_argument("holder_seminorm: vector size does not match the interior");

    // anchor value at the node closest to x0
    size_t anchor = 0;
    double dbest = std::numeric_limits<double>::infinity();
    std::vector<double> dist(sec.interior.size());
    for (size_t j = 0; j < sec.interior.size(); ++j) {
        dist[j] = delta(sec.phi, x0, sec.nodes.row(sec.interior[j]).transpose());
        if (dist[j] < dbest) {
            dbest = dist[j];
            anchor = j;
        }
    }
    double v0 = v(anchor);
    double vscale = std::max(std::abs(v0), v.cwiseAbs().maxCoeff());

    std::vector<double> X, Y;
    int candidates = 0;
    for (size_t j = 0; j < sec.interior.size(); ++j) {
        if (j == anchor || dist[j] >= R || dist[j] <= 1e-14 * R) continue;
        ++candidates;
        double dv = std::abs(v(j) - v0);
        if (dv <= 1e-15 * vscale) continue;
        X.push_back(std::log(dist[j]));
        Y.push_back(std::log(dv));
    }
    HolderFit fit;
    if (X.empty()) {
        // flat profile: every increment is at round-off level
        fit.pairs = candidates;
        return fit;
    }
    if (X.size() < 30) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "holder_seminorm: only %zu usable node pairs, need 30",
                      X.size());
        throw std::runtime_error(buf);
    }

    double n = static_cast<double>(X.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        sx += X[i];
        sy += Y[i];
        sxx += X[i] * X[i];
        sxy += X[i] * Y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icept = (sy - slope * sx) / n;
    double ssres = 0.0, sstot = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        double r = Y[i] - (icept + slope * X[i]);
        double t = Y[i] - sy / n;
        ssres += r * r;
        sstot += t * t;
    }
    fit.exponent = slope;
    fit.coefficient = std::exp(icept);
    fit.r2 = sstot > 0.0 ? 1.0 - ssres / sstot : 1.0;
    fit.pairs = static_cast<int>(X.size());
    return fit;
}

PoincareReport poincare_check(const TensorPotential& T, const Vec& x0, double z0, double R,
                              const SampleFunction& G, double K2, int resolution) {
    require_field(G, "poincare_check");
    if (R <= 0.0) throw std::invalid_argument("poincare_check: R must be positive");
    if (K2 < 1.0) throw std::invalid_argument("poincare_check: dilation ratio must be >= 1");

    double p = 1.0 / T.s - 2.0;
    PoincareReport rep;
    rep.volume = tensor_weighted_integral(
        T, x0, z0, R, p, [](const Vec&, double) { return 1.0; }, resolution);
    double mean = tensor_weighted_integral(T, x0, z0, R, p, G.value, resolution) / rep.volume;
    rep.lhs = tensor_weighted_integral(
                  T, x0, z0, R, p,
                  [&](const Vec& x, double z) { return std::abs(G.value(x, z) - mean); },
                  resolution) /
              rep.volume;
    rep.rhs = std::sqrt(R * mean_gradient_energy(T, x0, z0, K2 * R, G, resolution));
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    return rep;
}

FabesReport fabes_check(const TensorPotential& T, const Vec& x0, double z0, double R,
                        const SampleFunction& G, double kp, double K2, int resolution) {
    require_field(G, "fabes_check");
    if (R <= 0.0) throw std::invalid_argument("fabes_check: R must be positive");
    if (kp <= 0.0) throw std::invalid_argument("fabes_check: Poincare ratio must be positive");

    double p = 1.0 / T.s - 2.0;
    double vol = tensor_weighted_integral(
        T, x0, z0, R, p, [](const Vec&, double) { return 1.0; }, resolution);

    FabesReport rep;
    double gmax = 0.0;
    rep.mean_abs = tensor_weighted_integral(
                       T, x0, z0, R, p,
                       [&](const Vec& x, double z) {
                           double g = std::abs(G.value(x, z));
                           gmax = std::max(gmax, g);
                           return g;
                       },
                       resolution) /
                   vol;
    double floor = 1e-12 * gmax;
    rep.eps = tensor_weighted_integral(
                  T, x0, z0, R, p,
                  [&](const Vec& x, double z) {
                      return std::abs(G.value(x, z)) <= floor ? 1.0 : 0.0;
                  },
                  resolution) /
              vol;
    rep.kernel = std::sqrt(R * mean_gradient_energy(T, x0, z0, K2 * R, G, resolution));
    rep.bound = rep.eps > 0.0 ? (1.0 + 1.0 / rep.eps) * kp * 1.1 * rep.kernel
                              : std::numeric_limits<double>::infinity();
    rep.margin = rep.mean_abs > 0.0 ? rep.bound / rep.mean_abs
                                    : std::numeric_limits<double>::infinity();
    rep.ok = rep.mean_abs <= rep.bound;
    return rep;
}

LogEnergyReport log_energy_check(const TensorPotential& T, const Vec& x0, double z0, double R,
                                 const SampleFunction& H, double Kd, int resolution) {
    require_field(H, "log_energy_check");
    if (R <= 0.0) throw std::invalid_argument("log_energy_check: R must be positive");
    if (Kd <= 0.0) throw std::invalid_argument("log_energy_check: doubling constant must be positive");

    double p = 1.0 / T.s - 2.0;
    LogEnergyReport rep;
    rep.hmin = std::numeric_limits<double>::infinity();
    auto probe = [&](const Vec& x, double z) {
        double h = H.value(x, z);
        if (h <= 0.0) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "log_energy_check: field is not positive, H = %.6g met by quadrature", h);
            throw std::runtime_error(buf);
        }
        rep.hmin = std::min(rep.hmin, h);
        return h;
    };

    double vol = tensor_weighted_integral(
        T, x0, z0, R, p, [](const Vec&, double) { return 1.0; }, resolution);
    double base = tensor_weighted_integral(
        T, x0, z0, R, p,
        [&](const Vec& x, double z) {
            double h = probe(x, z);
            Vec g = H.grad_x(x, z);
            return g.dot(T.base.hessian(x).ldlt().solve(g)) / (h * h);
        },
        resolution);
    double prof = tensor_weighted_integral(
        T, x0, z0, R, 0.0,
        [&](const Vec& x, double z) {
            double r = H.dz(x, z) / probe(x, z);
            return r * r;
        },
        resolution);
    rep.lhs = (base + prof) / vol;
    rep.bound = 32.0 * (T.base.dim + 2) * Kd * Kd / R;
    rep.ok = rep.lhs <= rep.bound;
    return rep;
}

} // namespace mafrac
