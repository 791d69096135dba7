#include "mafrac/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "mafrac/quadrature.hpp"

namespace mafrac {

namespace {
double sgn(double z) { return (z > 0.0) - (z < 0.0); }
}

TensorPotential::TensorPotential(Potential base_potential, double s_in)
    : base(std::move(base_potential)), s(s_in), a(1.0 - 2.0 * s_in) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("tensor potential: s must lie in (0,1)");
    if (base.dim != 1 && base.dim != 2)
        throw std::invalid_argument("tensor potential: base dimension must be 1 or 2");
    double ss = s;
    zpot.dim = 1;
    zpot.label = "power_profile";
    zpot.value = [ss](const Vec& z) { return ss * ss / (1.0 - ss) * std::pow(std::abs(z(0)), 1.0 / ss); };
    zpot.gradient = [ss](const Vec& z) {
        return pt(ss / (1.0 - ss) * std::pow(std::abs(z(0)), 1.0 / ss - 1.0) * sgn(z(0)));
    };
    zpot.hessian = [ss](const Vec& z) {
        Mat H(1, 1);
        H(0, 0) = std::pow(std::abs(z(0)), 1.0 / ss - 2.0);
        return H;
    };
}

double TensorPotential::hs(double z) const { return s * s / (1.0 - s) * std::pow(std::abs(z), 1.0 / s); }

double TensorPotential::hs_prime(double z) const {
    return s / (1.0 - s) * std::pow(std::abs(z), 1.0 / s - 1.0) * sgn(z);
}

double TensorPotential::hs_second(double z) const { return std::pow(std::abs(z), 1.0 / s - 2.0); }

double TensorPotential::value(const Vec& x, double z) const { return base.value(x) + hs(z); }

double TensorPotential::delta_z(double z0, double z) const {
    return hs(z) - hs(z0) - hs_prime(z0) * (z - z0);
}

double TensorPotential::delta(const Vec& x0, double z0, const Vec& x, double z) const {
    return value(x, z) - value(x0, z0) - base.gradient(x0).dot(x - x0) - hs_prime(z0) * (z - z0);
}

double TensorPotential::mu(const Vec& x, double z) const {
    return mu_density(base, x) * hs_second(z);
}

std::pair<double, double> hs_section(const TensorPotential& T, double z0, double rho) {
    if (rho <= 0.0) return {z0, z0};
    if (z0 == 0.0) {
        double zr = std::pow((1.0 - T.s) * rho / (T.s * T.s), T.s);
        return {-zr, zr};
    }
    Vec c = pt(z0);
    double tr = ray_root(T.zpot, c, pt(1.0), rho);
    double tl = ray_root(T.zpot, c, pt(-1.0), rho);
    return {z0 - tl, z0 + tr};
}

double mu_hs_measure(const TensorPotential& T, double zl, double zr) {
    return T.hs_prime(zr) - T.hs_prime(zl);
}

namespace {

// x-quadrature of the base section: panels graded toward both interval
// endpoints in dim 1 (the z slice collapses there with a fractional-power
// rate), edge-midpoint rule over the triangulation in dim 2
std::vector<std::pair<Vec, double>> base_quad_points(const Potential& base, const Vec& x0,
                                                     double R, int resolution) {
    std::vector<std::pair<Vec, double>> qp;
    if (base.dim == 1) {
        double xr = x0(0) + ray_root(base, x0, pt(1.0), R);
        double xl = x0(0) - ray_root(base, x0, pt(-1.0), R);
        double L = xr - xl;
        auto grid = geometric_grid(1e-12 * L, 0.5 * L, 1.15);
        const GaussRule& g = gauss_rule(10);
        qp.push_back({pt(xl + 0.5 * grid.front()), grid.front()});
        qp.push_back({pt(xr - 0.5 * grid.front()), grid.front()});
        for (size_t k = 0; k + 1 < grid.size(); ++k) {
            double c = 0.5 * (grid[k] + grid[k + 1]), hw = 0.5 * (grid[k + 1] - grid[k]);
            for (size_t i = 0; i < g.nodes.size(); ++i) {
                double t = c + hw * g.nodes[i], w = hw * g.weights[i];
                qp.push_back({pt(xl + t), w});
                qp.push_back({pt(xr - t), w});
            }
        }
        return qp;
    }
    Section sec = build_section(base, x0, R, resolution);
    for (const auto& t : sec.tris) {
        double ax = sec.nodes(t[0], 0), ay = sec.nodes(t[0], 1);
        double bx = sec.nodes(t[1], 0), by = sec.nodes(t[1], 1);
        double cx = sec.nodes(t[2], 0), cy = sec.nodes(t[2], 1);
        double area = 0.5 * std::abs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay));
        for (int e = 0; e < 3; ++e) {
            Vec m = 0.5 * (sec.nodes.row(t[e]) + sec.nodes.row(t[(e + 1) % 3])).transpose();
            qp.push_back({m, area / 3.0});
        }
    }
    return qp;
}

struct Slice {
    double zl, zr;
};

Slice slice_at(const TensorPotential& T, const Vec& x0, double z0, double R, const Vec& x) {
    double rho = std::max(0.0, R - delta(T.base, x0, x));
    auto [zl, zr] = hs_section(T, z0, rho);
    return {zl, zr};
}

} // namespace

InclusionReport tensor_section_inclusions(const TensorPotential& T, const Vec& x0, double z0,
                                          double R, int trials, unsigned seed) {
    InclusionReport rep;
    rep.trials = trials;

    // sampling box: 1.25 dilation of the product of the two factor sections
    // at height 2R, so both inclusions are exercised from inside and outside
    int n = T.base.dim;
    Vec lo(n), hi(n);
    if (n == 1) {
        hi(0) = x0(0) + 1.25 * ray_root(T.base, x0, pt(1.0), 2.0 * R);
        lo(0) = x0(0) - 1.25 * ray_root(T.base, x0, pt(-1.0), 2.0 * R);
    } else {
        Section big = build_section(T.base, x0, 2.0 * R, 32);
        for (int c = 0; c < 2; ++c) {
            double mn = big.nodes.col(c).minCoeff(), mx = big.nodes.col(c).maxCoeff();
            lo(c) = x0(c) - 1.25 * (x0(c) - mn);
            hi(c) = x0(c) + 1.25 * (mx - x0(c));
        }
    }
    auto [zl2, zr2] = hs_section(T, z0, 2.0 * R);
    double zlo = z0 - 1.25 * (z0 - zl2), zhi = z0 + 1.25 * (zr2 - z0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vec x(n);
    for (int t = 0; t < trials; ++t) {
        for (int c = 0; c < n; ++c) x(c) = lo(c) + (hi(c) - lo(c)) * U(rng);
        double z = zlo + (zhi - zlo) * U(rng);
        double dF = T.delta(x0, z0, x, z);
        double dx = delta(T.base, x0, x);
        double dz = T.delta_z(z0, z);
        bool in_product = dx < R && dz < R;
        bool bad = (dF < R && !in_product) || (in_product && !(dF < 2.0 * R));
        if (bad) {
            ++rep.violations;
            if (rep.witness.empty()) {
                char buf[160];
                if (n == 1)
                    std::snprintf(buf, sizeof buf, "x=%.17g z=%.17g", x(0), z);
                else
                    std::snprintf(buf, sizeof buf, "x=(%.17g,%.17g) z=%.17g", x(0), x(1), z);
                rep.witness = buf;
            }
        }
    }
    rep.ok = rep.violations == 0;
    return rep;
}

double tensor_measure(const TensorPotential& T, const Vec& x0, double z0, double R,
                      int resolution) {
    double total = 0.0;
    for (const auto& [x, w] : base_quad_points(T.base, x0, R, resolution)) {
        Slice sl = slice_at(T, x0, z0, R, x);
        total += w * mu_density(T.base, x) * mu_hs_measure(T, sl.zl, sl.zr);
    }
    return total;
}

double tensor_doubling_estimate(const TensorPotential& T,
                                const std::vector<std::tuple<Vec, double, double>>& samples,
                                int resolution) {
    if (samples.empty()) throw std::invalid_argument("tensor_doubling_estimate: sample list is empty");
    double worst = 0.0;
    int n = T.base.dim;
    for (const auto& [x0, z0, R] : samples) {
        auto qp = base_quad_points(T.base, x0, R, resolution);

        // Lebesgue center of mass of the tensor section by Fubini
        double vol = 0.0, mz = 0.0;
        Vec mx = Vec::Zero(n);
        for (const auto& [x, w] : qp) {
            Slice sl = slice_at(T, x0, z0, R, x);
            double len = sl.zr - sl.zl;
            vol += w * len;
            mx += w * len * x;
            mz += w * 0.5 * (sl.zr * sl.zr - sl.zl * sl.zl);
        }
        Vec cx = mx / vol;
        double cz = mz / vol;

        double full = 0.0, half = 0.0;
        double shrink = std::pow(0.5, n);
        for (const auto& [x, w] : qp) {
            Slice sl = slice_at(T, x0, z0, R, x);
            full += w * mu_density(T.base, x) * mu_hs_measure(T, sl.zl, sl.zr);
            Vec xh = cx + 0.5 * (x - cx);
            double zhl = cz + 0.5 * (sl.zl - cz), zhr = cz + 0.5 * (sl.zr - cz);
            half += w * shrink * mu_density(T.base, xh) * mu_hs_measure(T, zhl, zhr);
        }
        worst = std::max(worst, full / half);
    }
    return worst;
}

double tensor_quasi_distance_energy(const TensorPotential& T, const Vec& x0, double z0, double R,
                                    int resolution) {
    const Potential& phi = T.base;
    Vec g0 = phi.gradient(x0);
    double hp0 = T.hs_prime(z0);
    double q = 2.0 / T.s - 1.0;  // antiderivative exponent for hs_prime squared
    double c2 = T.s / (1.0 - T.s) * T.s / (1.0 - T.s);
    auto F = [q](double z) { return sgn(z) * std::pow(std::abs(z), q) / q; };

    double total = 0.0;
    for (const auto& [x, w] : base_quad_points(phi, x0, R, resolution)) {
        Slice sl = slice_at(T, x0, z0, R, x);
        Vec d = phi.gradient(x) - g0;
        Mat H = phi.hessian(x);
        double ex = d.dot(H.ldlt().solve(d)) * mu_density(phi, x);

        // int over the slice of (hs'(z) - hs'(z0))^2 dz, all terms closed form
        double i2 = c2 * (F(sl.zr) - F(sl.zl));
        double i1 = T.hs(sl.zr) - T.hs(sl.zl);
        double w1 = i2 - 2.0 * hp0 * i1 + hp0 * hp0 * (sl.zr - sl.zl);

        total += w * (ex * mu_hs_measure(T, sl.zl, sl.zr) + mu_density(phi, x) * w1);
    }
    return total;
}

double tensor_weighted_integral(const TensorPotential& T, const Vec& x0, double z0, double R,
                                double p, const std::function<double(const Vec&, double)>& F,
                                int resolution) {
    if (R <= 0.0) throw std::invalid_argument("tensor_weighted_integral: R must be positive");
    if (p <= -1.0) throw std::invalid_argument("tensor_weighted_integral: weight exponent must exceed -1");
    if (!F) throw std::invalid_argument("tensor_weighted_integral: integrand is empty");

    // panel counts in both directions scale linearly with the resolution; the
    // grading absorbs the fractional-power slice collapse at the base boundary
    // and the |z|^p weight at z = 0
    double ratio = std::exp(std::log(5e9) / std::max(resolution, 16));
    const GaussRule& g = gauss_rule(8);

    std::vector<std::pair<Vec, double>> qp;
    if (T.base.dim == 1) {
        double xr = x0(0) + ray_root(T.base, x0, pt(1.0), R);
        double xl = x0(0) - ray_root(T.base, x0, pt(-1.0), R);
        double L = xr - xl;
        auto grid = geometric_grid(1e-10 * L, 0.5 * L, ratio);
        qp.push_back({pt(xl + 0.5 * grid.front()), grid.front()});
        qp.push_back({pt(xr - 0.5 * grid.front()), grid.front()});
        for (size_t k = 0; k + 1 < grid.size(); ++k) {
            double c = 0.5 * (grid[k] + grid[k + 1]), hw = 0.5 * (grid[k + 1] - grid[k]);
            for (size_t i = 0; i < g.nodes.size(); ++i) {
                double t = c + hw * g.nodes[i], w = hw * g.weights[i];
                qp.push_back({pt(xl + t), w});
                qp.push_back({pt(xr - t), w});
            }
        }
    } else {
        qp = base_quad_points(T.base, x0, R, resolution);
    }

    double total = 0.0;
    for (const auto& [x, w] : qp) {
        Slice sl = slice_at(T, x0, z0, R, x);
        if (sl.zr <= sl.zl) continue;

        // one-sided integral of u^p F(x, sn u) over (a, b], 0 <= a < b; panels
        // geometric in u so the power weight is resolved at every scale
        auto side = [&](double sn, double a, double b) -> double {
            auto f = [&](double u) { return F(x, sn * u); };
            if (a <= 1e-10 * b)
                return power_weighted_integral(f, b, p, 1e-10 * b, ratio, 8) -
                       (a > 0.0 ? power_weighted_integral(f, a, p, 1e-10 * a, ratio, 8) : 0.0);
            double acc = 0.0, lo = a;
            while (lo < b) {
                double hi = std::min(lo * ratio, b);
                double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
                for (size_t i = 0; i < g.nodes.size(); ++i) {
                    double u = c + hw * g.nodes[i];
                    acc += hw * g.weights[i] * std::pow(u, p) * f(u);
                }
                lo = hi;
            }
            return acc;
        };

        double iz = 0.0;
        if (sl.zl >= 0.0)
            iz = side(1.0, sl.zl, sl.zr);
        else if (sl.zr <= 0.0)
            iz = side(-1.0, -sl.zr, -sl.zl);
        else
            iz = side(1.0, 0.0, sl.zr) + side(-1.0, 0.0, -sl.zl);
        total += w * mu_density(T.base, x) * iz;
    }
    return total;
}

} // namespace mafrac
