#include "mafrac/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace mafrac {

static GaussRule make_rule(int n) {
    // Roots of the Legendre polynomial P_n by Newton from Chebyshev guesses.
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0, p1, dp;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& gauss_rule(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("gauss_rule: n out of range");
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& r = gauss_rule(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

double gauss_composite(const std::function<double(double)>& f, double a, double b,
                       int panels, int n) {
    double acc = 0.0, h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) acc += gauss_panel(f, a + i * h, a + (i + 1) * h, n);
    return acc;
}

std::vector<double> geometric_grid(double a, double b, double ratio) {
    if (!(a > 0.0 && b > a && ratio > 1.0))
        throw std::invalid_argument("geometric_grid: need 0 < a < b and ratio > 1");
    std::vector<double> g{a};
    double x = a;
    while (x * ratio < b) {
        x *= ratio;
        g.push_back(x);
    }
    g.push_back(b);
    return g;
}

double gauss_graded(const std::function<double(double)>& f, const std::vector<double>& grid,
                    int n) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < grid.size(); ++i) acc += gauss_panel(f, grid[i], grid[i + 1], n);
    return acc;
}

double power_weighted_integral(const std::function<double(double)>& f, double b, double p,
                               double z0, double ratio, int n) {
    if (p <= -1.0) throw std::invalid_argument("power_weighted_integral: need p > -1");
    if (z0 >= b) return f(0.0) * std::pow(b, p + 1.0) / (p + 1.0);
    double head = f(0.0) * std::pow(z0, p + 1.0) / (p + 1.0);
    auto grid = geometric_grid(z0, b, ratio);
    auto g = [&](double z) { return std::pow(z, p) * f(z); };
    return head + gauss_graded(g, grid, n);
}

} // namespace mafrac
