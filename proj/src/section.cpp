#include "mafrac/section.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mafrac/quadrature.hpp"

namespace mafrac {

double ray_root(const Potential& phi, const Vec& x0, const Vec& dir, double R) {
    auto g = [&](double t) { return delta(phi, x0, x0 + t * dir); };
    double hi = 1.0;
    int guard = 0;
    while (g(hi) < R) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("section: ray root not bracketed, potential grows too slowly");
    }
    double lo = (guard == 0) ? 0.0 : hi / 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < R ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

Section build_section_1d(const Potential& phi, const Vec& x0, double R, int resolution) {
    Section sec;
    sec.phi = phi;
    sec.x0 = x0;
    sec.R = R;
    Vec right = pt(1.0), left = pt(-1.0);
    sec.xr = x0(0) + ray_root(phi, x0, right, R);
    sec.xl = x0(0) - ray_root(phi, x0, left, R);

    int n = resolution + 2;
    sec.h = (sec.xr - sec.xl) / (resolution + 1);
    sec.nodes.resize(n, 1);
    sec.is_boundary.assign(n, false);
    for (int i = 0; i < n; ++i) sec.nodes(i, 0) = sec.xl + i * sec.h;
    sec.nodes(n - 1, 0) = sec.xr;
    sec.is_boundary[0] = sec.is_boundary[n - 1] = true;
    for (int i = 1; i < n - 1; ++i) sec.interior.push_back(i);
    return sec;
}

Section build_section_2d(const Potential& phi, const Vec& x0, double R, int resolution) {
    Section sec;
    sec.phi = phi;
    sec.x0 = x0;
    sec.R = R;
    int M = resolution;
    int L = std::max(4, resolution / 3);
    sec.nrays = M;
    sec.nlevels = L;

    // ray directions at uniform angles; level heights quadratic in the level
    // index so that radial node spacing is near uniform for quadratic growth
    std::vector<Vec> dirs(M);
    for (int i = 0; i < M; ++i) {
        double th = 2.0 * M_PI * i / M;
        dirs[i] = pt(std::cos(th), std::sin(th));
    }
    int n = 1 + M * L;
    sec.nodes.resize(n, 2);
    sec.is_boundary.assign(n, false);
    sec.nodes.row(0) = x0.transpose();
    for (int j = 1; j <= L; ++j) {
        double Rj = R * double(j) * j / (double(L) * L);
        for (int i = 0; i < M; ++i) {
            double t = ray_root(phi, x0, dirs[i], Rj);
            sec.nodes.row(1 + (j - 1) * M + i) = (x0 + t * dirs[i]).transpose();
        }
    }
    for (int i = 0; i < M; ++i) sec.is_boundary[1 + (L - 1) * M + i] = true;
    for (int k = 0; k < n; ++k)
        if (!sec.is_boundary[k]) sec.interior.push_back(k);

    auto ring = [M](int j, int i) { return 1 + (j - 1) * M + ((i % M + M) % M); };
    for (int i = 0; i < M; ++i) sec.tris.push_back({0, ring(1, i), ring(1, i + 1)});
    for (int j = 1; j < L; ++j)
        for (int i = 0; i < M; ++i) {
            int a = ring(j, i), b = ring(j, i + 1), c = ring(j + 1, i), d = ring(j + 1, i + 1);
            sec.tris.push_back({a, b, d});
            sec.tris.push_back({a, d, c});
        }
    return sec;
}

double tri_area(const Mat& nodes, const std::array<int, 3>& t) {
    double ax = nodes(t[0], 0), ay = nodes(t[0], 1);
    double bx = nodes(t[1], 0), by = nodes(t[1], 1);
    double cx = nodes(t[2], 0), cy = nodes(t[2], 1);
    return 0.5 * std::abs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay));
}

} // namespace

Section build_section(const Potential& phi, const Vec& x0, double R, int resolution) {
    if (R <= 0.0) throw std::invalid_argument("section: height must be positive");
    if (resolution < 8) throw std::invalid_argument("section: resolution must be at least 8");
    if (phi.dim == 1) return build_section_1d(phi, x0, R, resolution);
    if (phi.dim == 2) return build_section_2d(phi, x0, R, resolution);
    throw std::invalid_argument("section: only dims 1 and 2 are supported");
}

double integrate(const Section& sec, const std::function<double(const Vec&)>& f) {
    if (sec.dim() == 1) {
        auto g = [&](double x) { return f(pt(x)); };
        int panels = std::max(32, sec.node_count() / 4);
        return gauss_composite(g, sec.xl, sec.xr, panels, 8);
    }
    // midpoint-of-edges rule, exact through quadratic integrands per element
    double total = 0.0;
    for (const auto& t : sec.tris) {
        double area = tri_area(sec.nodes, t);
        double acc = 0.0;
        for (int e = 0; e < 3; ++e) {
            Vec m = 0.5 * (sec.nodes.row(t[e]) + sec.nodes.row(t[(e + 1) % 3])).transpose();
            acc += f(m);
        }
        total += area * acc / 3.0;
    }
    return total;
}

double region_volume(const Section& sec) {
    if (sec.dim() == 1) return sec.xr - sec.xl;
    double v = 0.0;
    for (const auto& t : sec.tris) v += tri_area(sec.nodes, t);
    return v;
}

Vec region_centroid(const Section& sec) {
    if (sec.dim() == 1) return pt(0.5 * (sec.xl + sec.xr));
    Vec c = Vec::Zero(2);
    double v = 0.0;
    for (const auto& t : sec.tris) {
        double area = tri_area(sec.nodes, t);
        Vec g = (sec.nodes.row(t[0]) + sec.nodes.row(t[1]) + sec.nodes.row(t[2])).transpose() / 3.0;
        c += area * g;
        v += area;
    }
    return c / v;
}

double measure_mu(const Section& sec) {
    const Potential& phi = sec.phi;
    return integrate(sec, [&](const Vec& x) { return mu_density(phi, x); });
}

Section half_contraction(const Section& sec) {
    Section out = sec;
    Vec c = region_centroid(sec);
    for (int i = 0; i < out.node_count(); ++i)
        out.nodes.row(i) = (c + 0.5 * (sec.nodes.row(i).transpose() - c)).transpose();
    if (sec.dim() == 1) {
        out.xl = c(0) + 0.5 * (sec.xl - c(0));
        out.xr = c(0) + 0.5 * (sec.xr - c(0));
        out.h = 0.5 * sec.h;
    }
    return out;
}

double doubling_estimate(const Potential& phi,
                         const std::vector<std::pair<Vec, double>>& samples,
                         int resolution) {
    if (samples.empty()) throw std::invalid_argument("doubling_estimate: sample list is empty");
    double worst = 0.0;
    for (const auto& [x0, R] : samples) {
        Section sec = build_section(phi, x0, R, resolution);
        double num = measure_mu(sec);
        double den = measure_mu(half_contraction(sec));
        worst = std::max(worst, num / den);
    }
    return worst;
}

double quasi_triangle_estimate(const Potential& phi,
                               const std::vector<std::array<Vec, 3>>& triples) {
    if (triples.empty()) throw std::invalid_argument("quasi_triangle_estimate: sample list is empty");
    double worst = 0.0;
    for (const auto& [X, Y, Z] : triples) {
        double den = std::min(delta(phi, Z, X), delta(phi, X, Z)) +
                     std::min(delta(phi, Z, Y), delta(phi, Y, Z));
        if (den <= 1e-300) continue;
        worst = std::max(worst, delta(phi, X, Y) / den);
    }
    return worst;
}

double quasi_distance_energy(const Section& sec) {
    const Potential& phi = sec.phi;
    Vec g0 = phi.gradient(sec.x0);
    auto f = [&](const Vec& x) {
        Vec d = phi.gradient(x) - g0;
        Mat H = phi.hessian(x);
        return d.dot(H.ldlt().solve(d)) * mu_density(phi, x);
    };
    return integrate(sec, f);
}

void serialize_mesh(const Section& sec, std::ostream& os) {
    os << "mesh " << sec.dim() << " " << sec.node_count() << " " << sec.tris.size() << "\n";
    char line[128];
    for (int i = 0; i < sec.node_count(); ++i) {
        if (sec.dim() == 1)
            std::snprintf(line, sizeof line, "%.17g %d\n", sec.nodes(i, 0), int(sec.is_boundary[i]));
        else
            std::snprintf(line, sizeof line, "%.17g %.17g %d\n", sec.nodes(i, 0), sec.nodes(i, 1),
                          int(sec.is_boundary[i]));
        os << line;
    }
    for (const auto& t : sec.tris) os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

} // namespace mafrac
