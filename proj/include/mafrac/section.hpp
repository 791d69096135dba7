#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "mafrac/potential.hpp"

namespace mafrac {

/// Sublevel region {delta(x0,.) < R} of a convex potential together with a
/// computational mesh: a uniform grid on the bounding interval for dim 1, a
/// polar triangulation (rays crossed with height level sets) for dim 2.
struct Section {
    Potential phi;
    Vec x0;
    double R = 0.0;

    Mat nodes;                            ///< node coordinates, one row per node
    std::vector<bool> is_boundary;        ///< per-node boundary marker
    std::vector<int> interior;            ///< indices of interior nodes
    std::vector<std::array<int, 3>> tris; ///< element connectivity (dim 2 only)

    // dim 1 layout: nodes run xl..xr with uniform spacing h
    double xl = 0.0, xr = 0.0, h = 0.0;

    // dim 2 layout: nrays nodes per level ring, boundary ring is the polygon
    int nrays = 0, nlevels = 0;

    int dim() const { return phi.dim; }
    int node_count() const { return static_cast<int>(nodes.rows()); }
};

/// Distance t at which delta(x0, x0 + t*dir) first reaches R. Brackets by
/// doubling t, then bisects; throws std::runtime_error if no bracket is found.
double ray_root(const Potential& phi, const Vec& x0, const Vec& dir, double R);

/// Builds the section of phi at center x0 and height R. `resolution` sets the
/// interior node count in dim 1 and the ray count in dim 2.
Section build_section(const Potential& phi, const Vec& x0, double R, int resolution);

/// Integral of f over the section region by composite Gauss quadrature on the
/// interval (dim 1) or a degree-two rule per triangle (dim 2).
double integrate(const Section& sec, const std::function<double(const Vec&)>& f);

/// Lebesgue volume and center of mass of the meshed region.
double region_volume(const Section& sec);
Vec region_centroid(const Section& sec);

/// Monge-Ampere measure of the section, integrate(mu_density).
double measure_mu(const Section& sec);

/// Half dilation of the section about its Lebesgue center of mass. The result
/// reuses the mesh connectivity with contracted node coordinates; its R field
/// keeps the parent height for reference.
Section half_contraction(const Section& sec);

/// Empirical dilation doubling constant: max over samples (x0, R) of
/// mu(S) / mu(half S).
double doubling_estimate(const Potential& phi,
                         const std::vector<std::pair<Vec, double>>& samples,
                         int resolution = 64);

/// Empirical quasi-triangle constant: max over triples (X,Y,Z) of
/// delta(X,Y) / (min{delta(Z,X),delta(X,Z)} + min{delta(Z,Y),delta(Y,Z)}).
/// Triples with vanishing denominator are skipped.
double quasi_triangle_estimate(const Potential& phi,
                               const std::vector<std::array<Vec, 3>>& triples);

/// Energy of the gradient increment over the section,
/// int_S <(D2phi)^{-1}(grad phi - grad phi(x0)), grad phi - grad phi(x0)> dmu.
/// Bounded by dim * R * mu(S) for smooth convex phi.
double quasi_distance_energy(const Section& sec);

/// Plain-text mesh dump: header, node lines (coords + boundary flag), element
/// lines.
void serialize_mesh(const Section& sec, std::ostream& os);

} // namespace mafrac
