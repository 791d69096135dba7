#include "mafrac/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mafrac {

namespace {

std::vector<int> interior_index_map(const Section& sec) {
    std::vector<int> idx(sec.node_count(), -1);
    for (size_t k = 0; k < sec.interior.size(); ++k) idx[sec.interior[k]] = static_cast<int>(k);
    return idx;
}

void assemble_1d(const Section& sec, DiscreteOperators& ops) {
    const Potential& phi = sec.phi;
    int n = static_cast<int>(sec.interior.size());
    double h = sec.h;

    std::vector<Eigen::Triplet<double>> kt, lt;
    ops.Mdiag.resize(n);
    for (int k = 0; k < n; ++k) {
        double x = sec.nodes(sec.interior[k], 0);
        double mu = mu_density(phi, pt(x));
        ops.Mdiag(k) = h * mu;

        kt.emplace_back(k, k, 2.0 / h);
        if (k > 0) kt.emplace_back(k, k - 1, -1.0 / h);
        if (k + 1 < n) kt.emplace_back(k, k + 1, -1.0 / h);

        double c = 1.0 / (h * h * mu);
        lt.emplace_back(k, k, 2.0 * c);
        if (k > 0) lt.emplace_back(k, k - 1, -c);
        if (k + 1 < n) lt.emplace_back(k, k + 1, -c);
    }
    ops.K.resize(n, n);
    ops.K.setFromTriplets(kt.begin(), kt.end());
    ops.L.resize(n, n);
    ops.L.setFromTriplets(lt.begin(), lt.end());
}

void assemble_2d(const Section& sec, DiscreteOperators& ops) {
    const Potential& phi = sec.phi;
    auto idx = interior_index_map(sec);
    int n = static_cast<int>(sec.interior.size());

    std::vector<Eigen::Triplet<double>> kt;
    ops.Mdiag = Vec::Zero(n);
    for (const auto& t : sec.tris) {
        Vec a = sec.nodes.row(t[0]).transpose();
        Vec b = sec.nodes.row(t[1]).transpose();
        Vec c = sec.nodes.row(t[2]).transpose();
        double area2 = (b(0) - a(0)) * (c(1) - a(1)) - (c(0) - a(0)) * (b(1) - a(1));
        double area = 0.5 * std::abs(area2);

        Vec cen = (a + b + c) / 3.0;
        Mat H = phi.hessian(cen);
        double mu = mu_density(phi, cen);
        Mat A(2, 2); // adjugate of the Hessian, the divergence-form coefficient
        A << H(1, 1), -H(0, 1), -H(1, 0), H(0, 0);

        // P1 gradients: grad lambda_i = rot90(opposite edge) / (signed area2)
        Mat G(3, 2);
        G.row(0) << b(1) - c(1), c(0) - b(0);
        G.row(1) << c(1) - a(1), a(0) - c(0);
        G.row(2) << a(1) - b(1), b(0) - a(0);
        G /= area2;

        for (int i = 0; i < 3; ++i) {
            int gi = idx[t[i]];
            if (gi >= 0) ops.Mdiag(gi) += mu * area / 3.0;
            for (int j = 0; j < 3; ++j) {
                int gj = idx[t[j]];
                if (gi >= 0 && gj >= 0)
                    kt.emplace_back(gi, gj, area * G.row(i) * A * G.row(j).transpose());
            }
        }
    }
    ops.K.resize(n, n);
    ops.K.setFromTriplets(kt.begin(), kt.end());

    // nondivergence operator through the divergence pair
    SpMat Minv(n, n);
    std::vector<Eigen::Triplet<double>> mt;
    for (int k = 0; k < n; ++k) mt.emplace_back(k, k, 1.0 / ops.Mdiag(k));
    Minv.setFromTriplets(mt.begin(), mt.end());
    ops.L = Minv * ops.K;
}

} // namespace

DiscreteOperators assemble(const Section& sec) {
    DiscreteOperators ops;
    ops.sec = sec;
    if (sec.dim() == 1)
        assemble_1d(sec, ops);
    else
        assemble_2d(sec, ops);
    return ops;
}

SpectralBasis eig(const DiscreteOperators& ops, int m) {
    if (m < 1 || m > ops.size()) throw std::invalid_argument("eig: mode count out of range");
    const SpectralBasis& full = ops.full_basis();
    SpectralBasis out;
    out.lambda = full.lambda.head(m);
    out.E = full.E.leftCols(m);
    out.Mdiag = full.Mdiag;
    return out;
}

const SpectralBasis& DiscreteOperators::full_basis() const {
    if (basis_cache) return *basis_cache;
    int n = size();
    Vec dinv = Mdiag.cwiseSqrt().cwiseInverse();
    Mat B = dinv.asDiagonal() * Mat(K) * dinv.asDiagonal();
    B = 0.5 * (B + B.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(B);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig: symmetric eigensolver failed to converge");

    auto basis = std::make_shared<SpectralBasis>();
    basis->lambda = es.eigenvalues();
    basis->E = dinv.asDiagonal() * es.eigenvectors();
    basis->Mdiag = Mdiag;
    for (int k = 0; k < n; ++k) {
        int at = 0;
        basis->E.col(k).cwiseAbs().maxCoeff(&at);
        if (basis->E(at, k) < 0.0) basis->E.col(k) = -basis->E.col(k);
    }
    basis_cache = std::move(basis);
    return *basis_cache;
}

Scheme Scheme::CrankNicolson(double dt) {
    if (dt <= 0.0) throw std::invalid_argument("heat_step: dt must be positive");
    return {crank_nicolson, dt};
}

Vec heat_step(const DiscreteOperators& ops, const Vec& v, double t, const Scheme& scheme) {
    if (t < 0.0) throw std::invalid_argument("heat_step: negative time");
    if (t == 0.0) return v;

    if (scheme.kind == Scheme::eigenexp) {
        const SpectralBasis& basis = ops.full_basis();
        Vec c = basis.coeffs(v);
        for (int k = 0; k < c.size(); ++k) c(k) *= std::exp(-basis.lambda(k) * t);
        return basis.synth(c);
    }

    double dt = scheme.dt;
    if (dt <= 0.0) throw std::invalid_argument("heat_step: dt must be positive");
    long steps = std::lround(std::floor(t / dt + 1e-12));
    double rem = t - steps * dt;
    if (rem < 1e-12 * t) rem = 0.0;

    SpMat M(ops.size(), ops.size());
    std::vector<Eigen::Triplet<double>> mt;
    for (int k = 0; k < ops.size(); ++k) mt.emplace_back(k, k, ops.Mdiag(k));
    M.setFromTriplets(mt.begin(), mt.end());

    Vec w = v;
    auto advance = [&](double step, long count) {
        if (count == 0 || step <= 0.0) return;
        SpMat Ap = M + (0.5 * step) * ops.K;
        SpMat Am = M - (0.5 * step) * ops.K;
        Eigen::SimplicialLDLT<SpMat> solver(Ap);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("heat_step: Crank-Nicolson factorization failed");
        for (long i = 0; i < count; ++i) w = solver.solve(Am * w);
    };
    advance(dt, steps);
    advance(rem, rem > 0.0 ? 1 : 0);
    return w;
}

SpMat nondivergence_stencil(const Section& sec) {
    if (sec.dim() != 2) throw std::invalid_argument("nondivergence_stencil: 2-d meshes only");
    const Potential& phi = sec.phi;
    auto idx = interior_index_map(sec);
    int n = static_cast<int>(sec.interior.size());

    // adjacency through shared triangles
    std::vector<std::vector<int>> nbrs(sec.node_count());
    for (const auto& t : sec.tris)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) nbrs[t[i]].push_back(t[j]);
    for (auto& v : nbrs) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    std::vector<Eigen::Triplet<double>> lt;
    for (int node : sec.interior) {
        std::vector<int> ring = nbrs[node];
        if (ring.size() < 5) {
            std::vector<int> grown = ring;
            for (int nb : ring)
                for (int nb2 : nbrs[nb])
                    if (nb2 != node) grown.push_back(nb2);
            std::sort(grown.begin(), grown.end());
            grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
            ring = grown;
        }
        int k = static_cast<int>(ring.size());
        Vec x0 = sec.nodes.row(node).transpose();
        Mat X(k, 5);
        for (int r = 0; r < k; ++r) {
            double dx = sec.nodes(ring[r], 0) - x0(0);
            double dy = sec.nodes(ring[r], 1) - x0(1);
            X.row(r) << dx, dy, 0.5 * dx * dx, dx * dy, 0.5 * dy * dy;
        }
        // rows 2..4 of the pseudoinverse read off the fitted Hessian entries
        Mat P = (X.transpose() * X).ldlt().solve(X.transpose());

        Mat H = phi.hessian(x0);
        double det = H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0);
        if (det <= 0.0) throw std::domain_error("nondivergence_stencil: singular hessian at node");
        Mat Hi(2, 2);
        Hi << H(1, 1) / det, -H(0, 1) / det, -H(1, 0) / det, H(0, 0) / det;

        int gi = idx[node];
        double diag = 0.0;
        for (int r = 0; r < k; ++r) {
            double w = Hi(0, 0) * P(2, r) + 2.0 * Hi(0, 1) * P(3, r) + Hi(1, 1) * P(4, r);
            diag += w;
            int gj = idx[ring[r]];
            if (gj >= 0) lt.emplace_back(gi, gj, -w);
        }
        lt.emplace_back(gi, gi, diag);
    }
    SpMat L(n, n);
    L.setFromTriplets(lt.begin(), lt.end());
    return L;
}

Vec restrict_interior(const Section& sec, const Vec& full) {
    Vec v(sec.interior.size());
    for (size_t k = 0; k < sec.interior.size(); ++k) v(k) = full(sec.interior[k]);
    return v;
}

Vec extend_zero(const Section& sec, const Vec& interior) {
    Vec full = Vec::Zero(sec.node_count());
    for (size_t k = 0; k < sec.interior.size(); ++k) full(sec.interior[k]) = interior(k);
    return full;
}

} // namespace mafrac
