#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "mafrac/section.hpp"

namespace mafrac {

using SpMat = Eigen::SparseMatrix<double>;

/// Generalized eigenpairs of K e = lambda M e, M-orthonormal columns.
struct SpectralBasis {
    Vec lambda; ///< ascending, all positive
    Mat E;      ///< interior nodes x modes
    Vec Mdiag;  ///< lumped mass used for inner products

    int modes() const { return static_cast<int>(lambda.size()); }
    /// Coefficients <v, e_k>_M of an interior vector.
    Vec coeffs(const Vec& v) const { return E.transpose() * Mdiag.cwiseProduct(v); }
    Vec synth(const Vec& c) const { return E * c; }
};

/// Discrete operators of a section with homogeneous Dirichlet data, indexed
/// by interior nodes. K is the stiffness of the divergence form with
/// coefficient matrix adj(D2 phi), M the mu-weighted lumped mass, and L the
/// nondivergence operator: a Hessian-scaled second difference in dim 1, the
/// divergence composite M^{-1} K in dim 2.
struct DiscreteOperators {
    Section sec;
    SpMat K;
    Vec Mdiag;
    SpMat L;

    int size() const { return static_cast<int>(Mdiag.size()); }
    /// Full eigendecomposition, computed once on first use.
    const SpectralBasis& full_basis() const;

  private:
    mutable std::shared_ptr<SpectralBasis> basis_cache;
};

DiscreteOperators assemble(const Section& sec);

/// The m smallest eigenpairs of K e = lambda M e.
SpectralBasis eig(const DiscreteOperators& ops, int m);

/// Time stepping scheme selector for heat_step.
struct Scheme {
    enum Kind { eigenexp, crank_nicolson } kind = eigenexp;
    double dt = 0.0;
    static Scheme Eigenexp() { return {eigenexp, 0.0}; }
    static Scheme CrankNicolson(double dt);
};

/// e^{-t M^{-1}K} v, either exactly through the eigenbasis or by
/// Crank-Nicolson steps of size dt (an eigen-free oracle for the former).
Vec heat_step(const DiscreteOperators& ops, const Vec& v, double t, const Scheme& scheme);

/// Least-squares quadratic-fit stencil for -trace((D2 phi)^{-1} D2 v) on a
/// 2-d mesh; cross-check companion to the divergence composite.
SpMat nondivergence_stencil(const Section& sec);

/// Interior slice of a full nodal vector, and zero-extension back.
Vec restrict_interior(const Section& sec, const Vec& full);
Vec extend_zero(const Section& sec, const Vec& interior);

} // namespace mafrac
