#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mafrac/fractional.hpp"
#include "mafrac/special.hpp"

using namespace mafrac;

namespace {

double mnorm(const Vec& Mdiag, const Vec& v) { return std::sqrt(v.dot(Mdiag.cwiseProduct(v))); }

DiscreteOperators interval_ops(int nodes, double c = 1.0) {
    return assemble(build_section(Potential::quad(1, c), pt(0.0), 1.0, nodes));
}

Vec random_vec(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = U(rng);
    return v;
}

Vec smooth_profile(const Section& sec) {
    Vec v(sec.interior.size());
    for (size_t i = 0; i < sec.interior.size(); ++i) {
        double x = sec.nodes(sec.interior[i], 0);
        double b = 1.0 - x * x / (sec.xr * sec.xr);
        v(i) = b * b * b;
    }
    return v;
}

} // namespace

TEST_CASE("frac_apply_spectral: power one reproduces the operator") {
    DiscreteOperators ops = interval_ops(200);
    const SpectralBasis& basis = ops.full_basis();
    Vec v = random_vec(ops.size(), 4);
    Vec got = frac_apply_spectral(basis, 1.0, v).nodal;
    Vec want = ops.Mdiag.cwiseInverse().cwiseProduct(ops.K * v);
    CHECK(mnorm(ops.Mdiag, got - want) <= 1e-10 * mnorm(ops.Mdiag, want));
}

TEST_CASE("frac_apply_spectral: eigenmode scaling and composition") {
    DiscreteOperators ops = interval_ops(150);
    const SpectralBasis& basis = ops.full_basis();
    Vec e1 = basis.E.col(0);
    double s = 0.6;
    Vec got = frac_apply_spectral(basis, s, e1).nodal;
    CHECK((got - std::pow(basis.lambda(0), s) * e1).cwiseAbs().maxCoeff() <=
          1e-12 * got.cwiseAbs().maxCoeff());

    Vec v = random_vec(ops.size(), 5);
    Vec two_step = frac_apply_spectral(basis, 0.25, frac_apply_spectral(basis, 0.45, v).nodal).nodal;
    Vec one_step = frac_apply_spectral(basis, 0.70, v).nodal;
    CHECK(mnorm(ops.Mdiag, two_step - one_step) <= 1e-12 * mnorm(ops.Mdiag, one_step));
}

TEST_CASE("frac_solve_spectral: mode scaling, inverse property, zero input") {
    DiscreteOperators ops = interval_ops(150);
    const SpectralBasis& basis = ops.full_basis();
    double s = 0.35;
    Vec e1 = basis.E.col(0);
    Vec u = frac_solve_spectral(basis, s, e1).nodal;
    CHECK((u - std::pow(basis.lambda(0), -s) * e1).cwiseAbs().maxCoeff() <=
          1e-12 * u.cwiseAbs().maxCoeff());

    Vec f = random_vec(ops.size(), 6);
    Vec back = frac_apply_spectral(basis, s, frac_solve_spectral(basis, s, f).nodal).nodal;
    CHECK(mnorm(ops.Mdiag, back - f) <= 1e-12 * mnorm(ops.Mdiag, f));

    Vec zero = frac_solve_spectral(basis, s, Vec::Zero(ops.size())).nodal;
    CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("FracField: coefficient and nodal forms interconvert") {
    DiscreteOperators ops = interval_ops(120);
    const SpectralBasis& basis = ops.full_basis();
    Vec v = random_vec(ops.size(), 7);
    FracField field = frac_apply_spectral(basis, 0.4, v);
    CHECK(mnorm(ops.Mdiag, basis.synth(field.coeff) - field.nodal) <=
          1e-10 * mnorm(ops.Mdiag, field.nodal));
    Vec c = basis.coeffs(field.nodal);
    CHECK((c - field.coeff).cwiseAbs().maxCoeff() <= 1e-10 * field.coeff.cwiseAbs().maxCoeff());
}

TEST_CASE("frac_apply_semigroup: per-mode scalar identity across s and lambda") {
    DiscreteOperators ops = interval_ops(300);
    const SpectralBasis& basis = ops.full_basis();
    for (int k : {0, 9, 49}) {
        Vec ek = basis.E.col(k);
        for (int i = 1; i <= 9; ++i) {
            double s = i / 10.0;
            Vec got = frac_apply_semigroup(ops, s, ek).nodal;
            Vec want = std::pow(basis.lambda(k), s) * ek;
            CHECK(mnorm(ops.Mdiag, got - want) <= 1e-8 * mnorm(ops.Mdiag, want));
        }
    }
}

TEST_CASE("frac_apply_semigroup: agrees with the spectral route on random data") {
    DiscreteOperators ops = interval_ops(300);
    const SpectralBasis& basis = ops.full_basis();
    Vec v = random_vec(ops.size(), 11);
    for (double s : {0.3, 0.5, 0.7}) {
        Vec spec = frac_apply_spectral(basis, s, v).nodal;
        FracField semi = frac_apply_semigroup(ops, s, v);
        CHECK(mnorm(ops.Mdiag, semi.nodal - spec) <= 1e-8 * mnorm(ops.Mdiag, spec));
        CHECK(semi.quad_error <= 1e-10);
        CHECK(semi.origin == FieldOrigin::semigroup);
    }
}

TEST_CASE("frac_apply_semigroup: Crank-Nicolson oracle stays within 1e-3") {
    DiscreteOperators ops = interval_ops(400);
    const SpectralBasis& basis = ops.full_basis();
    Vec v = smooth_profile(ops.sec);
    double s = 0.5;
    Vec spec = frac_apply_spectral(basis, s, v).nodal;
    Vec semi = frac_apply_semigroup(ops, s, v, FracQuad::CrankNicolson()).nodal;
    CHECK(mnorm(ops.Mdiag, semi - spec) <= 1e-3 * mnorm(ops.Mdiag, spec));
}

TEST_CASE("frac_apply_semigroup: s near one approaches the operator itself") {
    DiscreteOperators ops = interval_ops(300);
    Vec v = smooth_profile(ops.sec);
    Vec lv = ops.Mdiag.cwiseInverse().cwiseProduct(ops.K * v);
    Vec spec = frac_apply_spectral(ops.full_basis(), 0.99, v).nodal;
    Vec got = frac_apply_semigroup(ops, 0.99, v).nodal;
    // quadrature must track the spectral truth tightly even this close to s = 1
    CHECK(mnorm(ops.Mdiag, got - spec) <= 1e-8 * mnorm(ops.Mdiag, spec));
    // the limit gap itself is set by the spectral spread of v, about 2.3% here
    CHECK(mnorm(ops.Mdiag, got - lv) <= 0.03 * mnorm(ops.Mdiag, lv));
}

TEST_CASE("frac_solve_semigroup: mode scaling and round trip") {
    DiscreteOperators ops = interval_ops(250);
    const SpectralBasis& basis = ops.full_basis();
    double s = 0.45;
    Vec e1 = basis.E.col(0);
    Vec u = frac_solve_semigroup(ops, s, e1).nodal;
    CHECK(mnorm(ops.Mdiag, u - std::pow(basis.lambda(0), -s) * e1) <=
          1e-8 * mnorm(ops.Mdiag, u));

    Vec f = smooth_profile(ops.sec);
    Vec back = frac_apply_semigroup(ops, s, frac_solve_semigroup(ops, s, f).nodal).nodal;
    CHECK(mnorm(ops.Mdiag, back - f) <= 1e-6 * mnorm(ops.Mdiag, f));
}

TEST_CASE("frac_solve_semigroup: positivity for nonnegative data") {
    DiscreteOperators ops = interval_ops(200);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vec f(ops.size());
    for (int i = 0; i < f.size(); ++i) f(i) = U(rng);
    for (double s : {0.25, 0.5, 0.75}) {
        Vec u = frac_solve_semigroup(ops, s, f).nodal;
        CHECK(u.minCoeff() >= 0.0);
        Vec us = frac_solve_spectral(ops.full_basis(), s, f).nodal;
        CHECK(us.minCoeff() >= -1e-10 * us.maxCoeff());
    }
}

TEST_CASE("fractional routes: input validation") {
    DiscreteOperators ops = interval_ops(60);
    Vec v = random_vec(ops.size(), 2);
    CHECK_THROWS_AS(frac_apply_semigroup(ops, 1.5, v), std::invalid_argument);
    CHECK_THROWS_AS(frac_solve_semigroup(ops, -0.1, v), std::invalid_argument);

    FracQuad strict;
    strict.tol = 1e-16;
    strict.max_doublings = 0;
    CHECK_THROWS_AS(frac_apply_semigroup(ops, 0.5, v, strict), std::runtime_error);

    Vec zero = frac_apply_semigroup(ops, 0.5, Vec::Zero(ops.size())).nodal;
    CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interpolation_check: eigenmode ratio and general bound") {
    DiscreteOperators ops = interval_ops(200);
    const SpectralBasis& basis = ops.full_basis();
    for (double s : {0.3, 0.5, 0.8}) {
        InterpolationReport rep = interpolation_check(ops, basis, s, basis.E.col(0));
        double expect = special::gamma_fn(2.0 - s) / std::pow(2.0, 1.0 - s);
        CHECK(rep.ratio == doctest::Approx(expect).epsilon(1e-10));
        CHECK(rep.ok);
    }
    Vec v = smooth_profile(ops.sec);
    InterpolationReport rep = interpolation_check(ops, basis, 0.3, v);
    CHECK(rep.ok);
    InterpolationReport scaled = interpolation_check(ops, basis, 0.3, Vec(7.5 * v));
    CHECK(scaled.ratio == doctest::Approx(rep.ratio).epsilon(1e-12));
}

TEST_CASE("max_principle_check: zero vector, hat profile, one-sided profile") {
    DiscreteOperators ops = interval_ops(300);
    const SpectralBasis& basis = ops.full_basis();
    const Section& sec = ops.sec;

    Vec zero = Vec::Zero(ops.size());
    MaxPrincipleReport rz = max_principle_check(basis, 0.5, zero);
    CHECK(rz.worst == 0.0);
    CHECK(rz.ok);

    Vec hat(ops.size()), onesided(ops.size());
    for (int i = 0; i < ops.size(); ++i) {
        double x = sec.nodes(sec.interior[i], 0);
        hat(i) = std::max(0.0, 1.0 - std::abs(x - 0.4) / 0.3);
        onesided(i) = x > 0.0 ? (1.0 - x * x) * x * x * x : 0.0;
    }
    for (double s : {0.3, 0.5, 0.7}) {
        MaxPrincipleReport rh = max_principle_check(basis, s, hat);
        CHECK(!rh.zeros.empty());
        CHECK(rh.worst <= 1e-10);
        CHECK(rh.ok);
        MaxPrincipleReport ro = max_principle_check(basis, s, onesided);
        CHECK(ro.worst <= 1e-10);
        CHECK(ro.ok);
    }

    Vec pos = Vec::Ones(ops.size());
    CHECK_THROWS_AS(max_principle_check(basis, 0.5, pos), std::invalid_argument);
    Vec neg = hat;
    neg(5) = -1.0;
    CHECK_THROWS_AS(max_principle_check(basis, 0.5, neg), std::invalid_argument);
}

TEST_CASE("lambda1_estimate: matches the dense solver") {
    for (auto c : {0.5, 1.0}) {
        DiscreteOperators ops = interval_ops(240, c);
        double est = lambda1_estimate(ops);
        double exact = eig(ops, 1).lambda(0);
        CHECK(est == doctest::Approx(exact).epsilon(1e-9));
    }
}
