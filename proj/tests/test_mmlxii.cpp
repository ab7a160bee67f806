#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "zcv/mmlxii.hpp"

using namespace zcv;
using std::numbers::pi;

namespace {

// Compatible traveling-wave triple: every coefficient is a function of
// xi = x + y - t, the y-flow coefficients equal the x-flow ones and the
// t-flow coefficients are their negatives. Then A = B = F(xi), D = -F,
// and all three compatibility equations hold exactly.
CoefficientSet2p1 traveling_wave_2p1(const Grid2& g, double t,
                                     double beta = 1.0) {
    CoefficientSet2p1 c(g, beta);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double xi = g.x(i) + g.y(j) - t;
            double k = 0.7 + 0.3 * std::sin(xi);
            double s = 0.4 * std::cos(xi);
            double tau = 0.25 * std::sin(2.0 * xi);
            c.k.at(i, j) = k;
            c.sigma.at(i, j) = s;
            c.tau.at(i, j) = tau;
            c.m3.at(i, j) = k;
            c.m2.at(i, j) = s;
            c.m1.at(i, j) = tau;
            c.w3.at(i, j) = -k;
            c.w2.at(i, j) = -s;
            c.w1.at(i, j) = -tau;
        }
    return c;
}

struct TripleStacks {
    MatrixStack A, B, D, U, V, T;
};

TripleStacks traveling_wave_stacks(const Grid2& g, int nt, double dt,
                                   double corrupt_k = 1.0) {
    TripleStacks s;
    for (auto* st : {&s.A, &s.B, &s.D, &s.U, &s.V, &s.T}) st->dt = dt;
    for (int n = 0; n < nt; ++n) {
        auto c = traveling_wave_2p1(g, n * dt);
        // scaling k perturbs equations (a),(b); scaling m3 perturbs (a),(c)
        c.k *= corrupt_k;
        c.m3 *= 2.0 - corrupt_k;
        auto m = matrices_2p1(c);
        s.A.slices.push_back(m.A);
        s.B.slices.push_back(m.B);
        s.D.slices.push_back(m.D);
        s.U.slices.push_back(m.U);
        s.V.slices.push_back(m.V);
        s.T.slices.push_back(m.T);
    }
    return s;
}

}  // namespace

TEST_CASE("matrices_2p1: entry placement") {
    Grid2 g(8, 8, 1.0, 1.0);
    {
        CoefficientSet2p1 c(g);
        auto m = matrices_2p1(c);
        for (const auto* f : {&m.A, &m.B, &m.D, &m.U, &m.V, &m.T})
            CHECK(residual_norm(*f, "z").linf == 0.0);
    }
    {
        CoefficientSet2p1 c(g);
        c.m3 = ScalarField(g, 1.0);
        auto m = matrices_2p1(c);
        const Mat& B = m.B.v[0];
        CHECK(B(0, 1) == cplx(1.0));
        CHECK(B(1, 0) == cplx(-1.0));
        CHECK(B(0, 2) == cplx(0.0));
        CHECK(B(1, 2) == cplx(0.0));
        CHECK(B(2, 0) == cplx(0.0));
        CHECK(B(2, 1) == cplx(0.0));
        CHECK(residual_norm(m.A, "A").linf == 0.0);
        CHECK(residual_norm(m.D, "D").linf == 0.0);
    }
    {
        CoefficientSet2p1 c(g);
        c.m1 = ScalarField(g, 2.0);
        auto m = matrices_2p1(c);
        CHECK(std::abs(m.V.v[0](0, 0) - cplx(0, -1)) < 1e-15);
        CHECK(std::abs(m.V.v[0](1, 1) - cplx(0, 1)) < 1e-15);
        CHECK(std::abs(m.V.v[0](0, 1)) < 1e-15);
    }
    {
        CoefficientSet2p1 c(g, -1.0);
        c.m2 = ScalarField(g, 3.0);
        auto m = matrices_2p1(c);
        CHECK(m.B.v[0](0, 2) == cplx(-3.0));
        CHECK(m.B.v[0](2, 0) == cplx(-3.0));  // beta * m2 with beta = -1
    }
}

TEST_CASE("mmlxii_residual: trivial cases and stack guards") {
    Grid2 g(16, 16, 2.0 * pi, 2.0 * pi);
    {
        // constant commuting triple (all diagonal in the 2x2 form)
        MatrixField A(g), B(g), Dm(g);
        for (auto& m : A.v) { m(0, 0) = 1.0; m(1, 1) = -1.0; }
        for (auto& m : B.v) { m(0, 0) = 2.0; m(1, 1) = 0.5; }
        for (auto& m : Dm.v) { m(0, 0) = -3.0; m(1, 1) = 1.0; }
        auto res = mmlxii_residual(MatrixStack::constant(A, 6),
                                   MatrixStack::constant(B, 6),
                                   MatrixStack::constant(Dm, 6));
        for (const auto& r : res) CHECK(r.linf < 1e-12);
    }
    {
        // A = A(x), B = D = 0
        MatrixField A(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) A.at(i, j)(0, 1) = std::sin(g.x(i));
        MatrixField Z(g);
        auto res = mmlxii_residual(MatrixStack::constant(A, 6),
                                   MatrixStack::constant(Z, 6),
                                   MatrixStack::constant(Z, 6));
        for (const auto& r : res) CHECK(r.linf < 1e-12);
        CHECK(mmlxii_xy_residual(A, Z).linf < 1e-12);
    }
    {
        MatrixField Z(g);
        auto shortstack = MatrixStack::constant(Z, 3);
        CHECK_THROWS_AS(mmlxii_residual(shortstack, shortstack, shortstack),
                        MissingTimeStack);
    }
}

TEST_CASE("mmlxii_residual: compatible and corrupted traveling waves") {
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    auto s = traveling_wave_stacks(g, 9, 0.02);
    auto res3 = mmlxii_residual(s.A, s.B, s.D);
    auto res2 = mmlxii_residual(s.U, s.V, s.T);
    for (const auto& r : res3) CHECK(r.linf < 1e-6);
    for (const auto& r : res2) CHECK(r.linf < 1e-6);
    // spatial equation has no time-difference error at all
    CHECK(res3[0].linf < 1e-10);
    CHECK(res2[0].linf < 1e-10);

    auto bad = traveling_wave_stacks(g, 9, 0.02, 1.1);
    auto bad3 = mmlxii_residual(bad.A, bad.B, bad.D);
    auto bad2 = mmlxii_residual(bad.U, bad.V, bad.T);
    for (int i = 0; i < 3; ++i) {
        CHECK(bad3[i].linf > 1e-3);
        CHECK(bad2[i].linf > 1e-3);
        // the two representations carry the same residual up to a bounded
        // normalization factor
        double ratio = bad2[i].linf / bad3[i].linf;
        CHECK(ratio > 0.1);
        CHECK(ratio < 10.0);
    }
}

TEST_CASE("lax_apply: trivial and parameter-collapse cases") {
    Grid2 g(16, 16, 2.0 * pi, 2.0 * pi);
    MatrixField Z(g);
    MatrixField I(g, Mat::identity(2));
    LaxParams prm{0.7, 1.3, cplx(0.4, 0.2)};
    auto zs = MatrixStack::constant(Z, 6);
    auto is = MatrixStack::constant(I, 6);
    auto [Lg, Mg] = lax_apply(zs, zs, zs, is, prm);
    CHECK(residual_norm(Lg, "Lg").linf < 1e-14);
    CHECK(residual_norm(Mg, "Mg").linf < 1e-12);

    // a = 0, e = 0 collapse: L = dx - U applied slice-wise
    MatrixField U(g);
    MatrixField gfun(g, Mat::identity(2));
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            U.at(i, j)(0, 1) = std::sin(g.x(i) + g.y(j));
            gfun.at(i, j)(1, 0) = std::cos(g.x(i));
        }
    LaxParams collapse{0.0, 0.0, cplx(5.0, 0.0)};
    MatrixField direct = deriv(gfun, Axis::X) - matmul(U, gfun);
    MatrixField viaL = lax_apply_L(U, U, gfun, collapse);
    double worst = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p)
        worst = std::max(worst, (direct.v[p] - viaL.v[p]).max_abs());
    CHECK(worst < 1e-14);
}

TEST_CASE("lax_apply: transported wave function annihilates L and M") {
    // Noncommutative pure-transport data: g(x,y) = R(x) Q(y) with
    // R(x) = diag(e^{ix}, e^{-ix}) and Q(y) = cos y I + i sin y sigma_x.
    // Then U = g_x g^-1 = i sigma_z (constant), V = g_y g^-1 =
    // i [[0, e^{2ix}],[e^{-2ix}, 0]], T = 0, and g is t-independent.
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    MatrixField gf(g), Uf(g), Vf(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double x = g.x(i), y = g.y(j);
            Mat R(2), Q(2);
            R(0, 0) = std::exp(cplx(0, x));
            R(1, 1) = std::exp(cplx(0, -x));
            Q(0, 0) = Q(1, 1) = std::cos(y);
            Q(0, 1) = Q(1, 0) = cplx(0, 1) * std::sin(y);
            gf.at(i, j) = R * Q;
            Mat& U = Uf.at(i, j);
            U(0, 0) = cplx(0, 1);
            U(1, 1) = cplx(0, -1);
            Mat& V = Vf.at(i, j);
            V(0, 1) = cplx(0, 1) * std::exp(cplx(0, 2.0 * x));
            V(1, 0) = cplx(0, 1) * std::exp(cplx(0, -2.0 * x));
        }
    CHECK(mmlxii_xy_residual(Uf, Vf).linf < 1e-11);

    LaxParams prm{0.8, 1.1, cplx(0.3, -0.1)};
    auto [Lg, Mg] = lax_apply(MatrixStack::constant(Uf, 7),
                              MatrixStack::constant(Vf, 7),
                              MatrixStack::constant(MatrixField(g), 7),
                              MatrixStack::constant(gf, 7), prm);
    CHECK(residual_norm(Lg, "Lg").linf < 1e-6);
    CHECK(residual_norm(Mg, "Mg").linf < 1e-6);
}

TEST_CASE("plane case: recovery, residuals, zero-mean guard") {
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    {
        ScalarField k(g, 2.5);
        auto m3 = plane_m3(k);
        CHECK(residual_norm(m3, "m3").linf < 1e-12);
    }
    {
        auto k = ScalarField::sample(
            g, [](double x, double y) { return std::sin(x + y); });
        auto m3 = plane_m3(k);
        double worst = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                worst = std::max(worst,
                                 std::abs(m3.at(i, j) - std::sin(g.x(i) + g.y(j))));
        CHECK(worst < 1e-11);
    }
    {
        auto k = ScalarField::sample(
            g, [](double, double y) { return std::sin(y); });
        CHECK_THROWS_AS(plane_m3(k), NonZeroMean);
    }
    {
        // traveling plane wave: k = m3 = f(x + y - t), w3 = -f
        double dt = 0.02;
        auto f = [](double x, double y, double t) {
            return std::sin(x + y - t) + 0.3 * std::cos(2.0 * (x + y - t));
        };
        auto k = ScalarStack::sample(g, 9, 0.0, dt, f);
        auto m3 = k;
        ScalarStack w3 = k;
        for (auto& s : w3.slices) s *= -1.0;
        auto res = plane_case_residual(k, m3, w3);
        CHECK(res[0].linf < 1e-11);
        CHECK(res[1].linf < 1e-6);
        CHECK(res[2].linf < 1e-6);
    }
}

TEST_CASE("plane data through the full 3x3 residual matches the plane form") {
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    double dt = 0.02;
    auto f = [](double x, double y, double t) {
        return 0.8 * std::sin(x + y - t);
    };
    auto k = ScalarStack::sample(g, 7, 0.0, dt, f);
    auto m3 = k;
    ScalarStack w3 = k;
    for (auto& s : w3.slices) s *= -1.0;

    TripleStacks ts;
    for (auto* st : {&ts.A, &ts.B, &ts.D}) st->dt = dt;
    for (int n = 0; n < k.nt(); ++n) {
        CoefficientSet2p1 c(g);
        c.k = k.slices[n];
        c.m3 = m3.slices[n];
        c.w3 = w3.slices[n];
        auto m = matrices_2p1(c);
        ts.A.slices.push_back(m.A);
        ts.B.slices.push_back(m.B);
        ts.D.slices.push_back(m.D);
    }
    auto full = mmlxii_residual(ts.A, ts.B, ts.D);
    auto plane = plane_case_residual(k, m3, w3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(full[i].linf - plane[i].linf) < 1e-14);
}

TEST_CASE("linear problem: exact regrouping of the compatibility residuals") {
    Grid2 g(32, 32, 2.0 * pi, 2.0 * pi);
    {
        MatrixStack z = MatrixStack::constant(matrix_field(g, 3), 6);
        auto [r1, r2] = linear_problem_residual(z, z, z);
        CHECK(r1.linf == 0.0);
        CHECK(r2.linf == 0.0);
    }
    {
        // arbitrary random triple
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        TripleStacks ts;
        for (auto* st : {&ts.A, &ts.B, &ts.D}) st->dt = 0.05;
        Grid2 gs(16, 16, 2.0 * pi, 2.0 * pi);
        auto rnd = [&](double xi, double a, double b) {
            return a * std::sin(xi) + b * std::cos(2.0 * xi);
        };
        for (int n = 0; n < 6; ++n) {
            CoefficientSet2p1 c(gs);
            for (int j = 0; j < gs.ny; ++j)
                for (int i = 0; i < gs.nx; ++i) {
                    double xi = gs.x(i) + 0.5 * gs.y(j) + 0.3 * n;
                    c.k.at(i, j) = rnd(xi, d(rng) * 0 + 0.7, 0.2);
                    c.m3.at(i, j) = rnd(xi + 1.0, 0.5, 0.1);
                    c.w2.at(i, j) = rnd(xi + 2.0, 0.4, 0.3);
                    c.tau.at(i, j) = rnd(2.0 * xi, 0.3, 0.2);
                }
            auto m = matrices_2p1(c);
            ts.A.slices.push_back(m.A);
            ts.B.slices.push_back(m.B);
            ts.D.slices.push_back(m.D);
        }
        auto [r1, r2] = linear_problem_residual(ts.A, ts.B, ts.D);
        auto full = mmlxii_residual(ts.A, ts.B, ts.D);
        CHECK(r1.linf == doctest::Approx(full[0].linf).epsilon(1e-13));
        CHECK(r2.linf == doctest::Approx(full[1].linf).epsilon(1e-13));
    }
}
