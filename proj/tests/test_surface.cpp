#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "zcv/surface.hpp"

using namespace zcv;
using std::numbers::pi;

namespace {

// Sphere of radius R, polar band theta in [0.3 pi, 0.7 pi].
// Chart coordinate x is theta - 0.3 pi (aperiodic), y is the azimuth.
constexpr double kR = 2.0;
constexpr double kTheta0 = 0.3 * pi;

Grid2 sphere_grid() { return Grid2(72, 64, 0.4 * pi, 2.0 * pi, false, true); }

PositionField sphere_chart(const Grid2& g) {
    return PositionField::sample(g, [](double x, double y) {
        double th = kTheta0 + x;
        return Vec3{kR * std::sin(th) * std::cos(y),
                    kR * std::sin(th) * std::sin(y), kR * std::cos(th)};
    });
}

Grid2 torus_grid() { return Grid2(64, 64, 2.0 * pi, 2.0 * pi); }

PositionField torus_chart(const Grid2& g, double a = 3.0, double b = 1.0) {
    return PositionField::sample(g, [=](double x, double y) {
        return Vec3{(a + b * std::cos(x)) * std::cos(y),
                    (a + b * std::cos(x)) * std::sin(y), b * std::sin(x)};
    });
}

}  // namespace

TEST_CASE("plane chart: flat metric, zero shape operator, zero residuals") {
    Grid2 g(32, 32, 2.0 * pi, 2.0 * pi);
    auto P = PositionField::sample(
        g, [](double x, double y) { return Vec3{x, y, 0.0}; });
    // A linear immersion on a periodic grid is not periodic, so use an
    // aperiodic chart instead.
    Grid2 ga(24, 24, 3.0, 3.0, false, false);
    P = PositionField::sample(
        ga, [](double x, double y) { return Vec3{x, y, 0.0}; });
    auto geom = fundamental_forms(P);
    for (std::size_t p = 0; p < ga.size(); ++p) {
        CHECK(geom.g[0].v[p] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(geom.g[1].v[p]) < 1e-12);
        CHECK(geom.g[2].v[p] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(geom.b[0].v[p]) < 1e-10);
        CHECK(std::abs(geom.b[1].v[p]) < 1e-10);
        CHECK(std::abs(geom.b[2].v[p]) < 1e-10);
        CHECK(geom.n[2].v[p] == doctest::Approx(1.0).epsilon(1e-12));
    }
    auto [K, H] = curvatures(geom);
    CHECK(residual_norm(K, "K").linf < 1e-10);
    CHECK(residual_norm(H, "H").linf < 1e-10);
    CHECK(gauss_codazzi_residual(geom).linf < 1e-8);
    CHECK(gw_residual(P, geom, christoffel(geom)).linf < 1e-8);
}

TEST_CASE("sphere band: fundamental forms match closed forms") {
    Grid2 g = sphere_grid();
    auto P = sphere_chart(g);
    auto geom = fundamental_forms(P);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double th = kTheta0 + g.x(i);
            double s2 = std::sin(th) * std::sin(th);
            worst = std::max(worst, std::abs(geom.g[0].at(i, j) - kR * kR));
            worst = std::max(worst, std::abs(geom.g[1].at(i, j)));
            worst = std::max(worst, std::abs(geom.g[2].at(i, j) - kR * kR * s2));
            worst = std::max(worst, std::abs(geom.b[0].at(i, j) + kR));
            worst = std::max(worst, std::abs(geom.b[1].at(i, j)));
            worst = std::max(worst, std::abs(geom.b[2].at(i, j) + kR * s2));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("sphere band: K = 1/R^2, H = -1/R, R_1212 = R^2 sin^2 theta") {
    Grid2 g = sphere_grid();
    auto geom = fundamental_forms(sphere_chart(g));
    auto [K, H] = curvatures(geom);
    double worst_k = 0.0, worst_h = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        worst_k = std::max(worst_k, std::abs(K.v[p] - 1.0 / (kR * kR)));
        worst_h = std::max(worst_h, std::abs(H.v[p] + 1.0 / kR));
    }
    CHECK(worst_k < 1e-9);
    CHECK(worst_h < 1e-9);

    auto G = christoffel(geom);
    auto R = riemann(G, geom);
    double worst_r = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double th = kTheta0 + g.x(i);
            double want = kR * kR * std::sin(th) * std::sin(th);
            worst_r = std::max(worst_r, std::abs(R.R1212.at(i, j) - want));
        }
    CHECK(worst_r < 1e-8);
}

TEST_CASE("sphere band: Christoffel symbols match closed forms") {
    Grid2 g = sphere_grid();
    auto geom = fundamental_forms(sphere_chart(g));
    auto G = christoffel(geom);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double th = kTheta0 + g.x(i);
            // Gamma^1_22 = -sin cos, Gamma^2_12 = cot, the rest vanish.
            worst = std::max(worst, std::abs(G.at(0, 1, 1).at(i, j) +
                                             std::sin(th) * std::cos(th)));
            worst = std::max(worst, std::abs(G.at(1, 0, 1).at(i, j) -
                                             std::cos(th) / std::sin(th)));
            worst = std::max(worst, std::abs(G.at(0, 0, 0).at(i, j)));
            worst = std::max(worst, std::abs(G.at(0, 0, 1).at(i, j)));
            worst = std::max(worst, std::abs(G.at(1, 0, 0).at(i, j)));
            worst = std::max(worst, std::abs(G.at(1, 1, 1).at(i, j)));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("conformal metric: Christoffel symbols from phi derivatives") {
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    auto phi = ScalarField::sample(
        g, [](double x, double y) { return 0.3 * std::sin(x) * std::cos(y); });
    GeometryData geom;
    geom.grid = g;
    for (auto* blk : {&geom.g, &geom.b, &geom.n})
        for (auto& f : *blk) f = ScalarField(g, 0.0);
    for (std::size_t p = 0; p < g.size(); ++p) {
        double e = std::exp(2.0 * phi.v[p]);
        geom.g[0].v[p] = e;
        geom.g[2].v[p] = e;
    }
    auto G = christoffel(geom);
    auto px = deriv(phi, Axis::X), py = deriv(phi, Axis::Y);
    double worst = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        worst = std::max(worst, std::abs(G.gamma[0][0].v[p] - px.v[p]));
        worst = std::max(worst, std::abs(G.gamma[0][1].v[p] - py.v[p]));
        worst = std::max(worst, std::abs(G.gamma[0][2].v[p] + px.v[p]));
        worst = std::max(worst, std::abs(G.gamma[1][0].v[p] + py.v[p]));
        worst = std::max(worst, std::abs(G.gamma[1][1].v[p] - px.v[p]));
        worst = std::max(worst, std::abs(G.gamma[1][2].v[p] - py.v[p]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("covariant derivative: metric compatibility and symmetry") {
    Grid2 g = sphere_grid();
    auto geom = fundamental_forms(sphere_chart(g));
    auto G = christoffel(geom);
    auto Dg = covariant_deriv_sym2(geom.g, G);
    double worst = 0.0;
    for (int m = 0; m < 2; ++m)
        for (int s = 0; s < 3; ++s)
            worst = std::max(worst, residual_norm(Dg[m][s], "Dg").linf);
    CHECK(worst < 1e-8);

    // Hessian of a scalar is symmetric: D_1 (d phi)_2 = D_2 (d phi)_1.
    auto phi = ScalarField::sample(g, [](double x, double y) {
        return std::sin(x) * std::cos(2.0 * y);
    });
    std::array<ScalarField, 2> dphi{deriv(phi, Axis::X), deriv(phi, Axis::Y)};
    auto Dd = covariant_deriv_covector(dphi, G);
    auto anti = Dd[0][1] - Dd[1][0];
    CHECK(residual_norm(anti, "hessian-antisym").linf < 1e-7);
}

TEST_CASE("contravariant covariant derivative: raising commutes") {
    Grid2 g = sphere_grid();
    auto geom = fundamental_forms(sphere_chart(g));
    auto G = christoffel(geom);
    auto phi = ScalarField::sample(g, [](double x, double y) {
        return std::cos(x) * std::sin(y);
    });
    std::array<ScalarField, 2> f{deriv(phi, Axis::X), deriv(phi, Axis::Y)};
    auto gi = detail::inverse_metric(geom);
    std::array<ScalarField, 2> fup{ScalarField(g, 0.0), ScalarField(g, 0.0)};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (std::size_t p = 0; p < g.size(); ++p)
                fup[a].v[p] += gi[a + b].v[p] * f[b].v[p];
    auto Dlow = covariant_deriv_covector(f, G);
    auto Dup = covariant_deriv_vector(fup, G);
    double worst = 0.0;
    for (int m = 0; m < 2; ++m)
        for (int a = 0; a < 2; ++a)
            for (std::size_t p = 0; p < g.size(); ++p) {
                double raised = 0.0;
                for (int b = 0; b < 2; ++b)
                    raised += gi[a + b].v[p] * Dlow[m][b].v[p];
                worst = std::max(worst, std::abs(raised - Dup[m][a].v[p]));
            }
    CHECK(worst < 1e-7);
}

TEST_CASE("compatibility residuals vanish on sphere and torus") {
    {
        auto geom = fundamental_forms(sphere_chart(sphere_grid()));
        auto rep = gauss_codazzi_residual(geom);
        CHECK(rep.linf < 1e-8);
        REQUIRE(rep.component_breakdown.size() == 2);
        CHECK(rep.component_breakdown[0].first == "gauss");
        CHECK(rep.component_breakdown[1].first == "codazzi");
        auto P = sphere_chart(sphere_grid());
        CHECK(gw_residual(P, geom, christoffel(geom)).linf < 1e-8);
    }
    {
        auto g = torus_grid();
        auto P = torus_chart(g);
        auto geom = fundamental_forms(P);
        CHECK(gauss_codazzi_residual(geom).linf < 1e-8);
        CHECK(gw_residual(P, geom, christoffel(geom)).linf < 1e-8);
    }
}

TEST_CASE("incompatible shape operator is detected") {
    auto geom = fundamental_forms(sphere_chart(sphere_grid()));
    geom.b[1] += ScalarField(geom.grid, 0.05);  // no surface realizes this b
    auto rep = gauss_codazzi_residual(geom);
    CHECK(rep.linf > 1e-3);
}

TEST_CASE("degenerate immersion throws SingularMetric") {
    Grid2 g(16, 16, 2.0, 2.0, false, false);
    auto P = PositionField::sample(
        g, [](double x, double) { return Vec3{x, x, 0.0}; });
    CHECK_THROWS_AS(fundamental_forms(P), SingularMetric);
}

TEST_CASE("torus curvature and Euler characteristic") {
    auto g = torus_grid();
    double a = 3.0, b = 1.0;
    auto geom = fundamental_forms(torus_chart(g, a, b));
    auto [K, H] = curvatures(geom);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double want = std::cos(g.x(i)) / (b * (a + b * std::cos(g.x(i))));
            worst = std::max(worst, std::abs(K.at(i, j) - want));
        }
    CHECK(worst < 1e-9);
    double chi = integral_curvature({make_patch(geom, K)});
    CHECK(std::abs(chi) < 1e-12);
}

TEST_CASE("sphere Euler characteristic: band plus analytic polar caps") {
    auto g = sphere_grid();
    auto geom = fundamental_forms(sphere_chart(g));
    auto [K, H] = curvatures(geom);
    // Each cap of angular radius theta0 contributes 2 pi (1 - cos theta0)
    // to the total curvature integral.
    double caps = 2.0 * (2.0 * pi * (1.0 - std::cos(kTheta0)));
    double chi = integral_curvature({make_patch(geom, K, caps)});
    CHECK(std::abs(chi - 2.0) < 1e-6);
}
