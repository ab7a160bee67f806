#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "zcv/catalog.hpp"
#include "zcv/solvers.hpp"

using namespace zcv;
using std::numbers::pi;

namespace {

double soliton(double kap, double x) {
    double s = 1.0 / std::cosh(kap * x);
    return 2.0 * kap * kap * s * s;
}

}  // namespace

TEST_CASE("solve_kp: trivial data stays zero") {
    Grid2 g(64, 8, 2.0 * pi, 2.0 * pi);
    SolveConfig cfg{0.01, 0.001, "etd4", true};
    auto sol = solve_kp(ScalarField(g, 0.0), cplx(1.0, 0.0), cfg);
    CHECK(sol.k.nt() >= 5);
    CHECK(residual_norm(sol.k.slices.back(), "k").linf == 0.0);
    CHECK(sol.mass_drift == 0.0);
}

TEST_CASE("solve_kp: KdV soliton translates at speed 4 kappa^2") {
    const double L = 40.0, kap = 1.0, t_end = 1.0;
    Grid2 g(256, 8, L, 2.0 * pi);
    auto k0 = ScalarField::sample(
        g, [&](double x, double) { return soliton(kap, x - L / 2.0); });
    SolveConfig cfg{t_end, 0.0005, "etd4", true};
    auto sol = solve_kp(k0, cplx(1.0, 0.0), cfg);

    double shape_err = 0.0;
    const ScalarField& kf = sol.k.slices.back();
    for (int i = 0; i < g.nx; ++i) {
        double expect = soliton(kap, g.x(i) - L / 2.0 - 4.0 * kap * kap * t_end);
        shape_err = std::max(shape_err, std::abs(kf.at(i, 0) - expect));
    }
    CHECK(shape_err < 1e-4);
    CHECK(sol.mass_drift < 1e-10);
    // the captured stack satisfies the KP system
    auto [ra, rb] = kp_residual(sol.k, sol.m3, cplx(1.0, 0.0));
    CHECK(ra.linf < 1e-4);
    CHECK(rb.linf < 1e-10);
}

TEST_CASE("solve_kp: residual self-consistency on random smooth data") {
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    auto k0 = ScalarField::sample(g, [](double x, double y) {
        return 1e-3 * (std::sin(x) * std::cos(y) + 0.5 * std::sin(2.0 * x + y));
    });
    SolveConfig cfg{0.02, 0.001, "etd4", true};
    auto sol = solve_kp(k0, cplx(1.0, 0.0), cfg);
    auto [ra, rb] = kp_residual(sol.k, sol.m3, cplx(1.0, 0.0));
    CHECK(ra.linf < 1e-5);
    CHECK(rb.linf < 1e-10);
}

TEST_CASE("solve_kp: guards") {
    Grid2 g(64, 8, 2.0 * pi, 2.0 * pi);
    // k_y with nonzero x-mean: the nonlocal term is undefined
    auto bad = ScalarField::sample(g, [](double, double y) { return std::sin(y); });
    CHECK_THROWS_AS(solve_kp(bad, cplx(1.0, 0.0),
                             SolveConfig{0.01, 0.001, "etd4", true}),
                    NonZeroMean);
    ScalarField z(g, 0.0);
    CHECK_THROWS_AS(solve_kp(z, cplx(1.0, 0.0),
                             SolveConfig{0.01, -1.0, "etd4", true}),
                    ArgumentError);
    // dt far beyond the dispersive bound
    CHECK_THROWS_AS(solve_kp(z, cplx(1.0, 0.0),
                             SolveConfig{10.0, 10.0, "etd4", true}),
                    ArgumentError);
}

TEST_CASE("solve_kp: spectral and 4th-order time convergence") {
    const double L = 40.0, kap = 1.0;
    // grid refinement: residual drops by >= 2 orders of magnitude
    double res[2];
    int idx = 0;
    for (int nx : {128, 256}) {
        Grid2 g(nx, 8, L, 2.0 * pi);
        auto k0 = ScalarField::sample(
            g, [&](double x, double) { return soliton(kap, x - L / 2.0); });
        SolveConfig cfg{0.05, 0.001, "etd4", true};
        auto sol = solve_kp(k0, cplx(1.0, 0.0), cfg);
        auto [ra, rb] = kp_residual(sol.k, sol.m3, cplx(1.0, 0.0));
        res[idx++] = ra.linf;
        (void)rb;
    }
    CHECK(res[0] > 100.0 * res[1]);

    // dt halving: terminal error vs a dt/4 reference shrinks >= 8x
    Grid2 g(128, 8, L, 2.0 * pi);
    auto k0 = ScalarField::sample(
        g, [&](double x, double) { return soliton(kap, x - L / 2.0); });
    auto terminal = [&](double dt) {
        SolveConfig cfg{0.2, dt, "etd4", true};
        return solve_kp(k0, cplx(1.0, 0.0), cfg).k.slices.back();
    };
    ScalarField ref = terminal(0.0025);
    ScalarField c1 = terminal(0.02), c2 = terminal(0.01);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t p = 0; p < ref.v.size(); ++p) {
        e1 = std::max(e1, std::abs(c1.v[p] - ref.v[p]));
        e2 = std::max(e2, std::abs(c2.v[p] - ref.v[p]));
    }
    CHECK(e1 > 8.0 * e2);
}

TEST_CASE("solve_mkp: trivial and residual self-consistency") {
    Grid2 g(64, 64, 2.0 * pi, 2.0 * pi);
    {
        SolveConfig cfg{0.01, 0.001, "etd4", true};
        auto sol = solve_mkp(ScalarField(g, 0.0), cplx(1.0, 0.0), cfg);
        CHECK(residual_norm(sol.k.slices.back(), "k").linf == 0.0);
    }
    {
        auto k0 = ScalarField::sample(g, [](double x, double y) {
            return 1e-2 * (std::cos(x) * std::sin(y) + 0.4 * std::sin(x + 2.0 * y));
        });
        SolveConfig cfg{0.02, 0.001, "etd4", true};
        auto sol = solve_mkp(k0, cplx(1.0, 0.0), cfg);
        auto [ra, rb] = mkp_residual(sol.k, sol.w, cplx(1.0, 0.0));
        CHECK(ra.linf < 1e-5);
        // the flow slowly generates an x-averaged component of k_y that the
        // nonlocal field w = dx^-1 k_y cannot carry, so (77b) holds only up
        // to that drift
        CHECK(rb.linf < 1e-4);
    }
}

TEST_CASE("solve_ds: trivial, plane wave, self-consistency, guards") {
    Grid2 g(32, 32, 2.0 * pi, 2.0 * pi);
    {
        SolveConfig cfg{0.01, 0.001, "splitstep", true};
        auto sol = solve_ds(ComplexField(g, 0.0), cplx(0.0, 1.0), cfg);
        CHECK(residual_norm(sol.q.slices.back(), "q").linf == 0.0);
    }
    {
        // plane wave: v = 0 (zero-mode convention), omega = kx^2 - ky^2
        const double kk = 1.0, ll = 2.0, amp = 0.8, t_end = 0.5;
        const double omega = kk * kk - ll * ll;
        auto q0 = ComplexField::sample(g, [&](double x, double y) {
            return amp * std::exp(cplx(0.0, kk * x + ll * y));
        });
        SolveConfig cfg{t_end, 0.005, "splitstep", true};
        auto sol = solve_ds(q0, cplx(0.0, 1.0), cfg);
        const ComplexField& qf = sol.q.slices.back();
        double amp_err = 0.0, phase_err = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                cplx expect = amp * std::exp(cplx(
                    0.0, kk * g.x(i) + ll * g.y(j) - omega * t_end));
                amp_err = std::max(amp_err,
                                   std::abs(std::abs(qf.at(i, j)) - amp));
                phase_err = std::max(phase_err, std::abs(qf.at(i, j) - expect));
            }
        CHECK(amp_err < 1e-6);
        CHECK(phase_err < 1e-5);
        CHECK(sol.power_drift < 1e-6);
        auto res = ds_residual({sol.q, sol.p, sol.v, cplx(0.0, 1.0)});
        CHECK(res[0].linf < 1e-4);
        CHECK(res[2].linf < 1e-10);
    }
    {
        // localized smooth data: the emitted stack satisfies (59) to the
        // splitting accuracy
        auto q0 = ComplexField::sample(g, [](double x, double y) {
            return cplx(0.1 * std::sin(x) * std::cos(y),
                        0.05 * std::cos(x + y));
        });
        SolveConfig cfg{0.02, 0.001, "splitstep", true};
        auto sol = solve_ds(q0, cplx(0.0, 1.0), cfg);
        auto res = ds_residual({sol.q, sol.p, sol.v, cplx(0.0, 1.0)});
        CHECK(res[0].linf < 1e-3);
        CHECK(res[1].linf < 1e-3);
        CHECK(res[2].linf < 1e-8);
    }
    CHECK_THROWS_AS(solve_ds(ComplexField(g, 0.0), cplx(1.0, 0.0),
                             SolveConfig{0.01, 0.001, "splitstep", true}),
                    ArgumentError);
}

TEST_CASE("solve_heisenberg1d: constants, helix oracle, guards") {
    Grid2 g(64, 8, 2.0 * pi, 2.0 * pi);
    {
        SolveConfig cfg{0.1, 0.001, "rk4", true};
        auto sol = solve_heisenberg1d(Vec3Field(g, Vec3{0.0, 0.0, 1.0}), cfg);
        double err = 0.0;
        for (const auto& s : sol.S.slices.back().v)
            err = std::max(err, norm(s - Vec3{0.0, 0.0, 1.0}));
        CHECK(err < 1e-14);
        CHECK(sol.max_drift < 1e-14);
    }
    {
        // precessing helix: S_t = S x S_xx with omega = -kappa^2 cos theta0
        const double theta0 = 0.7, kappa = 2.0, t_end = 0.1;
        const double omega = -kappa * kappa * std::cos(theta0);
        auto S0 = Vec3Field::sample(g, [&](double x, double) {
            return Vec3{std::sin(theta0) * std::cos(kappa * x),
                        std::sin(theta0) * std::sin(kappa * x),
                        std::cos(theta0)};
        });
        SolveConfig cfg{t_end, 0.001, "rk4", true};
        auto sol = solve_heisenberg1d(S0, cfg);
        double err = 0.0;
        const Vec3Field& Sf = sol.S.slices.back();
        for (int i = 0; i < g.nx; ++i) {
            double psi = kappa * g.x(i) + omega * t_end;
            Vec3 expect{std::sin(theta0) * std::cos(psi),
                        std::sin(theta0) * std::sin(psi), std::cos(theta0)};
            err = std::max(err, norm(Sf.at(i, 0) - expect));
        }
        CHECK(err < 1e-6);
        CHECK(sol.max_drift < 1e-8);
    }
    CHECK_THROWS_AS(
        solve_heisenberg1d(Vec3Field(g, Vec3{0.0, 0.0, 2.0}),
                           SolveConfig{0.1, 0.001, "rk4", true}),
        NonUnitSpin);
    CHECK_THROWS_AS(
        solve_heisenberg1d(Vec3Field(g, Vec3{0.0, 0.0, 1.0}),
                           SolveConfig{0.1, 0.1, "rk4", true}),
        ArgumentError);
}

TEST_CASE("exact_catalog: every entry validates against its operator") {
    {
        auto e = exact_catalog("kdv-soliton");
        REQUIRE(e.scalar_stack.has_value());
        ScalarStack m3 = ScalarStack::constant(
            ScalarField(e.scalar_stack->slices[0].grid, 0.0),
            e.scalar_stack->nt(), e.scalar_stack->dt);
        auto [ra, rb] = kp_residual(*e.scalar_stack, m3, cplx(1.0, 0.0));
        CHECK(ra.linf < 1e-6);
        CHECK(rb.linf < 1e-12);
        CHECK(e.note.find("sech") != std::string::npos);
    }
    {
        auto e = exact_catalog("ds-plane-wave");
        REQUIRE(e.complex_stack.has_value());
        REQUIRE(e.aux_stack.has_value());
        ComplexStack p = *e.complex_stack;
        for (auto& s : p.slices)
            for (auto& x : s.v) x = std::conj(x);
        auto res = ds_residual({*e.complex_stack, p, *e.aux_stack,
                                cplx(1.0, 0.0)});
        CHECK(res[0].linf < 1e-10);
        CHECK(res[1].linf < 1e-10);
    }
    {
        auto e = exact_catalog("constant-spin");
        REQUIRE(e.spin.has_value());
        CHECK(norm(e.spin->v[0] - Vec3{0.0, 0.0, 1.0}) == 0.0);
    }
    {
        auto e = exact_catalog("sphere-chart", {{"R", 2.0}});
        REQUIRE(e.position.has_value());
        auto geom = fundamental_forms(*e.position);
        auto [K, H] = curvatures(geom);
        double kerr = 0.0;
        for (double v : K.v) kerr = std::max(kerr, std::abs(v - 0.25));
        CHECK(kerr < 1e-8);
        CurvaturePatch patch =
            make_patch(geom, K, e.chi_extra * 2.0 * pi);
        CHECK(integral_curvature({patch}) == doctest::Approx(2.0).epsilon(1e-6));
    }
    {
        auto e = exact_catalog("cylinder-chart");
        auto geom = fundamental_forms(*e.position);
        auto [K, H] = curvatures(geom);
        double kerr = 0.0;
        for (double v : K.v) kerr = std::max(kerr, std::abs(v));
        CHECK(kerr < 1e-8);
    }
    {
        auto e = exact_catalog("torus-chart");
        auto geom = fundamental_forms(*e.position);
        auto [K, H] = curvatures(geom);
        CurvaturePatch patch = make_patch(geom, K);
        CHECK(std::abs(integral_curvature({patch})) < 1e-6);
    }
    {
        auto e = exact_catalog("pure-gauge-connection");
        REQUIRE(e.connection.has_value());
        for (const auto& r : sdym_residual(*e.connection))
            CHECK(r.linf < 1e-8);
    }
    CHECK_THROWS_AS(exact_catalog("no-such-entry"), UnknownName);
}
