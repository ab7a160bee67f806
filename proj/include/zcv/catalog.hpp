#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "zcv/sdym.hpp"
#include "zcv/surface.hpp"

namespace zcv {

/// One closed-form dataset with a provenance note. Only the payload slots
/// relevant to the named entry are populated.
struct CatalogEntry {
    std::string name;
    std::string note;                     // closed form and its validity
    std::map<std::string, double> params;  // resolved parameter values
    std::optional<ScalarStack> scalar_stack;
    std::optional<ComplexStack> complex_stack;
    std::optional<ScalarStack> aux_stack;
    std::optional<Vec3Field> spin;
    std::optional<PositionField> position;
    std::optional<Connection4> connection;
    double chi_extra = 0.0;  // boundary-cap contribution to int K / 2pi
};

namespace detail {

inline double param(const std::map<std::string, double>& m,
                    const std::string& key, double fallback) {
    auto it = m.find(key);
    return it == m.end() ? fallback : it->second;
}

}  // namespace detail

/// Closed-form oracle library. Known names: kdv-soliton, ds-plane-wave,
/// constant-spin, sphere-chart, cylinder-chart, torus-chart,
/// pure-gauge-connection.
inline CatalogEntry exact_catalog(const std::string& name,
                                  std::map<std::string, double> params = {}) {
    using std::numbers::pi;
    CatalogEntry e;
    e.name = name;

    if (name == "kdv-soliton") {
        const double kap = detail::param(params, "kappa", 1.0);
        const double L = detail::param(params, "L", 40.0);
        const int nx = int(detail::param(params, "nx", 256));
        const int nt = int(detail::param(params, "nt", 9));
        const double dt = detail::param(params, "dt", 0.002);
        const double t0 = detail::param(params, "t0", 0.0);
        e.params = {{"kappa", kap}, {"L", L},   {"nx", double(nx)},
                    {"nt", double(nt)}, {"dt", dt}, {"t0", t0}};
        Grid2 g(nx, 8, L, 2.0 * pi);
        e.scalar_stack = ScalarStack::sample(
            g, nt, t0, dt, [kap, L](double x, double, double t) {
                double s =
                    1.0 / std::cosh(kap * (x - L / 2.0 - 4.0 * kap * kap * t));
                return 2.0 * kap * kap * s * s;
            });
        e.note = "k = 2 kappa^2 sech^2(kappa (x - x0 - 4 kappa^2 t)): the "
                 "y-independent line soliton of the KP flow";
        return e;
    }
    if (name == "ds-plane-wave") {
        const double kap = detail::param(params, "kappa", 1.0);
        const double l = detail::param(params, "l", 1.0);
        const double v0 = detail::param(params, "v0", 0.5);
        const double amp = detail::param(params, "amp", 0.8);
        const double a2 = detail::param(params, "alpha2", 1.0);  // alpha^2
        const int n = int(detail::param(params, "n", 32));
        const int nt = int(detail::param(params, "nt", 7));
        const double dt = detail::param(params, "dt", 0.002);
        const double omega = kap * kap + a2 * l * l - v0;
        e.params = {{"kappa", kap}, {"l", l},     {"v0", v0},
                    {"amp", amp},   {"alpha2", a2}, {"omega", omega},
                    {"n", double(n)}, {"nt", double(nt)}, {"dt", dt}};
        Grid2 g(n, n, 2.0 * pi, 2.0 * pi);
        e.complex_stack = ComplexStack::sample(
            g, nt, 0.0, dt, [=](double x, double y, double t) {
                return amp * std::exp(cplx(0.0, kap * x + l * y - omega * t));
            });
        e.aux_stack = ScalarStack::constant(ScalarField(g, v0), nt, dt);
        e.note = "q = A exp(i(kx + ly - wt)), p = conj q, v = v0, with the "
                 "dispersion w = k^2 + alpha^2 l^2 - v0";
        return e;
    }
    if (name == "constant-spin") {
        const int n = int(detail::param(params, "n", 32));
        e.params = {{"n", double(n)}};
        Grid2 g(n, n, 2.0 * pi, 2.0 * pi);
        e.spin = Vec3Field(g, Vec3{0.0, 0.0, 1.0});
        e.note = "S = (0, 0, 1): every spin flow fixes it";
        return e;
    }
    if (name == "sphere-chart") {
        const double R = detail::param(params, "R", 2.0);
        const double band = detail::param(params, "band", 0.4 * pi);
        const int nx = int(detail::param(params, "nx", 72));
        const int ny = int(detail::param(params, "ny", 64));
        e.params = {{"R", R}, {"band", band}, {"nx", double(nx)},
                    {"ny", double(ny)}};
        // theta in [pi/2 - band/2, pi/2 + band/2] aperiodic, phi periodic
        Grid2 g(nx, ny, band, 2.0 * pi, false, true);
        const double th0 = 0.5 * pi - 0.5 * band;
        e.position = PositionField::sample(g, [R, th0](double u, double v) {
            double th = th0 + u;
            return Vec3{R * std::sin(th) * std::cos(v),
                        R * std::sin(th) * std::sin(v), R * std::cos(th)};
        });
        // the two polar caps excluded by the band contribute
        // 2 * 2pi (1 - cos th0) to the total curvature
        e.chi_extra = 2.0 * (1.0 - std::cos(th0));
        e.note = "round sphere of radius R: K = 1/R^2, H = 1/R; chi_extra is "
                 "the cap contribution to int K / 2pi";
        return e;
    }
    if (name == "cylinder-chart") {
        const double R = detail::param(params, "R", 1.5);
        const double H = detail::param(params, "H", 3.0);
        const int nx = int(detail::param(params, "nx", 24));
        const int ny = int(detail::param(params, "ny", 64));
        e.params = {{"R", R}, {"H", H}, {"nx", double(nx)}, {"ny", double(ny)}};
        Grid2 g(nx, ny, H, 2.0 * pi, false, true);
        e.position = PositionField::sample(g, [R](double u, double v) {
            return Vec3{R * std::cos(v), R * std::sin(v), u};
        });
        e.note = "circular cylinder: K = 0, H = 1/(2R)";
        return e;
    }
    if (name == "torus-chart") {
        const double R = detail::param(params, "R", 2.0);
        const double r = detail::param(params, "r", 0.7);
        const int n = int(detail::param(params, "n", 64));
        e.params = {{"R", R}, {"r", r}, {"n", double(n)}};
        Grid2 g(n, n, 2.0 * pi, 2.0 * pi);
        e.position = PositionField::sample(g, [R, r](double u, double v) {
            return Vec3{(R + r * std::cos(u)) * std::cos(v),
                        (R + r * std::cos(u)) * std::sin(v), r * std::sin(u)};
        });
        e.note = "torus of radii (R, r): K = cos u / (r (R + r cos u)), "
                 "total curvature 0";
        return e;
    }
    if (name == "pure-gauge-connection") {
        const int n = int(detail::param(params, "n", 32));
        const int nt = int(detail::param(params, "nt", 6));
        const double dt = detail::param(params, "dt", 0.005);
        e.params = {{"n", double(n)}, {"nt", double(nt)}, {"dt", dt}};
        Grid2 g(n, n, 2.0 * pi, 2.0 * pi);
        MatrixStack phi(0.0, dt);
        Mat gen(3);
        gen(0, 1) = 1.0;
        gen(1, 0) = -1.0;
        for (int s = 0; s < nt; ++s) {
            double t = s * dt;
            MatrixField f(g, Mat::identity(3));
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    double a = 0.4 * std::sin(g.x(i)) * std::cos(g.y(j)) *
                                   (1.0 + 0.3 * t) +
                               0.2 * t;
                    f.at(i, j) = (gen * cplx(a)).exp();
                }
            phi.slices.push_back(std::move(f));
        }
        MatrixStack z = MatrixStack::constant(matrix_field(g, 3), nt, dt);
        e.connection = gauge_transform(Connection4{z, z, z, z}, phi);
        e.note = "A_mu = -phi^-1 d_mu phi for an SO(3)-valued phi: flat, "
                 "hence self-dual";
        return e;
    }
    throw UnknownName("exact_catalog: unknown entry '" + name + "'");
}

}  // namespace zcv
