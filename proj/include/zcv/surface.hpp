#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "zcv/spectral.hpp"

namespace zcv {

/// Immersion r(u1,u2) into R^3 given by three coordinate fields.
struct PositionField {
    Grid2 grid;
    std::array<ScalarField, 3> r;

    PositionField() = default;
    explicit PositionField(const Grid2& g)
        : grid(g), r{ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0)} {}

    template <class F>
    static PositionField sample(const Grid2& g, F f) {
        PositionField p(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                Vec3 v = f(g.x(i), g.y(j));
                p.r[0].at(i, j) = v.x;
                p.r[1].at(i, j) = v.y;
                p.r[2].at(i, j) = v.z;
            }
        return p;
    }
};

/// First and second fundamental forms plus the unit normal.
struct GeometryData {
    Grid2 grid;
    // symmetric 2x2 blocks: index 0 -> 11, 1 -> 12, 2 -> 22
    std::array<ScalarField, 3> g;
    std::array<ScalarField, 3> b;
    std::array<ScalarField, 3> n;

    ScalarField det_g() const {
        ScalarField d(grid);
        for (std::size_t p = 0; p < d.v.size(); ++p)
            d.v[p] = g[0].v[p] * g[2].v[p] - g[1].v[p] * g[1].v[p];
        return d;
    }
};

/// Christoffel symbols of the second kind, symmetric in the lower pair.
/// Storage: gamma[c][s] with s = 0 -> (1,1), 1 -> (1,2)=(2,1), 2 -> (2,2).
struct ChristoffelField {
    Grid2 grid;
    std::array<std::array<ScalarField, 3>, 2> gamma;

    const ScalarField& at(int c, int a, int b) const {
        return gamma[c][a + b];  // a,b in {0,1}
    }
};

/// Full curvature tensor R^c_{a b l} plus the lowered R_{1212}.
struct RiemannData {
    Grid2 grid;
    std::array<ScalarField, 16> R;  // index ((c*2+a)*2+b)*2+l
    ScalarField R1212;

    const ScalarField& up(int c, int a, int b, int l) const {
        return R[((c * 2 + a) * 2 + b) * 2 + l];
    }
};

namespace detail {

inline void check_nonsingular(const GeometryData& geom, double floor = 1e-12) {
    const ScalarField d = geom.det_g();
    double worst = 1e300;
    int wi = 0, wj = 0;
    for (int j = 0; j < geom.grid.ny; ++j)
        for (int i = 0; i < geom.grid.nx; ++i)
            if (d.at(i, j) < worst) {
                worst = d.at(i, j);
                wi = i;
                wj = j;
            }
    if (worst <= floor)
        throw SingularMetric("metric determinant " + std::to_string(worst) +
                                 " at grid point",
                             wi, wj);
}

}  // namespace detail

/// g_ab = r_a . r_b ; n = (r_1 x r_2)/sqrt(det g) ; b_ab = r_ab . n.
inline GeometryData fundamental_forms(const PositionField& P) {
    const Grid2& g = P.grid;
    std::array<ScalarField, 3> ru, rv;
    for (int c = 0; c < 3; ++c) {
        ru[c] = deriv(P.r[c], Axis::X);
        rv[c] = deriv(P.r[c], Axis::Y);
    }
    GeometryData out;
    out.grid = g;
    for (auto* blk : {&out.g, &out.b, &out.n})
        for (auto& f : *blk) f = ScalarField(g, 0.0);
    for (std::size_t p = 0; p < g.size(); ++p) {
        Vec3 a{ru[0].v[p], ru[1].v[p], ru[2].v[p]};
        Vec3 b{rv[0].v[p], rv[1].v[p], rv[2].v[p]};
        out.g[0].v[p] = dot(a, a);
        out.g[1].v[p] = dot(a, b);
        out.g[2].v[p] = dot(b, b);
    }
    detail::check_nonsingular(out);
    const ScalarField det = out.det_g();
    for (std::size_t p = 0; p < g.size(); ++p) {
        Vec3 a{ru[0].v[p], ru[1].v[p], ru[2].v[p]};
        Vec3 b{rv[0].v[p], rv[1].v[p], rv[2].v[p]};
        Vec3 nn = cross(a, b) * (1.0 / std::sqrt(det.v[p]));
        out.n[0].v[p] = nn.x;
        out.n[1].v[p] = nn.y;
        out.n[2].v[p] = nn.z;
    }
    std::array<std::array<ScalarField, 3>, 3> rdd;  // [uu, uv, vv][component]
    for (int c = 0; c < 3; ++c) {
        rdd[0][c] = deriv(P.r[c], Axis::X, 2);
        rdd[1][c] = deriv(ru[c], Axis::Y);
        rdd[2][c] = deriv(P.r[c], Axis::Y, 2);
    }
    for (int s = 0; s < 3; ++s)
        for (std::size_t p = 0; p < g.size(); ++p)
            out.b[s].v[p] = rdd[s][0].v[p] * out.n[0].v[p] +
                            rdd[s][1].v[p] * out.n[1].v[p] +
                            rdd[s][2].v[p] * out.n[2].v[p];
    return out;
}

namespace detail {

/// Inverse metric components (g^11, g^12, g^22).
inline std::array<ScalarField, 3> inverse_metric(const GeometryData& geom) {
    std::array<ScalarField, 3> gi{ScalarField(geom.grid), ScalarField(geom.grid),
                                  ScalarField(geom.grid)};
    const ScalarField det = geom.det_g();
    for (std::size_t p = 0; p < geom.grid.size(); ++p) {
        double d = 1.0 / det.v[p];
        gi[0].v[p] = geom.g[2].v[p] * d;
        gi[1].v[p] = -geom.g[1].v[p] * d;
        gi[2].v[p] = geom.g[0].v[p] * d;
    }
    return gi;
}

inline int sym(int a, int b) { return a + b; }

}  // namespace detail

/// Standard Christoffel symbols from lowered-index metric derivatives.
inline ChristoffelField christoffel(const GeometryData& geom) {
    detail::check_nonsingular(geom);
    const Grid2& g2 = geom.grid;
    auto gi = detail::inverse_metric(geom);
    // dg[m][s]: d g_s / d u^m
    std::array<std::array<ScalarField, 3>, 2> dg;
    for (int s = 0; s < 3; ++s) {
        dg[0][s] = deriv(geom.g[s], Axis::X);
        dg[1][s] = deriv(geom.g[s], Axis::Y);
    }
    ChristoffelField out;
    out.grid = g2;
    for (auto& row : out.gamma)
        for (auto& f : row) f = ScalarField(g2, 0.0);
    auto gcomp = [&](int a, int b) -> const ScalarField& {
        return geom.g[detail::sym(a, b)];
    };
    (void)gcomp;
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = a; b < 2; ++b) {
                ScalarField acc(g2, 0.0);
                for (int l = 0; l < 2; ++l) {
                    // 1/2 g^{cl} (d_a g_{lb} + d_b g_{al} - d_l g_{ab})
                    const ScalarField& gicl = gi[detail::sym(c, l)];
                    for (std::size_t p = 0; p < g2.size(); ++p)
                        acc.v[p] += 0.5 * gicl.v[p] *
                                    (dg[a][detail::sym(l, b)].v[p] +
                                     dg[b][detail::sym(a, l)].v[p] -
                                     dg[l][detail::sym(a, b)].v[p]);
                }
                out.gamma[c][a + b] = acc;
            }
    return out;
}

/// R^c_{a b l} = d_b Gamma^c_{al} - d_l Gamma^c_{ab}
///             + Gamma^c_{mb} Gamma^m_{al} - Gamma^c_{ml} Gamma^m_{ab}.
inline RiemannData riemann(const ChristoffelField& G,
                           const GeometryData& geom) {
    const Grid2& g2 = G.grid;
    std::array<std::array<std::array<ScalarField, 3>, 2>, 2> dG;  // [m][c][s]
    for (int c = 0; c < 2; ++c)
        for (int s = 0; s < 3; ++s) {
            dG[0][c][s] = deriv(G.gamma[c][s], Axis::X);
            dG[1][c][s] = deriv(G.gamma[c][s], Axis::Y);
        }
    RiemannData out;
    out.grid = g2;
    for (auto& f : out.R) f = ScalarField(g2, 0.0);
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int l = 0; l < 2; ++l) {
                    ScalarField acc(g2, 0.0);
                    for (std::size_t p = 0; p < g2.size(); ++p) {
                        double v = dG[b][c][detail::sym(a, l)].v[p] -
                                   dG[l][c][detail::sym(a, b)].v[p];
                        for (int m = 0; m < 2; ++m)
                            v += G.gamma[c][detail::sym(m, b)].v[p] *
                                     G.gamma[m][detail::sym(a, l)].v[p] -
                                 G.gamma[c][detail::sym(m, l)].v[p] *
                                     G.gamma[m][detail::sym(a, b)].v[p];
                        acc.v[p] = v;
                    }
                    out.R[((c * 2 + a) * 2 + b) * 2 + l] = acc;
                }
    // lowered component R_1212 = g_{1c} R^c_{212} (indices 0-based: a=1,b=0,l=1)
    out.R1212 = ScalarField(g2, 0.0);
    for (std::size_t p = 0; p < g2.size(); ++p)
        out.R1212.v[p] = geom.g[0].v[p] * out.up(0, 1, 0, 1).v[p] +
                         geom.g[1].v[p] * out.up(1, 1, 0, 1).v[p];
    return out;
}

/// Covariant derivative of a covector: D_m f_a = d_m f_a - Gamma^c_{am} f_c.
inline std::array<std::array<ScalarField, 2>, 2> covariant_deriv_covector(
    const std::array<ScalarField, 2>& f, const ChristoffelField& G) {
    std::array<std::array<ScalarField, 2>, 2> out;  // [m][a]
    for (int m = 0; m < 2; ++m)
        for (int a = 0; a < 2; ++a) {
            ScalarField d = deriv(f[a], m == 0 ? Axis::X : Axis::Y);
            for (std::size_t p = 0; p < d.v.size(); ++p)
                for (int c = 0; c < 2; ++c)
                    d.v[p] -= G.gamma[c][detail::sym(a, m)].v[p] * f[c].v[p];
            out[m][a] = std::move(d);
        }
    return out;
}

/// Contravariant variant: D_m f^a = d_m f^a + Gamma^a_{lm} f^l.
inline std::array<std::array<ScalarField, 2>, 2> covariant_deriv_vector(
    const std::array<ScalarField, 2>& f, const ChristoffelField& G) {
    std::array<std::array<ScalarField, 2>, 2> out;
    for (int m = 0; m < 2; ++m)
        for (int a = 0; a < 2; ++a) {
            ScalarField d = deriv(f[a], m == 0 ? Axis::X : Axis::Y);
            for (std::size_t p = 0; p < d.v.size(); ++p)
                for (int l = 0; l < 2; ++l)
                    d.v[p] += G.gamma[a][detail::sym(l, m)].v[p] * f[l].v[p];
            out[m][a] = std::move(d);
        }
    return out;
}

/// D_m t_{ab} for a symmetric 2-tensor block (11,12,22); result indexed
/// [m][sym(a,b)].
inline std::array<std::array<ScalarField, 3>, 2> covariant_deriv_sym2(
    const std::array<ScalarField, 3>& t, const ChristoffelField& G) {
    std::array<std::array<ScalarField, 3>, 2> out;
    for (int m = 0; m < 2; ++m)
        for (int a = 0; a < 2; ++a)
            for (int b = a; b < 2; ++b) {
                ScalarField d =
                    deriv(t[detail::sym(a, b)], m == 0 ? Axis::X : Axis::Y);
                for (std::size_t p = 0; p < d.v.size(); ++p)
                    for (int c = 0; c < 2; ++c)
                        d.v[p] -= G.gamma[c][detail::sym(a, m)].v[p] *
                                      t[detail::sym(c, b)].v[p] +
                                  G.gamma[c][detail::sym(b, m)].v[p] *
                                      t[detail::sym(a, c)].v[p];
                out[m][detail::sym(a, b)] = std::move(d);
            }
    return out;
}

/// Gaussian curvature K = det(g^-1 b) and mean curvature H = 1/2 tr(g^-1 b).
inline std::pair<ScalarField, ScalarField> curvatures(const GeometryData& geom) {
    detail::check_nonsingular(geom);
    ScalarField K(geom.grid), H(geom.grid);
    const ScalarField det = geom.det_g();
    for (std::size_t p = 0; p < geom.grid.size(); ++p) {
        double detb = geom.b[0].v[p] * geom.b[2].v[p] - geom.b[1].v[p] * geom.b[1].v[p];
        K.v[p] = detb / det.v[p];
        // tr(g^-1 b) = (g22 b11 - 2 g12 b12 + g11 b22)/det
        H.v[p] = 0.5 *
                 (geom.g[2].v[p] * geom.b[0].v[p] -
                  2.0 * geom.g[1].v[p] * geom.b[1].v[p] +
                  geom.g[0].v[p] * geom.b[2].v[p]) /
                 det.v[p];
    }
    return {std::move(K), std::move(H)};
}

/// Gauss part: R_{cabl} - (b_{cb} b_{al} - b_{cl} b_{ab});
/// Codazzi part: D_m b_{ab} - D_a b_{mb}.
inline ResidualReport gauss_codazzi_residual(const GeometryData& geom) {
    detail::check_nonsingular(geom);
    ChristoffelField G = christoffel(geom);
    RiemannData R = riemann(G, geom);
    const Grid2& g2 = geom.grid;

    // Lower the first index: R_{cabl} = g_{cm} R^m_{abl}.
    double gauss_linf = 0.0, s2 = 0.0;
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int l = 0; l < 2; ++l)
                    for (std::size_t p = 0; p < g2.size(); ++p) {
                        double lowered =
                            geom.g[detail::sym(c, 0)].v[p] * R.up(0, a, b, l).v[p] +
                            geom.g[detail::sym(c, 1)].v[p] * R.up(1, a, b, l).v[p];
                        double rhs = geom.b[detail::sym(c, b)].v[p] *
                                         geom.b[detail::sym(a, l)].v[p] -
                                     geom.b[detail::sym(c, l)].v[p] *
                                         geom.b[detail::sym(a, b)].v[p];
                        double r = lowered - rhs;
                        gauss_linf = std::max(gauss_linf, std::abs(r));
                        s2 += r * r;
                    }

    auto Db = covariant_deriv_sym2(geom.b, G);
    double codazzi_linf = 0.0;
    // D_m b_{ab} - D_a b_{mb}; only m=0,a=1 (and its negative) is nontrivial.
    for (int b = 0; b < 2; ++b)
        for (std::size_t p = 0; p < g2.size(); ++p) {
            double r = Db[0][detail::sym(1, b)].v[p] - Db[1][detail::sym(0, b)].v[p];
            codazzi_linf = std::max(codazzi_linf, std::abs(r));
            s2 += r * r;
        }

    ResidualReport rep;
    rep.name = "gauss-codazzi";
    rep.linf = std::max(gauss_linf, codazzi_linf);
    rep.l2 = std::sqrt(s2 / double(g2.size() * 18));
    rep.component_breakdown = {{"gauss", gauss_linf}, {"codazzi", codazzi_linf}};
    return rep;
}

/// Gauss-Weingarten residual: r_ab - Gamma^c_ab r_c - b_ab n and
/// n_a + g^{cb} b_{ac} r_b.
inline ResidualReport gw_residual(const PositionField& P,
                                  const GeometryData& geom,
                                  const ChristoffelField& G) {
    const Grid2& g2 = P.grid;
    std::array<std::array<ScalarField, 3>, 2> rd;  // [axis][component]
    for (int c = 0; c < 3; ++c) {
        rd[0][c] = deriv(P.r[c], Axis::X);
        rd[1][c] = deriv(P.r[c], Axis::Y);
    }
    std::array<std::array<ScalarField, 3>, 3> rdd;  // [sym][component]
    for (int c = 0; c < 3; ++c) {
        rdd[0][c] = deriv(P.r[c], Axis::X, 2);
        rdd[1][c] = deriv(rd[0][c], Axis::Y);
        rdd[2][c] = deriv(P.r[c], Axis::Y, 2);
    }
    auto gi = detail::inverse_metric(geom);
    double gauss_linf = 0.0, wein_linf = 0.0, s2 = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = a; b < 2; ++b)
            for (int c = 0; c < 3; ++c)
                for (std::size_t p = 0; p < g2.size(); ++p) {
                    double v = rdd[detail::sym(a, b)][c].v[p] -
                               geom.b[detail::sym(a, b)].v[p] * geom.n[c].v[p];
                    for (int m = 0; m < 2; ++m)
                        v -= G.gamma[m][detail::sym(a, b)].v[p] * rd[m][c].v[p];
                    gauss_linf = std::max(gauss_linf, std::abs(v));
                    s2 += v * v;
                }
    std::array<std::array<ScalarField, 3>, 2> nd;
    for (int c = 0; c < 3; ++c) {
        nd[0][c] = deriv(geom.n[c], Axis::X);
        nd[1][c] = deriv(geom.n[c], Axis::Y);
    }
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 3; ++c)
            for (std::size_t p = 0; p < g2.size(); ++p) {
                double v = nd[a][c].v[p];
                for (int cc = 0; cc < 2; ++cc)
                    for (int b = 0; b < 2; ++b)
                        v += gi[detail::sym(cc, b)].v[p] *
                             geom.b[detail::sym(a, cc)].v[p] * rd[b][c].v[p];
                wein_linf = std::max(wein_linf, std::abs(v));
                s2 += v * v;
            }
    ResidualReport rep;
    rep.name = "gauss-weingarten";
    rep.linf = std::max(gauss_linf, wein_linf);
    rep.l2 = std::sqrt(s2 / double(g2.size() * 15));
    rep.component_breakdown = {{"gauss", gauss_linf}, {"weingarten", wein_linf}};
    return rep;
}

/// One chart of a closed-surface decomposition: curvature and metric
/// determinant sampled on the chart's grid. `analytic_extra` carries
/// contributions of regions the chart cannot represent (e.g. polar caps),
/// as the raw integral of K dA over those regions.
struct CurvaturePatch {
    ScalarField K;
    ScalarField sqrt_g;
    double analytic_extra = 0.0;
};

inline CurvaturePatch make_patch(const GeometryData& geom, const ScalarField& K,
                                 double analytic_extra = 0.0) {
    CurvaturePatch p;
    p.K = K;
    p.sqrt_g = geom.det_g();
    for (auto& v : p.sqrt_g.v) v = std::sqrt(v);
    p.analytic_extra = analytic_extra;
    return p;
}

/// Euler characteristic chi = 1/(2 pi) sum_patches int K sqrt(g) d2u.
inline double integral_curvature(const std::vector<CurvaturePatch>& patches) {
    double total = 0.0;
    for (const auto& p : patches) {
        const Grid2& g = p.K.grid;
        auto wx = quadrature_weights(g.nx, g.Lx, g.periodic_x, g.fd_order);
        auto wy = quadrature_weights(g.ny, g.Ly, g.periodic_y, g.fd_order);
        double s = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                s += wx[i] * wy[j] * p.K.at(i, j) * p.sqrt_g.at(i, j);
        total += s + p.analytic_extra;
    }
    return total / (2.0 * std::numbers::pi);
}

}  // namespace zcv
