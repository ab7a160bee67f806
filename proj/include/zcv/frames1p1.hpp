#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "zcv/spectral.hpp"

namespace zcv {

/// Curvature/torsion data of a moving trihedral on an (x,t) grid.
/// k: normal curvature, sigma: geodesic curvature, tau: geodesic torsion;
/// w1..w3 are the corresponding time-flow coefficients.
struct CoefficientSet1p1 {
    ScalarField k, sigma, tau, w1, w2, w3;
    double beta = 1.0;

    explicit CoefficientSet1p1(const Grid2& g, double beta_ = 1.0)
        : k(g, 0.0), sigma(g, 0.0), tau(g, 0.0),
          w1(g, 0.0), w2(g, 0.0), w3(g, 0.0), beta(beta_) {
        if (beta != 1.0 && beta != -1.0)
            throw ArgumentError("CoefficientSet1p1: beta must be +-1");
    }

    const Grid2& grid() const { return k.grid; }
};

/// 3x3 transport matrices of the trihedral:
///   C = [[0, k, -sigma], [-beta k, 0, tau], [beta sigma, -tau, 0]]
/// and G with (w3, w2, w1) in place of (k, sigma, tau).
inline std::pair<MatrixField, MatrixField> frame_matrices(
    const CoefficientSet1p1& c) {
    const Grid2& g = c.grid();
    MatrixField C = matrix_field(g, 3), G = matrix_field(g, 3);
    auto fill = [beta = c.beta](Mat& m, double a, double b, double d) {
        // a <-> k/w3, b <-> sigma/w2, d <-> tau/w1
        m(0, 1) = a;
        m(0, 2) = -b;
        m(1, 0) = -beta * a;
        m(1, 2) = d;
        m(2, 0) = beta * b;
        m(2, 1) = -d;
    };
    for (std::size_t p = 0; p < g.size(); ++p) {
        fill(C.v[p], c.k.v[p], c.sigma.v[p], c.tau.v[p]);
        fill(G.v[p], c.w3.v[p], c.w2.v[p], c.w1.v[p]);
    }
    return {std::move(C), std::move(G)};
}

/// su(2) matrix (1/2i) [[tau, k - i sigma], [k + i sigma, -tau]] for
/// complex-valued coefficient fields.
inline MatrixField su2_matrix(const ComplexField& tau, const ComplexField& k,
                              const ComplexField& sigma) {
    if (!(tau.grid == k.grid) || !(k.grid == sigma.grid))
        throw ShapeMismatch("su2_matrix: grid mismatch");
    MatrixField U = matrix_field(k.grid, 2);
    const cplx half_over_i(0.0, -0.5);  // 1/(2i)
    for (std::size_t p = 0; p < k.v.size(); ++p) {
        Mat& m = U.v[p];
        m(0, 0) = half_over_i * tau.v[p];
        m(0, 1) = half_over_i * (k.v[p] - cplx(0, 1) * sigma.v[p]);
        m(1, 0) = half_over_i * (k.v[p] + cplx(0, 1) * sigma.v[p]);
        m(1, 1) = -half_over_i * tau.v[p];
    }
    return U;
}

/// 2x2 form of the transport pair.
inline std::pair<MatrixField, MatrixField> to_su2(const CoefficientSet1p1& c) {
    return {su2_matrix(to_complex(c.tau), to_complex(c.k), to_complex(c.sigma)),
            su2_matrix(to_complex(c.w1), to_complex(c.w3), to_complex(c.w2))};
}

/// Residual of d_t Mx - d_x Mt + [Mx, Mt] on an (x,t) grid (t is the
/// second grid axis).
inline ResidualReport zero_curvature_residual_1p1(const MatrixField& Mx,
                                                  const MatrixField& Mt,
                                                  const std::string& name =
                                                      "zero-curvature-1p1") {
    require_compatible(Mx, Mt);
    MatrixField r = deriv(Mx, Axis::Y) - deriv(Mt, Axis::X) + commutator(Mx, Mt);
    return residual_norm(r, name);
}

/// Moving trihedral sampled on an (x,t) grid. Each point stores the 3x3
/// matrix whose rows are e1, e2, e3 (complex components so that the
/// pseudo-orthonormal case beta = -1 is representable). The frame Gram
/// matrix uses the symmetric bilinear dot (no conjugation).
struct FrameField1p1 {
    MatrixField E;
    double beta = 1.0;
};

/// Gram residual: E E^T (bilinear transpose) minus diag(beta, 1, 1).
inline ResidualReport frame_gram_residual(const FrameField1p1& f) {
    MatrixField r = matrix_field(f.E.grid, 3);
    for (std::size_t p = 0; p < f.E.v.size(); ++p) {
        const Mat& E = f.E.v[p];
        Mat& m = r.v[p];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                cplx s = 0.0;
                for (int c = 0; c < 3; ++c) s += E(a, c) * E(b, c);
                m(a, b) = s - ((a == b) ? cplx(a == 0 ? f.beta : 1.0) : cplx(0.0));
            }
    }
    return residual_norm(r, "frame-gram");
}

/// Default initial triad: identity rows for beta = +1; for beta = -1 the
/// first row is scaled by i so that e1.e1 = -1 under the bilinear dot.
inline Mat default_frame0(double beta) {
    Mat E = Mat::identity(3);
    if (beta == -1.0) E(0, 0) = cplx(0.0, 1.0);
    return E;
}

namespace detail {

/// One classical 4th-order step of E' = M(s) E with samples at the left
/// node, the midpoint, and the right node.
inline Mat rk4_step(const Mat& E, const Mat& M0, const Mat& Mh, const Mat& M1,
                    double h) {
    Mat k1 = M0 * E;
    Mat k2 = Mh * (E + (0.5 * h) * k1);
    Mat k3 = Mh * (E + (0.5 * h) * k2);
    Mat k4 = M1 * (E + cplx(h) * k3);
    return E + (h / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
}

/// Bilinear Gram-Schmidt towards Gram = diag(beta, 1, 1).
inline Mat bilinear_renormalize(const Mat& E, double beta) {
    Mat out = E;
    std::array<double, 3> target{beta, 1.0, 1.0};
    auto bdot = [&](int a, int b) {
        cplx s = 0.0;
        for (int c = 0; c < 3; ++c) s += out(a, c) * out(b, c);
        return s;
    };
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < a; ++b) {
            cplx proj = bdot(a, b) / cplx(target[b]);
            for (int c = 0; c < 3; ++c) out(a, c) -= proj * out(b, c);
        }
        cplx scale = std::sqrt(cplx(target[a]) / bdot(a, a));
        for (int c = 0; c < 3; ++c) out(a, c) *= scale;
    }
    return out;
}

}  // namespace detail

/// Transports the trihedral over the whole grid: first along x at t = 0,
/// then along t for every x, by classical 4th-order stepping of the
/// linear frame equations. Midpoint coefficient samples come from
/// half-grid interpolation of C and G.
inline FrameField1p1 integrate_frame_1p1(const CoefficientSet1p1& c,
                                         const Mat* frame0 = nullptr,
                                         bool renormalize = false,
                                         double obstruction_tol = 1e-6) {
    auto [C, G] = frame_matrices(c);
    ResidualReport pre = zero_curvature_residual_1p1(C, G);
    if (pre.linf > obstruction_tol)
        throw CurvatureObstruction(
            "integrate_frame_1p1: transport coefficients are incompatible "
            "(zero-curvature linf " +
            std::to_string(pre.linf) + ")");

    const Grid2& g = c.grid();
    MatrixField Cx = half_shift(C, Axis::X);
    MatrixField Gt = half_shift(G, Axis::Y);

    FrameField1p1 out;
    out.beta = c.beta;
    out.E = matrix_field(g, 3);
    Mat E0 = frame0 ? *frame0 : default_frame0(c.beta);

    out.E.at(0, 0) = E0;
    const double hx = g.dx(), ht = g.dy();
    for (int i = 0; i + 1 < g.nx; ++i) {
        Mat next = detail::rk4_step(out.E.at(i, 0), C.at(i, 0), Cx.at(i, 0),
                                    C.at(i + 1, 0), hx);
        if (renormalize) next = detail::bilinear_renormalize(next, c.beta);
        out.E.at(i + 1, 0) = next;
    }
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j + 1 < g.ny; ++j) {
            Mat next = detail::rk4_step(out.E.at(i, j), G.at(i, j), Gt.at(i, j),
                                        G.at(i, j + 1), ht);
            if (renormalize) next = detail::bilinear_renormalize(next, c.beta);
            out.E.at(i, j + 1) = next;
        }
    return out;
}

/// ZS-AKNS spectral matrix. Assembled through the trihedral coefficients
/// k = i(p+q), sigma = p-q, tau = -2 lambda, and cross-checked against the
/// direct form [[i lambda, q], [p, -i lambda]].
inline MatrixField zs_akns(const ComplexField& p, const ComplexField& q,
                           cplx lambda) {
    if (!(p.grid == q.grid)) throw ShapeMismatch("zs_akns: grid mismatch");
    ComplexField k(p.grid), sigma(p.grid), tau(p.grid, -2.0 * lambda);
    for (std::size_t s = 0; s < p.v.size(); ++s) {
        k.v[s] = cplx(0, 1) * (p.v[s] + q.v[s]);
        sigma.v[s] = p.v[s] - q.v[s];
    }
    MatrixField U = su2_matrix(tau, k, sigma);
    for (std::size_t s = 0; s < p.v.size(); ++s) {
        Mat direct(2);
        direct(0, 0) = cplx(0, 1) * lambda;
        direct(0, 1) = q.v[s];
        direct(1, 0) = p.v[s];
        direct(1, 1) = -cplx(0, 1) * lambda;
        if ((U.v[s] - direct).max_abs() > 1e-13)
            throw ConstraintViolated("zs_akns: assembly disagrees with the "
                                     "direct matrix form");
    }
    return U;
}

/// Kaup-Newell / Wadati-Konno-Ichikawa matrix: the potentials ride at the
/// first power of lambda, k = lambda i(p+q), sigma = lambda (p-q),
/// tau = -2 lambda.
inline MatrixField wki(const ComplexField& p, const ComplexField& q,
                       cplx lambda) {
    if (!(p.grid == q.grid)) throw ShapeMismatch("wki: grid mismatch");
    ComplexField k(p.grid), sigma(p.grid), tau(p.grid, -2.0 * lambda);
    for (std::size_t s = 0; s < p.v.size(); ++s) {
        k.v[s] = lambda * cplx(0, 1) * (p.v[s] + q.v[s]);
        sigma.v[s] = lambda * (p.v[s] - q.v[s]);
    }
    return su2_matrix(tau, k, sigma);
}

/// Principal chiral pair U = u/(1-lambda), V = v/(1+lambda).
inline std::pair<MatrixField, MatrixField> chiral_pair(const MatrixField& u,
                                                       const MatrixField& v,
                                                       cplx lambda) {
    require_compatible(u, v);
    if (std::abs(lambda - 1.0) < 1e-12 || std::abs(lambda + 1.0) < 1e-12)
        throw PoleAtLambda("chiral_pair: lambda at a pole (+-1)");
    return {u * (1.0 / (1.0 - lambda)), v * (1.0 / (1.0 + lambda))};
}

/// Residuals of the chiral field equations u_t + (1/2)[u,v] and
/// v_x - (1/2)[u,v].
inline ResidualReport chiral_residual(const MatrixField& u,
                                      const MatrixField& v) {
    require_compatible(u, v);
    MatrixField uv = commutator(u, v);
    MatrixField r1 = deriv(u, Axis::Y) + 0.5 * uv;
    MatrixField r2 = deriv(v, Axis::X) - 0.5 * uv;
    ResidualReport a = residual_norm(r1, "chiral-u");
    ResidualReport b = residual_norm(r2, "chiral-v");
    ResidualReport rep;
    rep.name = "chiral";
    rep.linf = std::max(a.linf, b.linf);
    rep.l2 = std::sqrt(0.5 * (a.l2 * a.l2 + b.l2 * b.l2));
    rep.component_breakdown = {{"u-flow", a.linf}, {"v-flow", b.linf}};
    return rep;
}

/// Classical spin triple with its constraint radius n and signature signs:
/// S3^2 + s1 S1^2 + s2 S2^2 = 1.
struct SpinField {
    ScalarField S1, S2, S3;
    int s1 = 1, s2 = 1;
    ScalarField n;
};

/// Builds the spin triple S = (k, sigma, tau)/n, requiring the quadric
/// constraint tau^2 + s1 k^2 + s2 sigma^2 = n^2.
inline SpinField spin_from_coeffs(const ScalarField& k, const ScalarField& sigma,
                                  const ScalarField& tau, const ScalarField& n,
                                  int s1 = 1, int s2 = 1, double tol = 1e-8) {
    if (!(k.grid == sigma.grid) || !(k.grid == tau.grid) || !(k.grid == n.grid))
        throw ShapeMismatch("spin_from_coeffs: grid mismatch");
    for (std::size_t p = 0; p < k.v.size(); ++p) {
        double lhs = tau.v[p] * tau.v[p] + s1 * k.v[p] * k.v[p] +
                     s2 * sigma.v[p] * sigma.v[p];
        if (std::abs(lhs - n.v[p] * n.v[p]) > tol)
            throw ConstraintViolated(
                "spin_from_coeffs: tau^2 + s1 k^2 + s2 sigma^2 != n^2 "
                "(defect " +
                std::to_string(lhs - n.v[p] * n.v[p]) + ")");
    }
    SpinField S{k, sigma, tau, s1, s2, n};
    for (std::size_t p = 0; p < k.v.size(); ++p) {
        S.S1.v[p] /= n.v[p];
        S.S2.v[p] /= n.v[p];
        S.S3.v[p] /= n.v[p];
    }
    return S;
}

/// 2x2 spin matrix [[S3, S-], [S+, -S3]] with S+- = S1 +- i S2.
inline MatrixField spin_matrix(const SpinField& S) {
    MatrixField out = matrix_field(S.S1.grid, 2);
    for (std::size_t p = 0; p < S.S1.v.size(); ++p) {
        Mat& m = out.v[p];
        m(0, 0) = S.S3.v[p];
        m(0, 1) = cplx(S.S1.v[p], -S.S2.v[p]);
        m(1, 0) = cplx(S.S1.v[p], S.S2.v[p]);
        m(1, 1) = -S.S3.v[p];
    }
    return out;
}

/// Residual of the spin evolution S_t - (1/n) V_x + [S, V] with S the
/// 2x2 spin matrix. The flow matrix V here carries the normalization in
/// which the spin equation closes, i.e. 2i times the su(2) time matrix of
/// the underlying transport pair.
inline ResidualReport m0_residual_1p1(const SpinField& S, const MatrixField& V,
                                      const std::string& name = "m0-1p1") {
    MatrixField Sm = spin_matrix(S);
    require_compatible(Sm, V);
    MatrixField Vx = deriv(V, Axis::X);
    MatrixField r = deriv(Sm, Axis::Y) + commutator(Sm, V);
    for (std::size_t p = 0; p < r.v.size(); ++p)
        r.v[p] -= (1.0 / S.n.v[p]) * Vx.v[p];
    return residual_norm(r, name);
}

/// Finite lambda-expansion of a coefficient: a polynomial/Laurent part
/// (power -> field) plus optional general terms h(lambda) * field.
struct LambdaExpansion {
    std::map<int, ScalarField> powers;
    std::vector<std::pair<std::function<cplx(cplx)>, ScalarField>> general;

    ComplexField eval(cplx lambda, const Grid2& g) const {
        ComplexField out(g, cplx(0.0));
        for (const auto& [j, f] : powers) {
            if (!(f.grid == g)) throw ShapeMismatch("LambdaExpansion: grid");
            cplx w = std::pow(lambda, j);
            for (std::size_t p = 0; p < out.v.size(); ++p)
                out.v[p] += w * f.v[p];
        }
        for (const auto& [h, f] : general) {
            if (!(f.grid == g)) throw ShapeMismatch("LambdaExpansion: grid");
            cplx w = h(lambda);
            for (std::size_t p = 0; p < out.v.size(); ++p)
                out.v[p] += w * f.v[p];
        }
        return out;
    }
};

}  // namespace zcv
