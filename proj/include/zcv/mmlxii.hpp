#pragma once

#include <array>
#include <utility>

#include "zcv/frames1p1.hpp"
#include "zcv/stack.hpp"

namespace zcv {

/// Coefficients of the (2+1) trihedral transport at one time slice:
/// (k, sigma, tau) drive the x-flow, (m1, m2, m3) the y-flow and
/// (w1, w2, w3) the t-flow.
struct CoefficientSet2p1 {
    ScalarField k, sigma, tau, m1, m2, m3, w1, w2, w3;
    double beta = 1.0;

    explicit CoefficientSet2p1(const Grid2& g, double beta_ = 1.0)
        : k(g, 0.0), sigma(g, 0.0), tau(g, 0.0),
          m1(g, 0.0), m2(g, 0.0), m3(g, 0.0),
          w1(g, 0.0), w2(g, 0.0), w3(g, 0.0), beta(beta_) {
        if (beta != 1.0 && beta != -1.0)
            throw ArgumentError("CoefficientSet2p1: beta must be +-1");
    }

    const Grid2& grid() const { return k.grid; }
};

/// The 3x3 transport triple (A, B, D) and its 2x2 counterpart (U, V, T).
struct Matrices2p1 {
    MatrixField A, B, D;  // 3x3
    MatrixField U, V, T;  // 2x2
};

inline Matrices2p1 matrices_2p1(const CoefficientSet2p1& c) {
    const Grid2& g = c.grid();
    Matrices2p1 m{matrix_field(g, 3), matrix_field(g, 3), matrix_field(g, 3),
                  MatrixField(g), MatrixField(g), MatrixField(g)};
    auto fill = [beta = c.beta](Mat& out, double a, double b, double d) {
        out(0, 1) = a;
        out(0, 2) = -b;
        out(1, 0) = -beta * a;
        out(1, 2) = d;
        out(2, 0) = beta * b;
        out(2, 1) = -d;
    };
    for (std::size_t p = 0; p < g.size(); ++p) {
        fill(m.A.v[p], c.k.v[p], c.sigma.v[p], c.tau.v[p]);
        fill(m.B.v[p], c.m3.v[p], c.m2.v[p], c.m1.v[p]);
        fill(m.D.v[p], c.w3.v[p], c.w2.v[p], c.w1.v[p]);
    }
    m.U = su2_matrix(to_complex(c.tau), to_complex(c.k), to_complex(c.sigma));
    m.V = su2_matrix(to_complex(c.m1), to_complex(c.m3), to_complex(c.m2));
    m.T = su2_matrix(to_complex(c.w1), to_complex(c.w3), to_complex(c.w2));
    return m;
}

/// Pointwise matrix product of two matrix fields.
inline MatrixField matmul(const MatrixField& a, const MatrixField& b) {
    require_compatible(a, b);
    MatrixField out(a.grid);
    for (std::size_t p = 0; p < a.v.size(); ++p) out.v[p] = a.v[p] * b.v[p];
    return out;
}

inline MatrixStack commutator(const MatrixStack& a, const MatrixStack& b) {
    if (a.nt() != b.nt()) throw ShapeMismatch("commutator: stack length");
    MatrixStack out = a;
    for (int s = 0; s < a.nt(); ++s)
        out.slices[s] = commutator(a.slices[s], b.slices[s]);
    return out;
}

/// Spatial compatibility residual A_y - B_x + [A, B] on a single slice
/// (also serves the 2x2 form U_y - V_x + [U, V]).
inline MatrixField mmlxii_xy_residual_field(const MatrixField& A,
                                            const MatrixField& B) {
    require_compatible(A, B);
    return deriv(A, Axis::Y) - deriv(B, Axis::X) + commutator(A, B);
}

inline ResidualReport mmlxii_xy_residual(const MatrixField& A,
                                         const MatrixField& B) {
    return residual_norm(mmlxii_xy_residual_field(A, B), "mmlxii-44a");
}

/// The three compatibility residuals as full fields over the time stack:
/// xy: A_y - B_x + [A,B]; xt: A_t - D_x + [A,D]; yt: B_t - D_y + [B,D].
struct MmlxiiResidualFields {
    MatrixStack xy, xt, yt;
};

inline MmlxiiResidualFields mmlxii_residual_fields(const MatrixStack& A,
                                                   const MatrixStack& B,
                                                   const MatrixStack& D) {
    require_time_stack(A);
    if (A.nt() != B.nt() || A.nt() != D.nt())
        throw ShapeMismatch("mmlxii_residual: stack length mismatch");
    MmlxiiResidualFields r;
    r.xy = deriv(A, Axis::Y) - deriv(B, Axis::X) + commutator(A, B);
    r.xt = deriv_t(A) - deriv(D, Axis::X) + commutator(A, D);
    r.yt = deriv_t(B) - deriv(D, Axis::Y) + commutator(B, D);
    return r;
}

inline std::array<ResidualReport, 3> mmlxii_residual(const MatrixStack& A,
                                                     const MatrixStack& B,
                                                     const MatrixStack& D) {
    MmlxiiResidualFields r = mmlxii_residual_fields(A, B, D);
    return {residual_norm(r.xy, "mmlxii-44a"), residual_norm(r.xt, "mmlxii-44b"),
            residual_norm(r.yt, "mmlxii-44c")};
}

/// Multipliers of the linear-problem operators: L = dx + a l dy - (U + a l V),
/// M = dt + e l^2 dy - (T + e l^2 V).
struct LaxParams {
    double a = 1.0;
    double e = 1.0;
    cplx lambda{0.0, 0.0};
};

/// Applies the two linear-problem operators to a test function stack.
inline std::pair<MatrixStack, MatrixStack> lax_apply(const MatrixStack& U,
                                                     const MatrixStack& V,
                                                     const MatrixStack& T,
                                                     const MatrixStack& g,
                                                     const LaxParams& prm) {
    require_time_stack(g);
    if (U.nt() != g.nt() || V.nt() != g.nt() || T.nt() != g.nt())
        throw ShapeMismatch("lax_apply: stack length mismatch");
    const cplx al = prm.a * prm.lambda;
    const cplx el2 = prm.e * prm.lambda * prm.lambda;
    MatrixStack gt = deriv_t(g);
    MatrixStack Lg = g, Mg = g;
    for (int s = 0; s < g.nt(); ++s) {
        MatrixField gx = deriv(g.slices[s], Axis::X);
        MatrixField gy = deriv(g.slices[s], Axis::Y);
        Lg.slices[s] = gx + gy * al - matmul(U.slices[s] + V.slices[s] * al,
                                             g.slices[s]);
        Mg.slices[s] = gt.slices[s] + gy * el2 -
                       matmul(T.slices[s] + V.slices[s] * el2, g.slices[s]);
    }
    return {std::move(Lg), std::move(Mg)};
}

/// Single-slice application of the spatial operator L only.
inline MatrixField lax_apply_L(const MatrixField& U, const MatrixField& V,
                               const MatrixField& g, const LaxParams& prm) {
    const cplx al = prm.a * prm.lambda;
    return deriv(g, Axis::X) + deriv(g, Axis::Y) * al - matmul(U + V * al, g);
}

/// Plane-case potential recovery m3 = dx^-1 k_y.
inline ScalarField plane_m3(const ScalarField& k) {
    return inv_deriv_x(deriv(k, Axis::Y));
}

/// Plane-case compatibility residuals k_y - m3_x, k_t - w3_x, m3_t - w3_y.
inline std::array<ResidualReport, 3> plane_case_residual(
    const ScalarStack& k, const ScalarStack& m3, const ScalarStack& w3) {
    require_time_stack(k);
    if (k.nt() != m3.nt() || k.nt() != w3.nt())
        throw ShapeMismatch("plane_case_residual: stack length mismatch");
    ScalarStack r1 = deriv(k, Axis::Y) - deriv(m3, Axis::X);
    ScalarStack r2 = deriv_t(k) - deriv(w3, Axis::X);
    ScalarStack r3 = deriv_t(m3) - deriv(w3, Axis::Y);
    return {residual_norm(r1, "plane-66a"), residual_norm(r2, "plane-66b"),
            residual_norm(r3, "plane-66c")};
}

/// Linear-problem regrouping of the compatibility system: the operator
/// "d_y minus bracket with B" is oriented so that applying it to A and
/// moving B_x across reproduces the xy-residual verbatim, i.e. the first
/// residual is (A_y + [A, B]) - B_x and the second (A_t + [A, D]) - D_x.
inline std::pair<ResidualReport, ResidualReport> linear_problem_residual(
    const MatrixStack& A, const MatrixStack& B, const MatrixStack& D) {
    require_time_stack(A);
    if (A.nt() != B.nt() || A.nt() != D.nt())
        throw ShapeMismatch("linear_problem_residual: stack length mismatch");
    MatrixStack r1 = (deriv(A, Axis::Y) + commutator(A, B)) - deriv(B, Axis::X);
    MatrixStack r2 = (deriv_t(A) + commutator(A, D)) - deriv(D, Axis::X);
    return {residual_norm(r1, "linear-72a"), residual_norm(r2, "linear-72b")};
}

}  // namespace zcv
