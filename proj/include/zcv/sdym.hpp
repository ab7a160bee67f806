#pragma once

#include <array>
#include <utility>

#include "zcv/mmlxii.hpp"

namespace zcv {

/// Null-coordinate labels. The active chart is x_alpha = it,
/// x_alphabar = -it, x_beta = x + iy, x_betabar = x - iy; all fields are
/// z-independent by construction, so z-derivatives short-circuit to zero.
enum class NullCoord { Alpha, AlphaBar, Beta, BetaBar };

/// A connection restricted to the null chart above, stored as four
/// matrix-valued time stacks over (x, y, t).
struct Connection4 {
    MatrixStack Aa, Aab, Ab, Abb;  // alpha, alpha-bar, beta, beta-bar
};

/// The Higgs-extended data of the Bogomolny reduction.
struct HiggsTriple {
    MatrixStack Psi, A, B, D;
};

namespace detail {

inline void require_connection(const Connection4& c) {
    require_time_stack(c.Aa);
    if (c.Aab.nt() != c.Aa.nt() || c.Ab.nt() != c.Aa.nt() ||
        c.Abb.nt() != c.Aa.nt())
        throw ShapeMismatch("Connection4: stack length mismatch");
}

}  // namespace detail

/// Derivative along a null coordinate. With the chart fixed above the
/// chain rule gives d_alpha = -i d_t, d_alphabar = i d_t,
/// d_beta = d_x - i d_y, d_betabar = d_x + i d_y (no 1/2 factors; the
/// convention is part of every report header).
inline MatrixStack null_deriv(const MatrixStack& f, NullCoord mu) {
    switch (mu) {
        case NullCoord::Alpha: {
            MatrixStack d = deriv_t(f);
            for (auto& s : d.slices)
                for (auto& m : s.v) m = m * cplx(0.0, -1.0);
            return d;
        }
        case NullCoord::AlphaBar: {
            MatrixStack d = deriv_t(f);
            for (auto& s : d.slices)
                for (auto& m : s.v) m = m * cplx(0.0, 1.0);
            return d;
        }
        case NullCoord::Beta: {
            MatrixStack d = deriv(f, Axis::X);
            MatrixStack dy = deriv(f, Axis::Y);
            for (int s = 0; s < d.nt(); ++s)
                for (std::size_t p = 0; p < d.slices[s].v.size(); ++p)
                    d.slices[s].v[p] =
                        d.slices[s].v[p] + dy.slices[s].v[p] * cplx(0.0, -1.0);
            return d;
        }
        default: {
            MatrixStack d = deriv(f, Axis::X);
            MatrixStack dy = deriv(f, Axis::Y);
            for (int s = 0; s < d.nt(); ++s)
                for (std::size_t p = 0; p < d.slices[s].v.size(); ++p)
                    d.slices[s].v[p] =
                        d.slices[s].v[p] + dy.slices[s].v[p] * cplx(0.0, 1.0);
            return d;
        }
    }
}

namespace detail {

inline const MatrixStack& component(const Connection4& c, NullCoord mu) {
    switch (mu) {
        case NullCoord::Alpha: return c.Aa;
        case NullCoord::AlphaBar: return c.Aab;
        case NullCoord::Beta: return c.Ab;
        default: return c.Abb;
    }
}

}  // namespace detail

/// Field strength F_{mu nu} = d_mu A_nu - d_nu A_mu - [A_mu, A_nu].
/// The minus bracket is the curvature of the covariant derivative
/// D_mu = d_mu - A_mu, i.e. F = -[D_mu, D_nu]; it is the form under which
/// the gauge rule A -> phi^-1 A phi - phi^-1 phi_mu conjugates F.
/// plus_bracket evaluates the +[A, A] variant instead for comparison.
inline MatrixStack field_strength(const Connection4& c, NullCoord mu,
                                  NullCoord nu, bool plus_bracket = false) {
    detail::require_connection(c);
    const MatrixStack& Am = detail::component(c, mu);
    const MatrixStack& An = detail::component(c, nu);
    MatrixStack F = null_deriv(An, mu) - null_deriv(Am, nu);
    MatrixStack br = commutator(Am, An);
    const cplx s = plus_bracket ? cplx(1.0) : cplx(-1.0);
    for (int t = 0; t < F.nt(); ++t)
        for (std::size_t p = 0; p < F.slices[t].v.size(); ++p)
            F.slices[t].v[p] = F.slices[t].v[p] + br.slices[t].v[p] * s;
    return F;
}

/// Residuals of the self-duality system: F_{alpha beta}, F_{alphabar
/// betabar}, and F_{alpha alphabar} - F_{beta betabar}.
inline std::array<ResidualReport, 3> sdym_residual(const Connection4& c,
                                                   bool plus_bracket = false) {
    MatrixStack f1 = field_strength(c, NullCoord::Alpha, NullCoord::Beta,
                                    plus_bracket);
    MatrixStack f2 = field_strength(c, NullCoord::AlphaBar, NullCoord::BetaBar,
                                    plus_bracket);
    MatrixStack f3 = field_strength(c, NullCoord::Alpha, NullCoord::AlphaBar,
                                    plus_bracket) -
                     field_strength(c, NullCoord::Beta, NullCoord::BetaBar,
                                    plus_bracket);
    return {residual_norm(f1, "sdym-38a"), residual_norm(f2, "sdym-38b"),
            residual_norm(f3, "sdym-38c")};
}

/// Gauge transformation A_mu -> phi^-1 A_mu phi - phi^-1 d_mu phi.
/// max_cond receives the largest pointwise Frobenius condition estimate
/// ||phi|| ||phi^-1|| encountered.
inline Connection4 gauge_transform(const Connection4& c,
                                   const MatrixStack& phi,
                                   double* max_cond = nullptr) {
    detail::require_connection(c);
    if (phi.nt() != c.Aa.nt())
        throw ShapeMismatch("gauge_transform: phi stack length mismatch");
    // pointwise inverses and the condition estimate
    MatrixStack phinv = phi;
    double cond = 0.0;
    for (int s = 0; s < phi.nt(); ++s)
        for (std::size_t p = 0; p < phi.slices[s].v.size(); ++p) {
            Mat inv = phi.slices[s].v[p].inverse();  // throws SingularGauge
            cond = std::max(cond, std::sqrt(phi.slices[s].v[p].frob2() *
                                            inv.frob2()));
            phinv.slices[s].v[p] = inv;
        }
    if (max_cond) *max_cond = cond;

    auto transform = [&](const MatrixStack& A, NullCoord mu) {
        MatrixStack dphi = null_deriv(phi, mu);
        MatrixStack out = A;
        for (int s = 0; s < A.nt(); ++s)
            for (std::size_t p = 0; p < A.slices[s].v.size(); ++p) {
                const Mat& pi = phinv.slices[s].v[p];
                out.slices[s].v[p] =
                    pi * A.slices[s].v[p] * phi.slices[s].v[p] -
                    pi * dphi.slices[s].v[p];
            }
        return out;
    };
    return {transform(c.Aa, NullCoord::Alpha),
            transform(c.Aab, NullCoord::AlphaBar),
            transform(c.Ab, NullCoord::Beta),
            transform(c.Abb, NullCoord::BetaBar)};
}

/// Lax operators of the self-duality system applied to a test section:
/// L = D_alpha + lambda D_betabar, M = D_beta - lambda D_alphabar with
/// D_mu Phi = d_mu Phi - A_mu Phi.
inline std::pair<MatrixStack, MatrixStack> sdym_lax_apply(
    const Connection4& c, cplx lambda, const MatrixStack& Phi) {
    detail::require_connection(c);
    if (Phi.nt() != c.Aa.nt())
        throw ShapeMismatch("sdym_lax_apply: Phi stack length mismatch");
    auto cov = [&](NullCoord mu) {
        MatrixStack d = null_deriv(Phi, mu);
        const MatrixStack& A = detail::component(c, mu);
        for (int s = 0; s < d.nt(); ++s)
            for (std::size_t p = 0; p < d.slices[s].v.size(); ++p)
                d.slices[s].v[p] = d.slices[s].v[p] -
                                   A.slices[s].v[p] * Phi.slices[s].v[p];
        return d;
    };
    MatrixStack L = cov(NullCoord::Alpha);
    MatrixStack Lb = cov(NullCoord::BetaBar);
    MatrixStack M = cov(NullCoord::Beta);
    MatrixStack Mb = cov(NullCoord::AlphaBar);
    for (int s = 0; s < L.nt(); ++s)
        for (std::size_t p = 0; p < L.slices[s].v.size(); ++p) {
            L.slices[s].v[p] = L.slices[s].v[p] + Lb.slices[s].v[p] * lambda;
            M.slices[s].v[p] = M.slices[s].v[p] - Mb.slices[s].v[p] * lambda;
        }
    return {L, M};
}

/// Embedding of a (2+1) transport triple: A_alpha = -iD, A_alphabar = iD,
/// A_beta = A - iB, A_betabar = A + iB.
inline Connection4 embed_mmlxii(const MatrixStack& A, const MatrixStack& B,
                                const MatrixStack& D) {
    require_time_stack(A);
    if (B.nt() != A.nt() || D.nt() != A.nt())
        throw ShapeMismatch("embed_mmlxii: stack length mismatch");
    Connection4 c{D, D, A, A};
    for (int s = 0; s < A.nt(); ++s)
        for (std::size_t p = 0; p < A.slices[s].v.size(); ++p) {
            c.Aa.slices[s].v[p] = D.slices[s].v[p] * cplx(0.0, -1.0);
            c.Aab.slices[s].v[p] = D.slices[s].v[p] * cplx(0.0, 1.0);
            c.Ab.slices[s].v[p] =
                A.slices[s].v[p] + B.slices[s].v[p] * cplx(0.0, -1.0);
            c.Abb.slices[s].v[p] =
                A.slices[s].v[p] + B.slices[s].v[p] * cplx(0.0, 1.0);
        }
    return c;
}

/// Embedding of the Higgs-extended data: A_alpha = Psi - iD,
/// A_alphabar = Psi + iD, beta components as in embed_mmlxii.
inline Connection4 embed_bogomolny(const HiggsTriple& h) {
    Connection4 c = embed_mmlxii(h.A, h.B, h.D);
    if (h.Psi.nt() != h.A.nt())
        throw ShapeMismatch("embed_bogomolny: Psi stack length mismatch");
    for (int s = 0; s < h.A.nt(); ++s)
        for (std::size_t p = 0; p < h.A.slices[s].v.size(); ++p) {
            c.Aa.slices[s].v[p] =
                c.Aa.slices[s].v[p] + h.Psi.slices[s].v[p];
            c.Aab.slices[s].v[p] =
                c.Aab.slices[s].v[p] + h.Psi.slices[s].v[p];
        }
    return c;
}

/// The three residual fields of the Bogomolny system
///   (a) Psi_t + [Psi, D] + A_y - B_x + [A, B]
///   (b) Psi_y + [Psi, B] + D_x - A_t + [D, A]
///   (c) Psi_x + [Psi, A] + B_t - D_y + [B, D]
/// With Psi = 0 the (a, b, c) fields reduce to the (x,y), -(x,t), (y,t)
/// compatibility fields of the transport triple through the identical
/// arithmetic path.
inline std::array<MatrixStack, 3> bogomolny_residual_fields(
    const HiggsTriple& h) {
    require_time_stack(h.Psi);
    if (h.A.nt() != h.Psi.nt() || h.B.nt() != h.Psi.nt() ||
        h.D.nt() != h.Psi.nt())
        throw ShapeMismatch("bogomolny_residual_fields: stack mismatch");
    MmlxiiResidualFields r = mmlxii_residual_fields(h.A, h.B, h.D);
    MatrixStack Pt = deriv_t(h.Psi);
    MatrixStack Px = deriv(h.Psi, Axis::X);
    MatrixStack Py = deriv(h.Psi, Axis::Y);
    MatrixStack cd = commutator(h.Psi, h.D);
    MatrixStack cb = commutator(h.Psi, h.B);
    MatrixStack ca = commutator(h.Psi, h.A);
    std::array<MatrixStack, 3> out{r.xy, r.xt, r.yt};
    for (int s = 0; s < h.Psi.nt(); ++s)
        for (std::size_t p = 0; p < h.Psi.slices[s].v.size(); ++p) {
            out[0].slices[s].v[p] =
                Pt.slices[s].v[p] + cd.slices[s].v[p] + r.xy.slices[s].v[p];
            out[1].slices[s].v[p] =
                Py.slices[s].v[p] + cb.slices[s].v[p] - r.xt.slices[s].v[p];
            out[2].slices[s].v[p] =
                Px.slices[s].v[p] + ca.slices[s].v[p] + r.yt.slices[s].v[p];
        }
    return out;
}

inline std::array<ResidualReport, 3> bogomolny_residual(const HiggsTriple& h) {
    auto f = bogomolny_residual_fields(h);
    return {residual_norm(f[0], "bogomolny-82a"),
            residual_norm(f[1], "bogomolny-82b"),
            residual_norm(f[2], "bogomolny-82c")};
}

}  // namespace zcv
