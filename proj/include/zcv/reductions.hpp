#pragma once

#include <array>
#include <utility>

#include "zcv/mmlxii.hpp"
#include "zcv/stack.hpp"

namespace zcv {

inline ComplexField to_complex(const ComplexField& f) { return f; }

inline ComplexStack to_complex(const ScalarStack& st) {
    ComplexStack out(st.t0, st.dt);
    for (const auto& s : st.slices) out.slices.push_back(to_complex(s));
    return out;
}

namespace detail {

inline void require_nonvanishing(const ScalarField& k, double floor = 1e-8) {
    for (double v : k.v)
        if (std::abs(v) < floor)
            throw DivisionBySmallK("coefficient k vanishes below " +
                                   std::to_string(floor));
}

inline void require_nonvanishing(const ComplexField& k, double floor = 1e-8) {
    for (const cplx& v : k.v)
        if (std::abs(v) < floor)
            throw DivisionBySmallK("coefficient k vanishes below " +
                                   std::to_string(floor));
}

}  // namespace detail

/// Unit spin field S(x,y,t) with the scalar potential u of the Ishimori
/// system and the anisotropy constant alpha = alpha_R + i alpha_I.
struct SpinField2p1 {
    Vec3Stack S;
    ScalarStack u;
    cplx alpha{1.0, 0.0};
};

inline void require_unit_spin(const Vec3Stack& S, double tol = 1e-8) {
    for (const auto& slice : S.slices)
        for (const auto& v : slice.v)
            if (std::abs(dot(v, v) - 1.0) > tol)
                throw NonUnitSpin("spin field leaves the unit sphere (|S|^2-1 = " +
                                  std::to_string(dot(v, v) - 1.0) + ")");
}

/// Residuals of the Ishimori system:
///   (a) S_t - S x (S_xx + alpha^2 S_yy) - u_x S_y - u_y S_x
///   (b) u_xx - alpha^2 u_yy + 2 alpha^2 S . (S_x x S_y).
inline std::pair<ResidualReport, ResidualReport> ishimori_residual(
    const SpinField2p1& sf, double spin_tol = 1e-8) {
    require_unit_spin(sf.S, spin_tol);
    require_time_stack(sf.S);
    if (sf.u.nt() != sf.S.nt())
        throw ShapeMismatch("ishimori_residual: stack length mismatch");
    const cplx a2 = sf.alpha * sf.alpha;

    Vec3Stack St = deriv_t(sf.S);
    ResidualReport ra, rb;
    ra.name = "ishimori-51a";
    rb.name = "ishimori-51b";
    double sa2 = 0.0, sb2 = 0.0;
    std::size_t na = 0, nb = 0;
    for (int s = 0; s < sf.S.nt(); ++s) {
        const Vec3Field& S = sf.S.slices[s];
        Vec3Field Sx = deriv(S, Axis::X), Sy = deriv(S, Axis::Y);
        Vec3Field Sxx = deriv(S, Axis::X, 2), Syy = deriv(S, Axis::Y, 2);
        ScalarField ux = deriv(sf.u.slices[s], Axis::X);
        ScalarField uy = deriv(sf.u.slices[s], Axis::Y);
        ScalarField uxx = deriv(sf.u.slices[s], Axis::X, 2);
        ScalarField uyy = deriv(sf.u.slices[s], Axis::Y, 2);
        for (std::size_t p = 0; p < S.v.size(); ++p) {
            // W = S_xx + alpha^2 S_yy componentwise (complex-valued)
            std::array<cplx, 3> W, R;
            for (int c = 0; c < 3; ++c)
                W[c] = Sxx.v[p][c] + a2 * Syy.v[p][c];
            const Vec3& Sv = S.v[p];
            // S x W with complex W
            R[0] = Sv.y * W[2] - Sv.z * W[1];
            R[1] = Sv.z * W[0] - Sv.x * W[2];
            R[2] = Sv.x * W[1] - Sv.y * W[0];
            for (int c = 0; c < 3; ++c) {
                cplx r = St.slices[s].v[p][c] - R[c] -
                         ux.v[p] * Sy.v[p][c] - uy.v[p] * Sx.v[p][c];
                ra.linf = std::max(ra.linf, std::abs(r));
                sa2 += std::norm(r);
                ++na;
            }
            cplx rb_val = uxx.v[p] - a2 * uyy.v[p] +
                          2.0 * a2 * dot(Sv, cross(Sx.v[p], Sy.v[p]));
            rb.linf = std::max(rb.linf, std::abs(rb_val));
            sb2 += std::norm(rb_val);
            ++nb;
        }
    }
    ra.l2 = std::sqrt(sa2 / double(na));
    rb.l2 = std::sqrt(sb2 / double(nb));
    return {ra, rb};
}

/// y-flow and t-flow coefficients of the Ishimori identification.
struct IshimoriCoefficients {
    ComplexField m1, m2, m3;
    ComplexField w1, w2, w3;
};

/// Evaluates the identification
///   m1 = dx^-1 [tau_y - (beta / 2 alpha^2) M2 u]
///   m2 = -(1 / 2 alpha^2 k) M2 u
///   m3 = dx^-1 [k_y + (tau / 2 alpha^2 k) M2 u]
/// with M2 u = u_xx - alpha^2 u_yy, and the t-flow coefficients
///   w2 = -k_x - alpha^2 (m3_y + m2 m1) + i m2 u_x
///   w3 = -k tau + alpha^2 (m2_y - m3 m1) + i k u_y + i m3 u_x
///   w1 = (1/k) [-w2_x + tau w3].
inline IshimoriCoefficients ishimori_coefficients(const ScalarField& k,
                                                  const ScalarField& tau,
                                                  const ScalarField& u,
                                                  cplx alpha,
                                                  double beta = 1.0) {
    if (!(k.grid == tau.grid) || !(k.grid == u.grid))
        throw ShapeMismatch("ishimori_coefficients: grid mismatch");
    detail::require_nonvanishing(k);
    const Grid2& g = k.grid;
    const cplx a2 = alpha * alpha;
    ScalarField uxx = deriv(u, Axis::X, 2), uyy = deriv(u, Axis::Y, 2);
    ComplexField M2u(g);
    for (std::size_t p = 0; p < g.size(); ++p)
        M2u.v[p] = uxx.v[p] - a2 * uyy.v[p];

    IshimoriCoefficients out;
    {
        ComplexField integ = to_complex(deriv(tau, Axis::Y));
        for (std::size_t p = 0; p < g.size(); ++p)
            integ.v[p] -= beta / (2.0 * a2) * M2u.v[p];
        out.m1 = inv_deriv_x(integ);
    }
    out.m2 = ComplexField(g);
    for (std::size_t p = 0; p < g.size(); ++p)
        out.m2.v[p] = -M2u.v[p] / (2.0 * a2 * k.v[p]);
    {
        ComplexField integ = to_complex(deriv(k, Axis::Y));
        for (std::size_t p = 0; p < g.size(); ++p)
            integ.v[p] += tau.v[p] / (2.0 * a2 * k.v[p]) * M2u.v[p];
        out.m3 = inv_deriv_x(integ);
    }
    ScalarField kx = deriv(k, Axis::X);
    ScalarField ux = deriv(u, Axis::X), uy = deriv(u, Axis::Y);
    ComplexField m3y = deriv(out.m3, Axis::Y), m2y = deriv(out.m2, Axis::Y);
    out.w2 = ComplexField(g);
    out.w3 = ComplexField(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
        out.w2.v[p] = -kx.v[p] - a2 * (m3y.v[p] + out.m2.v[p] * out.m1.v[p]) +
                      cplx(0, 1) * out.m2.v[p] * ux.v[p];
        out.w3.v[p] = -k.v[p] * tau.v[p] +
                      a2 * (m2y.v[p] - out.m3.v[p] * out.m1.v[p]) +
                      cplx(0, 1) * (k.v[p] * uy.v[p] + out.m3.v[p] * ux.v[p]);
    }
    ComplexField w2x = deriv(out.w2, Axis::X);
    out.w1 = ComplexField(g);
    for (std::size_t p = 0; p < g.size(); ++p)
        out.w1.v[p] = (-w2x.v[p] + tau.v[p] * out.w3.v[p]) / k.v[p];
    return out;
}

/// Phase ingredients of the q/p reconstruction that the identification
/// leaves free; they only shift the phases b1, b2.
struct PhaseSources {
    ScalarField A, Abar, D, Dbar;

    explicit PhaseSources(const Grid2& g)
        : A(g, 0.0), Abar(g, 0.0), D(g, 0.0), Dbar(g, 0.0) {}
};

/// One time slice of the DS pair reconstructed from the trihedral data.
struct DSSlice {
    ComplexField q, p;
    ScalarField a1, a2, b1, b2;
};

/// Builds q = a1 e^{i b1}, p = a2 e^{i b2} from
///   a1^2 = k^2/4 + |alpha|^2 (m3^2 + m2^2)/4 - (alpha_R/2) k m3
///          - (alpha_I/2) k m2,
///   a2^2 = same with + (alpha_R/2) k m3,
/// and the gamma-phase integrals; m1 is recovered internally from
/// m1 = dx^-1(tau_y + beta k m2) (the potential-free form of the
/// identification).
inline DSSlice ds_construct(const ScalarField& k, const ScalarField& tau,
                            const ScalarField& m2, const ScalarField& m3,
                            cplx alpha, const PhaseSources& ph,
                            double beta = 1.0) {
    const Grid2& g = k.grid;
    if (!(tau.grid == g) || !(m2.grid == g) || !(m3.grid == g) ||
        !(ph.A.grid == g))
        throw ShapeMismatch("ds_construct: grid mismatch");
    const double aR = alpha.real(), aI = alpha.imag();
    const double aa = std::norm(alpha);  // |alpha|^2

    DSSlice out{ComplexField(g), ComplexField(g), ScalarField(g),
                ScalarField(g), ScalarField(g), ScalarField(g)};
    ScalarField a1sq(g), a2sq(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
        double base = 0.25 * k.v[p] * k.v[p] +
                      0.25 * aa * (m3.v[p] * m3.v[p] + m2.v[p] * m2.v[p]) -
                      0.5 * aI * k.v[p] * m2.v[p];
        a1sq.v[p] = base - 0.5 * aR * k.v[p] * m3.v[p];
        a2sq.v[p] = base + 0.5 * aR * k.v[p] * m3.v[p];
        if (a1sq.v[p] < -1e-12 || a2sq.v[p] < -1e-12)
            throw ConstraintViolated(
                "ds_construct: negative squared modulus (a1^2 = " +
                std::to_string(a1sq.v[p]) + ", a2^2 = " +
                std::to_string(a2sq.v[p]) + ")");
        out.a1.v[p] = std::sqrt(std::max(a1sq.v[p], 0.0));
        out.a2.v[p] = std::sqrt(std::max(a2sq.v[p], 0.0));
    }

    // m1 from the identification, with k m2 replacing the potential term
    ScalarField m1int = deriv(tau, Axis::Y);
    for (std::size_t p = 0; p < g.size(); ++p)
        m1int.v[p] += beta * k.v[p] * m2.v[p];
    ScalarField m1 = inv_deriv_x(m1int);

    ScalarField ky = deriv(k, Axis::Y), kx = deriv(k, Axis::X);
    ScalarField m3x = deriv(m3, Axis::X);
    // gamma_j = +-i * (real brace); we keep the real braces and divide the
    // i's out of the phase integrand analytically:
    //   -gamma_1 / (2 i a1^2) = -brace_minus / (2 a1^2)
    //   -gamma_2 / (2 i a2^2) = +brace_plus / (2 a2^2)
    ScalarField phase1(g), phase2(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
        double common = 0.5 * k.v[p] * k.v[p] * tau.v[p] +
                        0.5 * aa * (m3.v[p] * k.v[p] * m1.v[p] +
                                    m2.v[p] * ky.v[p]);
        double odd = 0.5 * aR * (k.v[p] * k.v[p] * m1.v[p] +
                                 m3.v[p] * k.v[p] * tau.v[p] +
                                 m2.v[p] * kx.v[p]);
        double even = 0.5 * aI * (k.v[p] * (2.0 * ky.v[p] - m3x.v[p]) -
                                  kx.v[p] * m3.v[p]);
        double brace1 = common - odd + even;
        double brace2 = common + odd + even;
        double s1 = a1sq.v[p] > 1e-14 ? -brace1 / (2.0 * a1sq.v[p]) : 0.0;
        double s2 = a2sq.v[p] > 1e-14 ? brace2 / (2.0 * a2sq.v[p]) : 0.0;
        phase1.v[p] = s1 - (ph.Abar.v[p] - ph.A.v[p] + ph.D.v[p] - ph.Dbar.v[p]);
        phase2.v[p] = s2 - (ph.A.v[p] - ph.Abar.v[p] + ph.Dbar.v[p] - ph.D.v[p]);
    }
    out.b1 = inv_deriv_x(phase1);
    out.b2 = inv_deriv_x(phase2);
    for (std::size_t p = 0; p < g.size(); ++p) {
        out.q.v[p] = out.a1.v[p] * std::exp(cplx(0.0, out.b1.v[p]));
        out.p.v[p] = out.a2.v[p] * std::exp(cplx(0.0, out.b2.v[p]));
    }
    return out;
}

/// DS pair with its potential over a time stack.
struct DSFields {
    ComplexStack q, p;
    ScalarStack v;
    cplx alpha{1.0, 0.0};
};

/// Residuals of the DS system:
///   (a) i q_t + q_xx + alpha^2 q_yy + v q
///   (b) -i p_t + p_xx + alpha^2 p_yy + v p
///   (c) v_xx - alpha^2 v_yy + 2 [(pq)_xx + alpha^2 (pq)_yy].
inline std::array<ResidualReport, 3> ds_residual(const DSFields& ds) {
    require_time_stack(ds.q);
    if (ds.p.nt() != ds.q.nt() || ds.v.nt() != ds.q.nt())
        throw ShapeMismatch("ds_residual: stack length mismatch");
    const cplx a2 = ds.alpha * ds.alpha;
    ComplexStack qt = deriv_t(ds.q), pt = deriv_t(ds.p);
    ComplexStack ra(ds.q.t0, ds.q.dt), rb(ds.q.t0, ds.q.dt),
        rc(ds.q.t0, ds.q.dt);
    for (int s = 0; s < ds.q.nt(); ++s) {
        const ComplexField& q = ds.q.slices[s];
        const ComplexField& p = ds.p.slices[s];
        const ScalarField& v = ds.v.slices[s];
        ComplexField qxx = deriv(q, Axis::X, 2), qyy = deriv(q, Axis::Y, 2);
        ComplexField pxx = deriv(p, Axis::X, 2), pyy = deriv(p, Axis::Y, 2);
        ScalarField vxx = deriv(v, Axis::X, 2), vyy = deriv(v, Axis::Y, 2);
        ComplexField pq(q.grid);
        for (std::size_t i = 0; i < q.v.size(); ++i)
            pq.v[i] = p.v[i] * q.v[i];
        ComplexField pqxx = deriv(pq, Axis::X, 2), pqyy = deriv(pq, Axis::Y, 2);
        ComplexField fa(q.grid), fb(q.grid), fc(q.grid);
        for (std::size_t i = 0; i < q.v.size(); ++i) {
            fa.v[i] = cplx(0, 1) * qt.slices[s].v[i] + qxx.v[i] +
                      a2 * qyy.v[i] + v.v[i] * q.v[i];
            fb.v[i] = -cplx(0, 1) * pt.slices[s].v[i] + pxx.v[i] +
                      a2 * pyy.v[i] + v.v[i] * p.v[i];
            fc.v[i] = vxx.v[i] - a2 * vyy.v[i] +
                      2.0 * (pqxx.v[i] + a2 * pqyy.v[i]);
        }
        ra.slices.push_back(std::move(fa));
        rb.slices.push_back(std::move(fb));
        rc.slices.push_back(std::move(fc));
    }
    return {residual_norm(ra, "ds-59a"), residual_norm(rb, "ds-59b"),
            residual_norm(rc, "ds-59c")};
}

/// w3 of the M-X flow: -k_xx - 3k^2 - 3 alpha^2 dx^-1 m3_y. The printed
/// double minus before the last term is read as a single minus by
/// default; paper_literal flips it to a plus.
inline ComplexField mx_w3(const ScalarField& k, const ScalarField& m3,
                          cplx alpha, bool paper_literal = false) {
    const cplx a2 = alpha * alpha;
    ScalarField kxx = deriv(k, Axis::X, 2);
    ScalarField im3y = inv_deriv_x(deriv(m3, Axis::Y));
    ComplexField w3(k.grid);
    const double sign = paper_literal ? 1.0 : -1.0;
    for (std::size_t p = 0; p < k.v.size(); ++p)
        w3.v[p] = -kxx.v[p] - 3.0 * k.v[p] * k.v[p] +
                  sign * 3.0 * a2 * im3y.v[p];
    return w3;
}

/// Residual of the M-X equation S_t - (w3 / k) S_x.
inline ResidualReport mx_residual(const Vec3Stack& S, const ScalarStack& k,
                                  const ScalarStack& m3, cplx alpha,
                                  bool paper_literal = false) {
    require_time_stack(S);
    if (k.nt() != S.nt() || m3.nt() != S.nt())
        throw ShapeMismatch("mx_residual: stack length mismatch");
    Vec3Stack St = deriv_t(S);
    ResidualReport rep;
    rep.name = "mx-68";
    double s2 = 0.0;
    std::size_t n = 0;
    for (int s = 0; s < S.nt(); ++s) {
        detail::require_nonvanishing(k.slices[s]);
        ComplexField w3 = mx_w3(k.slices[s], m3.slices[s], alpha, paper_literal);
        Vec3Field Sx = deriv(S.slices[s], Axis::X);
        for (std::size_t p = 0; p < Sx.v.size(); ++p) {
            cplx c = w3.v[p] / k.slices[s].v[p];
            for (int comp = 0; comp < 3; ++comp) {
                cplx r = St.slices[s].v[p][comp] - c * Sx.v[p][comp];
                rep.linf = std::max(rep.linf, std::abs(r));
                s2 += std::norm(r);
                ++n;
            }
        }
    }
    rep.l2 = std::sqrt(s2 / double(n));
    return rep;
}

/// Residuals of the KP system k_t + 6 k k_x + k_xxx + 3 alpha^2 m3_y and
/// m3_x - k_y.
inline std::pair<ResidualReport, ResidualReport> kp_residual(
    const ScalarStack& k, const ScalarStack& m3, cplx alpha) {
    require_time_stack(k);
    if (m3.nt() != k.nt())
        throw ShapeMismatch("kp_residual: stack length mismatch");
    const cplx a2 = alpha * alpha;
    ScalarStack kt = deriv_t(k);
    ComplexStack ra(k.t0, k.dt);
    ScalarStack rb(k.t0, k.dt);
    for (int s = 0; s < k.nt(); ++s) {
        const ScalarField& ks = k.slices[s];
        ScalarField kx = deriv(ks, Axis::X), kxxx = deriv(ks, Axis::X, 3);
        ScalarField m3y = deriv(m3.slices[s], Axis::Y);
        ComplexField fa(ks.grid);
        for (std::size_t p = 0; p < ks.v.size(); ++p)
            fa.v[p] = kt.slices[s].v[p] + 6.0 * ks.v[p] * kx.v[p] +
                      kxxx.v[p] + 3.0 * a2 * m3y.v[p];
        ra.slices.push_back(std::move(fa));
        rb.slices.push_back(deriv(m3.slices[s], Axis::X) - deriv(ks, Axis::Y));
    }
    return {residual_norm(ra, "kp-70a"), residual_norm(rb, "kp-70b")};
}

/// Residuals of the KP Lax pair
///   (a) alpha psi_y + psi_xx + k psi
///   (b) psi_t + 4 psi_xxx + 6 k psi_x + 3 (k_x - alpha m3) psi.
inline std::pair<ResidualReport, ResidualReport> kp_lax_residual(
    const ComplexStack& psi, const ScalarStack& k, const ScalarStack& m3,
    cplx alpha) {
    require_time_stack(psi);
    if (k.nt() != psi.nt() || m3.nt() != psi.nt())
        throw ShapeMismatch("kp_lax_residual: stack length mismatch");
    ComplexStack pt = deriv_t(psi);
    ComplexStack ra(psi.t0, psi.dt), rb(psi.t0, psi.dt);
    for (int s = 0; s < psi.nt(); ++s) {
        const ComplexField& ps = psi.slices[s];
        const ScalarField& ks = k.slices[s];
        ComplexField py = deriv(ps, Axis::Y), pxx = deriv(ps, Axis::X, 2);
        ComplexField pxxx = deriv(ps, Axis::X, 3), px = deriv(ps, Axis::X);
        ScalarField kx = deriv(ks, Axis::X);
        ComplexField fa(ps.grid), fb(ps.grid);
        for (std::size_t p = 0; p < ps.v.size(); ++p) {
            fa.v[p] = alpha * py.v[p] + pxx.v[p] + ks.v[p] * ps.v[p];
            fb.v[p] = pt.slices[s].v[p] + 4.0 * pxxx.v[p] +
                      6.0 * ks.v[p] * px.v[p] +
                      3.0 * (kx.v[p] - alpha * m3.slices[s].v[p]) * ps.v[p];
        }
        ra.slices.push_back(std::move(fa));
        rb.slices.push_back(std::move(fb));
    }
    return {residual_norm(ra, "kp-lax-71a"), residual_norm(rb, "kp-lax-71b")};
}

/// Residuals of the mKP system
///   (a) k_t - 6 k^2 k_x + k_xxx - 3 alpha (2 k_x w - alpha w_y)
///   (b) w_x - k_y.
inline std::pair<ResidualReport, ResidualReport> mkp_residual(
    const ScalarStack& k, const ScalarStack& w, cplx alpha) {
    require_time_stack(k);
    if (w.nt() != k.nt())
        throw ShapeMismatch("mkp_residual: stack length mismatch");
    ScalarStack kt = deriv_t(k);
    ComplexStack ra(k.t0, k.dt);
    ScalarStack rb(k.t0, k.dt);
    for (int s = 0; s < k.nt(); ++s) {
        const ScalarField& ks = k.slices[s];
        const ScalarField& ws = w.slices[s];
        ScalarField kx = deriv(ks, Axis::X), kxxx = deriv(ks, Axis::X, 3);
        ScalarField wy = deriv(ws, Axis::Y);
        ComplexField fa(ks.grid);
        for (std::size_t p = 0; p < ks.v.size(); ++p)
            fa.v[p] = kt.slices[s].v[p] -
                      6.0 * ks.v[p] * ks.v[p] * kx.v[p] + kxxx.v[p] -
                      3.0 * alpha * (2.0 * kx.v[p] * ws.v[p] -
                                     alpha * wy.v[p]);
        ra.slices.push_back(std::move(fa));
        rb.slices.push_back(deriv(ws, Axis::X) - deriv(ks, Axis::Y));
    }
    return {residual_norm(ra, "mkp-77a"), residual_norm(rb, "mkp-77b")};
}

/// Miura map u = -alpha m3 - k_x - k^2.
inline ComplexField miura_u(const ScalarField& k, const ScalarField& m3,
                            cplx alpha) {
    if (!(k.grid == m3.grid)) throw ShapeMismatch("miura_u: grid mismatch");
    ScalarField kx = deriv(k, Axis::X);
    ComplexField u(k.grid);
    for (std::size_t p = 0; p < k.v.size(); ++p)
        u.v[p] = -alpha * m3.v[p] - kx.v[p] - k.v[p] * k.v[p];
    return u;
}

/// Wave function psi = exp(dx^-1 k), so that psi_x / psi = k.
inline ScalarField exp_wavefunction(const ScalarField& k) {
    ScalarField phi = inv_deriv_x(k);
    ScalarField psi(k.grid);
    for (std::size_t p = 0; p < k.v.size(); ++p)
        psi.v[p] = std::exp(phi.v[p]);
    return psi;
}

/// Quadric constraint residual tau^2 + s1 k^2 + s2 sigma^2 - n^2.
inline ResidualReport spin_constraint_check(const ScalarField& k,
                                            const ScalarField& sigma,
                                            const ScalarField& tau,
                                            const ScalarField& n,
                                            int s1 = 1, int s2 = 1) {
    if (!(k.grid == sigma.grid) || !(k.grid == tau.grid) || !(k.grid == n.grid))
        throw ShapeMismatch("spin_constraint_check: grid mismatch");
    ScalarField r(k.grid);
    for (std::size_t p = 0; p < k.v.size(); ++p)
        r.v[p] = tau.v[p] * tau.v[p] + s1 * k.v[p] * k.v[p] +
                 s2 * sigma.v[p] * sigma.v[p] - n.v[p] * n.v[p];
    return residual_norm(r, "spin-constraint-83");
}

namespace detail {

inline void require_gauge(const MatrixField& E, double tol = 1e-10) {
    const int dim = field_dim(E);
    for (const Mat& m : E.v) {
        Mat test(dim);
        if (dim == 2) {
            test = m.adjoint() * m;  // unitary
        } else {
            Mat mt(3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) mt(i, j) = m(j, i);
            test = mt * m;  // orthogonal (plain transpose)
        }
        if ((test - Mat::identity(dim)).max_abs() > tol)
            throw NonOrthogonalGauge("gauge matrix is not orthogonal/unitary");
    }
}

}  // namespace detail

/// Gauge conjugation of the transport triple:
///   A' = E A E^-1 + E_x E^-1, B' = E B E^-1 + E_y E^-1,
///   D' = E D E^-1 + E_t E^-1 (axis-matched derivatives by default;
/// paper_literal uses E_x in all three inhomogeneous terms).
struct GaugeTriple {
    MatrixStack A, B, D;
};

inline GaugeTriple gauge_conjugate(const MatrixStack& E, const MatrixStack& A,
                                   const MatrixStack& B, const MatrixStack& D,
                                   bool paper_literal = false) {
    require_time_stack(E);
    if (A.nt() != E.nt() || B.nt() != E.nt() || D.nt() != E.nt())
        throw ShapeMismatch("gauge_conjugate: stack length mismatch");
    for (const auto& s : E.slices) detail::require_gauge(s);
    MatrixStack Et = deriv_t(E);
    GaugeTriple out{MatrixStack(E.t0, E.dt), MatrixStack(E.t0, E.dt),
                    MatrixStack(E.t0, E.dt)};
    for (int s = 0; s < E.nt(); ++s) {
        const MatrixField& Es = E.slices[s];
        MatrixField Ex = deriv(Es, Axis::X);
        MatrixField Ey = paper_literal ? Ex : deriv(Es, Axis::Y);
        const MatrixField& Ett = paper_literal ? Ex : Et.slices[s];
        MatrixField Einv(Es.grid);
        for (std::size_t p = 0; p < Es.v.size(); ++p)
            Einv.v[p] = Es.v[p].inverse();
        auto conj = [&](const MatrixField& M, const MatrixField& Ed) {
            MatrixField r(Es.grid);
            for (std::size_t p = 0; p < Es.v.size(); ++p)
                r.v[p] = Es.v[p] * M.v[p] * Einv.v[p] +
                         Ed.v[p] * Einv.v[p];
            return r;
        };
        out.A.slices.push_back(conj(A.slices[s], Ex));
        out.B.slices.push_back(conj(B.slices[s], Ey));
        out.D.slices.push_back(conj(D.slices[s], Ett));
    }
    return out;
}

/// Best fit of a 3x3 matrix field to the pattern
/// a * [[0, S1, -S2], [-beta S1, 0, S3], [beta S2, -S3, 0]] with constant
/// scalar a and unit S. `mismatch` reports the worst pointwise deviation
/// of the input from the fitted pattern (not a fatal error).
struct StructureFit {
    double a = 0.0;
    Vec3Field S;
    double mismatch = 0.0;
};

inline StructureFit structure_extract(const MatrixField& Ap,
                                      double beta = 1.0) {
    if (field_dim(Ap) != 3)
        throw ArgumentError("structure_extract: needs a 3x3 field");
    StructureFit fit;
    fit.S = Vec3Field(Ap.grid);
    double asum = 0.0;
    for (std::size_t p = 0; p < Ap.v.size(); ++p) {
        const Mat& m = Ap.v[p];
        double s1 = m(0, 1).real(), s2 = -m(0, 2).real(), s3 = m(1, 2).real();
        double a = std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
        asum += a;
        fit.S.v[p] = a > 0.0 ? Vec3{s1 / a, s2 / a, s3 / a} : Vec3{0, 0, 0};
    }
    fit.a = asum / double(Ap.v.size());
    for (std::size_t p = 0; p < Ap.v.size(); ++p) {
        const Vec3& S = fit.S.v[p];
        Mat want(3);
        want(0, 1) = fit.a * S.x;
        want(0, 2) = -fit.a * S.y;
        want(1, 0) = -beta * fit.a * S.x;
        want(1, 2) = fit.a * S.z;
        want(2, 0) = beta * fit.a * S.y;
        want(2, 1) = -fit.a * S.z;
        fit.mismatch = std::max(fit.mismatch, (Ap.v[p] - want).max_abs());
    }
    return fit;
}

/// Residuals of the M-0 system
///   (a) S_t - (1/a) V'_x + [S, V']
///   (b) S_y - (1/a) T'_x + [S, T']
///   (c) V'_t - T'_y + [V', T'].
inline std::array<ResidualReport, 3> m0_residual(const MatrixStack& S,
                                                 const MatrixStack& Vp,
                                                 const MatrixStack& Tp,
                                                 double a) {
    require_time_stack(S);
    if (Vp.nt() != S.nt() || Tp.nt() != S.nt())
        throw ShapeMismatch("m0_residual: stack length mismatch");
    if (a == 0.0) throw ArgumentError("m0_residual: a must be nonzero");
    MatrixStack ra = deriv_t(S), rc = deriv_t(Vp);
    MatrixStack rb(S.t0, S.dt);
    for (int s = 0; s < S.nt(); ++s) {
        ra.slices[s] += commutator(S.slices[s], Vp.slices[s]) -
                        deriv(Vp.slices[s], Axis::X) * (1.0 / a);
        rb.slices.push_back(deriv(S.slices[s], Axis::Y) -
                            deriv(Tp.slices[s], Axis::X) * (1.0 / a) +
                            commutator(S.slices[s], Tp.slices[s]));
        rc.slices[s] += commutator(Vp.slices[s], Tp.slices[s]) -
                        deriv(Tp.slices[s], Axis::Y);
    }
    return {residual_norm(ra, "m0-92a"), residual_norm(rb, "m0-92b"),
            residual_norm(rc, "m0-92c")};
}

}  // namespace zcv
