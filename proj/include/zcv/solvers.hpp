#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "zcv/reductions.hpp"

namespace zcv {

/// Time-integration settings shared by the desk-scale solvers.
struct SolveConfig {
    double t_end = 1.0;
    double dt = 0.01;
    std::string scheme = "etd4";  // etd4 | rk4-if | splitstep
    bool dealias = true;          // 2/3 rule on quadratic/cubic terms
};

namespace detail {

inline void fft2(std::vector<cplx>& a, const Grid2& g, int sign) {
    fft_lines(a.data(), g.nx, g.ny, 1, g.nx, sign);
    fft_lines(a.data(), g.ny, g.nx, g.nx, 1, sign);
    if (sign == 1) {  // FFTW_BACKWARD: normalize
        double s = 1.0 / double(g.nx * g.ny);
        for (auto& x : a) x *= s;
    }
}

/// 2/3-rule mask over both axes.
inline std::vector<double> dealias_mask(const Grid2& g) {
    std::vector<double> m(g.size(), 1.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int ki = i <= g.nx / 2 ? i : i - g.nx;
            int kj = j <= g.ny / 2 ? j : j - g.ny;
            if (std::abs(ki) > g.nx / 3 || std::abs(kj) > g.ny / 3)
                m[std::size_t(j) * g.nx + i] = 0.0;
        }
    return m;
}

inline std::vector<double> wavenumbers_x(const Grid2& g) {
    std::vector<double> k(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            k[std::size_t(j) * g.nx + i] = wavenumber(i, g.nx, g.Lx);
    return k;
}

inline std::vector<double> wavenumbers_y(const Grid2& g) {
    std::vector<double> k(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            k[std::size_t(j) * g.nx + i] = wavenumber(j, g.ny, g.Ly);
    return k;
}

inline void check_dispersive_dt(const SolveConfig& cfg, const Grid2& g) {
    if (cfg.dt <= 0.0) throw ArgumentError("SolveConfig: dt must be positive");
    if (cfg.t_end < cfg.dt)
        throw ArgumentError("SolveConfig: t_end must be at least dt");
    if (cfg.scheme == "etd4" || cfg.scheme == "rk4-if") {
        double dx = g.dx();
        if (cfg.dt > 100.0 * dx * dx * dx)
            throw ArgumentError(
                "SolveConfig: dt exceeds the dispersive stability bound "
                "c (dx)^3");
    }
}

/// dx^-1 d_y via the Fourier symbol ky/kx with the kx = 0 plane dropped
/// (the solver-side nonlocal fields; unlike inv_deriv_x this does not
/// reject data whose kx = 0, ky != 0 modes are populated).
inline ScalarField nonlocal_w(const ScalarField& f) {
    const Grid2& g = f.grid;
    std::vector<cplx> a(f.v.begin(), f.v.end());
    fft2(a, g, -1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double kx = wavenumber(i, g.nx, g.Lx);
            double ky = wavenumber(j, g.ny, g.Ly);
            a[std::size_t(j) * g.nx + i] *= kx == 0.0 ? 0.0 : ky / kx;
        }
    fft2(a, g, 1);
    ScalarField out(g);
    for (std::size_t p = 0; p < a.size(); ++p) out.v[p] = a[p].real();
    return out;
}

/// Kassam-Trefethen contour coefficients for ETDRK4 at one linear symbol.
struct Etd4Coeffs {
    cplx E, E2, Q, f1, f2, f3;
};

inline Etd4Coeffs etd4_coeffs(cplx hL) {
    const int M = 32;
    Etd4Coeffs c{std::exp(hL), std::exp(0.5 * hL), 0, 0, 0, 0};
    for (int m = 0; m < M; ++m) {
        double th = 2.0 * std::numbers::pi * (m + 0.5) / M;
        cplx z = hL + std::exp(cplx(0.0, th));
        cplx ez = std::exp(z), ez2 = std::exp(0.5 * z);
        c.Q += (ez2 - 1.0) / z;
        cplx z3 = z * z * z;
        c.f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
        c.f2 += (2.0 + z + ez * (-2.0 + z)) / z3;
        c.f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    c.Q /= double(M);
    c.f1 /= double(M);
    c.f2 /= double(M);
    c.f3 /= double(M);
    return c;
}

/// Generic spectral stepper for u_t = L u + N(u) with diagonal L. The
/// nonlinearity acts on spectral coefficients. Captures the last five
/// states at dt spacing and flags blow-up (linf > 1e6 in physical space).
template <class NFun, class Emit>
inline void etd4_evolve(std::vector<cplx>& vh, const Grid2& g,
                        const std::vector<cplx>& L, const SolveConfig& cfg,
                        NFun nonlinear, Emit emit) {
    const std::size_t n = g.size();
    std::vector<Etd4Coeffs> co(n);
    for (std::size_t p = 0; p < n; ++p) co[p] = etd4_coeffs(cfg.dt * L[p]);
    const int nsteps = int(std::round(cfg.t_end / cfg.dt));
    std::vector<cplx> Nv(n), a(n), Na(n), b(n), Nb(n), cc(n), Nc(n);
    emit(0, vh);
    for (int step = 1; step <= nsteps; ++step) {
        nonlinear(vh, Nv);
        for (std::size_t p = 0; p < n; ++p)
            a[p] = co[p].E2 * vh[p] + cfg.dt * co[p].Q * Nv[p];
        nonlinear(a, Na);
        for (std::size_t p = 0; p < n; ++p)
            b[p] = co[p].E2 * vh[p] + cfg.dt * co[p].Q * Na[p];
        nonlinear(b, Nb);
        for (std::size_t p = 0; p < n; ++p)
            cc[p] = co[p].E2 * a[p] + cfg.dt * co[p].Q * (2.0 * Nb[p] - Nv[p]);
        nonlinear(cc, Nc);
        for (std::size_t p = 0; p < n; ++p)
            vh[p] = co[p].E * vh[p] +
                    cfg.dt * (co[p].f1 * Nv[p] + 2.0 * co[p].f2 * (Na[p] + Nb[p]) +
                              co[p].f3 * Nc[p]);
        std::vector<cplx> phys = vh;
        fft2(phys, g, 1);
        double linf = 0.0;
        for (const auto& x : phys) linf = std::max(linf, std::abs(x));
        if (!std::isfinite(linf) || linf > 1e6)
            throw BlowUp("solver blow-up at t = " +
                         std::to_string(step * cfg.dt));
        emit(step, vh);
    }
}

}  // namespace detail

/// Solution of the KP flow with its reconstructed nonlocal field.
struct KPSolution {
    ScalarStack k;       // last five snapshots at dt spacing
    ScalarStack m3;      // dx^-1 k_y per snapshot
    double mass_drift = 0.0;    // max |int k - int k0|
    double energy_drift = 0.0;  // max |int k^2 - int k0^2|
};

/// Pseudo-spectral exponential integrator for
/// k_t = -6 k k_x - k_xxx - 3 alpha^2 dx^-1 k_yy.
inline KPSolution solve_kp(const ScalarField& k0, cplx alpha,
                           const SolveConfig& cfg) {
    const Grid2& g = k0.grid;
    if (!g.periodic_x || !g.periodic_y)
        throw ArgumentError("solve_kp: requires a doubly periodic grid");
    detail::check_dispersive_dt(cfg, g);
    // the nonlocal term dx^-1 k_y needs a zero x-mean of k_y per line
    detail::check_zero_x_mean(to_complex(deriv(k0, Axis::Y)));

    const cplx a2 = alpha * alpha;
    auto kx = detail::wavenumbers_x(g), ky = detail::wavenumbers_y(g);
    auto mask = detail::dealias_mask(g);
    const std::size_t n = g.size();
    std::vector<cplx> L(n);
    for (std::size_t p = 0; p < n; ++p) {
        cplx lin = cplx(0.0, 1.0) * kx[p] * kx[p] * kx[p];
        if (kx[p] != 0.0)
            lin -= 3.0 * a2 * cplx(0.0, 1.0) * ky[p] * ky[p] / kx[p];
        L[p] = lin;
    }
    std::vector<cplx> vh(k0.v.begin(), k0.v.end());
    for (std::size_t p = 0; p < n; ++p) vh[p] = k0.v[p];
    detail::fft2(vh, g, -1);

    auto nonlinear = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
        std::vector<cplx> phys = u;
        detail::fft2(phys, g, 1);
        for (std::size_t p = 0; p < n; ++p) phys[p] *= phys[p];
        detail::fft2(phys, g, -1);
        for (std::size_t p = 0; p < n; ++p) {
            out[p] = cplx(0.0, -3.0) * kx[p] * phys[p];
            if (cfg.dealias) out[p] *= mask[p];
        }
    };

    const int nsteps = int(std::round(cfg.t_end / cfg.dt));
    const int first_kept = std::max(0, nsteps - 4);
    KPSolution sol;
    sol.k = ScalarStack(first_kept * cfg.dt, cfg.dt);
    sol.m3 = ScalarStack(first_kept * cfg.dt, cfg.dt);
    double mass0 = 0.0, energy0 = 0.0;
    bool have_ref = false;
    const double cell = g.dx() * g.dy();

    auto emit = [&](int step, const std::vector<cplx>& u) {
        std::vector<cplx> phys = u;
        detail::fft2(phys, g, 1);
        double mass = 0.0, energy = 0.0;
        for (const auto& x : phys) {
            mass += x.real();
            energy += x.real() * x.real();
        }
        mass *= cell;
        energy *= cell;
        if (!have_ref) {
            mass0 = mass;
            energy0 = energy;
            have_ref = true;
        }
        sol.mass_drift = std::max(sol.mass_drift, std::abs(mass - mass0));
        sol.energy_drift = std::max(sol.energy_drift, std::abs(energy - energy0));
        if (step < first_kept) return;
        ScalarField f(g);
        for (std::size_t p = 0; p < n; ++p) f.v[p] = phys[p].real();
        sol.m3.slices.push_back(detail::nonlocal_w(f));
        sol.k.slices.push_back(std::move(f));
    };
    detail::etd4_evolve(vh, g, L, cfg, nonlinear, emit);
    return sol;
}

/// Solution of the mKP flow.
struct MKPSolution {
    ScalarStack k, w;
    double mass_drift = 0.0;
};

/// Pseudo-spectral exponential integrator for
/// k_t = 6 k^2 k_x - k_xxx + 3 alpha (2 k_x w - alpha w_y), w = dx^-1 k_y.
inline MKPSolution solve_mkp(const ScalarField& k0, cplx alpha,
                             const SolveConfig& cfg) {
    const Grid2& g = k0.grid;
    if (!g.periodic_x || !g.periodic_y)
        throw ArgumentError("solve_mkp: requires a doubly periodic grid");
    detail::check_dispersive_dt(cfg, g);
    // the nonlocal term dx^-1 k_y needs a zero x-mean of k_y per line
    detail::check_zero_x_mean(to_complex(deriv(k0, Axis::Y)));

    const cplx a2 = alpha * alpha;
    auto kx = detail::wavenumbers_x(g), ky = detail::wavenumbers_y(g);
    auto mask = detail::dealias_mask(g);
    const std::size_t n = g.size();
    // linear part: -k_xxx - 3 alpha^2 w_y with w = dx^-1 k_y
    std::vector<cplx> L(n);
    for (std::size_t p = 0; p < n; ++p) {
        cplx lin = cplx(0.0, 1.0) * kx[p] * kx[p] * kx[p];
        if (kx[p] != 0.0)
            lin -= 3.0 * a2 * cplx(0.0, 1.0) * ky[p] * ky[p] / kx[p];
        L[p] = lin;
    }
    std::vector<cplx> vh(n);
    for (std::size_t p = 0; p < n; ++p) vh[p] = k0.v[p];
    detail::fft2(vh, g, -1);

    auto nonlinear = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
        std::vector<cplx> kf = u, dkf(n), wf(n);
        for (std::size_t p = 0; p < n; ++p) {
            dkf[p] = cplx(0.0, 1.0) * kx[p] * u[p];
            wf[p] = kx[p] != 0.0 ? u[p] * ky[p] / kx[p] : cplx(0.0);
        }
        detail::fft2(kf, g, 1);
        detail::fft2(dkf, g, 1);
        detail::fft2(wf, g, 1);
        for (std::size_t p = 0; p < n; ++p)
            out[p] = 6.0 * kf[p] * kf[p] * dkf[p] +
                     6.0 * alpha * dkf[p] * wf[p];
        detail::fft2(out, g, -1);
        if (cfg.dealias)
            for (std::size_t p = 0; p < n; ++p) out[p] *= mask[p];
    };

    const int nsteps = int(std::round(cfg.t_end / cfg.dt));
    const int first_kept = std::max(0, nsteps - 4);
    MKPSolution sol;
    sol.k = ScalarStack(first_kept * cfg.dt, cfg.dt);
    sol.w = ScalarStack(first_kept * cfg.dt, cfg.dt);
    double mass0 = 0.0;
    bool have_ref = false;
    const double cell = g.dx() * g.dy();
    auto emit = [&](int step, const std::vector<cplx>& u) {
        std::vector<cplx> phys = u;
        detail::fft2(phys, g, 1);
        double mass = 0.0;
        for (const auto& x : phys) mass += x.real();
        mass *= cell;
        if (!have_ref) {
            mass0 = mass;
            have_ref = true;
        }
        sol.mass_drift = std::max(sol.mass_drift, std::abs(mass - mass0));
        if (step < first_kept) return;
        ScalarField f(g);
        for (std::size_t p = 0; p < n; ++p) f.v[p] = phys[p].real();
        sol.w.slices.push_back(detail::nonlocal_w(f));
        sol.k.slices.push_back(std::move(f));
    };
    detail::etd4_evolve(vh, g, L, cfg, nonlinear, emit);
    return sol;
}

/// Solution of the DS-II flow (p = conj q maintained by construction).
struct DSSolution {
    ComplexStack q, p;
    ScalarStack v;
    double power_drift = 0.0;  // max |int |q|^2 - int |q0|^2|
};

/// Strang split-step for the DS-II regime (alpha = i):
///   i q_t + q_xx - q_yy + v q = 0, with v solved spectrally from
///   v_xx + v_yy + 2 (|q|^2_xx - |q|^2_yy) = 0 each step (zero mode 0).
inline DSSolution solve_ds(const ComplexField& q0, cplx alpha,
                           const SolveConfig& cfg) {
    const Grid2& g = q0.grid;
    if (!g.periodic_x || !g.periodic_y)
        throw ArgumentError("solve_ds: requires a doubly periodic grid");
    if (std::abs(alpha - cplx(0.0, 1.0)) > 1e-14)
        throw ArgumentError("solve_ds: only the DS-II regime alpha = i is "
                            "supported");
    if (cfg.dt <= 0.0 || cfg.t_end < cfg.dt)
        throw ArgumentError("SolveConfig: invalid dt/t_end");

    auto kx = detail::wavenumbers_x(g), ky = detail::wavenumbers_y(g);
    const std::size_t n = g.size();
    // half-step linear phase for i q_t + q_xx - q_yy = 0:
    // q_t = i (q_xx - q_yy) => factor exp(-i (kx^2 - ky^2) dt/2)
    std::vector<cplx> half(n);
    for (std::size_t p = 0; p < n; ++p)
        half[p] = std::exp(cplx(0.0, -0.5 * cfg.dt) *
                           (kx[p] * kx[p] - ky[p] * ky[p]));

    auto solve_v = [&](const std::vector<cplx>& qphys, ScalarField& v) {
        std::vector<cplx> m(n);
        for (std::size_t p = 0; p < n; ++p) m[p] = std::norm(qphys[p]);
        detail::fft2(m, g, -1);
        for (std::size_t p = 0; p < n; ++p) {
            double den = kx[p] * kx[p] + ky[p] * ky[p];
            m[p] = den == 0.0
                       ? cplx(0.0)
                       : m[p] * (2.0 * (ky[p] * ky[p] - kx[p] * kx[p]) / den);
        }
        detail::fft2(m, g, 1);
        for (std::size_t p = 0; p < n; ++p) v.v[p] = m[p].real();
    };

    const int nsteps = int(std::round(cfg.t_end / cfg.dt));
    const int first_kept = std::max(0, nsteps - 4);
    DSSolution sol;
    sol.q = ComplexStack(first_kept * cfg.dt, cfg.dt);
    sol.p = ComplexStack(first_kept * cfg.dt, cfg.dt);
    sol.v = ScalarStack(first_kept * cfg.dt, cfg.dt);
    const double cell = g.dx() * g.dy();
    double power0 = 0.0;
    bool have_ref = false;

    std::vector<cplx> qp(q0.v.begin(), q0.v.end());
    auto emit = [&](int step, const std::vector<cplx>& qphys) {
        double power = 0.0;
        for (const auto& x : qphys) power += std::norm(x);
        power *= cell;
        if (!have_ref) {
            power0 = power;
            have_ref = true;
        }
        sol.power_drift = std::max(sol.power_drift, std::abs(power - power0));
        if (step < first_kept) return;
        ComplexField q(g), p(g);
        ScalarField v(g);
        for (std::size_t i = 0; i < n; ++i) {
            q.v[i] = qphys[i];
            p.v[i] = std::conj(qphys[i]);
        }
        solve_v(qphys, v);
        sol.q.slices.push_back(std::move(q));
        sol.p.slices.push_back(std::move(p));
        sol.v.slices.push_back(std::move(v));
    };

    emit(0, qp);
    ScalarField v(g);
    for (int step = 1; step <= nsteps; ++step) {
        // half linear
        detail::fft2(qp, g, -1);
        for (std::size_t p = 0; p < n; ++p) qp[p] *= half[p];
        detail::fft2(qp, g, 1);
        // full nonlinear: i q_t + v q = 0 with |q| (hence v) frozen:
        // exact phase rotation q *= exp(i v dt)
        solve_v(qp, v);
        for (std::size_t p = 0; p < n; ++p)
            qp[p] *= std::exp(cplx(0.0, cfg.dt * v.v[p]));
        // half linear
        detail::fft2(qp, g, -1);
        for (std::size_t p = 0; p < n; ++p) qp[p] *= half[p];
        detail::fft2(qp, g, 1);
        double linf = 0.0;
        for (const auto& x : qp) linf = std::max(linf, std::abs(x));
        if (!std::isfinite(linf) || linf > 1e6)
            throw BlowUp("solve_ds blow-up at t = " +
                         std::to_string(step * cfg.dt));
        emit(step, qp);
    }
    return sol;
}

/// Solution of the 1-d Heisenberg flow.
struct SpinSolution {
    Vec3Stack S;
    double max_drift = 0.0;  // worst pre-projection |S| - 1 per step
};

/// RK4 for S_t = S x S_xx (y frozen), renormalizing to the unit sphere
/// after every step and reporting the worst pre-projection drift.
inline SpinSolution solve_heisenberg1d(const Vec3Field& S0,
                                       const SolveConfig& cfg) {
    const Grid2& g = S0.grid;
    if (!g.periodic_x)
        throw ArgumentError("solve_heisenberg1d: x axis must be periodic");
    if (cfg.dt <= 0.0 || cfg.t_end < cfg.dt)
        throw ArgumentError("SolveConfig: invalid dt/t_end");
    // the flow is dispersive (omega ~ k^2): explicit RK4 needs
    // dt kmax^2 within its imaginary-axis stability interval
    {
        double kmax = std::numbers::pi * g.nx / g.Lx;
        if (cfg.dt * kmax * kmax > 2.5)
            throw ArgumentError(
                "solve_heisenberg1d: dt exceeds the dispersive stability "
                "bound c (dx)^2");
    }
    for (const auto& s : S0.v)
        if (std::abs(norm(s) - 1.0) > 1e-8)
            throw NonUnitSpin("solve_heisenberg1d: |S0| != 1");

    auto rhs = [&](const Vec3Field& S) {
        Vec3Field Sxx = deriv(S, Axis::X, 2);
        Vec3Field out(g);
        for (std::size_t p = 0; p < S.v.size(); ++p)
            out.v[p] = cross(S.v[p], Sxx.v[p]);
        return out;
    };

    const int nsteps = int(std::round(cfg.t_end / cfg.dt));
    const int first_kept = std::max(0, nsteps - 4);
    SpinSolution sol;
    sol.S = Vec3Stack(first_kept * cfg.dt, cfg.dt);
    Vec3Field S = S0;
    auto emit = [&](int step) {
        if (step >= first_kept) sol.S.slices.push_back(S);
    };
    emit(0);
    const double h = cfg.dt;
    for (int step = 1; step <= nsteps; ++step) {
        Vec3Field k1 = rhs(S);
        Vec3Field s2(g), s3(g), s4(g);
        for (std::size_t p = 0; p < S.v.size(); ++p)
            s2.v[p] = S.v[p] + k1.v[p] * (h / 2.0);
        Vec3Field k2 = rhs(s2);
        for (std::size_t p = 0; p < S.v.size(); ++p)
            s3.v[p] = S.v[p] + k2.v[p] * (h / 2.0);
        Vec3Field k3 = rhs(s3);
        for (std::size_t p = 0; p < S.v.size(); ++p)
            s4.v[p] = S.v[p] + k3.v[p] * h;
        Vec3Field k4 = rhs(s4);
        double linf = 0.0;
        for (std::size_t p = 0; p < S.v.size(); ++p) {
            Vec3 next = S.v[p] + (k1.v[p] + k2.v[p] * 2.0 + k3.v[p] * 2.0 +
                                  k4.v[p]) *
                                     (h / 6.0);
            double len = norm(next);
            sol.max_drift = std::max(sol.max_drift, std::abs(len - 1.0));
            S.v[p] = next * (1.0 / len);
            linf = std::max(linf, len);
        }
        if (!std::isfinite(linf) || linf > 1e6)
            throw BlowUp("solve_heisenberg1d blow-up at t = " +
                         std::to_string(step * cfg.dt));
        emit(step);
    }
    return sol;
}

}  // namespace zcv
