#pragma once

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zcv/grid.hpp"

namespace zcv {

enum class Axis { X, Y };

namespace detail {

/// Fornberg finite-difference weights: weights w_i such that
/// f^(m)(x0) ~ sum_i w_i f(xs[i]). Exact for polynomials up to
/// degree xs.size()-1.
inline std::vector<double> fornberg_weights(double x0,
                                            const std::vector<double>& xs,
                                            int m) {
    const int n = int(xs.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][m];
    return w;
}

/// In-place complex FFT along a set of equally strided lines.
inline void fft_lines(cplx* data, int n, int howmany, int stride, int dist,
                      int sign) {
    fftw_plan plan = fftw_plan_many_dft(
        1, &n, howmany, reinterpret_cast<fftw_complex*>(data), nullptr, stride,
        dist, reinterpret_cast<fftw_complex*>(data), nullptr, stride, dist, sign,
        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

inline double wavenumber(int k, int n, double L) {
    int kk = (k <= n / 2) ? k : k - n;
    return 2.0 * std::numbers::pi * kk / L;
}

/// Applies `symbol(kx-or-ky)` to a complex field along one axis in
/// Fourier space. `zero_nyquist` kills the unmatched Nyquist mode
/// (needed for odd-order derivatives of real data).
template <class Symbol>
void apply_symbol(ComplexField& f, Axis axis, Symbol symbol,
                  bool zero_nyquist) {
    const Grid2& g = f.grid;
    const int n = (axis == Axis::X) ? g.nx : g.ny;
    const double L = (axis == Axis::X) ? g.Lx : g.Ly;
    const int howmany = (axis == Axis::X) ? g.ny : g.nx;
    const int stride = (axis == Axis::X) ? 1 : g.nx;
    const int dist = (axis == Axis::X) ? g.nx : 1;
    fft_lines(f.v.data(), n, howmany, stride, dist, FFTW_FORWARD);
    const double inv_n = 1.0 / n;
    for (int k = 0; k < n; ++k) {
        cplx s = symbol(wavenumber(k, n, L));
        if (zero_nyquist && k == n / 2) s = 0.0;
        s *= inv_n;
        for (int m = 0; m < howmany; ++m)
            f.v[std::size_t(m) * dist + std::size_t(k) * stride] *= s;
    }
    fft_lines(f.v.data(), n, howmany, stride, dist, FFTW_BACKWARD);
}

/// Finite-difference derivative along one aperiodic axis. Centered
/// stencils of width order+1 in the interior, one-sided at the ends.
inline void fd_axis(const std::vector<cplx>& in, std::vector<cplx>& out, int n,
                    int howmany, int stride, int dist, double h, int m,
                    int order) {
    const int width = order + 1;
    std::vector<double> nodes(width);
    for (int p = 0; p < width; ++p) nodes[p] = p * h;
    // Stencil offsets and weights per output index.
    std::vector<std::vector<double>> weights(n);
    std::vector<int> starts(n);
    for (int i = 0; i < n; ++i) {
        int s = std::clamp(i - width / 2, 0, n - width);
        starts[i] = s;
        weights[i] = fornberg_weights((i - s) * h, nodes, m);
    }
    for (int line = 0; line < howmany; ++line) {
        const cplx* src = in.data() + std::size_t(line) * dist;
        cplx* dst = out.data() + std::size_t(line) * dist;
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            const int s = starts[i];
            for (int p = 0; p < width; ++p)
                acc += weights[i][p] * src[std::size_t(s + p) * stride];
            dst[std::size_t(i) * stride] = acc;
        }
    }
}

inline ComplexField deriv_impl(const ComplexField& f, Axis axis, int order) {
    if (order <= 0) throw ArgumentError("deriv: order must be positive");
    const Grid2& g = f.grid;
    const bool periodic = (axis == Axis::X) ? g.periodic_x : g.periodic_y;
    if (periodic) {
        ComplexField out = f;
        apply_symbol(out, axis,
                     [order](double k) { return std::pow(cplx(0.0, k), order); },
                     order % 2 == 1);
        return out;
    }
    ComplexField out(g);
    const int n = (axis == Axis::X) ? g.nx : g.ny;
    const double h = (axis == Axis::X) ? g.dx() : g.dy();
    const int howmany = (axis == Axis::X) ? g.ny : g.nx;
    const int stride = (axis == Axis::X) ? 1 : g.nx;
    const int dist = (axis == Axis::X) ? g.nx : 1;
    int fd = std::min(g.fd_order, n - 1);
    fd_axis(f.v, out.v, n, howmany, stride, dist, h, order, fd);
    return out;
}

}  // namespace detail

/// Derivative of the given order along an axis: Fourier (exact for
/// band-limited data) on periodic axes, high-order finite differences on
/// aperiodic ones.
inline ComplexField deriv(const ComplexField& f, Axis axis, int order = 1) {
    return detail::deriv_impl(f, axis, order);
}

inline ScalarField deriv(const ScalarField& f, Axis axis, int order = 1) {
    return real_part(detail::deriv_impl(to_complex(f), axis, order));
}

inline Vec3Field deriv(const Vec3Field& f, Axis axis, int order = 1) {
    Vec3Field out(f.grid);
    ScalarField comp(f.grid);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t p = 0; p < f.v.size(); ++p) comp.v[p] = f.v[p][c];
        ScalarField d = deriv(comp, axis, order);
        for (std::size_t p = 0; p < f.v.size(); ++p) out.v[p][c] = d.v[p];
    }
    return out;
}

inline MatrixField deriv(const MatrixField& f, Axis axis, int order = 1) {
    MatrixField out(f.grid, Mat(field_dim(f)));
    const int n = field_dim(f);
    ComplexField entry(f.grid);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            for (std::size_t p = 0; p < f.v.size(); ++p) entry.v[p] = f.v[p](r, c);
            ComplexField d = deriv(entry, axis, order);
            for (std::size_t p = 0; p < f.v.size(); ++p) out.v[p](r, c) = d.v[p];
        }
    return out;
}

namespace detail {

inline void check_zero_x_mean(const ComplexField& f) {
    const Grid2& g = f.grid;
    double fmax = 0.0;
    for (const auto& x : f.v) fmax = std::max(fmax, std::abs(x));
    if (fmax == 0.0) return;
    for (int j = 0; j < g.ny; ++j) {
        cplx mean = 0.0;
        for (int i = 0; i < g.nx; ++i) mean += f.at(i, j);
        mean /= double(g.nx);
        if (std::abs(mean) > 1e-10 * fmax + 1e-14)
            throw NonZeroMean("inv_deriv_x: nonzero x-mean at y index " +
                              std::to_string(j));
    }
}

}  // namespace detail

/// The unique zero-x-mean antiderivative along x (Fourier symbol 1/(i k),
/// zero mode dropped). Rejects data with a nonzero x-mean on any line.
inline ComplexField inv_deriv_x(const ComplexField& f) {
    if (!f.grid.periodic_x)
        throw ArgumentError("inv_deriv_x: x axis must be periodic");
    detail::check_zero_x_mean(f);
    ComplexField out = f;
    detail::apply_symbol(out, Axis::X,
                         [](double k) {
                             return k == 0.0 ? cplx(0.0) : 1.0 / cplx(0.0, k);
                         },
                         true);
    return out;
}

inline ScalarField inv_deriv_x(const ScalarField& f) {
    return real_part(inv_deriv_x(to_complex(f)));
}

/// Trigonometric interpolation of a periodic-axis field at half-grid
/// offsets (used by the frame transport's mid-step samples).
inline ComplexField half_shift(const ComplexField& f, Axis axis) {
    const Grid2& g = f.grid;
    const bool periodic = (axis == Axis::X) ? g.periodic_x : g.periodic_y;
    const int n = (axis == Axis::X) ? g.nx : g.ny;
    const double L = (axis == Axis::X) ? g.Lx : g.Ly;
    ComplexField out = f;
    if (periodic) {
        const double half = 0.5 * L / n;
        detail::apply_symbol(out, axis,
                             [half](double k) {
                                 return std::exp(cplx(0.0, k * half));
                             },
                             true);
        return out;
    }
    // Aperiodic axis: local polynomial interpolation at i + 1/2.
    const double h = (axis == Axis::X) ? g.dx() : g.dy();
    const int howmany = (axis == Axis::X) ? g.ny : g.nx;
    const int stride = (axis == Axis::X) ? 1 : g.nx;
    const int dist = (axis == Axis::X) ? g.nx : 1;
    int fd = std::min(g.fd_order, n - 1);
    const int width = fd + 1;
    std::vector<double> nodes(width);
    for (int p = 0; p < width; ++p) nodes[p] = p * h;
    for (int line = 0; line < howmany; ++line) {
        const cplx* src = f.v.data() + std::size_t(line) * dist;
        cplx* dst = out.v.data() + std::size_t(line) * dist;
        for (int i = 0; i < n; ++i) {
            int s = std::clamp(i - width / 2, 0, n - width);
            auto w = detail::fornberg_weights((i - s) * h + 0.5 * h, nodes, 0);
            cplx acc = 0.0;
            for (int p = 0; p < width; ++p)
                acc += w[p] * src[std::size_t(s + p) * stride];
            dst[std::size_t(i) * stride] = acc;
        }
    }
    return out;
}

inline ScalarField half_shift(const ScalarField& f, Axis axis) {
    return real_part(half_shift(to_complex(f), axis));
}

inline MatrixField half_shift(const MatrixField& f, Axis axis) {
    MatrixField out(f.grid, Mat(field_dim(f)));
    const int n = field_dim(f);
    ComplexField entry(f.grid);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            for (std::size_t p = 0; p < f.v.size(); ++p) entry.v[p] = f.v[p](r, c);
            ComplexField s = half_shift(entry, axis);
            for (std::size_t p = 0; p < f.v.size(); ++p) out.v[p](r, c) = s.v[p];
        }
    return out;
}

/// Quadrature weights along one axis: plain trapezoid on periodic axes
/// (spectrally accurate there), Euler-Maclaurin endpoint-corrected
/// trapezoid on aperiodic ones. Corrections use one-sided derivative
/// estimates, giving roughly 8th-order accuracy for smooth integrands.
inline std::vector<double> quadrature_weights(int n, double L, bool periodic,
                                              int fd_order = 8) {
    std::vector<double> w(n);
    if (periodic) {
        double h = L / n;
        for (auto& x : w) x = h;
        return w;
    }
    double h = L / (n - 1);
    for (auto& x : w) x = h;
    w[0] = w[n - 1] = 0.5 * h;
    // integral = trapezoid - h^2/12 (f'(b)-f'(a)) + h^4/720 (f'''(b)-f'''(a))
    //            - h^6/30240 (f^(5)(b)-f^(5)(a))
    const double cs[3] = {-h * h / 12.0, h * h * h * h / 720.0,
                          -std::pow(h, 6) / 30240.0};
    const int orders[3] = {1, 3, 5};
    for (int t = 0; t < 3; ++t) {
        int m = orders[t];
        int width = std::min(fd_order + m, n);
        std::vector<double> nodes(width);
        for (int p = 0; p < width; ++p) nodes[p] = p * h;
        auto wa = detail::fornberg_weights(0.0, nodes, m);
        auto wb = detail::fornberg_weights((width - 1) * h, nodes, m);
        for (int p = 0; p < width; ++p) {
            w[p] -= cs[t] * wa[p];
            w[n - width + p] += cs[t] * wb[p];
        }
    }
    return w;
}

}  // namespace zcv
