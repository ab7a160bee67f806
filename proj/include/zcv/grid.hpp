#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "zcv/errors.hpp"

namespace zcv {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend Vec3 operator+(Vec3 l, const Vec3& r) { return l += r; }
    friend Vec3 operator-(Vec3 l, const Vec3& r) { return l -= r; }
    friend Vec3 operator*(Vec3 l, double s) { return l *= s; }
    friend Vec3 operator*(double s, Vec3 r) { return r *= s; }
};

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Uniform rectangular sample lattice. Periodic axes carry coordinates
/// x_i = i*L/n (the right endpoint is the wrap-around image of the left);
/// aperiodic axes include both endpoints, x_i = i*L/(n-1), and are
/// differentiated with finite-difference stencils of order `fd_order`
/// instead of Fourier symbols.
struct Grid2 {
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;
    bool periodic_x = true, periodic_y = true;
    int fd_order = 8;

    Grid2() = default;
    Grid2(int nx_, int ny_, double Lx_, double Ly_,
          bool px = true, bool py = true, int order = 8)
        : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_),
          periodic_x(px), periodic_y(py), fd_order(order) {
        if (Lx <= 0.0 || Ly <= 0.0)
            throw ArgumentError("Grid2: period lengths must be positive");
        if (fd_order < 2) throw ArgumentError("Grid2: fd_order < 2");
        check_axis(nx, periodic_x, "nx");
        check_axis(ny, periodic_y, "ny");
    }

    double dx() const { return periodic_x ? Lx / nx : Lx / (nx - 1); }
    double dy() const { return periodic_y ? Ly / ny : Ly / (ny - 1); }
    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }
    std::size_t size() const { return std::size_t(nx) * ny; }

    bool operator==(const Grid2& o) const {
        return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly &&
               periodic_x == o.periodic_x && periodic_y == o.periodic_y;
    }

private:
    void check_axis(int n, bool periodic, const char* name) const {
        if (periodic) {
            // Fourier differentiation needs a well-defined Nyquist mode.
            if (n < 8 || n % 2 != 0)
                throw ArgumentError(std::string("Grid2: periodic ") + name +
                                    " must be even and >= 8");
        } else {
            if (n < fd_order + 1)
                throw ArgumentError(std::string("Grid2: aperiodic ") + name +
                                    " must be >= fd_order + 1");
        }
    }
};

/// Small dense matrix of dimension 2 or 3 (fixed 3x3 storage).
struct Mat {
    int n = 2;
    std::array<cplx, 9> a{};

    Mat() = default;
    explicit Mat(int dim) : n(dim) {
        if (dim != 2 && dim != 3) throw ArgumentError("Mat: dim must be 2 or 3");
    }

    cplx& operator()(int r, int c) { return a[r * 3 + c]; }
    const cplx& operator()(int r, int c) const { return a[r * 3 + c]; }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat& operator+=(const Mat& o) {
        for (int i = 0; i < 9; ++i) a[i] += o.a[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (int i = 0; i < 9; ++i) a[i] -= o.a[i];
        return *this;
    }
    Mat& operator*=(cplx s) {
        for (auto& v : a) v *= s;
        return *this;
    }

    friend Mat operator+(Mat l, const Mat& r) { return l += r; }
    friend Mat operator-(Mat l, const Mat& r) { return l -= r; }
    friend Mat operator*(Mat l, cplx s) { return l *= s; }
    friend Mat operator*(cplx s, Mat r) { return r *= s; }

    friend Mat operator*(const Mat& l, const Mat& r) {
        Mat m(l.n);
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.n; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < l.n; ++k) s += l(i, k) * r(k, j);
                m(i, j) = s;
            }
        return m;
    }

    Mat adjoint() const {
        Mat m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    cplx trace() const {
        cplx s = 0.0;
        for (int i = 0; i < n; ++i) s += (*this)(i, i);
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m = std::max(m, std::abs((*this)(i, j)));
        return m;
    }

    double frob2() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += std::norm((*this)(i, j));
        return s;
    }

    Mat inverse() const {
        Mat m(n);
        if (n == 2) {
            cplx det = (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
            if (std::abs(det) < 1e-300) throw SingularGauge("Mat: singular 2x2");
            cplx d = 1.0 / det;
            m(0, 0) = (*this)(1, 1) * d;
            m(0, 1) = -(*this)(0, 1) * d;
            m(1, 0) = -(*this)(1, 0) * d;
            m(1, 1) = (*this)(0, 0) * d;
        } else {
            const Mat& A = *this;
            cplx c00 = A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
            cplx c01 = A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2);
            cplx c02 = A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0);
            cplx det = A(0, 0) * c00 + A(0, 1) * c01 + A(0, 2) * c02;
            if (std::abs(det) < 1e-300) throw SingularGauge("Mat: singular 3x3");
            cplx d = 1.0 / det;
            m(0, 0) = c00 * d;
            m(1, 0) = c01 * d;
            m(2, 0) = c02 * d;
            m(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) * d;
            m(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) * d;
            m(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) * d;
            m(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) * d;
            m(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) * d;
            m(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) * d;
        }
        return m;
    }

    /// Scaling-and-squaring matrix exponential.
    Mat exp() const {
        double s = max_abs();
        int squarings = 0;
        Mat X = *this;
        while (s > 0.5) {
            X *= cplx(0.5);
            s *= 0.5;
            ++squarings;
        }
        Mat r = Mat::identity(n);
        Mat term = Mat::identity(n);
        for (int k = 1; k <= 16; ++k) {
            term = term * X;
            term *= cplx(1.0 / k);
            r += term;
        }
        for (int k = 0; k < squarings; ++k) r = r * r;
        return r;
    }
};

inline Mat commutator(const Mat& A, const Mat& B) { return A * B - B * A; }

/// Function sampled on a Grid2, row-major with x fastest.
template <class T>
struct Field {
    Grid2 grid;
    std::vector<T> v;

    Field() = default;
    explicit Field(const Grid2& g) : grid(g), v(g.size()) {}
    Field(const Grid2& g, const T& fill) : grid(g), v(g.size(), fill) {}

    T& at(int i, int j) { return v[std::size_t(j) * grid.nx + i]; }
    const T& at(int i, int j) const { return v[std::size_t(j) * grid.nx + i]; }

    template <class F>
    static Field sample(const Grid2& g, F f) {
        Field out(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out.at(i, j) = f(g.x(i), g.y(j));
        return out;
    }

    Field& operator+=(const Field& o) {
        require_same(o);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        require_same(o);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
        return *this;
    }
    template <class S>
    Field& operator*=(S s) {
        for (auto& x : v) x = x * s;
        return *this;
    }

    friend Field operator+(Field l, const Field& r) { return l += r; }
    friend Field operator-(Field l, const Field& r) { return l -= r; }
    template <class S>
    friend Field operator*(Field l, S s) { return l *= s; }
    template <class S>
    friend Field operator*(S s, Field r) { return r *= s; }

    void require_same(const Field& o) const {
        if (!(grid == o.grid)) throw ShapeMismatch("Field: grid mismatch");
    }
};

using ScalarField = Field<double>;
using ComplexField = Field<cplx>;
using MatrixField = Field<Mat>;
using Vec3Field = Field<Vec3>;

inline MatrixField matrix_field(const Grid2& g, int dim) {
    return MatrixField(g, Mat(dim));
}

inline int field_dim(const MatrixField& f) { return f.v.empty() ? 0 : f.v[0].n; }

inline void require_compatible(const MatrixField& a, const MatrixField& b) {
    if (!(a.grid == b.grid)) throw ShapeMismatch("MatrixField: grid mismatch");
    if (field_dim(a) != field_dim(b))
        throw ShapeMismatch("MatrixField: dim mismatch");
}

namespace detail {
inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const cplx& x) { return std::abs(x); }
inline double abs_of(const Mat& m) { return m.max_abs(); }
inline double abs_of(const Vec3& v) {
    return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}
inline double sq_of(double x) { return x * x; }
inline double sq_of(const cplx& x) { return std::norm(x); }
inline double sq_of(const Mat& m) { return m.frob2(); }
inline double sq_of(const Vec3& v) { return dot(v, v); }
}  // namespace detail

/// Norm summary of a residual field: linf is the max pointwise absolute
/// value (matrix fields: max absolute entry), l2 the grid RMS.
struct ResidualReport {
    std::string name;
    double linf = 0.0;
    double l2 = 0.0;
    std::vector<std::pair<std::string, double>> component_breakdown;
};

template <class T>
ResidualReport residual_norm(const Field<T>& f, const std::string& name) {
    ResidualReport r;
    r.name = name;
    double s2 = 0.0;
    for (const auto& x : f.v) {
        r.linf = std::max(r.linf, detail::abs_of(x));
        s2 += detail::sq_of(x);
    }
    r.l2 = std::sqrt(s2 / double(f.grid.size()));
    return r;
}

template <class T>
bool all_finite(const Field<T>& f) {
    for (const auto& x : f.v)
        if (!(detail::abs_of(x) < 1e300) || std::isnan(detail::abs_of(x))) return false;
    return true;
}

inline ScalarField real_part(const ComplexField& f) {
    ScalarField out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i].real();
    return out;
}

inline ComplexField to_complex(const ScalarField& f) {
    ComplexField out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i];
    return out;
}

inline MatrixField commutator(const MatrixField& A, const MatrixField& B) {
    require_compatible(A, B);
    MatrixField out(A.grid);
    for (std::size_t i = 0; i < A.v.size(); ++i)
        out.v[i] = commutator(A.v[i], B.v[i]);
    return out;
}

}  // namespace zcv
