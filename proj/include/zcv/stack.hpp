#pragma once

#include <vector>

#include "zcv/spectral.hpp"

namespace zcv {

/// Uniformly spaced time slices of a field; feeds the t-derivatives of
/// the residual operators (4th-order centered differences, one-sided at
/// the end slices).
template <class FieldT>
struct Stack {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<FieldT> slices;

    Stack() = default;
    Stack(double t0_, double dt_) : t0(t0_), dt(dt_) {}

    int nt() const { return int(slices.size()); }
    double t(int s) const { return t0 + s * dt; }

    static Stack constant(const FieldT& f, int nt, double dt = 0.01,
                          double t0 = 0.0) {
        Stack st(t0, dt);
        st.slices.assign(nt, f);
        return st;
    }

    template <class F>
    static Stack sample(const Grid2& g, int nt, double t0, double dt, F f) {
        Stack st(t0, dt);
        for (int s = 0; s < nt; ++s) {
            FieldT fld(g);
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    fld.at(i, j) = f(g.x(i), g.y(j), t0 + s * dt);
            st.slices.push_back(std::move(fld));
        }
        return st;
    }
};

template <class FieldT>
void require_time_stack(const Stack<FieldT>& st, int minimum = 5) {
    if (st.nt() < minimum)
        throw MissingTimeStack("time derivative needs >= " +
                               std::to_string(minimum) + " slices, have " +
                               std::to_string(st.nt()));
    if (st.dt <= 0.0) throw MissingTimeStack("time stack has no spacing");
}

template <class FieldT>
Stack<FieldT> deriv_t(const Stack<FieldT>& st, int order = 1) {
    require_time_stack(st);
    const int nt = st.nt();
    const int width = std::min(5, nt);
    std::vector<double> nodes(width);
    for (int p = 0; p < width; ++p) nodes[p] = p * st.dt;
    Stack<FieldT> out(st.t0, st.dt);
    for (int s = 0; s < nt; ++s) {
        int base = std::clamp(s - width / 2, 0, nt - width);
        auto w = detail::fornberg_weights((s - base) * st.dt, nodes, order);
        FieldT acc = st.slices[base] * w[0];
        for (int p = 1; p < width; ++p) acc += st.slices[base + p] * w[p];
        out.slices.push_back(std::move(acc));
    }
    return out;
}

template <class FieldT, class Op>
Stack<FieldT> map_stack(const Stack<FieldT>& st, Op op) {
    Stack<FieldT> out(st.t0, st.dt);
    for (const auto& s : st.slices) out.slices.push_back(op(s));
    return out;
}

template <class FieldT>
Stack<FieldT> deriv(const Stack<FieldT>& st, Axis axis, int order = 1) {
    return map_stack(st, [&](const FieldT& f) { return deriv(f, axis, order); });
}

template <class FieldT>
ResidualReport residual_norm(const Stack<FieldT>& st, const std::string& name) {
    ResidualReport r;
    r.name = name;
    double s2 = 0.0;
    std::size_t count = 0;
    for (const auto& f : st.slices) {
        ResidualReport one = residual_norm(f, name);
        r.linf = std::max(r.linf, one.linf);
        s2 += one.l2 * one.l2 * double(f.grid.size());
        count += f.grid.size();
    }
    r.l2 = count ? std::sqrt(s2 / double(count)) : 0.0;
    return r;
}

template <class FieldT>
Stack<FieldT> operator-(Stack<FieldT> a, const Stack<FieldT>& b) {
    if (a.nt() != b.nt()) throw ShapeMismatch("Stack: slice count mismatch");
    for (int s = 0; s < a.nt(); ++s) a.slices[s] -= b.slices[s];
    return a;
}

template <class FieldT>
Stack<FieldT> operator+(Stack<FieldT> a, const Stack<FieldT>& b) {
    if (a.nt() != b.nt()) throw ShapeMismatch("Stack: slice count mismatch");
    for (int s = 0; s < a.nt(); ++s) a.slices[s] += b.slices[s];
    return a;
}

using MatrixStack = Stack<MatrixField>;
using ScalarStack = Stack<ScalarField>;
using ComplexStack = Stack<ComplexField>;
using Vec3Stack = Stack<Vec3Field>;

}  // namespace zcv
