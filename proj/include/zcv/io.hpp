#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zcv/errors.hpp"
#include "zcv/grid.hpp"
#include "zcv/stack.hpp"

namespace zcv {

/// Sidecar metadata for the shared field format: a flat little-endian block
/// of 8-byte floats in row-major (x-fastest) order next to a JSON file
/// {name, nx, ny, Lx, Ly, kind, dim}.  Complex values interleave (re, im);
/// matrix fields store dim*dim complex entries per point, rows first.
struct FieldMeta {
    std::string name;
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;
    std::string kind;  // "real" | "complex" | "matrix"
    int dim = 1;       // matrix dimension; 1 for scalar kinds

    Grid2 grid() const { return Grid2(nx, ny, Lx, Ly); }

    /// Number of doubles per grid point implied by (kind, dim).
    std::size_t doubles_per_point() const {
        if (kind == "real") return 1;
        if (kind == "complex") return 2;
        if (kind == "matrix") return 2 * std::size_t(dim) * dim;
        throw IoError("FieldMeta: unknown kind '" + kind + "'");
    }
};

namespace detail {

static_assert(std::endian::native == std::endian::little,
              "field i/o assumes a little-endian host");

inline void write_doubles(const std::string& path,
                          const std::vector<double>& buf) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(reinterpret_cast<const char*>(buf.data()),
             std::streamsize(buf.size() * sizeof(double)));
    if (!os) throw IoError("short write: " + path);
}

inline std::vector<double> read_doubles(const std::string& path,
                                        std::size_t count) {
    std::ifstream is(path, std::ios::binary | std::ios::ate);
    if (!is) throw IoError("cannot open for reading: " + path);
    const auto bytes = std::size_t(is.tellg());
    if (bytes != count * sizeof(double))
        throw IoError("size mismatch in " + path + ": expected " +
                      std::to_string(count * sizeof(double)) + " bytes, got " +
                      std::to_string(bytes));
    std::vector<double> buf(count);
    is.seekg(0);
    is.read(reinterpret_cast<char*>(buf.data()), std::streamsize(bytes));
    if (!is) throw IoError("short read: " + path);
    return buf;
}

inline void pack(std::vector<double>& buf, double x) { buf.push_back(x); }
inline void pack(std::vector<double>& buf, const cplx& x) {
    buf.push_back(x.real());
    buf.push_back(x.imag());
}
inline void pack(std::vector<double>& buf, const Mat& m) {
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c) pack(buf, m(r, c));
}

}  // namespace detail

inline void write_meta(const std::string& base, const FieldMeta& meta) {
    nlohmann::ordered_json j;
    j["name"] = meta.name;
    j["nx"] = meta.nx;
    j["ny"] = meta.ny;
    j["Lx"] = meta.Lx;
    j["Ly"] = meta.Ly;
    j["kind"] = meta.kind;
    j["dim"] = meta.dim;
    std::ofstream os(base + ".json");
    if (!os) throw IoError("cannot open for writing: " + base + ".json");
    os << j.dump(2) << "\n";
}

inline FieldMeta read_meta(const std::string& base) {
    std::ifstream is(base + ".json");
    if (!is) throw IoError("cannot open for reading: " + base + ".json");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed sidecar " + base + ".json: " + e.what());
    }
    FieldMeta m;
    try {
        m.name = j.at("name").get<std::string>();
        m.nx = j.at("nx").get<int>();
        m.ny = j.at("ny").get<int>();
        m.Lx = j.at("Lx").get<double>();
        m.Ly = j.at("Ly").get<double>();
        m.kind = j.at("kind").get<std::string>();
        m.dim = j.at("dim").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("incomplete sidecar " + base + ".json: " + e.what());
    }
    m.doubles_per_point();  // validates kind
    return m;
}

/// Write a field as <base>.bin plus <base>.json.
template <class T>
void write_field(const std::string& base, const Field<T>& f,
                 const std::string& name) {
    FieldMeta meta;
    meta.name = name;
    meta.nx = f.grid.nx;
    meta.ny = f.grid.ny;
    meta.Lx = f.grid.Lx;
    meta.Ly = f.grid.Ly;
    if constexpr (std::is_same_v<T, double>) {
        meta.kind = "real";
    } else if constexpr (std::is_same_v<T, cplx>) {
        meta.kind = "complex";
    } else if constexpr (std::is_same_v<T, Mat>) {
        meta.kind = "matrix";
        meta.dim = field_dim(f);
    } else {
        static_assert(std::is_same_v<T, double> || std::is_same_v<T, cplx> ||
                          std::is_same_v<T, Mat>,
                      "unsupported field value type");
    }
    std::vector<double> buf;
    buf.reserve(f.v.size() * meta.doubles_per_point());
    for (const auto& x : f.v) detail::pack(buf, x);
    detail::write_doubles(base + ".bin", buf);
    write_meta(base, meta);
}

inline ScalarField read_scalar(const std::string& base) {
    FieldMeta m = read_meta(base);
    if (m.kind != "real")
        throw IoError(base + ": expected kind 'real', got '" + m.kind + "'");
    ScalarField f(m.grid());
    f.v = detail::read_doubles(base + ".bin", f.v.size());
    return f;
}

inline ComplexField read_complex(const std::string& base) {
    FieldMeta m = read_meta(base);
    if (m.kind != "complex")
        throw IoError(base + ": expected kind 'complex', got '" + m.kind +
                      "'");
    ComplexField f(m.grid());
    auto buf = detail::read_doubles(base + ".bin", 2 * f.v.size());
    for (std::size_t p = 0; p < f.v.size(); ++p)
        f.v[p] = cplx(buf[2 * p], buf[2 * p + 1]);
    return f;
}

inline MatrixField read_matrix(const std::string& base) {
    FieldMeta m = read_meta(base);
    if (m.kind != "matrix")
        throw IoError(base + ": expected kind 'matrix', got '" + m.kind + "'");
    MatrixField f = matrix_field(m.grid(), m.dim);
    auto buf = detail::read_doubles(base + ".bin",
                                    m.doubles_per_point() * f.v.size());
    std::size_t q = 0;
    for (auto& mat : f.v)
        for (int r = 0; r < m.dim; ++r)
            for (int c = 0; c < m.dim; ++c) {
                mat(r, c) = cplx(buf[q], buf[q + 1]);
                q += 2;
            }
    return f;
}

/// Serialize a time stack as one field file per slice plus a manifest JSON
/// listing the slice times.
template <class FieldT>
void write_stack(const std::string& base, const Stack<FieldT>& st,
                 const std::string& name) {
    nlohmann::ordered_json manifest;
    manifest["name"] = name;
    manifest["nt"] = st.nt();
    manifest["t0"] = st.t0;
    manifest["dt"] = st.dt;
    nlohmann::ordered_json slices = nlohmann::ordered_json::array();
    for (int s = 0; s < st.nt(); ++s) {
        const std::string sb = base + "-" + std::to_string(s);
        write_field(sb, st.slices[s], name + "[" + std::to_string(s) + "]");
        slices.push_back({{"t", st.t0 + s * st.dt}, {"file", sb + ".bin"}});
    }
    manifest["slices"] = slices;
    std::ofstream os(base + ".manifest.json");
    if (!os)
        throw IoError("cannot open for writing: " + base + ".manifest.json");
    os << manifest.dump(2) << "\n";
}

}  // namespace zcv
