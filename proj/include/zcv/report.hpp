#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zcv/errors.hpp"
#include "zcv/grid.hpp"

namespace zcv {

/// One verification check inside a suite report.  `anchor` is the equation
/// label the check exercises and must be non-empty.
struct Check {
    std::string name;
    std::string anchor;
    double linf = 0.0;
    double l2 = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Sign and derivative conventions in force; embedded in every report so
/// numbers are interpretable without the code.
inline std::vector<std::string> convention_header() {
    return {
        "curvature: F_mn = d_m A_n - d_n A_m - [A_m, A_n]",
        "null derivatives: d_alpha = -i d_t, d_alphabar = +i d_t, "
        "d_beta = d_x - i d_y, d_betabar = d_x + i d_y (no 1/2 factors)",
        "embedding: A_alpha = -i D, A_alphabar = +i D, "
        "A_beta = A - i B, A_betabar = A + i B",
        "triple residuals: R1 = A_y - B_x + [A,B], R2 = A_t - D_x + [A,D], "
        "R3 = B_t - D_y + [B,D]",
        "mean curvature: H = (1/2) tr(g^{-1} b)",
        "Higgs residuals taken as printed in (82); at Psi = 0 they collapse "
        "to (R1, -R2, R3) through the same arithmetic path",
    };
}

struct Report {
    std::string suite;
    std::vector<std::string> conventions = convention_header();
    std::vector<Check> checks;
    double wall_ms = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::vector<std::string> failing() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(c.name);
        return out;
    }

    void add(const ResidualReport& r, const std::string& anchor,
             double tolerance) {
        Check c;
        c.name = r.name;
        c.anchor = anchor;
        c.linf = r.linf;
        c.l2 = r.l2;
        c.tolerance = tolerance;
        c.pass = r.linf <= tolerance;
        checks.push_back(std::move(c));
    }

    void add_value(const std::string& name, const std::string& anchor,
                   double linf, double tolerance) {
        Check c;
        c.name = name;
        c.anchor = anchor;
        c.linf = linf;
        c.l2 = linf;
        c.tolerance = tolerance;
        c.pass = linf <= tolerance;
        checks.push_back(std::move(c));
    }
};

/// Serializes a report ("report_v1").  Every check must carry a non-empty
/// anchor; the output is deterministic except for the wall-time field.
inline nlohmann::ordered_json report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["schema"] = "report_v1";
    j["suite"] = r.suite;
    j["conventions"] = r.conventions;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        if (c.anchor.empty())
            throw ArgumentError("report_json: check '" + c.name +
                                "' has an empty anchor");
        checks.push_back({{"name", c.name},
                          {"anchor", c.anchor},
                          {"linf", c.linf},
                          {"l2", c.l2},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["all_pass"] = r.all_pass();
    j["wall_ms"] = r.wall_ms;
    return j;
}

inline void write_report(const std::string& path, const Report& r) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << report_json(r).dump(2) << "\n";
}

}  // namespace zcv
