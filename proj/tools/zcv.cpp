#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zcv/io.hpp"
#include "zcv/report.hpp"
#include "zcv/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

// Flat key = value text; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw zcv::ArgumentError("cannot open config: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        auto b = s.find_first_not_of(ws);
        auto e = s.find_last_not_of(ws);
        return b == std::string::npos ? std::string()
                                      : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw zcv::ArgumentError("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw zcv::ArgumentError("config line " + std::to_string(lineno) +
                                     ": empty key");
        out[key] = val;
    }
    return out;
}

std::pair<std::string, double> parse_tol(const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw zcv::ArgumentError("--tol expects KEY=VAL, got: " + kv);
    std::size_t used = 0;
    double v = std::stod(kv.substr(eq + 1), &used);
    if (used != kv.size() - eq - 1)
        throw zcv::ArgumentError("--tol: bad number in: " + kv);
    return {kv.substr(0, eq), v};
}

int cmd_run(const std::string& suite, const std::string& config_path,
            const std::string& out_dir,
            const std::vector<std::string>& tol_kv, bool paper_literal,
            int grid) {
    zcv::SuiteOptions opts;
    opts.grid = grid;
    opts.paper_literal = paper_literal;
    if (!config_path.empty()) opts.config = parse_config(config_path);
    for (const auto& kv : tol_kv) opts.tol.insert(parse_tol(kv));
    if (auto it = opts.config.find("grid");
        it != opts.config.end() && opts.grid == 0)
        opts.grid = std::stoi(it->second);

    zcv::Report rep = zcv::run_suite(suite, opts);
    const std::string path = out_dir + "/report-" + suite + ".json";
    zcv::write_report(path, rep);

    for (const auto& c : rep.checks)
        std::printf("%-28s [%s]  linf=%.3e  tol=%.3e  %s\n", c.name.c_str(),
                    c.anchor.c_str(), c.linf, c.tolerance,
                    c.pass ? "pass" : "FAIL");
    std::printf("%zu checks, wall %.0f ms, report: %s\n", rep.checks.size(),
                rep.wall_ms, path.c_str());
    if (!rep.all_pass()) {
        std::printf("failing checks:\n");
        for (const auto& name : rep.failing())
            std::printf("  %s\n", name.c_str());
        return kExitCheckFail;
    }
    return kExitPass;
}

int cmd_info(const std::string& base) {
    zcv::FieldMeta m = zcv::read_meta(base);
    nlohmann::ordered_json j;
    j["name"] = m.name;
    j["nx"] = m.nx;
    j["ny"] = m.ny;
    j["Lx"] = m.Lx;
    j["Ly"] = m.Ly;
    j["kind"] = m.kind;
    j["dim"] = m.dim;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

int cmd_dump(const std::string& base, const std::string& format,
             const std::string& out) {
    zcv::FieldMeta m = zcv::read_meta(base);
    if (format == "binary") {
        // lossless re-emission of the raw block
        std::ifstream is(base + ".bin", std::ios::binary);
        if (!is) throw zcv::IoError("cannot open: " + base + ".bin");
        std::ofstream os(out, std::ios::binary);
        if (!os) throw zcv::IoError("cannot open for writing: " + out);
        os << is.rdbuf();
        return kExitPass;
    }
    if (format != "csv")
        throw zcv::ArgumentError("dump: format must be csv or binary");
    std::ofstream os(out);
    if (!os) throw zcv::IoError("cannot open for writing: " + out);
    os.precision(17);
    zcv::Grid2 g = m.grid();
    if (m.kind == "real") {
        zcv::ScalarField f = zcv::read_scalar(base);
        os << "x,y,value\n";
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                os << g.x(i) << "," << g.y(j) << "," << f.at(i, j) << "\n";
    } else if (m.kind == "complex") {
        zcv::ComplexField f = zcv::read_complex(base);
        os << "x,y,re,im\n";
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                os << g.x(i) << "," << g.y(j) << "," << f.at(i, j).real()
                   << "," << f.at(i, j).imag() << "\n";
    } else {
        zcv::MatrixField f = zcv::read_matrix(base);
        os << "x,y";
        for (int r = 0; r < m.dim; ++r)
            for (int c = 0; c < m.dim; ++c)
                os << ",re" << r << c << ",im" << r << c;
        os << "\n";
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                os << g.x(i) << "," << g.y(j);
                for (int r = 0; r < m.dim; ++r)
                    for (int c = 0; c < m.dim; ++c)
                        os << "," << f.at(i, j)(r, c).real() << ","
                           << f.at(i, j)(r, c).imag();
                os << "\n";
            }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"residual verification suites for the coupled "
                 "dispersionless/dispersive reduction chain"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a named verification suite");
    std::string suite, config_path, out_dir = ".";
    std::vector<std::string> tol_kv;
    bool paper_literal = false;
    int grid = 0;
    std::vector<std::string> suite_choices = zcv::suite_names();
    suite_choices.push_back("all");
    run->add_option("--suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember(suite_choices));
    run->add_option("--config", config_path, "flat key = value config file");
    run->add_option("--out", out_dir, "output directory for the JSON report");
    run->add_option("--tol", tol_kv,
                    "tolerance override KEY=VAL (repeatable)");
    run->add_flag("--paper-literal", paper_literal,
                  "evaluate the flagged literal readings");
    run->add_option("--grid", grid, "override suite grid resolution");

    auto* info = app.add_subcommand("info", "print field metadata as JSON");
    std::string info_base;
    info->add_option("file", info_base,
                     "field base path (without .bin/.json)")
        ->required();

    auto* dump = app.add_subcommand("dump", "re-emit a field file");
    std::string dump_base, dump_format = "csv", dump_out;
    dump->add_option("file", dump_base,
                     "field base path (without .bin/.json)")
        ->required();
    dump->add_option("--format", dump_format, "csv or binary")
        ->check(CLI::IsMember({"csv", "binary"}));
    dump->add_option("--out", dump_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (run->parsed())
            return cmd_run(suite, config_path, out_dir, tol_kv, paper_literal,
                           grid);
        if (info->parsed()) return cmd_info(info_base);
        return cmd_dump(dump_base, dump_format, dump_out);
    } catch (const zcv::ArgumentError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const zcv::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const zcv::UnknownName& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
