// p1bounds command-line front end: runs the interpolation/FEM error-bound
// experiments and emits deterministic tables and CSV files.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "p1bounds/bounds.hpp"
#include "p1bounds/expansion.hpp"
#include "p1bounds/fem.hpp"
#include "p1bounds/function_model.hpp"
#include "p1bounds/mesh.hpp"
#include "p1bounds/norms_interp.hpp"

namespace {

using namespace p1bounds;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Output path resolution: a relative -o path lands in $P1BOUNDS_OUTPUT_DIR
/// when that variable is set.
std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("P1BOUNDS_OUTPUT_DIR"))
            return std::filesystem::path(dir) / p;
    }
    return p;
}

void emit(const std::string& csv, const std::string& output_path) {
    if (output_path.empty())
        return;
    const std::filesystem::path path = resolve_output(output_path);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path.string());
    out << csv;
}

/// Plain key=value config support: `--config FILE` entries become flags
/// inserted ahead of the user's own flags, and a key is ignored outright when
/// the matching flag was given on the command line. Blank lines and #-comments
/// are skipped; values may hold several whitespace-separated items.
std::vector<std::string> merge_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    std::vector<std::string> user;
    user.push_back(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw std::runtime_error("--config requires a file path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            user.push_back(args[i]);
        }
    }
    if (config_path.empty())
        return user;

    std::ifstream in(config_path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + config_path);
    std::vector<std::string> merged;
    merged.push_back(user[0]);
    if (user.size() > 1)
        merged.push_back(user[1]); // subcommand name stays first
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key.empty())
            continue;
        const std::string flag = "--" + key;
        bool overridden = false;
        for (std::size_t i = 2; i < user.size(); ++i)
            if (user[i] == flag || user[i].rfind(flag + "=", 0) == 0)
                overridden = true;
        if (overridden)
            continue;
        merged.push_back(flag);
        std::istringstream values(line.substr(eq + 1));
        std::string value;
        while (values >> value)
            merged.push_back(value);
    }
    merged.insert(merged.end(), user.begin() + (user.size() > 1 ? 2 : 1), user.end());
    return merged;
}

std::vector<BoundMethod> expand_methods(const std::vector<std::string>& names,
                                        const std::vector<int>& n_list) {
    std::vector<BoundMethod> methods;
    for (const std::string& name : names) {
        if (name == "taylor") {
            methods.push_back(BoundMethod::taylor());
        } else if (name == "mean-value") {
            methods.push_back(BoundMethod::mean_value());
        } else if (name == "asymptotic") {
            methods.push_back(BoundMethod::taylor_like_asymptotic());
        } else if (name == "taylor-like") {
            for (int n : n_list)
                methods.push_back(BoundMethod::taylor_like(n));
        } else {
            throw CLI::ValidationError(
                "--method", "unknown method '" + name +
                                "' (valid: taylor mean-value taylor-like asymptotic)");
        }
    }
    return methods;
}

struct MeshConfig {
    std::string kind = "uniform";
    double amplitude = 0.3;
    std::uint64_t seed = 1;

    Mesh1D make(std::size_t cells) const {
        if (kind == "uniform")
            return uniform_mesh(cells);
        return perturbed_mesh(cells, amplitude, seed);
    }
};

void add_mesh_flags(CLI::App* cmd, MeshConfig& mesh) {
    cmd->add_option("--mesh", mesh.kind, "Mesh kind")
        ->check(CLI::IsMember({"uniform", "perturbed"}))
        ->capture_default_str();
    cmd->add_option("--amplitude", mesh.amplitude,
                    "Relative node displacement for perturbed meshes, in [0, 0.5)")
        ->capture_default_str();
    cmd->add_option("--seed", mesh.seed, "Seed for perturbed meshes")
        ->capture_default_str();
}

void add_quad_flags(CLI::App* cmd, QuadratureSpec& quad) {
    cmd->add_option("--quad-points", quad.points_per_panel,
                    "Gauss points per quadrature panel")
        ->capture_default_str();
    cmd->add_option("--quad-panels", quad.panels_per_cell, "Quadrature panels per cell")
        ->capture_default_str();
}

int run_constants(const std::vector<int>& p_list, const std::vector<int>& n_list,
                  const std::string& output) {
    std::ostringstream csv;
    csv << "method,p,n,constant_num,constant_den,constant_float\n";
    std::printf("%-12s %3s %6s  %-16s %s\n", "method", "p", "n", "constant", "float");
    for (int p : p_list) {
        std::vector<std::pair<BoundMethod, int>> rows = {
            {BoundMethod::taylor(), 0},
            {BoundMethod::mean_value(), 0},
            {BoundMethod::taylor_like_asymptotic(), 0},
        };
        for (int n : n_list)
            rows.emplace_back(BoundMethod::taylor_like(n), n);
        for (const auto& [method, n] : rows) {
            const Rational c = constant(method, p);
            csv << method.label() << ',' << p << ',' << n << ',' << numerator(c) << ','
                << denominator(c) << ',' << sci(to_double(c)) << '\n';
            std::printf("%-12s %3d %6d  %-16s %.12g\n", method.label().c_str(), p, n,
                        rational_str(c).c_str(), to_double(c));
        }
    }
    emit(csv.str(), output);
    return 0;
}

int run_expansion(const std::string& function, double x0, double h,
                  const std::vector<int>& n_list, const std::string& output) {
    const SmoothFunction f = preset(function);
    std::ostringstream csv;
    csv << "function,x0,h,method,n,increment,remainder,bound,ok\n";
    std::printf("%-10s %-12s %6s  %14s %14s %14s  %s\n", "function", "method", "n",
                "increment", "remainder", "bound", "ok");
    int failures = 0;
    auto row = [&](const char* method, int n, const ExpansionResult& r) {
        const bool ok = std::abs(r.remainder) <= r.bound + 1e-12;
        if (!ok)
            ++failures;
        csv << function << ',' << sci(x0) << ',' << sci(h) << ',' << method << ',' << n
            << ',' << sci(r.increment) << ',' << sci(r.remainder) << ',' << sci(r.bound)
            << ',' << (ok ? "true" : "false") << '\n';
        std::printf("%-10s %-12s %6d  %14.6e %14.6e %14.6e  %s\n", function.c_str(),
                    method, n, r.increment, r.remainder, r.bound, ok ? "ok" : "FAIL");
        if (!ok)
            std::fprintf(stderr, "violation: %s n=%d |remainder|=%.12e > bound=%.12e\n",
                         method, n, std::abs(r.remainder), r.bound);
    };
    row("taylor", 0, taylor_step(f, x0, h));
    for (int n : n_list)
        row("taylor-like", n, taylor_like_step(f, x0, h, n));
    emit(csv.str(), output);
    return failures == 0 ? 0 : 1;
}

int run_interp(const std::vector<std::string>& functions, const std::vector<int>& p_list,
               const std::vector<int>& n_list, const std::vector<int>& cells_list,
               const std::vector<std::string>& method_names, const MeshConfig& mesh,
               const QuadratureSpec& quad, const std::string& output) {
    const std::vector<BoundMethod> methods = expand_methods(method_names, n_list);
    std::ostringstream csv;
    csv << "function,mesh_kind,num_cells,h,p,method,n,measured,bound,ok\n";
    std::printf("%-10s %-9s %6s %3s %-12s %3s  %14s %14s  %s\n", "function", "mesh",
                "cells", "p", "method", "n", "measured", "bound", "ok");
    int failures = 0;
    for (const std::string& name : functions) {
        const SmoothFunction f = preset(name);
        for (int cells : cells_list) {
            const Mesh1D m = mesh.make(static_cast<std::size_t>(cells));
            for (int p : p_list) {
                for (const BoundMethod& method : methods) {
                    const BoundReport r = verify_bound(f, m, p, method, quad);
                    if (!r.ok)
                        ++failures;
                    csv << name << ',' << mesh.kind << ',' << cells << ',' << sci(r.h)
                        << ',' << p << ',' << method.label() << ',' << method.n << ','
                        << sci(*r.measured_error) << ',' << sci(r.bound_W1p) << ','
                        << (r.ok ? "true" : "false") << '\n';
                    std::printf("%-10s %-9s %6d %3d %-12s %3d  %14.6e %14.6e  %s\n",
                                name.c_str(), mesh.kind.c_str(), cells, p,
                                method.label().c_str(), method.n, *r.measured_error,
                                r.bound_W1p, r.ok ? "ok" : "FAIL");
                    if (!r.ok)
                        std::fprintf(stderr,
                                     "violation: %s %s cells=%d p=%d %s n=%d "
                                     "measured=%.12e > bound=%.12e\n",
                                     name.c_str(), mesh.kind.c_str(), cells, p,
                                     method.label().c_str(), method.n, *r.measured_error,
                                     r.bound_W1p);
                }
            }
        }
    }
    emit(csv.str(), output);
    return failures == 0 ? 0 : 1;
}

int run_asymptotic(const std::vector<int>& p_list, const std::vector<int>& n_list,
                   const std::string& output) {
    std::ostringstream csv;
    csv << "p,n,constant_num,constant_den,asymptotic_num,asymptotic_den,gap\n";
    std::printf("%3s %8s  %-24s %-16s %s\n", "p", "n", "constant(n)", "limit", "gap");
    for (int p : p_list) {
        const Rational limit = constant(BoundMethod::taylor_like_asymptotic(), p);
        for (int n : n_list) {
            const Rational c = constant(BoundMethod::taylor_like(n), p);
            const double gap = asymptotic_gap(p, n);
            csv << p << ',' << n << ',' << numerator(c) << ',' << denominator(c) << ','
                << numerator(limit) << ',' << denominator(limit) << ',' << sci(gap)
                << '\n';
            std::printf("%3d %8d  %-24.17g %-16.17g %.6e\n", p, n, to_double(c),
                        to_double(limit), gap);
        }
    }
    emit(csv.str(), output);
    return 0;
}

int run_fem(const std::string& problem_name, const std::vector<int>& p_list,
            const std::vector<int>& cells_list, const std::string& method_name,
            const std::vector<int>& n_list, double cea_value, const QuadratureSpec& quad,
            const std::string& output) {
    const BvpProblem problem = manufactured_problem(problem_name);
    const std::vector<BoundMethod> methods = expand_methods({method_name}, n_list);
    std::ostringstream csv;
    csv << "problem,num_cells,h,p,method,fem_error,interp_error,bound,cea,ok\n";
    std::printf("%-8s %6s %3s %-12s  %14s %14s %14s  %s\n", "problem", "cells", "p",
                "method", "fem_error", "interp_error", "bound", "ok");
    const CeaConstant cea(cea_value);
    int failures = 0;
    for (int p : p_list) {
        double prev_fem = 0.0;
        for (int cells : cells_list) {
            const Mesh1D m = uniform_mesh(static_cast<std::size_t>(cells));
            for (const BoundMethod& method : methods) {
                const CeaChainReport r = cea_chain(problem, m, p, cea, method, quad);
                if (!r.ok)
                    ++failures;
                csv << r.problem << ',' << r.num_cells << ',' << sci(r.h) << ',' << p
                    << ',' << method.label() << ',' << sci(r.fem_err) << ','
                    << sci(r.interp_err) << ',' << sci(r.interp_bound) << ','
                    << sci(r.cea) << ',' << (r.ok ? "true" : "false") << '\n';
                std::printf("%-8s %6d %3d %-12s  %14.6e %14.6e %14.6e  %s\n",
                            r.problem.c_str(), r.num_cells, p, method.label().c_str(),
                            r.fem_err, r.interp_err, r.interp_bound, r.ok ? "ok" : "FAIL");
                if (!r.ok)
                    std::fprintf(stderr,
                                 "violation: %s cells=%d p=%d fem=%.12e interp=%.12e "
                                 "bound=%.12e\n",
                                 r.problem.c_str(), cells, p, r.fem_err, r.interp_err,
                                 r.interp_bound);
            }
            const double fem =
                fem_error(problem, solve(problem, m, quad), p, quad);
            if (prev_fem > 0.0)
                std::printf("  W^{1,%d} rate %d -> %d cells: %.3f\n", p, cells / 2, cells,
                            std::log2(prev_fem / fem));
            prev_fem = fem;
        }
    }
    emit(csv.str(), output);
    return failures == 0 ? 0 : 1;
}

int run_savings(const std::string& problem_name, const std::vector<int>& p_list, int dim,
                double target, double cea_value, const QuadratureSpec& quad,
                const std::string& output) {
    const BvpProblem problem = manufactured_problem(problem_name);
    std::ostringstream csv;
    csv << "p,dim,target,cea,taylor_cells,taylor_like_cells,h_ratio,node_factor,"
           "h_ratio_theory,node_factor_theory,taylor_measured,taylor_bound,"
           "taylor_like_measured,taylor_like_bound,ok\n";
    int failures = 0;
    for (int p : p_list) {
        const SavingsReport r =
            savings_experiment(problem, p, target, dim, quad, CeaConstant(cea_value));
        if (!r.ok)
            ++failures;
        if (r.saturated) {
            std::printf("p=%d: target %.3e unreachable within 2^14 cells\n", p, target);
            std::fprintf(stderr, "violation: p=%d target unreachable (saturated)\n", p);
        } else {
            std::printf(
                "p=%d dim=%d target=%.3e (constants treat (1+h^p/p)^{1/p} as 1)\n"
                "  theory:    h_ratio=%.4f node_factor=%.4f\n"
                "  empirical: h_ratio=%.4f node_factor=%.4f"
                " (taylor %d cells vs taylor-like %d cells)\n"
                "  measured errors: taylor %.6e (bound %.6e), taylor-like %.6e (bound %.6e)\n",
                p, dim, target, r.theory.h_ratio, r.theory.node_factor, r.h_ratio,
                r.node_factor, r.taylor_cells, r.taylor_like_cells, r.taylor_measured,
                r.taylor_bound, r.taylor_like_measured, r.taylor_like_bound);
        }
        csv << p << ',' << dim << ',' << sci(target) << ',' << sci(cea_value) << ','
            << r.taylor_cells << ',' << r.taylor_like_cells << ',' << sci(r.h_ratio)
            << ',' << sci(r.node_factor) << ',' << sci(r.theory.h_ratio) << ','
            << sci(r.theory.node_factor) << ',' << sci(r.taylor_measured) << ','
            << sci(r.taylor_bound) << ',' << sci(r.taylor_like_measured) << ','
            << sci(r.taylor_like_bound) << ',' << (r.ok ? "true" : "false") << '\n';
    }
    emit(csv.str(), output);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"P1 interpolation and finite-element error-bound laboratory on [0,1]"};
    app.require_subcommand(1);
    std::string config_path; // consumed by merge_config_args; registered for --help
    auto accept_config = [&config_path](CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "Plain key=value config file; flags take precedence");
    };

    std::vector<int> p_list = {2, 3, 5};
    std::vector<int> n_list = {1, 2, 4, 8};
    std::vector<int> cells_list = {4, 8, 16, 32, 64, 128};
    std::vector<std::string> functions(preset_names().begin(), preset_names().end());
    std::vector<std::string> methods = {"taylor", "mean-value", "taylor-like",
                                        "asymptotic"};
    std::string function = "cubic";
    std::string problem = "sin_pi";
    std::string fem_method = "taylor";
    std::string output;
    double x0 = 0.0, h = 1.0;
    double cea = 1.0;
    double target = 0.01;
    int dim = 3;
    MeshConfig mesh;
    QuadratureSpec quad;

    CLI::App* constants = app.add_subcommand(
        "constants", "Exact constants of the three estimate families");
    constants->add_option("--p", p_list, "Norm orders (integers >= 2)")
        ->capture_default_str();
    std::vector<int> constants_n;
    constants->add_option("--n", constants_n, "Also list finite-n constants for these n");
    constants->add_option("-o,--output", output, "CSV output path");

    CLI::App* expansion = app.add_subcommand(
        "expansion", "Remainder vs guaranteed bound for one expansion cell");
    expansion->add_option("--function", function, "Preset function")
        ->capture_default_str();
    expansion->add_option("--x0", x0, "Cell left endpoint")->capture_default_str();
    expansion->add_option("--width", h, "Cell width")->capture_default_str();
    expansion->add_option("--n", n_list, "Subdivision counts")->capture_default_str();
    expansion->add_option("-o,--output", output, "CSV output path");

    CLI::App* interp = app.add_subcommand(
        "interp", "Measured W^{1,p} interpolation error vs guaranteed bound");
    interp->add_option("--function", functions, "Preset functions")
        ->capture_default_str();
    interp->add_option("--cells", cells_list, "Mesh sizes (number of cells)")
        ->capture_default_str();
    interp->add_option("--p", p_list, "Norm orders")->capture_default_str();
    interp->add_option("--n", n_list, "Subdivision counts for taylor-like")
        ->capture_default_str();
    interp->add_option("--method", methods, "Bound methods")->capture_default_str();
    add_mesh_flags(interp, mesh);
    add_quad_flags(interp, quad);
    interp->add_option("-o,--output", output, "CSV output path");

    CLI::App* asymptotic = app.add_subcommand(
        "asymptotic", "Finite-n constants against their n -> infinity limit");
    std::vector<int> gap_p = {2, 3, 5, 8};
    std::vector<int> gap_n = {2, 10, 100, 1000, 10000, 100000};
    asymptotic->add_option("--p", gap_p, "Norm orders")->capture_default_str();
    asymptotic->add_option("--n", gap_n, "Subdivision counts")->capture_default_str();
    asymptotic->add_option("-o,--output", output, "CSV output path");

    CLI::App* fem = app.add_subcommand(
        "fem", "P1 Galerkin solve, Cea chain and convergence table");
    fem->add_option("--problem", problem, "Manufactured problem")
        ->check(CLI::IsMember({"sin_pi", "poly"}))
        ->capture_default_str();
    std::vector<int> fem_p = {2};
    std::vector<int> fem_cells = {8, 16, 32, 64};
    fem->add_option("--p", fem_p, "Norm orders")->capture_default_str();
    fem->add_option("--cells", fem_cells, "Mesh sizes")->capture_default_str();
    fem->add_option("--method", fem_method, "Bound method for the chain")
        ->capture_default_str();
    fem->add_option("--n", n_list, "Subdivision counts for taylor-like")
        ->capture_default_str();
    fem->add_option("--cea", cea, "Cea constant (>= 1; 1 is exact for p = 2)")
        ->capture_default_str();
    add_quad_flags(fem, quad);
    fem->add_option("-o,--output", output, "CSV output path");

    CLI::App* savings = app.add_subcommand(
        "savings", "Theoretical and bound-driven empirical mesh-cost savings");
    std::vector<int> savings_p = {2, 5};
    savings->add_option("--p", savings_p, "Norm orders")->capture_default_str();
    savings->add_option("--dim", dim, "Spatial dimension for the node factor")
        ->capture_default_str();
    savings->add_option("--target", target, "Accuracy target for the bounds")
        ->capture_default_str();
    savings->add_option("--problem", problem, "Manufactured problem")
        ->check(CLI::IsMember({"sin_pi", "poly"}))
        ->capture_default_str();
    savings->add_option("--cea", cea, "Cea constant")->capture_default_str();
    add_quad_flags(savings, quad);
    savings->add_option("-o,--output", output, "CSV output path");

    for (CLI::App* cmd : {constants, expansion, interp, asymptotic, fem, savings})
        accept_config(cmd);

    try {
        // CLI11 takes the argument vector reversed and without the program name
        std::vector<std::string> merged = merge_config_args(argc, argv);
        std::vector<std::string> reversed(merged.rbegin(), merged.rend());
        reversed.pop_back();
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (constants->parsed())
            return run_constants(p_list, constants_n, output);
        if (expansion->parsed())
            return run_expansion(function, x0, h, n_list, output);
        if (interp->parsed())
            return run_interp(functions, p_list, n_list, cells_list, methods, mesh, quad,
                              output);
        if (asymptotic->parsed())
            return run_asymptotic(gap_p, gap_n, output);
        if (fem->parsed())
            return run_fem(problem, fem_p, fem_cells, fem_method, n_list, cea, quad,
                           output);
        if (savings->parsed())
            return run_savings(problem, savings_p, dim, target, cea, quad, output);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
