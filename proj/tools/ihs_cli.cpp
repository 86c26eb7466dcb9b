// Command-line driver: adaptive sketch-size ridge solves, regularization
// paths, solver comparisons, and eigenvalue-concentration experiments.

#include <ihs/ihs.hpp>
#include <ihs/serialize.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ihs;

struct DataOpts {
    std::string csv;
    std::string libsvm;
    std::string synthetic; // "exp" or "poly"
    Index n = 1024;
    Index d = 128;
    std::uint64_t data_seed = 0;
};

void add_data_options(CLI::App* cmd, DataOpts& o) {
    auto* csv = cmd->add_option("--csv", o.csv, "CSV dataset (last column is b)");
    auto* svm = cmd->add_option("--libsvm", o.libsvm, "libsvm/svmlight dataset");
    auto* syn = cmd->add_option("--synthetic", o.synthetic, "synthetic spectrum: exp or poly")
                    ->check(CLI::IsMember({"exp", "poly"}));
    csv->excludes(svm)->excludes(syn);
    svm->excludes(syn);
    cmd->add_option("--n", o.n, "synthetic rows");
    cmd->add_option("--d", o.d, "synthetic columns");
    cmd->add_option("--data-seed", o.data_seed, "synthetic dataset seed");
}

Dataset load_data(const DataOpts& o) {
    if (!o.csv.empty()) return load_csv(o.csv);
    if (!o.libsvm.empty()) return load_libsvm(o.libsvm);
    if (!o.synthetic.empty())
        return generate_synthetic(o.synthetic == "exp" ? SyntheticKind::Exp : SyntheticKind::Poly,
                                  o.n, o.d, o.data_seed);
    throw InvalidInput("no dataset given: use --csv, --libsvm or --synthetic");
}

struct SolverOpts {
    std::string sketch = "gaussian";
    double rho = 0.1;
    double eta = 0.01;
    double eps = 1e-10;
    std::uint64_t seed = 0;
    Index m_initial = 1;
    std::string mode = "polyak";
    Index max_iters = 2000;
    bool force = false; ///< permit (rho, eta) outside the proven region
};

void add_solver_options(CLI::App* cmd, SolverOpts& o) {
    cmd->add_option("--sketch", o.sketch, "embedding: gaussian or srht")
        ->check(CLI::IsMember({"gaussian", "srht"}));
    cmd->add_option("--rho", o.rho, "target aspect ratio");
    cmd->add_option("--eta", o.eta, "Gaussian tail parameter");
    cmd->add_option("--eps", o.eps, "relative decrement target");
    cmd->add_option("--seed", o.seed, "solver seed");
    cmd->add_option("--m-initial", o.m_initial, "initial sketch size");
    cmd->add_option("--mode", o.mode, "polyak or gradient-only")
        ->check(CLI::IsMember({"polyak", "gradient-only"}));
    cmd->add_option("--max-iters", o.max_iters, "iteration cap");
    cmd->add_flag("--force-params", o.force,
                  "accept (rho, eta) outside the proven validity region");
}

SketchKind sketch_kind(const std::string& s) {
    return s == "srht" ? SketchKind::SRHT : SketchKind::Gaussian;
}

SolverConfig to_config(const SolverOpts& o) {
    SolverConfig cfg;
    cfg.sketch_kind = sketch_kind(o.sketch);
    cfg.rho = o.rho;
    cfg.eta = o.eta;
    cfg.eps = o.eps;
    cfg.seed = o.seed;
    cfg.m_initial = o.m_initial;
    cfg.mode = o.mode == "polyak" ? SolveMode::PolyakThenGradient : SolveMode::GradientOnly;
    cfg.max_iters = o.max_iters;
    cfg.enforce_validity = !o.force;
    return cfg;
}

void write_out(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open output file '" + path + "'");
    out << content;
}

std::vector<double> parse_nus(const std::string& list, const Dataset& ds) {
    std::vector<double> nus;
    if (list.empty()) {
        // defaults mirroring the benchmark protocol: 10^4..10^-2 for real
        // data, 10^0..10^-4 for synthetic spectra
        const bool synthetic = ds.source == DatasetSource::SyntheticExp ||
                               ds.source == DatasetSource::SyntheticPoly;
        const int hi = synthetic ? 0 : 4;
        const int lo = synthetic ? -4 : -2;
        for (int j = hi; j >= lo; --j) nus.push_back(std::pow(10.0, j));
        return nus;
    }
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) nus.push_back(std::stod(tok));
    return nus;
}

int cmd_solve(const DataOpts& dopt, const SolverOpts& sopt, double nu, const std::string& out,
              bool oracle) {
    Dataset ds = load_data(dopt);
    ProblemInstance p = ProblemInstance::make(ds.A, ds.b, nu);
    SolverConfig cfg = to_config(sopt);
    SolveReport rep = p.orientation() == Orientation::Overdetermined
                          ? adaptive_solve(p, cfg)
                          : solve_underdetermined(p, cfg);

    json j = to_json(rep);
    j["nu"] = nu;
    j["dataset"] = ds.provenance;
    if (oracle) {
        Vector x_star = p.orientation() == Orientation::Overdetermined
                            ? direct_solve(p)
                            : Vector(ds.A.transpose() *
                                     Matrix(ds.A * ds.A.transpose() +
                                            nu * nu * Matrix::Identity(p.rows(), p.rows()))
                                         .ldlt()
                                         .solve(ds.b));
        j["delta"] = 0.5 * (ds.A * (rep.x - x_star)).squaredNorm() +
                     0.5 * nu * nu * (rep.x - x_star).squaredNorm();
        j["rel_error"] = (rep.x - x_star).norm() / (1.0 + x_star.norm());
    }
    if (!out.empty()) write_out(out, j.dump(2) + "\n");

    std::cout << "solver: " << (cfg.mode == SolveMode::PolyakThenGradient ? "adaptive" : "adaptive-gd")
              << " (" << sopt.sketch << ")\n"
              << "converged: " << (rep.converged ? "yes" : "no") << "\n"
              << "iterations: " << rep.iterations << "  rejected: " << rep.rejections
              << "  final m: " << rep.final_m << "\n"
              << "r_final/r_1: " << (rep.r1 > 0 ? rep.r_final / rep.r1 : 0.0) << "\n"
              << "wall seconds: " << rep.wall_seconds << "\n";
    if (oracle) std::cout << "delta (oracle): " << j["delta"].get<double>() << "\n";
    return rep.converged ? 0 : 1;
}

int cmd_path(const DataOpts& dopt, const SolverOpts& sopt, const std::string& nus_list,
             const std::string& solver, const std::string& out, bool oracle) {
    Dataset ds = load_data(dopt);
    std::vector<double> nus = parse_nus(nus_list, ds);

    SolverSpec spec;
    spec.id = solver == "cg"            ? SolverId::CG
              : solver == "pcg"         ? SolverId::PCG
              : solver == "adaptive-gd" ? SolverId::AdaptiveGradient
                                        : SolverId::AdaptivePolyak;
    spec.sketch = sketch_kind(sopt.sketch);
    spec.rho = sopt.rho;
    spec.eta = sopt.eta;
    spec.m_initial = sopt.m_initial;
    spec.max_iters = sopt.max_iters;
    spec.enforce_validity = !sopt.force;

    PathResult pr = run_path(ds, nus, spec, sopt.eps, sopt.seed, oracle);
    json j = to_json(pr);
    j["dataset"] = ds.provenance;
    if (!out.empty()) write_out(out, j.dump(2) + "\n");

    bool all_ok = true;
    std::cout << "nu          iters  final_m  cum_seconds  converged\n";
    for (std::size_t k = 0; k < pr.entries.size(); ++k) {
        const RunSummary& e = pr.entries[k];
        std::printf("%-11.3g %-6lld %-8lld %-12.4f %s\n", e.nu,
                    static_cast<long long>(e.iterations), static_cast<long long>(e.final_m),
                    pr.cumulative_seconds[k], e.ok ? (e.converged ? "yes" : "NO") : e.error.c_str());
        all_ok = all_ok && e.ok && e.converged;
    }
    return all_ok ? 0 : 1;
}

int cmd_compare(const DataOpts& dopt, const SolverOpts& sopt, const std::string& nus_list,
                const std::string& solvers, int repeats, const std::string& out, bool oracle) {
    Dataset ds = load_data(dopt);
    std::vector<double> nus = parse_nus(nus_list, ds);

    std::vector<SolverSpec> specs;
    std::stringstream ss(solvers);
    std::string name;
    while (std::getline(ss, name, ',')) {
        SolverSpec spec;
        if (name == "cg") spec.id = SolverId::CG;
        else if (name == "pcg") spec.id = SolverId::PCG;
        else if (name == "adaptive-gd") spec.id = SolverId::AdaptiveGradient;
        else if (name == "adaptive") spec.id = SolverId::AdaptivePolyak;
        else throw InvalidInput("unknown solver '" + name + "'");
        spec.sketch = sketch_kind(sopt.sketch);
        spec.rho = sopt.rho;
        spec.eta = sopt.eta;
        spec.m_initial = sopt.m_initial;
        spec.max_iters = sopt.max_iters;
        spec.enforce_validity = !sopt.force;
        specs.push_back(spec);
    }
    if (specs.empty()) throw InvalidInput("no solvers given");

    ComparisonReport rep = compare_solvers(ds, nus, specs, sopt.eps, repeats, sopt.seed, oracle);
    if (!out.empty()) {
        if (out.size() > 4 && out.substr(out.size() - 4) == ".csv") {
            std::ostringstream os;
            write_plot_csv(os, rep);
            write_out(out, os.str());
        } else {
            write_out(out, to_json(rep).dump(2) + "\n");
        }
    }

    bool all_ok = true;
    std::cout << "solver       mean_s     std_s      mean_iters  mean_m   converged\n";
    for (const auto& a : rep.aggregates) {
        std::printf("%-12s %-10.4f %-10.4f %-11.1f %-8.1f %s\n", a.label.c_str(), a.mean_seconds,
                    a.std_seconds, a.mean_iterations, a.mean_final_m,
                    a.all_converged ? "yes" : "NO");
        all_ok = all_ok && a.all_converged;
    }
    return all_ok ? 0 : 1;
}

int cmd_concentration(const SolverOpts& sopt, const std::string& spectrum, Index n, Index d,
                      double nu, int trials, Index m_override, const std::string& out) {
    TrialConfig cfg;
    cfg.spectrum = spectrum == "flat"  ? SpectrumSpec::Flat
                   : spectrum == "poly" ? SpectrumSpec::Poly
                                        : SpectrumSpec::Exp;
    cfg.n = n;
    cfg.d = d;
    cfg.nu = nu;
    cfg.kind = sketch_kind(sopt.sketch);
    cfg.rho = sopt.rho;
    cfg.eta = sopt.eta;
    cfg.trials = trials;
    cfg.base_seed = sopt.seed;
    cfg.enforce_validity = !sopt.force;
    if (m_override > 0) cfg.m_override = m_override;

    ConcentrationReport rep = cfg.kind == SketchKind::Gaussian ? run_gaussian_trials(cfg)
                                                               : run_srht_trials(cfg);
    json j = to_json(rep);
    if (!out.empty()) write_out(out, j.dump(2) + "\n");

    std::cout << "kind: " << to_string(rep.kind) << "  m: " << rep.m << "  d_e: " << rep.d_e
              << "\n"
              << "bounds: [" << rep.bound_lower << ", " << rep.bound_upper << "]\n"
              << "violations: " << rep.violation_frequency << "  allowed: " << rep.fail_prob
              << " + " << rep.margin << "\n"
              << "verdict: " << rep.verdict() << "\n";
    return 0;
}

int cmd_synth(const DataOpts& dopt, const std::string& out) {
    if (dopt.synthetic.empty()) throw InvalidInput("synth requires --synthetic {exp,poly}");
    Dataset ds = load_data(dopt);
    std::ostringstream os;
    os.precision(17);
    for (Index i = 0; i < ds.n(); ++i) {
        for (Index j = 0; j < ds.d(); ++j) os << ds.A(i, j) << ',';
        os << ds.b(i) << '\n';
    }
    if (out.empty()) std::cout << os.str();
    else write_out(out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive sketch-size solver for L2-regularized least squares"};
    app.require_subcommand(1);

    DataOpts dopt;
    SolverOpts sopt;
    double nu = 1.0;
    std::string out, nus_list, solver = "adaptive", solvers = "adaptive,adaptive-gd,cg,pcg";
    std::string spectrum = "exp";
    int repeats = 5, trials = 200;
    Index m_override = 0;
    bool oracle = false;

    auto* solve = app.add_subcommand("solve", "solve one instance adaptively");
    add_data_options(solve, dopt);
    add_solver_options(solve, sopt);
    solve->add_option("--nu", nu, "regularization scale")->required();
    solve->add_option("--out", out, "write a JSON report");
    solve->add_flag("--oracle", oracle, "also report the SVD-oracle prediction error");

    auto* path = app.add_subcommand("path", "solve a decreasing regularization path with warm starts");
    add_data_options(path, dopt);
    add_solver_options(path, sopt);
    path->add_option("--nus", nus_list, "comma-separated decreasing nu values");
    path->add_option("--solver", solver, "adaptive, adaptive-gd, cg or pcg")
        ->check(CLI::IsMember({"adaptive", "adaptive-gd", "cg", "pcg"}));
    path->add_option("--out", out, "write a JSON report");
    path->add_flag("--oracle", oracle, "record prediction errors against direct solves");

    auto* compare = app.add_subcommand("compare", "run several solvers over the same path");
    add_data_options(compare, dopt);
    add_solver_options(compare, sopt);
    compare->add_option("--nus", nus_list, "comma-separated decreasing nu values");
    compare->add_option("--solvers", solvers, "comma-separated solver list");
    compare->add_option("--repeats", repeats, "independent trials per solver");
    compare->add_option("--out", out, "plot-data CSV (.csv) or JSON report");
    compare->add_flag("--oracle", oracle, "record prediction errors against direct solves");

    auto* conc = app.add_subcommand("concentration", "Monte Carlo eigenvalue concentration checks");
    add_solver_options(conc, sopt);
    conc->add_option("--spectrum", spectrum, "flat, exp or poly")
        ->check(CLI::IsMember({"flat", "exp", "poly"}));
    conc->add_option("--n", dopt.n, "rows");
    conc->add_option("--d", dopt.d, "columns");
    conc->add_option("--nu", nu, "regularization scale");
    conc->add_option("--trials", trials, "Monte Carlo trials");
    conc->add_option("--m", m_override, "override the prescribed sketch size");
    conc->add_option("--out", out, "write a JSON report");

    auto* synth = app.add_subcommand("synth", "emit a synthetic dataset as CSV");
    add_data_options(synth, dopt);
    synth->add_option("--out", out, "output CSV path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(dopt, sopt, nu, out, oracle);
        if (path->parsed()) return cmd_path(dopt, sopt, nus_list, solver, out, oracle);
        if (compare->parsed())
            return cmd_compare(dopt, sopt, nus_list, solvers, repeats, out, oracle);
        if (conc->parsed())
            return cmd_concentration(sopt, spectrum, dopt.n, dopt.d, nu, trials, m_override, out);
        if (synth->parsed()) return cmd_synth(dopt, out);
    } catch (const ihs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
