#include "cli.hpp"

#include "npadi/adi.hpp"
#include "npadi/bvp.hpp"
#include "npadi/charge_source.hpp"
#include "npadi/errors.hpp"
#include "npadi/mms.hpp"
#include "npadi/parallel.hpp"
#include "npadi/solvation.hpp"
#include "npadi/workflow.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace npadi::cli {

using nlohmann::json;

namespace {

// Bad flag values detected after CLI11 has parsed the command line.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::string fmt_fixed(double v, int digits = 4) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double parse_plain_number(const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + token + "'");
    }
    if (used != token.size()) throw std::invalid_argument("not a number: '" + token + "'");
    return v;
}

// ---- shared option groups -------------------------------------------------

struct PhysicalOptions {
    double h = 0.25;
    double padding = 8.0;
    double temperature = 298.15;
    std::string kind = "rational";
    double eps_m = 1.0;
    double eps_s = 80.0;
    double alpha = 40.0;
    int p = 1;
    double grad_scale = 0.0;
    CLI::Option* grad_scale_opt = nullptr;
};

void add_physical_options(CLI::App* app, PhysicalOptions& o) {
    app->add_option("--h", o.h, "Grid spacing (A)")->capture_default_str();
    app->add_option("--padding", o.padding, "Box padding around atom centres (A)")
        ->capture_default_str();
    app->add_option("--temperature", o.temperature, "Temperature (K)")->capture_default_str();
    app->add_option("--kind", o.kind, "Dielectric model")
        ->check(CLI::IsMember({"rational", "exponential", "simplified"}))
        ->capture_default_str();
    app->add_option("--eps-m", o.eps_m, "Solute permittivity")->capture_default_str();
    app->add_option("--eps-s", o.eps_s, "Solvent permittivity")->capture_default_str();
    app->add_option("--alpha", o.alpha, "Hyperpolarizability scale")->capture_default_str();
    app->add_option("--p", o.p, "Exponent of the rational model")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    o.grad_scale_opt = app->add_option("--grad-scale", o.grad_scale,
                                       "Divisor of |grad phi|^2 (default: twice the Bjerrum length)");
}

ProblemConfig to_problem_config(const PhysicalOptions& o) {
    ProblemConfig c;
    c.h = o.h;
    c.padding = o.padding;
    c.temperature = o.temperature;
    c.kind = parse_dielectric_kind(o.kind);
    c.eps_m = o.eps_m;
    c.eps_s = o.eps_s;
    c.alpha = o.alpha;
    c.p = o.p;
    if (o.grad_scale_opt && o.grad_scale_opt->count() > 0) c.grad_scale = o.grad_scale;
    return c;
}

json physical_json(const SolvationProblem& prob, const ProblemConfig& c) {
    return json{{"h", c.h},
                {"padding", c.padding},
                {"grid_dims", {prob.grid.nx(), prob.grid.ny(), prob.grid.nz()}},
                {"grid_origin", {prob.grid.origin()[0], prob.grid.origin()[1], prob.grid.origin()[2]}},
                {"model",
                 {{"kind", std::string(to_string(prob.model.kind))},
                  {"eps_m", prob.model.eps_m},
                  {"eps_s", prob.model.eps_s},
                  {"alpha", prob.model.alpha},
                  {"p", prob.model.p},
                  {"grad_scale", prob.model.grad_scale}}},
                {"constants",
                 {{"temperature", prob.constants.temperature},
                  {"coulomb_prefactor", prob.constants.coulomb_prefactor},
                  {"four_pi_prefactor", prob.constants.four_pi_prefactor},
                  {"kBT_kcal", prob.constants.kBT_kcal}}}};
}

struct AdiOptions {
    double dt = 0.1;
    double t_final = 5.0;
    double tol = 0.01;
    std::string scheme = "eps1";
    int monitor_every = 1;
    CLI::Option* dt_opt = nullptr;
    CLI::Option* t_final_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
};

void add_adi_options(CLI::App* app, AdiOptions& o) {
    o.dt_opt = app->add_option("--dt", o.dt, "Pseudo-time step")->capture_default_str();
    o.t_final_opt =
        app->add_option("--t-final", o.t_final, "Pseudo-time limit")->capture_default_str();
    o.tol_opt = app->add_option("--tol", o.tol, "Energy change (kcal/mol) that ends the run")
                    ->capture_default_str();
    app->add_option("--scheme", o.scheme, "Half-node permittivity scheme")
        ->check(CLI::IsMember({"eps1", "eps2"}))
        ->capture_default_str();
    app->add_option("--monitor-every", o.monitor_every, "Steps between energy checks")
        ->capture_default_str();
}

SolverConfig to_solver_config(const AdiOptions& o) {
    SolverConfig c;
    c.dt = o.dt;
    c.t_final = o.t_final;
    c.energy_tol = o.tol;
    c.scheme = parse_scheme(o.scheme);
    c.monitor_every = o.monitor_every;
    c.validate();
    return c;
}

json adi_json(const SolverConfig& c) {
    return json{{"dt", c.dt},
                {"t_final", *c.t_final},
                {"energy_tol", c.energy_tol},
                {"scheme", std::string(to_string(c.scheme))},
                {"monitor_every", c.monitor_every}};
}

struct BvpOptions {
    double tol = 0.01;
    int max_outer = 100;
    double inner_tol = 1e-9;
    int inner_max = 20000;
};

void add_bvp_options(CLI::App* app, BvpOptions& o) {
    app->add_option("--bvp-tol", o.tol, "Energy change (kcal/mol) that ends the alternating iteration")
        ->capture_default_str();
    app->add_option("--bvp-max-iters", o.max_outer, "Outer iteration limit")->capture_default_str();
    app->add_option("--inner-tol", o.inner_tol, "Relative residual of each linear solve")
        ->capture_default_str();
    app->add_option("--inner-max-iters", o.inner_max, "Iteration limit of each linear solve")
        ->capture_default_str();
}

BvpConfig to_bvp_config(const BvpOptions& o, HalfNodeScheme scheme) {
    BvpConfig c;
    c.energy_tol = o.tol;
    c.max_outer_iters = o.max_outer;
    c.inner_solver_tol = o.inner_tol;
    c.inner_max_iters = o.inner_max;
    c.scheme = scheme;
    c.validate();
    return c;
}

json bvp_json(const BvpConfig& c) {
    return json{{"energy_tol", c.energy_tol},
                {"max_outer_iters", c.max_outer_iters},
                {"inner_solver_tol", c.inner_solver_tol},
                {"inner_max_iters", c.inner_max_iters},
                {"scheme", std::string(to_string(c.scheme))}};
}

json report_json(const EnergyReport& r) {
    return json{{"G_p", r.G_p},       {"G_0", r.G_0},   {"dG_p", r.dG_p},
                {"area", r.area},     {"volume", r.volume}, {"G_np", r.G_np},
                {"dG_total", r.dG_total}, {"dispersion_included", r.dispersion_included}};
}

// Attaches the canonical config and its hash to a report document.
json with_provenance(const json& config, json body) {
    body["config"] = config;
    body["config_hash"] = fnv1a_hex(config.dump());
    return body;
}

std::string csv_header(const json& config) {
    return "# config_hash=" + fnv1a_hex(config.dump()) + "\n# config=" + config.dump() + "\n";
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file '" + path + "'");
    f << text;
    if (!f) throw IoError("failed writing output file '" + path + "'");
}

ChargeSystem load_system(const std::string& path) {
    if (!std::filesystem::exists(path)) throw IoError("PQR file '" + path + "' does not exist");
    return load_pqr(path);
}

// ---- mms-convergence ------------------------------------------------------

struct MmsOptions {
    std::string study;
    std::string scheme = "both";
    std::string h_list = "pi/4,pi/8,pi/16,pi/32";
    double dt = 0.001;
    std::string h = "pi/48";
    std::string dt_list = "0.8,0.4,0.2,0.1,0.05";
    double t_final = 10.0;
    double alpha = 0.1;
    double gamma = 0.1;
    std::string output;
};

std::vector<HalfNodeScheme> schemes_for(const std::string& name) {
    if (name == "both") return {HalfNodeScheme::EpsI, HalfNodeScheme::EpsII};
    return {parse_scheme(name)};
}

std::string order_cell(const std::optional<double>& v) { return v ? fmt_fixed(*v, 2) : ""; }

void slope_lines(std::ostringstream& os, HalfNodeScheme scheme,
                 const std::vector<mms::ConvergenceRow>& rows) {
    std::vector<std::pair<double, double>> linf, l2;
    for (const auto& r : rows) {
        if (r.failed || !(r.errors.linf > 0.0) || !(r.errors.l2 > 0.0)) continue;
        linf.emplace_back(r.step, r.errors.linf);
        l2.emplace_back(r.step, r.errors.l2);
    }
    if (linf.size() < 2) return;
    os << "# " << to_string(scheme) << " linf_slope=" << fmt_fixed(mms::fit_order(linf))
       << " l2_slope=" << fmt_fixed(mms::fit_order(l2)) << "\n";
}

int cmd_mms(const MmsOptions& o, std::ostream& out, std::ostream& err) {
    mms::BenchmarkSpec spec;
    spec.t_final = o.t_final;
    spec.alpha = o.alpha;
    spec.gamma = o.gamma;
    const auto schemes = schemes_for(o.scheme);
    const bool space = o.study == "space";

    std::vector<double> steps;
    double fixed = 0.0;
    try {
        steps = parse_number_list(space ? o.h_list : o.dt_list);
        fixed = space ? o.dt : parse_number_list(o.h).at(0);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (steps.empty()) throw UsageError("empty step list");

    json config{{"subcommand", "mms-convergence"},
                {"study", o.study},
                {"schemes", o.scheme},
                {"steps", steps},
                {space ? "dt" : "h", fixed},
                {"t_final", spec.t_final},
                {"alpha", spec.alpha},
                {"gamma", spec.gamma},
                {"eps_m", spec.eps_m},
                {"eps_s", spec.eps_s}};

    std::vector<std::vector<mms::ConvergenceRow>> tables;
    for (HalfNodeScheme s : schemes) {
        try {
            tables.push_back(space ? mms::run_spatial_study(spec, s, fixed, steps)
                                   : mms::run_temporal_study(spec, s, fixed, steps).rows);
        } catch (const ArgumentError& e) {
            throw UsageError(e.what());
        }
    }

    std::ostringstream os;
    os << csv_header(config);
    os << (space ? "h" : "dt");
    for (HalfNodeScheme s : schemes) {
        const std::string p(to_string(s));
        os << "," << p << "_linf," << p << "_linf_order," << p << "_l2," << p << "_l2_order";
    }
    os << "\n";
    bool any_failed = false;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << fmt_sci(steps[i]);
        for (const auto& rows : tables) {
            const auto& r = rows[i];
            if (r.failed) {
                any_failed = true;
                os << ",nan,,nan,";
                err << "row " << fmt_sci(r.step) << ": " << r.failure << "\n";
                continue;
            }
            os << "," << fmt_sci(r.errors.linf) << "," << order_cell(r.linf_order) << ","
               << fmt_sci(r.errors.l2) << "," << order_cell(r.l2_order);
        }
        os << "\n";
    }
    for (std::size_t k = 0; k < schemes.size(); ++k) slope_lines(os, schemes[k], tables[k]);
    emit(os.str(), o.output, out);
    return any_failed ? kNumerical : kOk;
}

// ---- born -----------------------------------------------------------------

struct BornOptions {
    PhysicalOptions phys;
    AdiOptions adi;
    BvpOptions bvp;
    std::string alpha_sweep;
    bool both_solvers = false;
    bool timing = false;
    std::string trace;
    std::string output;
};

std::string trace_csv(const json& config, const SteadyStateResult& r) {
    std::ostringstream os;
    os << csv_header(config) << "step,time,dG_p,max_abs_phi\n";
    for (const auto& tp : r.trace)
        os << tp.step << "," << fmt_fixed(tp.time, 6) << "," << fmt_sci(tp.energy) << ","
           << fmt_sci(tp.max_abs_phi) << "\n";
    return os.str();
}

int cmd_born(BornOptions& o, std::ostream& out, std::ostream& err) {
    const SolverConfig adi = to_solver_config(o.adi);
    const BvpConfig bvp = to_bvp_config(o.bvp, adi.scheme);

    std::vector<double> alphas;
    const bool sweep = !o.alpha_sweep.empty();
    if (sweep) {
        try {
            alphas = parse_number_list(o.alpha_sweep);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    } else {
        alphas = {o.phys.alpha};
    }

    ProblemConfig pc = to_problem_config(o.phys);
    SolvationProblem base = make_problem(unit_atom(), pc);
    const ScalarField phi_vac = solve_vacuum(base);

    json config{{"subcommand", "born"},
                {"physical", physical_json(base, pc)},
                {"adi", adi_json(adi)},
                {"alphas", alphas},
                {"both_solvers", o.both_solvers}};
    if (o.both_solvers) config["bvp"] = bvp_json(bvp);
    config["physical"]["model"].erase("alpha");

    std::ostringstream table;
    table << csv_header(config) << "alpha,solver,dG_p,area,volume,converged,iterations"
          << (o.timing ? ",wall_time" : "") << "\n";
    json single;
    bool all_converged = true;

    for (double alpha : alphas) {
        pc.alpha = alpha;
        const SolvationProblem prob = make_problem(unit_atom(), pc);
        const AdiRun a = run_adi(prob, phi_vac, adi);
        all_converged = all_converged && a.solve.converged;
        table << fmt_fixed(alpha, 6) << ",adi," << fmt_sci(a.report.dG_p) << ","
              << fmt_sci(a.report.area) << "," << fmt_sci(a.report.volume) << ","
              << (a.solve.converged ? 1 : 0) << "," << a.solve.steps_taken;
        if (o.timing) table << "," << fmt_fixed(a.solve.wall_time, 3);
        table << "\n";
        if (!sweep) {
            single["adi"] = {{"report", report_json(a.report)},
                             {"steps", a.solve.steps_taken},
                             {"converged", a.solve.converged},
                             {"final_energy_delta", a.solve.final_energy_delta}};
            if (o.timing) single["adi"]["wall_time"] = a.solve.wall_time;
            if (!o.trace.empty()) emit(trace_csv(config, a.solve), o.trace, out);
        }
        if (o.both_solvers) {
            const BvpRun b = run_bvp(prob, phi_vac, bvp);
            all_converged = all_converged && b.solve.converged;
            table << fmt_fixed(alpha, 6) << ",bvp," << fmt_sci(b.report.dG_p) << ","
                  << fmt_sci(b.report.area) << "," << fmt_sci(b.report.volume) << ","
                  << (b.solve.converged ? 1 : 0) << "," << b.solve.outer_iterations;
            if (o.timing) table << "," << fmt_fixed(b.solve.wall_time, 3);
            table << "\n";
            if (!sweep) {
                single["bvp"] = {{"report", report_json(b.report)},
                                 {"outer_iterations", b.solve.outer_iterations},
                                 {"inner_iterations", b.solve.inner_iterations},
                                 {"converged", b.solve.converged},
                                 {"final_energy_delta", b.solve.final_energy_delta}};
                if (o.timing) single["bvp"]["wall_time"] = b.solve.wall_time;
            }
        }
    }
    if (!all_converged) err << "warning: at least one solve stopped before meeting its tolerance\n";
    if (sweep)
        emit(table.str(), o.output, out);
    else
        emit(with_provenance(config, single).dump(2) + "\n", o.output, out);
    return kOk;
}

// ---- solvate --------------------------------------------------------------

struct SolvateOptions {
    PhysicalOptions phys;
    AdiOptions adi;
    std::string preset = "compound";
    std::string pqr;
    std::string pqr_dir;
    std::string experimental;
    double gamma = 0.0065;
    double pressure = 0.035;
    double rho_s = 0.0334;
    bool dispersion = false;
    double well_depth = 0.1;
    double solvent_radius = 1.4;
    std::string output;
    CLI::Option* h_opt = nullptr;
};

void apply_preset(SolvateOptions& o) {
    // Compound runs: h 0.25, dt 0.1, T 2. Protein runs: h 0.5, dt 0.15, T 3, 1 kcal/mol.
    const bool protein = o.preset == "protein";
    if (o.h_opt->count() == 0) o.phys.h = protein ? 0.5 : 0.25;
    if (o.adi.dt_opt->count() == 0) o.adi.dt = protein ? 0.15 : 0.1;
    if (o.adi.t_final_opt->count() == 0) o.adi.t_final = protein ? 3.0 : 2.0;
    if (o.adi.tol_opt->count() == 0) o.adi.tol = protein ? 1.0 : 0.01;
}

json solvate_one(const SolvateOptions& o, const std::string& path, const SolverConfig& adi,
                 const ProblemConfig& pc, json& physical) {
    const ChargeSystem system = load_system(path);
    const SolvationProblem prob = make_problem(system, pc);
    NonpolarParams np;
    np.gamma = o.gamma;
    np.pressure = o.pressure;
    np.rho_s = o.rho_s;
    if (o.dispersion) np.att_potential = make_wca_attraction(system, o.well_depth, o.solvent_radius);
    np.validate();
    const ScalarField phi_vac = solve_vacuum(prob);
    const AdiRun run = run_adi(prob, phi_vac, adi, np);
    physical = physical_json(prob, pc);
    return json{{"pqr", path},
                {"atoms", system.atoms.size()},
                {"total_charge", system.total_charge()},
                {"report", report_json(run.report)},
                {"solver",
                 {{"steps", run.solve.steps_taken},
                  {"converged", run.solve.converged},
                  {"final_energy_delta", run.solve.final_energy_delta}}}};
}

std::map<std::string, double> load_experimental(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open experimental data '" + path + "'");
    std::map<std::string, double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(trim(c));
        if (cols.size() < 3) throw IoError(path + ": line " + std::to_string(line_no) + ": expected stem,name,value");
        if (cols[0] == "stem") continue;
        try {
            values[cols[0]] = parse_plain_number(cols[2]);
        } catch (const std::exception&) {
            throw IoError(path + ": line " + std::to_string(line_no) + ": bad value '" + cols[2] + "'");
        }
    }
    return values;
}

int cmd_solvate(SolvateOptions& o, std::ostream& out, std::ostream& err) {
    if (o.pqr.empty() == o.pqr_dir.empty())
        throw UsageError("give exactly one of --pqr and --pqr-dir");
    if (!o.experimental.empty() && o.pqr_dir.empty())
        throw UsageError("--experimental needs --pqr-dir");
    apply_preset(o);
    const SolverConfig adi = to_solver_config(o.adi);
    const ProblemConfig pc = to_problem_config(o.phys);

    json nonpolar{{"gamma", o.gamma}, {"pressure", o.pressure}, {"rho_s", o.rho_s},
                  {"dispersion", o.dispersion}};
    if (o.dispersion) {
        nonpolar["well_depth"] = o.well_depth;
        nonpolar["solvent_radius"] = o.solvent_radius;
    }
    json config{{"subcommand", "solvate"}, {"preset", o.preset}, {"adi", adi_json(adi)},
                {"nonpolar", nonpolar}};

    if (!o.pqr.empty()) {
        json physical;
        json body = solvate_one(o, o.pqr, adi, pc, physical);
        config["physical"] = physical;
        config["pqr"] = o.pqr;
        if (!body["solver"]["converged"].get<bool>())
            err << "warning: pseudo-time limit reached before the energy tolerance\n";
        emit(with_provenance(config, body).dump(2) + "\n", o.output, out);
        return kOk;
    }

    if (!std::filesystem::is_directory(o.pqr_dir))
        throw IoError("'" + o.pqr_dir + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(o.pqr_dir))
        if (e.is_regular_file() && e.path().extension() == ".pqr") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .pqr files in '" + o.pqr_dir + "'");
    const auto experimental =
        o.experimental.empty() ? std::map<std::string, double>{} : load_experimental(o.experimental);

    json molecules = json::array();
    double sq_total = 0.0, abs_total = 0.0;
    int matched = 0;
    json physical;
    for (const auto& f : files) {
        json m = solvate_one(o, f.string(), adi, pc, physical);
        m.erase("pqr");
        m["name"] = f.stem().string();
        m["grid_dims"] = physical["grid_dims"];
        if (auto it = experimental.find(f.stem().string()); it != experimental.end()) {
            const double error = m["report"]["dG_total"].get<double>() - it->second;
            m["experimental"] = it->second;
            m["error"] = error;
            sq_total += error * error;
            abs_total += std::abs(error);
            ++matched;
        }
        molecules.push_back(std::move(m));
    }
    physical.erase("grid_dims");
    physical.erase("grid_origin");
    config["physical"] = physical;
    config["pqr_dir"] = o.pqr_dir;
    if (!o.experimental.empty()) config["experimental"] = o.experimental;

    json body{{"molecules", molecules}, {"compared", matched}};
    if (matched > 0) {
        body["rmse"] = std::sqrt(sq_total / matched);
        body["mean_abs_error"] = abs_total / matched;
    }
    emit(with_provenance(config, body).dump(2) + "\n", o.output, out);
    return kOk;
}

// ---- compare --------------------------------------------------------------

struct CompareOptions {
    PhysicalOptions phys;
    AdiOptions adi;
    BvpOptions bvp;
    std::string pqr;
    std::string solver = "both";
    std::string output;
};

int cmd_compare(CompareOptions& o, std::ostream& out, std::ostream& err) {
    const SolverConfig adi = to_solver_config(o.adi);
    const BvpConfig bvp = to_bvp_config(o.bvp, adi.scheme);
    const ProblemConfig pc = to_problem_config(o.phys);
    const ChargeSystem system = o.pqr.empty() ? unit_atom() : load_system(o.pqr);
    const SolvationProblem prob = make_problem(system, pc);
    const ScalarField phi_vac = solve_vacuum(prob);

    json config{{"subcommand", "compare"},
                {"system", o.pqr.empty() ? std::string("unit-atom") : o.pqr},
                {"physical", physical_json(prob, pc)},
                {"adi", adi_json(adi)},
                {"solver", o.solver}};
    if (o.solver == "both") config["bvp"] = bvp_json(bvp);

    const AdiRun a = run_adi(prob, phi_vac, adi);
    json body{{"adi",
               {{"dG_p", a.report.dG_p},
                {"report", report_json(a.report)},
                {"steps", a.solve.steps_taken},
                {"converged", a.solve.converged},
                {"final_energy_delta", a.solve.final_energy_delta},
                {"wall_time", a.solve.wall_time}}}};
    if (o.solver == "both") {
        const BvpRun b = run_bvp(prob, phi_vac, bvp);
        body["bvp"] = {{"dG_p", b.report.dG_p},
                       {"report", report_json(b.report)},
                       {"outer_iterations", b.solve.outer_iterations},
                       {"inner_iterations", b.solve.inner_iterations},
                       {"converged", b.solve.converged},
                       {"final_energy_delta", b.solve.final_energy_delta},
                       {"wall_time", b.solve.wall_time}};
        body["dG_p_difference"] = a.report.dG_p - b.report.dG_p;
        if (a.solve.wall_time > 0.0) body["speedup"] = b.solve.wall_time / a.solve.wall_time;
        if (!b.solve.converged) err << "warning: BVP iteration limit reached\n";
    }
    if (!a.solve.converged) err << "warning: ADI pseudo-time limit reached before the tolerance\n";
    emit(with_provenance(config, body).dump(2) + "\n", o.output, out);
    return kOk;
}

void configure_threads() {
    const char* env = std::getenv("NPADI_THREADS");
    if (!env || !*env) return;
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(env, &used);
        if (used != std::string(env).size()) n = 0;
    } catch (const std::exception&) {
        n = 0;
    }
    if (n < 1) throw UsageError(std::string("NPADI_THREADS must be a positive integer, got '") + env + "'");
    set_thread_count(n);
}

} // namespace

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> values;
    std::stringstream ss{std::string(text)};
    for (std::string raw; std::getline(ss, raw, ',');) {
        std::string tok = trim(raw);
        if (tok.empty()) throw std::invalid_argument("empty entry in list '" + std::string(text) + "'");
        const auto pi_at = tok.find("pi");
        if (pi_at == std::string::npos) {
            values.push_back(parse_plain_number(tok));
            continue;
        }
        // [c*]pi[/d]
        double coef = 1.0, div = 1.0;
        const std::string head = tok.substr(0, pi_at);
        const std::string tail = tok.substr(pi_at + 2);
        if (!head.empty()) {
            if (head.back() != '*') throw std::invalid_argument("bad entry '" + tok + "'");
            coef = parse_plain_number(head.substr(0, head.size() - 1));
        }
        if (!tail.empty()) {
            if (tail.front() != '/') throw std::invalid_argument("bad entry '" + tok + "'");
            div = parse_plain_number(tail.substr(1));
            if (div == 0.0) throw std::invalid_argument("division by zero in '" + tok + "'");
        }
        values.push_back(coef * std::numbers::pi / div);
    }
    return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonlinear Poisson solvation solver (ADI pseudo-time and alternating BVP)",
                 "npadi"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    MmsOptions mms_o;
    auto* mms_cmd = app.add_subcommand("mms-convergence", "Manufactured-solution convergence study");
    mms_cmd->add_option("--study", mms_o.study, "space or time")
        ->required()
        ->check(CLI::IsMember({"space", "time"}));
    mms_cmd->add_option("--scheme", mms_o.scheme, "eps1, eps2 or both")
        ->check(CLI::IsMember({"eps1", "eps2", "both"}))
        ->capture_default_str();
    mms_cmd->add_option("--h-list", mms_o.h_list, "Spacings for the space study")->capture_default_str();
    mms_cmd->add_option("--dt", mms_o.dt, "Time step for the space study")->capture_default_str();
    mms_cmd->add_option("--h", mms_o.h, "Spacing for the time study")->capture_default_str();
    mms_cmd->add_option("--dt-list", mms_o.dt_list, "Descending time steps for the time study")
        ->capture_default_str();
    mms_cmd->add_option("--t-final", mms_o.t_final, "Final time")->capture_default_str();
    mms_cmd->add_option("--alpha", mms_o.alpha, "Model alpha")->capture_default_str();
    mms_cmd->add_option("--gamma", mms_o.gamma, "Decay rate of the exact solution")
        ->capture_default_str();
    mms_cmd->add_option("-o,--output", mms_o.output, "CSV output file (default stdout)");

    BornOptions born_o;
    auto* born_cmd = app.add_subcommand("born", "Unit charge of radius 1 A in solvent");
    add_physical_options(born_cmd, born_o.phys);
    add_adi_options(born_cmd, born_o.adi);
    add_bvp_options(born_cmd, born_o.bvp);
    born_cmd->add_option("--alpha-sweep", born_o.alpha_sweep, "Comma-separated alpha values");
    born_cmd->add_flag("--both-solvers", born_o.both_solvers, "Also run the alternating BVP iteration");
    born_cmd->add_flag("--timing", born_o.timing, "Include wall times (output is then not reproducible)");
    born_cmd->add_option("--trace", born_o.trace, "CSV file for the ADI energy trace");
    born_cmd->add_option("-o,--output", born_o.output, "Output file (default stdout)");

    SolvateOptions sol_o;
    auto* sol_cmd = app.add_subcommand("solvate", "Solvation energy of a PQR molecule");
    add_physical_options(sol_cmd, sol_o.phys);
    sol_o.h_opt = sol_cmd->get_option("--h");
    add_adi_options(sol_cmd, sol_o.adi);
    sol_cmd->add_option("--preset", sol_o.preset, "Default h, dt, T and tolerance")
        ->check(CLI::IsMember({"compound", "protein"}))
        ->capture_default_str();
    sol_cmd->add_option("--pqr", sol_o.pqr, "PQR file");
    sol_cmd->add_option("--pqr-dir", sol_o.pqr_dir, "Directory of PQR files");
    sol_cmd->add_option("--experimental", sol_o.experimental,
                        "CSV (stem,name,value) of experimental solvation energies");
    sol_cmd->add_option("--gamma", sol_o.gamma, "Surface tension, kcal/(mol A^2)")->capture_default_str();
    sol_cmd->add_option("--pressure", sol_o.pressure, "kcal/(mol A^3)")->capture_default_str();
    sol_cmd->add_option("--rho-s", sol_o.rho_s, "Solvent density, 1/A^3")->capture_default_str();
    sol_cmd->add_flag("--dispersion", sol_o.dispersion, "Include the WCA attraction term");
    sol_cmd->add_option("--well-depth", sol_o.well_depth, "WCA well depth, kcal/mol")->capture_default_str();
    sol_cmd->add_option("--solvent-radius", sol_o.solvent_radius, "A")->capture_default_str();
    sol_cmd->add_option("-o,--output", sol_o.output, "JSON output file (default stdout)");

    CompareOptions cmp_o;
    cmp_o.adi.dt = 0.05;
    cmp_o.adi.t_final = 2.0;
    auto* cmp_cmd = app.add_subcommand("compare", "ADI and alternating BVP side by side");
    add_physical_options(cmp_cmd, cmp_o.phys);
    add_adi_options(cmp_cmd, cmp_o.adi);
    add_bvp_options(cmp_cmd, cmp_o.bvp);
    cmp_cmd->add_option("--pqr", cmp_o.pqr, "PQR file (default: unit atom)");
    cmp_cmd->add_option("--solver", cmp_o.solver, "both or adi-only")
        ->check(CLI::IsMember({"both", "adi-only"}))
        ->capture_default_str();
    cmp_cmd->add_option("-o,--output", cmp_o.output, "JSON output file (default stdout)");

    std::vector<const char*> argv{"npadi"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        configure_threads();
        if (mms_cmd->parsed()) return cmd_mms(mms_o, out, err);
        if (born_cmd->parsed()) return cmd_born(born_o, out, err);
        if (sol_cmd->parsed()) return cmd_solvate(sol_o, out, err);
        return cmd_compare(cmp_o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const EmptySystemError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const PlacementError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const BlowUpError& e) {
        err << "error: " << e.what() << " (step " << e.step() << ")\n";
        return kNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    }
}

} // namespace npadi::cli
