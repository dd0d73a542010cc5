#include "fput/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "fput/analysis.hpp"
#include "fput/continuum.hpp"
#include "fput/error.hpp"
#include "fput/front_solver.hpp"
#include "fput/lattice.hpp"
#include "fput/spectral.hpp"

namespace fput::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorKind::configuration, msg); }

double get_number(const json& obj, const char* key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number()) config_fail("field '" + path + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_fail("field '" + path + key + "' must be finite");
    return d;
}

std::size_t get_count(const json& obj, const char* key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        config_fail("field '" + path + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

std::string fmt_eps(double eps) {
    std::ostringstream os;
    os << eps;
    return os.str();
}

json report_json(const std::vector<ReportItem>& items) {
    json arr = json::array();
    for (const auto& it : items)
        arr.push_back({{"name", it.name}, {"value", it.value}, {"threshold", it.threshold}, {"pass", it.pass}});
    return arr;
}

bool all_pass(const std::vector<ReportItem>& items) {
    return std::all_of(items.begin(), items.end(), [](const ReportItem& r) { return r.pass; });
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::configuration, "cannot write " + path.string());
    f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string profile_csv(const Grid& g, const std::vector<double>& R, const std::vector<double>& S) {
    std::ostringstream os;
    os << std::setprecision(17) << "x,R,S\n";
    for (std::size_t j = 0; j < g.N; ++j) os << g.x(j) << ',' << R[j] << ',' << S[j] << '\n';
    return os.str();
}

fs::path prepare_out(const std::string& out_dir) {
    fs::path p(out_dir.empty() ? "." : out_dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) config_fail("cannot create output directory '" + p.string() + "': " + ec.message());
    return p;
}

Grid choose_grid(const RunConfig& cfg, const std::vector<double>& eps, const Potential& p) {
    if (!cfg.auto_grid) return Grid{cfg.L, cfg.N};
    return auto_grid(eps, p);
}

double require_epsilon(const RunConfig& cfg, const char* cmd) {
    if (!cfg.epsilon) config_fail(std::string(cmd) + " needs field 'epsilon'");
    return *cfg.epsilon;
}

FrontOptions front_options(const RunConfig& cfg) {
    FrontOptions o;
    o.eps0 = cfg.eps0;
    o.phase_x = cfg.phase_x;
    return o;
}

json front_json(const FrontSolution& s, const Potential& p) {
    json j;
    j["epsilon"] = s.epsilon;
    j["residual_fp"] = s.residual_fp;
    j["residual_tent"] = s.residual_tent;
    j["iterations"] = s.iterations;
    j["krylov_iterations"] = s.krylov_iterations;
    j["L"] = s.grid().L;
    j["N"] = s.grid().N;
    j["h1_dist"] = s.h1_dist_to_R0;
    j["phase_multiplier"] = s.phase_multiplier;
    j["warning"] = s.warning.empty() ? json(nullptr) : json(s.warning);
    j["report"] = report_json(front_report(s, p));
    return j;
}

std::vector<ReportItem> decay_items(const DecayReport& d) {
    return {check_at_most("decay_rel_err_minus", d.rel_err_minus, 0.02),
            check_at_most("decay_rel_err_plus", d.rel_err_plus, 0.02),
            check_at_least("decay_fit_r2", d.fit_r2, 0.999),
            check_at_most("decay_bound_ratio_minus", d.bound_ratio_minus, 10.0),
            check_at_most("decay_bound_ratio_plus", d.bound_ratio_plus, 10.0)};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        config_fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) config_fail("config must be a JSON object");
    static const char* known[] = {"potential", "epsilon", "epsilon_list", "grid", "lattice", "symbol_check", "eps0", "phase_x"};
    for (const auto& [key, _] : j.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
            config_fail("unknown field '" + key + "'");

    RunConfig cfg;
    if (!j.contains("potential")) config_fail("missing field 'potential'");
    const json& pj = j["potential"];
    if (!pj.is_object()) config_fail("field 'potential' must be an object");
    if (!pj.contains("kind") || !pj["kind"].is_string()) config_fail("missing field 'potential.kind'");
    cfg.potential.kind = pj["kind"].get<std::string>();
    if (cfg.potential.kind == "hertz") {
        if (!pj.contains("alpha")) config_fail("missing field 'potential.alpha'");
        cfg.potential.alpha = get_number(pj, "alpha", "potential.");
    } else if (cfg.potential.kind == "polynomial") {
        if (!pj.contains("coeffs") || !pj["coeffs"].is_array() || pj["coeffs"].empty())
            config_fail("field 'potential.coeffs' must be a non-empty array");
        for (const auto& c : pj["coeffs"]) {
            if (!c.is_number()) config_fail("field 'potential.coeffs' must hold numbers");
            cfg.potential.coeffs.push_back(c.get<double>());
        }
    } else {
        config_fail("field 'potential.kind' must be \"hertz\" or \"polynomial\"");
    }
    if (pj.contains("r_minus") != pj.contains("r_plus"))
        config_fail("fields 'potential.r_minus' and 'potential.r_plus' must be given together");
    if (pj.contains("r_minus")) {
        cfg.potential.r_minus = get_number(pj, "r_minus", "potential.");
        cfg.potential.r_plus = get_number(pj, "r_plus", "potential.");
    }

    if (j.contains("epsilon") && j.contains("epsilon_list"))
        config_fail("give exactly one of 'epsilon' and 'epsilon_list'");
    if (j.contains("epsilon")) {
        cfg.epsilon = get_number(j, "epsilon", "");
        if (!(*cfg.epsilon > 0.0)) config_fail("field 'epsilon' must be positive");
    }
    if (j.contains("epsilon_list")) {
        if (!j["epsilon_list"].is_array() || j["epsilon_list"].empty())
            config_fail("field 'epsilon_list' must be a non-empty array");
        for (const auto& e : j["epsilon_list"]) {
            if (!e.is_number() || !(e.get<double>() > 0.0)) config_fail("field 'epsilon_list' must hold positive numbers");
            cfg.epsilon_list.push_back(e.get<double>());
        }
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.is_string()) {
            if (g.get<std::string>() != "auto") config_fail("field 'grid' must be \"auto\" or {L, N}");
        } else if (g.is_object()) {
            if (!g.contains("L") || !g.contains("N")) config_fail("field 'grid' needs both 'L' and 'N'");
            cfg.auto_grid = false;
            cfg.L = get_number(g, "L", "grid.");
            cfg.N = get_count(g, "N", "grid.");
            try {
                Grid{cfg.L, cfg.N}.check();
            } catch (const Error& e) {
                config_fail(std::string("field 'grid': ") + e.what());
            }
        } else {
            config_fail("field 'grid' must be \"auto\" or {L, N}");
        }
    }

    if (j.contains("lattice")) {
        const json& l = j["lattice"];
        if (!l.is_object()) config_fail("field 'lattice' must be an object");
        LatticeSpec ls;
        if (l.contains("M")) ls.M = get_count(l, "M", "lattice.");
        if (l.contains("T")) ls.T = get_number(l, "T", "lattice.");
        if (l.contains("dt")) ls.dt = get_number(l, "dt", "lattice.");
        if (l.contains("output_every")) ls.output_every = get_count(l, "output_every", "lattice.");
        if (l.contains("perturbation")) ls.perturbation = get_number(l, "perturbation", "lattice.");
        if (l.contains("init")) {
            if (!l["init"].is_string()) config_fail("field 'lattice.init' must be \"front\" or \"step\"");
            ls.init = l["init"].get<std::string>();
        }
        if (l.contains("gamma")) {
            ls.gamma = get_number(l, "gamma", "lattice.");
            if (!(*ls.gamma > 0.0)) config_fail("field 'lattice.gamma' must be positive");
        }
        if (ls.M < 200) config_fail("field 'lattice.M' must be at least 200");
        if (!(ls.T > 0.0)) config_fail("field 'lattice.T' must be positive");
        if (ls.dt && !(*ls.dt > 0.0)) config_fail("field 'lattice.dt' must be positive");
        if (ls.init != "front" && ls.init != "step") config_fail("field 'lattice.init' must be \"front\" or \"step\"");
        if (ls.perturbation < 0.0) config_fail("field 'lattice.perturbation' must be non-negative");
        cfg.lattice = ls;
    }

    if (j.contains("symbol_check")) {
        const json& s = j["symbol_check"];
        if (!s.is_object()) config_fail("field 'symbol_check' must be an object");
        if (s.contains("eta_minus")) cfg.symbol.eta_minus = get_number(s, "eta_minus", "symbol_check.");
        if (s.contains("eta_plus")) cfg.symbol.eta_plus = get_number(s, "eta_plus", "symbol_check.");
        if (s.contains("s")) cfg.symbol.s = get_number(s, "s", "symbol_check.");
        if (!(cfg.symbol.s > 0.0 && cfg.symbol.s < 1.0)) config_fail("field 'symbol_check.s' must lie in (0, 1)");
    }
    if (j.contains("eps0")) {
        cfg.eps0 = get_number(j, "eps0", "");
        if (!(cfg.eps0 > 0.0)) config_fail("field 'eps0' must be positive");
    }
    if (j.contains("phase_x")) cfg.phase_x = get_number(j, "phase_x", "");
    return cfg;
}

Potentials build_potentials(const PotentialSpec& spec) {
    const double rm = spec.r_minus.value_or(1.0);
    const double rp = spec.r_plus.value_or(0.0);
    if (!(rm > rp)) config_fail("field 'potential.r_minus' must exceed 'potential.r_plus'");
    const double lo = std::min(rm, rp), hi = std::max(rm, rp);
    Potential raw = spec.kind == "hertz" ? Potential::hertz(spec.alpha, lo, hi) : Potential::polynomial(spec.coeffs, lo, hi);
    Renormalized rn = renormalize(raw, rm, rp);
    const ValidationReport v = validate(rn.potential);
    if (!v.ok()) config_fail("potential fails validation (normalized/monotone/convex): " + rn.potential.describe());
    const double pm = rn.potential.ddphi(1.0), pp = rn.potential.ddphi(0.0);
    if (!(pm > 1.0) || !(pp < 1.0) || pp < 0.0)
        config_fail("potential needs Phi''(1) > 1 and 0 <= Phi''(0) < 1 after renormalization");
    return {raw, rn.potential, rn.constants};
}

int cmd_ode(const RunConfig& cfg, const std::string& out_dir) {
    const Potentials pots = build_potentials(cfg.potential);
    const fs::path out = prepare_out(out_dir);
    const Grid g = choose_grid(cfg, {0.0}, pots.normalized);
    const ContinuumSolution R0 = solve_R0(pots.normalized, g);
    std::vector<double> S(g.N);
    for (std::size_t j = 0; j < g.N; ++j) S[j] = -R0.derivative.values[j];
    const GridProfile Sp{g, S};
    std::vector<ReportItem> rep{check_at_most("ode_residual", continuum_residual(R0), 1e-9),
                                check_at_most("normalization_error", normalization_check(Sp), 1e-6),
                                check_at_least("min_S", monotonicity_check(Sp).min_S, -1e-8)};
    json j;
    j["L"] = g.L;
    j["N"] = g.N;
    j["p_minus"] = R0.p_minus;
    j["p_plus"] = R0.p_plus;
    j["potential"] = pots.normalized.describe();
    j["report"] = report_json(rep);
    write_text(out / "ode_profile.csv", profile_csv(g, R0.profile.values, S));
    write_json(out / "ode.json", j);
    return all_pass(rep) ? ok : numerical_failure;
}

int cmd_front_solve(const RunConfig& cfg, const std::string& out_dir) {
    const double eps = require_epsilon(cfg, "front solve");
    const Potentials pots = build_potentials(cfg.potential);
    const fs::path out = prepare_out(out_dir);
    const Grid g = choose_grid(cfg, {eps}, pots.normalized);
    const ContinuumSolution R0 = solve_R0(pots.normalized, g);
    const FrontSolution s = solve_front(eps, pots.normalized, R0, std::nullopt, front_options(cfg));
    json j = front_json(s, pots.normalized);
    write_text(out / "front_profile.csv", profile_csv(g, s.R.values, s.S.values));
    write_json(out / "front.json", j);
    return ok;
}

int cmd_front_sweep(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.epsilon_list.empty()) config_fail("front sweep needs field 'epsilon_list'");
    if (!std::is_sorted(cfg.epsilon_list.begin(), cfg.epsilon_list.end()))
        config_fail("field 'epsilon_list' must be sorted ascending");
    const Potentials pots = build_potentials(cfg.potential);
    const fs::path out = prepare_out(out_dir);
    const Grid g = choose_grid(cfg, cfg.epsilon_list, pots.normalized);
    const auto sols = continuation_sweep(pots.normalized, cfg.epsilon_list, g, front_options(cfg));
    json summary;
    summary["L"] = g.L;
    summary["N"] = g.N;
    json runs = json::array();
    std::vector<double> eps, h1;
    for (const auto& s : sols) {
        const std::string name = "front_eps_" + fmt_eps(s.epsilon) + ".csv";
        write_text(out / name, profile_csv(g, s.R.values, s.S.values));
        json r = front_json(s, pots.normalized);
        r["profile"] = name;
        runs.push_back(r);
        eps.push_back(s.epsilon);
        h1.push_back(s.h1_dist_to_R0);
    }
    summary["runs"] = runs;
    summary["h1_order"] = eps.size() >= 2 ? json(loglog_slope(eps, h1)) : json(nullptr);
    write_json(out / "sweep.json", summary);
    return ok;
}

int cmd_poles(const RunConfig& cfg, const std::string& out_dir) {
    std::vector<double> eps = cfg.epsilon_list;
    if (cfg.epsilon) eps = {*cfg.epsilon};
    if (eps.empty()) config_fail("poles needs field 'epsilon' or 'epsilon_list'");
    const Potentials pots = build_potentials(cfg.potential);
    const fs::path out = prepare_out(out_dir);
    const double pm = pots.normalized.ddphi(1.0), pp = pots.normalized.ddphi(0.0);
    json rows = json::array();
    for (double e : eps) {
        json row;
        row["epsilon"] = e;
        for (const auto& [label, mu] : {std::pair{"minus", pm}, std::pair{"plus", pp}}) {
            const PoleData d = find_pole(e, mu);
            row[label] = {{"mu", mu},
                          {"z_re", d.z_eps.real()},
                          {"z_im", d.z_eps.imag()},
                          {"mu_rate", d.mu_rate},
                          {"nu_prefactor", d.nu_prefactor},
                          {"newton_iters", d.newton_iters},
                          {"residual", d.residual},
                          {"series_mu_rate", std::abs(1.0 - mu) - (mu < 1.0 ? 1.0 : -1.0) * series_mu_coefficient(mu) * e * e},
                          {"series_nu", 1.0 - series_nu_coefficient(mu) * e * e}};
        }
        rows.push_back(row);
    }
    json j;
    j["p_minus"] = pm;
    j["p_plus"] = pp;
    j["poles"] = rows;
    write_json(out / "poles.json", j);
    return ok;
}

int cmd_symbol_check(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.epsilon_list.size() < 2) config_fail("symbol-check needs field 'epsilon_list' with at least two values");
    const Potentials pots = build_potentials(cfg.potential);
    const double pm = pots.normalized.ddphi(1.0), pp = pots.normalized.ddphi(0.0);
    const double eta_m = cfg.symbol.eta_minus.value_or(0.5 * (pm - 1.0));
    const double eta_p = cfg.symbol.eta_plus.value_or(0.5 * (1.0 - pp));
    if (!(eta_m > 0.0 && eta_m < pm - 1.0)) config_fail("field 'symbol_check.eta_minus' must lie in (0, p_minus - 1)");
    if (!(eta_p > 0.0 && eta_p < 1.0 - pp)) config_fail("field 'symbol_check.eta_plus' must lie in (0, 1 - p_plus)");
    const fs::path out = prepare_out(out_dir);
    const SymbolBoundsReport rep = verify_symbol_bounds(cfg.epsilon_list, eta_m, eta_p, cfg.symbol.s, {0.0, pm, pp});
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"epsilon", r.eps},
                        {"sup_diff", r.sup_diff},
                        {"sup_weighted_diff", r.sup_weighted_diff},
                        {"tail_constant", r.tail_constant},
                        {"bulk_constant", r.bulk_constant}});
    std::vector<ReportItem> items{
        check_at_least("order_diff_min", rep.order_diff, 0.9), check_at_most("order_diff_max", rep.order_diff, 1.1),
        check_at_least("order_weighted_min", rep.order_weighted, cfg.symbol.s - 0.1),
        check_at_most("order_weighted_max", rep.order_weighted, cfg.symbol.s + 0.1),
        check_at_most("bulk_ratio", rep.max_bulk_ratio, 2.0), check_at_most("tail_ratio", rep.max_tail_ratio, 2.0)};
    json j;
    j["eta_minus"] = eta_m;
    j["eta_plus"] = eta_p;
    j["s"] = cfg.symbol.s;
    j["mus"] = rep.mus;
    j["rows"] = rows;
    j["order_diff"] = rep.order_diff;
    j["order_weighted"] = rep.order_weighted;
    j["max_bulk_ratio"] = rep.max_bulk_ratio;
    j["max_tail_ratio"] = rep.max_tail_ratio;
    j["report"] = report_json(items);
    write_json(out / "symbol_check.json", j);
    return ok;
}

int cmd_lattice(const RunConfig& cfg, const std::string& out_dir, std::optional<std::uint64_t> seed) {
    if (!cfg.lattice) config_fail("lattice run needs field 'lattice'");
    const LatticeSpec& ls = *cfg.lattice;
    const Potentials pots = build_potentials(cfg.potential);
    // the chain sees eps = c / gamma
    if (!cfg.epsilon && !ls.gamma) config_fail("lattice run needs field 'epsilon' or 'lattice.gamma'");
    const double eps = cfg.epsilon ? *cfg.epsilon : pots.constants.c / *ls.gamma;
    if (cfg.epsilon && ls.gamma && std::abs(pots.constants.c / *ls.gamma - eps) > 1e-12 * eps)
        config_fail("fields 'epsilon' and 'lattice.gamma' disagree: expected gamma = c / epsilon");
    const fs::path out = prepare_out(out_dir);

    const Grid g = choose_grid(cfg, {eps}, pots.normalized);
    const ContinuumSolution R0 = solve_R0(pots.normalized, g);
    const FrontSolution sol = solve_front(eps, pots.normalized, R0, std::nullopt, front_options(cfg));
    const FrontScaling sc = FrontScaling::from(pots.constants);
    LatticeState st = ls.init == "front" ? init_chain(ls.M, sol, sc)
                                         : init_chain_step(ls.M, sc.speed / eps, sc.r_minus, sc.r_plus, sc.speed);
    if (ls.perturbation > 0.0) {
        std::mt19937_64 rng(seed.value_or(0));
        std::uniform_real_distribution<double> u(-ls.perturbation, ls.perturbation);
        for (double& r : st.r) r += u(rng);
    }
    const double dt = ls.dt.value_or(default_time_step(pots.raw));
    const Trajectory tr = run(st, ls.T, dt, ls.output_every, pots.raw);

    std::ostringstream csv;
    csv << std::setprecision(17) << "t,n,r\n";
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        for (std::size_t n = 0; n < tr.snapshots[k].size(); ++n) csv << tr.times[k] << ',' << n << ',' << tr.snapshots[k][n] << '\n';
    write_text(out / "lattice_snapshots.csv", csv.str());

    json j;
    j["epsilon"] = eps;
    j["gamma"] = st.gamma;
    j["M"] = ls.M;
    j["T"] = ls.T;
    j["dt"] = dt;
    j["init"] = ls.init;
    j["predicted_speed"] = sc.speed;
    j["max_boundary_drift"] = tr.max_boundary_drift;
    int code = ok;
    try {
        const SpeedFit f = measure_front_speed(tr);
        j["c_fit"] = f.c_fit;
        j["r2"] = f.r2;
    } catch (const Error& e) {
        j["c_fit"] = nullptr;
        j["r2"] = nullptr;
        j["error"] = e.what();
        code = numerical_failure;
    }
    j["max_profile_distance"] = compare_profile(tr, sol, sc);
    j["profile_distances"] = profile_distances(tr, sol, sc);
    write_json(out / "lattice.json", j);
    return code;
}

int cmd_report(const RunConfig& cfg, const std::string& out_dir) {
    const double eps = require_epsilon(cfg, "report");
    const Potentials pots = build_potentials(cfg.potential);
    const fs::path out = prepare_out(out_dir);
    const Grid g = choose_grid(cfg, {eps}, pots.normalized);
    const ContinuumSolution R0 = solve_R0(pots.normalized, g);
    const FrontSolution s = solve_front(eps, pots.normalized, R0, std::nullopt, front_options(cfg));
    std::vector<ReportItem> items = front_report(s, pots.normalized);
    const double pm = pots.normalized.ddphi(1.0), pp = pots.normalized.ddphi(0.0);
    const DecayReport d = fit_decay_rates(s, find_pole(eps, pm), find_pole(eps, pp));
    for (auto& it : decay_items(d)) items.push_back(it);
    if (cfg.lattice && cfg.lattice->init == "front") {
        const FrontScaling sc = FrontScaling::from(pots.constants);
        const double dt = cfg.lattice->dt.value_or(default_time_step(pots.raw));
        const Trajectory tr = run(init_chain(cfg.lattice->M, s, sc), cfg.lattice->T, dt, cfg.lattice->output_every, pots.raw);
        const SpeedFit f = measure_front_speed(tr);
        items.push_back(check_at_most("lattice_speed_rel_err", std::abs(f.c_fit - sc.speed) / sc.speed, 0.01));
        items.push_back(check_at_least("lattice_speed_r2", f.r2, 0.9999));
        items.push_back(check_at_most("lattice_profile_distance", compare_profile(tr, s, sc), 1e-3));
    }
    json j;
    j["epsilon"] = eps;
    j["warning"] = s.warning.empty() ? json(nullptr) : json(s.warning);
    j["report"] = report_json(items);
    write_json(out / "report.json", j);
    return all_pass(items) ? ok : numerical_failure;
}

int main(int argc, char** argv) {
    CLI::App app{"Traveling fronts of the dissipative FPUT chain: continuum ODE, spectral front solver, lattice simulation"};
    app.require_subcommand(1);

    struct Common {
        std::string config;
        std::string out = ".";
        std::uint64_t seed = 0;
    };
    Common common;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* sc = parent->add_subcommand(name, desc);
        sc->add_option("--config", common.config, "JSON config file")->required();
        sc->add_option("--out", common.out, "output directory");
        sc->add_option("--seed", common.seed, "seed for lattice perturbations");
        return sc;
    };
    CLI::App* ode = leaf(&app, "ode", "continuum front R0");
    CLI::App* front = app.add_subcommand("front", "discrete traveling front");
    front->require_subcommand(1);
    CLI::App* solve = leaf(front, "solve", "solve at one eps");
    CLI::App* sweep = leaf(front, "sweep", "continuation over an ascending eps list");
    CLI::App* poles = leaf(&app, "poles", "poles of the modified symbols and decay rates");
    CLI::App* symbol = leaf(&app, "symbol-check", "sampled symbol estimates");
    CLI::App* lattice = app.add_subcommand("lattice", "damped chain simulation");
    lattice->require_subcommand(1);
    CLI::App* lrun = leaf(lattice, "run", "simulate from front or step data");
    CLI::App* report = leaf(&app, "report", "consolidated pass/fail report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        std::ifstream f(common.config, std::ios::binary);
        if (!f) config_fail("cannot read config file '" + common.config + "'");
        std::stringstream buf;
        buf << f.rdbuf();
        const RunConfig cfg = parse_config(buf.str());
        std::optional<std::uint64_t> seed;
        if (lrun->get_option("--seed")->count() > 0) seed = common.seed;
        if (*ode) return cmd_ode(cfg, common.out);
        if (*solve) return cmd_front_solve(cfg, common.out);
        if (*sweep) return cmd_front_sweep(cfg, common.out);
        if (*poles) return cmd_poles(cfg, common.out);
        if (*symbol) return cmd_symbol_check(cfg, common.out);
        if (*lrun) return cmd_lattice(cfg, common.out, seed);
        if (*report) return cmd_report(cfg, common.out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool cfg_kind = e.kind() == ErrorKind::configuration || e.kind() == ErrorKind::validation;
        return cfg_kind ? config_error : numerical_failure;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numerical_failure;
    }
    return config_error;
}

}  // namespace fput::cli
