#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fput/potential.hpp"

namespace fput::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, config_error = 2 };

struct PotentialSpec {
    std::string kind;            // "hertz" or "polynomial"
    double alpha = 1.5;
    std::vector<double> coeffs;  // force coefficients, Phi'(r) = sum c_i r^i
    std::optional<double> r_minus, r_plus;
};

struct LatticeSpec {
    std::size_t M = 2000;
    double T = 50.0;
    std::optional<double> dt;     // default min(0.05, 0.5 / max Phi'')
    std::optional<double> gamma;  // alternative to epsilon: eps = c / gamma
    std::size_t output_every = 100;
    std::string init = "front";  // "front" or "step"
    double perturbation = 0.0;   // uniform noise amplitude added to r, drawn from --seed
};

struct SymbolSpec {
    std::optional<double> eta_minus, eta_plus;  // default: half the admissible strip
    double s = 0.5;
};

struct RunConfig {
    PotentialSpec potential;
    std::optional<double> epsilon;
    std::vector<double> epsilon_list;
    bool auto_grid = true;
    double L = 0.0;
    std::size_t N = 0;
    std::optional<LatticeSpec> lattice;
    SymbolSpec symbol;
    double eps0 = 0.5;
    double phase_x = 0.0;
};

/// Parses and validates a JSON config document; throws Error(configuration)
/// naming the offending field.
RunConfig parse_config(const std::string& json_text);

/// Raw potential of the config and its unit-front form.
struct Potentials {
    Potential raw;
    Potential normalized;
    FrontConstants constants;
};
Potentials build_potentials(const PotentialSpec& spec);

int cmd_ode(const RunConfig& cfg, const std::string& out_dir);
int cmd_front_solve(const RunConfig& cfg, const std::string& out_dir);
int cmd_front_sweep(const RunConfig& cfg, const std::string& out_dir);
int cmd_poles(const RunConfig& cfg, const std::string& out_dir);
int cmd_symbol_check(const RunConfig& cfg, const std::string& out_dir);
int cmd_lattice(const RunConfig& cfg, const std::string& out_dir, std::optional<std::uint64_t> seed);
int cmd_report(const RunConfig& cfg, const std::string& out_dir);

/// Full command line: subcommand dispatch, --config, --out, --seed.
int main(int argc, char** argv);

}  // namespace fput::cli
