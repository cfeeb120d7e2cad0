#pragma once

// Batch front end: parse a JSON config, run k-scans / phi-scans / helix
// scans / time-reversal sweeps / vessel simulations, emit CSV (17
// significant digits) and gnuplot scripts.
//
// Scattering CSV header (two-layer, stack, helix modes):
//   k,R_pp,R_pm,R_mp,R_mm,T_pp,T_pm,T_mp,T_mm,flux_sum
// with X_om = |<o|X|m>|^2 (out, in) and flux_sum = (sum of all eight)/2 so a
// lossless mirror gives exactly 1. trcheck mode emits residual columns;
// vessel mode emits a JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinrefl/helix_solver.hpp"
#include "spinrefl/vessel_sim.hpp"

namespace spinrefl {

struct VesselConfig {
    std::string mirror;  // "helix" or "stack"
    double k = 0.0;
    long long n_particles = 10000;
    long long n_steps = 1000;
};

struct TrcheckConfig {
    int n_cases = 1000;
    int interior_points = 64;
};

struct ScanConfig {
    std::string mode;  // two-layer | stack | helix | trcheck | vessel
    double k_min = 0.0, k_max = 0.0;
    int k_points = 0;
    std::vector<Layer> layers;
    std::vector<double> phi;      // two-layer mode: angles of B2 from B1
    std::optional<HelixMirror> helix;
    int helix_n_slices = 0;       // sliced method slice count
    std::string method;           // two-layer: approx|exact; helix: analytic|sliced
    std::uint64_t seed = 1;
    std::string output;           // base name for emitted files
    std::optional<VesselConfig> vessel;
    TrcheckConfig trcheck;
};

// Parse and validate; throws ConfigError with a diagnostic.
ScanConfig parse_config(const std::string& path);

// Execute a config. Returns the process exit status: 0 on success, 1 on
// parse/validation failure, 2 on numerical failure (singular boundary
// system; the offending k is reported on stderr). Output files land in
// out_dir (default: current directory).
int run_config(const std::string& path, std::optional<std::uint64_t> seed_override,
               const std::optional<std::string>& out_dir);

// Emit a gnuplot script for a scattering CSV. layout: fig1a (six labeled
// two-layer curves), fig2 (two reflectivity panels, solid = without spin
// flip, dashed = with spin flip), fig3 (same for transmission). Returns the
// script path; throws HeaderMismatch if the CSV header is not the scattering
// header, ConfigError for an unknown layout or unreadable file.
std::string emit_plot_script(const std::string& csv_path, const std::string& layout,
                             const std::optional<std::string>& out_path);

// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

}  // namespace spinrefl
