#include "spinrefl/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "spinrefl/treversal.hpp"

namespace spinrefl {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kScatterHeader =
    "k,R_pp,R_pm,R_mp,R_mm,T_pp,T_pm,T_mp,T_mm,flux_sum";

struct ScanRow {
    double k;
    ProbTable R, T;

    double flux_sum() const { return 0.5 * (R.sum() + T.sum()); }
};

std::vector<double> k_grid(const ScanConfig& c) {
    std::vector<double> ks(static_cast<std::size_t>(c.k_points));
    for (int i = 0; i < c.k_points; ++i)
        ks[static_cast<std::size_t>(i)] =
            c.k_min + (c.k_max - c.k_min) * i / (c.k_points - 1);
    return ks;
}

Layer parse_layer(const json& j) {
    if (!j.contains("thickness") || !j.contains("u_real") || !j.contains("B"))
        throw ConfigError("layer needs thickness, u_real, B");
    const double u_absorb = j.value("u_absorb", 0.0);
    if (u_absorb < 0.0) throw ConfigError("layer: u_absorb must be >= 0");
    const auto& b = j.at("B");
    if (!b.is_array() || b.size() != 3) throw ConfigError("layer: B must be [bx, by, bz]");
    try {
        return Layer(j.at("thickness").get<double>(),
                     cplx(j.at("u_real").get<double>(), -u_absorb),
                     FieldVector(b[0].get<double>(), b[1].get<double>(), b[2].get<double>()));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("layer: ") + e.what());
    }
}

HelixMirror parse_helix(const json& j) {
    for (const char* key : {"B", "q", "d", "u_real"})
        if (!j.contains(key)) throw ConfigError(std::string("helix needs key ") + key);
    const double u_absorb = j.value("u_absorb", 0.0);
    if (u_absorb < 0.0) throw ConfigError("helix: u_absorb must be >= 0");
    try {
        return HelixMirror(j.at("B").get<double>(), j.at("q").get<double>(),
                           j.at("d").get<double>(),
                           cplx(j.at("u_real").get<double>(), -u_absorb),
                           j.value("phase0", 0.0));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("helix: ") + e.what());
    }
}

void require_k_grid(const ScanConfig& c) {
    if (!(c.k_min > 0.0)) throw ConfigError("k_min must be > 0");
    if (!(c.k_max >= c.k_min)) throw ConfigError("k_max must be >= k_min");
    if (c.k_points < 2) throw ConfigError("k_points must be >= 2");
}

void write_rows(const fs::path& path, const std::vector<ScanRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    out << kScatterHeader << "\n";
    for (const ScanRow& r : rows) {
        out << format_g17(r.k);
        for (double v : {r.R.pp, r.R.pm, r.R.mp, r.R.mm, r.T.pp, r.T.pm, r.T.mp, r.T.mm,
                         r.flux_sum()})
            out << ',' << format_g17(v);
        out << "\n";
    }
}

// Evaluate a k-scan in parallel while keeping output ordered by k. A
// singular boundary system anywhere aborts the scan with the offending k.
template <typename Solve>
std::vector<ScanRow> scan_k(const std::vector<double>& ks, Solve&& solve) {
    std::vector<ScanRow> rows(ks.size());
    bool failed = false;
    double bad_k = 0.0;
    std::string bad_what;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ks.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            const ScatteringSolution s = solve(ks[idx]);
            rows[idx] = {ks[idx], spin_probabilities(s.R), spin_probabilities(s.T)};
        } catch (const SingularBoundarySystem& e) {
#pragma omp critical
            {
                if (!failed || ks[idx] < bad_k) {
                    failed = true;
                    bad_k = ks[idx];
                    bad_what = e.what();
                }
            }
        }
    }
    if (failed)
        throw SingularBoundarySystem(bad_what + " at k = " + format_g17(bad_k), 0.0);
    return rows;
}

Layer rotate_second_layer(const Layer& L1, const Layer& L2, double phi) {
    if (L1.B.z() != 0.0 || L2.B.z() != 0.0)
        throw ConfigError("two-layer mode: fields must be in-plane (bz = 0)");
    const double B1 = L1.B.norm(), B2 = L2.B.norm();
    if (B1 == 0.0 || B2 == 0.0)
        throw ConfigError("two-layer mode: layer fields must be nonzero");
    const FieldVector d1 = L1.B / B1;
    const FieldVector d2(std::cos(phi) * d1.x() - std::sin(phi) * d1.y(),
                         std::sin(phi) * d1.x() + std::cos(phi) * d1.y(), 0.0);
    return Layer(L2.thickness, L2.u, B2 * d2);
}

std::string phi_suffix(double phi) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "_phi%+.6f", phi);
    return buf;
}

int run_two_layer(const ScanConfig& c, const fs::path& dir) {
    const auto ks = k_grid(c);
    for (double phi : c.phi) {
        const Layer L2 = rotate_second_layer(c.layers[0], c.layers[1], phi);
        std::vector<ScanRow> rows;
        if (c.method == "exact") {
            const MirrorStack stack({c.layers[0], L2});
            rows = scan_k(ks, [&](double k) { return exact_stack_solve(k, stack); });
        } else {
            rows = scan_k(ks, [&](double k) -> ScatteringSolution {
                return {two_layer_R_approx(k, c.layers[0], L2),
                        two_layer_T_approx(k, c.layers[0], L2), k};
            });
        }
        write_rows(dir / (c.output + phi_suffix(phi) + ".csv"), rows);
    }
    return 0;
}

int run_stack(const ScanConfig& c, const fs::path& dir) {
    const MirrorStack stack(c.layers);
    const auto rows = scan_k(k_grid(c), [&](double k) { return exact_stack_solve(k, stack); });
    write_rows(dir / (c.output + ".csv"), rows);
    return 0;
}

int run_helix(const ScanConfig& c, const fs::path& dir) {
    const HelixMirror& m = *c.helix;
    const bool sliced = c.method == "sliced";
    const int n = c.helix_n_slices;
    const auto rows = scan_k(k_grid(c), [&](double k) -> ScatteringSolution {
        const HelixSolution s =
            sliced ? helix_solve_sliced(k, m, n) : helix_solve_analytic(k, m);
        return s.solution();
    });
    write_rows(dir / (c.output + ".csv"), rows);
    return 0;
}

int run_trcheck(const ScanConfig& c, const fs::path& dir) {
    std::ofstream out(dir / (c.output + ".csv"));
    if (!out) throw ConfigError("cannot open output file");
    out << "case,k,u_real,u_absorb,d,res18_abs,res19,interior_max\n";
    std::mt19937_64 rng(c.seed);
    const auto unit = [&] { return (rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < c.trcheck.n_cases; ++i) {
        const double k = 0.1 + 2.4 * unit();
        const double up = 0.05 + 3.95 * unit();
        const double us = up * unit();  // absorption up to u'
        const double d = 0.1 + 2.9 * unit();
        const cplx u(up, -us);
        double interior_max = 0.0;
        for (double x : chebyshev_interior_points(d, c.trcheck.interior_points))
            interior_max = std::max(interior_max, std::abs(interior_match_residual(x, k, u, d)));
        out << i << ',' << format_g17(k) << ',' << format_g17(up) << ',' << format_g17(us)
            << ',' << format_g17(d) << ',' << format_g17(std::abs(identity_18_residual(k, u, d)))
            << ',' << format_g17(identity_19_residual(k, u, d)) << ','
            << format_g17(interior_max) << "\n";
    }
    return 0;
}

int run_vessel_mode(const ScanConfig& c, const fs::path& dir) {
    const VesselConfig& v = *c.vessel;
    ScatteringSolution left{SpinMatrix::Zero(), SpinMatrix::Zero(), v.k};
    ScatteringSolution right = left;
    if (v.mirror == "helix") {
        left = helix_solve_analytic(v.k, *c.helix).solution();
        right = helix_solve_analytic(v.k, reversed(*c.helix)).solution();
    } else {
        const MirrorStack fwd(c.layers);
        std::vector<Layer> rev(c.layers.rbegin(), c.layers.rend());
        left = exact_stack_solve(v.k, fwd);
        right = exact_stack_solve(v.k, MirrorStack(std::move(rev)));
    }
    const MirrorChannelTable table = channel_table_from_solution(left, right);
    const VesselReport rep = run_vessel(table, v.n_particles, v.n_steps, c.seed);

    json j;
    j["n_particles"] = rep.n_particles;
    j["n_steps"] = rep.n_steps;
    j["seed"] = rep.seed;
    j["occupancy_I"] = rep.occupancy_I;
    j["occupancy_I_sigma"] = rep.occupancy_I_sigma;
    j["polarization_I"] = rep.polarization_I;
    j["polarization_I_sigma"] = rep.polarization_I_sigma;
    j["polarization_II"] = rep.polarization_II;
    j["polarization_II_sigma"] = rep.polarization_II_sigma;
    j["cycle_current"] = rep.cycle_current;
    j["cycle_current_sigma"] = rep.cycle_current_sigma;
    j["loop_forward"] = rep.loop_forward;
    j["loop_backward"] = rep.loop_backward;
    j["absorbed"] = rep.absorbed;
    j["occupancy_drift"] = rep.occupancy_drift;
    j["occupancy_drift_sigma"] = rep.occupancy_drift_sigma;
    j["steady"] = rep.steady;
    j["transitions"] = rep.transitions;

    std::ofstream out(dir / (c.output + ".json"));
    if (!out) throw ConfigError("cannot open output file");
    out << j.dump(2) << "\n";
    std::cout << "vessel: occupancy_I = " << rep.occupancy_I << " +- " << rep.occupancy_I_sigma
              << ", polarization = (" << rep.polarization_I << ", " << rep.polarization_II
              << "), cycle current J = " << rep.cycle_current << " +- "
              << rep.cycle_current_sigma << " ("
              << rep.cycle_current / std::max(rep.cycle_current_sigma, 1e-300) << " sigma)\n";
    return 0;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ScanConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("JSON parse failure: ") + e.what());
    }

    ScanConfig c;
    try {
        c.mode = j.value("mode", "");
        c.k_min = j.value("k_min", 0.0);
        c.k_max = j.value("k_max", 0.0);
        c.k_points = j.value("k_points", 0);
        c.method = j.value("method", "");
        c.seed = j.value("seed", std::uint64_t{1});
        c.output = j.value("output", c.mode);
        if (j.contains("layers"))
            for (const auto& lj : j.at("layers")) c.layers.push_back(parse_layer(lj));
        if (j.contains("phi")) c.phi = j.at("phi").get<std::vector<double>>();
        if (j.contains("helix")) {
            c.helix = parse_helix(j.at("helix"));
            c.helix_n_slices = j.at("helix").value("n_slices", 0);
        }
        if (j.contains("vessel")) {
            VesselConfig v;
            const auto& vj = j.at("vessel");
            v.mirror = vj.value("mirror", "helix");
            v.k = vj.value("k", 0.0);
            v.n_particles = vj.value("n_particles", 10000LL);
            v.n_steps = vj.value("n_steps", 1000LL);
            c.vessel = v;
        }
        if (j.contains("trcheck")) {
            c.trcheck.n_cases = j.at("trcheck").value("n_cases", 1000);
            c.trcheck.interior_points = j.at("trcheck").value("interior_points", 64);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }

    if (c.mode == "two-layer") {
        require_k_grid(c);
        if (c.layers.size() != 2) throw ConfigError("two-layer mode needs exactly 2 layers");
        if (c.phi.empty()) throw ConfigError("two-layer mode needs a non-empty phi list");
        if (c.method.empty()) c.method = "approx";
        if (c.method != "approx" && c.method != "exact")
            throw ConfigError("two-layer method must be approx or exact");
    } else if (c.mode == "stack") {
        require_k_grid(c);
        if (c.layers.empty()) throw ConfigError("stack mode needs a non-empty layer list");
    } else if (c.mode == "helix") {
        require_k_grid(c);
        if (!c.helix) throw ConfigError("helix mode needs a helix section");
        if (c.method.empty()) c.method = "analytic";
        if (c.method != "analytic" && c.method != "sliced")
            throw ConfigError("helix method must be analytic or sliced");
        if (c.method == "sliced" && c.helix_n_slices < 1)
            throw ConfigError("sliced helix needs n_slices >= 1");
    } else if (c.mode == "trcheck") {
        if (c.trcheck.n_cases < 1) throw ConfigError("trcheck needs n_cases >= 1");
        if (c.trcheck.interior_points < 1)
            throw ConfigError("trcheck needs interior_points >= 1");
    } else if (c.mode == "vessel") {
        if (!c.vessel) throw ConfigError("vessel mode needs a vessel section");
        if (!(c.vessel->k > 0.0)) throw ConfigError("vessel needs k > 0");
        if (c.vessel->mirror == "helix") {
            if (!c.helix) throw ConfigError("vessel helix mirror needs a helix section");
        } else if (c.vessel->mirror == "stack") {
            if (c.layers.empty()) throw ConfigError("vessel stack mirror needs layers");
        } else {
            throw ConfigError("vessel mirror must be helix or stack");
        }
        if (c.vessel->n_particles < 1000) throw ConfigError("vessel needs n_particles >= 1000");
        if (c.vessel->n_steps < 100) throw ConfigError("vessel needs n_steps >= 100");
    } else {
        throw ConfigError("mode must be one of two-layer, stack, helix, trcheck, vessel");
    }
    if (c.output.empty()) throw ConfigError("output base name must be non-empty");
    return c;
}

int run_config(const std::string& path, std::optional<std::uint64_t> seed_override,
               const std::optional<std::string>& out_dir) {
    ScanConfig c;
    try {
        c = parse_config(path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    if (seed_override) c.seed = *seed_override;

    fs::path dir = out_dir ? fs::path(*out_dir) : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);

    try {
        if (c.mode == "two-layer") return run_two_layer(c, dir);
        if (c.mode == "stack") return run_stack(c, dir);
        if (c.mode == "helix") return run_helix(c, dir);
        if (c.mode == "trcheck") return run_trcheck(c, dir);
        return run_vessel_mode(c, dir);
    } catch (const SingularBoundarySystem& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

std::string emit_plot_script(const std::string& csv_path, const std::string& layout,
                             const std::optional<std::string>& out_path) {
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("cannot open CSV " + csv_path);
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kScatterHeader)
        throw HeaderMismatch("expected header '" + std::string(kScatterHeader) + "', got '" +
                             header + "'");

    const fs::path csv(csv_path);
    const fs::path script =
        out_path ? fs::path(*out_path) : csv.parent_path() / (csv.stem().string() + ".gp");
    std::ofstream out(script);
    if (!out) throw ConfigError("cannot open script file " + script.string());

    const std::string data = csv.filename().string();
    out << "# gnuplot script generated from " << data << "\n";
    out << "set datafile separator ','\n";
    out << "set xlabel 'k (1/nm)'\n";
    out << "set key outside\n";
    if (layout == "fig1a") {
        out << "set ylabel 'probability'\n";
        out << "set title 'Two-layer mirror: spin-resolved reflection and transmission'\n";
        out << "plot '" << data << "' using 1:2 with lines title 'R(++) = R(--)', \\\n"
            << "     '' using 1:4 with lines title 'R(-+)', \\\n"
            << "     '' using 1:3 with lines title 'R(+-)', \\\n"
            << "     '' using 1:6 with lines title 'T(++)', \\\n"
            << "     '' using 1:7 with lines title 'T(+-) = T(-+)', \\\n"
            << "     '' using 1:9 with lines title 'T(--)'\n";
    } else if (layout == "fig2" || layout == "fig3") {
        const bool refl = layout == "fig2";
        const char* what = refl ? "reflectivity" : "transmissivity";
        // Columns: noflip(+)=pp, flip from +: mp; noflip(-)=mm, flip from -: pm.
        const int pp = refl ? 2 : 6, pm = refl ? 3 : 7, mp = refl ? 4 : 8, mm = refl ? 5 : 9;
        out << "set multiplot layout 2,1 title 'Helicoidal mirror " << what << "'\n";
        out << "set ylabel '" << what << "'\n";
        out << "set title 'incident |+>'\n";
        out << "plot '" << data << "' using 1:" << pp
            << " with lines lt 1 title 'without spin flip', \\\n"
            << "     '' using 1:" << mp << " with lines dt 2 lt 2 title 'with spin flip'\n";
        out << "set title 'incident |->'\n";
        out << "plot '" << data << "' using 1:" << mm
            << " with lines lt 1 title 'without spin flip', \\\n"
            << "     '' using 1:" << pm << " with lines dt 2 lt 2 title 'with spin flip'\n";
        out << "unset multiplot\n";
    } else {
        throw ConfigError("unknown layout '" + layout + "' (use fig1a, fig2, fig3)");
    }
    return script.string();
}

}  // namespace spinrefl
