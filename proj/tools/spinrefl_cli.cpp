#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spinrefl/errors.hpp"
#include "spinrefl/scan.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spinrefl: spin-resolved neutron mirror scans"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    CLI::App* run = app.add_subcommand("run", "execute a JSON scan config");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option(
        "--seed",
        [&seed](const CLI::results_t& r) {
            try {
                std::size_t pos = 0;
                seed = std::stoull(r.at(0), &pos);
                return pos == r.at(0).size();
            } catch (const std::exception&) {
                return false;
            }
        },
        "override the config seed");
    run->add_option(
        "--out",
        [&out_dir](const CLI::results_t& r) {
            out_dir = r.at(0);
            return true;
        },
        "output directory (default: current)");

    std::string csv_path, layout, script_out;
    CLI::App* plot = app.add_subcommand("plot", "emit a gnuplot script for a scan CSV");
    plot->add_option("csv", csv_path, "scan CSV path")->required();
    plot->add_option("--layout", layout, "fig1a | fig2 | fig3")->required();
    plot->add_option("--out", script_out, "script output path (default: <csv stem>.gp)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help exits 0; any parse failure is 1
    }

    if (run->parsed()) return spinrefl::run_config(config_path, seed, out_dir);

    try {
        const std::string path = spinrefl::emit_plot_script(
            csv_path, layout,
            script_out.empty() ? std::nullopt : std::optional<std::string>(script_out));
        std::cout << path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "plot error: " << e.what() << "\n";
        return 1;
    }
}
