// Command-line front end: run the addition/subtraction circuit or its matrix
// oracles on a state file, drive the discrete-time quantum walk, compare
// states by overlap fidelity, and regenerate the bundled demo scenarios.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "lcusim/cli.hpp"
#include "lcusim/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact simulator for LCU ladder operators and coined quantum walks"};
    app.set_version_flag("--version", lcusim::version);
    app.require_subcommand(1);

    lcusim::cli::LadderOptions ladder_opt;
    CLI::App* ladder = app.add_subcommand(
        "ladder", "run the two-ancilla addition/subtraction circuit or a matrix oracle");
    ladder->add_option("--input", ladder_opt.input_path, "state spec JSON for the work register")
        ->required();
    ladder->add_option("--mode", ladder_opt.mode, "circuit or oracle")
        ->check(CLI::IsMember({"circuit", "oracle"}))
        ->capture_default_str();
    ladder->add_option("--kind", ladder_opt.kind,
                       "operator for oracle mode: add, sub, add-boundary, sub-boundary, "
                       "create or annihilate");
    ladder->add_option("--ref", ladder_opt.references,
                       "PATTERN=state-file reference for branch fidelity (repeatable)");
    ladder->add_option("--output", ladder_opt.output_path, "write the run report JSON here");

    lcusim::cli::QrwOptions qrw_opt;
    CLI::App* qrw = app.add_subcommand("qrw", "run the coined walk on a cycle of 2^w positions");
    qrw->add_option("--walker-qubits", qrw_opt.walker_qubits, "walker register size w")
        ->capture_default_str();
    qrw->add_option("--steps", qrw_opt.steps, "number of walk steps")->capture_default_str();
    qrw->add_option("--coin-angle-deg", qrw_opt.coin_angle_deg, "coin rotation angle in degrees")
        ->capture_default_str();
    CLI::Option* start_opt =
        qrw->add_option("--start", qrw_opt.start, "start position")->capture_default_str();
    qrw->add_option("--start-spec", qrw_opt.start_spec_path,
                    "state spec JSON for the walker (instead of --start)")
        ->excludes(start_opt);
    qrw->add_option("--coin-init", qrw_opt.coin_init, "0, 1 or a state spec JSON for the coin")
        ->capture_default_str();
    qrw->add_option("--output", qrw_opt.output_csv, "position,probability CSV output path")
        ->required();
    qrw->add_option("--report", qrw_opt.report_path, "write the run report JSON here");

    std::string fid_a, fid_b;
    CLI::App* fid = app.add_subcommand(
        "fidelity", "overlap fidelity between two state or density-matrix files");
    fid->add_option("a", fid_a, "first file")->required();
    fid->add_option("b", fid_b, "second file")->required();

    std::string scenario, output_dir = ".";
    CLI::App* repro = app.add_subcommand("reproduce", "regenerate a bundled demo scenario");
    repro->add_option("--scenario", scenario, "table1, table2, fig7 or fig8")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "fig7", "fig8"}));
    repro->add_option("--output-dir", output_dir, "directory for the scenario artifacts")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        if (ladder->parsed()) {
            lcusim::cli::cmd_ladder(ladder_opt, std::cout);
        } else if (qrw->parsed()) {
            lcusim::cli::cmd_qrw(qrw_opt, std::cout);
        } else if (fid->parsed()) {
            std::printf("%.12f\n", lcusim::cli::cmd_fidelity(fid_a, fid_b));
        } else if (repro->parsed()) {
            lcusim::cli::cmd_reproduce(scenario, output_dir, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;  // validation failure
    }
    return 0;
}
