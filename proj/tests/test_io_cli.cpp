#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "test_helpers.hpp"

#include "lcusim/cli.hpp"
#include "lcusim/io.hpp"

using namespace lcusim;
using testutil::make_rng;
using testutil::random_state;

namespace fs = std::filesystem;

namespace {
const double r2 = 1.0 / std::numbers::sqrt2;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("lcusim-test-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// runs the built CLI binary, returns its exit code and captures stdout
int run_cli(const std::string& args, const TempDir& dir, std::string* output = nullptr) {
    const std::string out_file = dir.file("cli_stdout.txt");
    const std::string command =
        std::string(LCUSIM_CLI_PATH) + " " + args + " > " + out_file + " 2> /dev/null";
    const int status = std::system(command.c_str());
    if (output) *output = slurp(out_file);
    return WEXITSTATUS(status);
}
}  // namespace

TEST_CASE("state specs round-trip through JSON exactly") {
    auto rng = make_rng(113);
    const StateVector s = random_state(3, rng);
    const io::json j = io::state_to_json(s);
    const StateVector back = io::state_from_json(j);
    CHECK(max_abs_diff(back.amplitudes(), s.amplitudes()) < 1e-15);

    const StateVector basis = io::state_from_json(
        io::json{{"kind", "basis"}, {"num_qubits", 4}, {"index", 9}});
    CHECK(basis.amplitude(9) == complex_t{1, 0});

    CHECK_THROWS_AS(io::state_from_json(io::json{{"kind", "mystery"}}), std::invalid_argument);
    CHECK_THROWS_AS(
        io::state_from_json(io::json{{"kind", "amplitudes"},
                                     {"num_qubits", 1},
                                     {"amps", {{1.0, 0.0}, {1.0, 0.0}}}}),
        std::invalid_argument);
}

TEST_CASE("density matrices round-trip through JSON") {
    const DensityMatrix rho = pps(2, 0.3);
    const DensityMatrix back = io::density_from_json(io::density_to_json(rho));
    CHECK(max_abs_diff(back.entries(), rho.entries()) < 1e-15);
}

TEST_CASE("distribution CSV files parse back bit for bit") {
    TempDir dir;
    std::vector<double> probs = {0.125, 0.375, 0.5, 1.0 / 3.0};
    double scale = 0.0;
    for (double p : probs) scale += p;
    for (double& p : probs) p /= scale;

    const std::string path = dir.file("dist.csv");
    io::write_distribution_csv(path, probs);
    const auto back = io::read_distribution_csv(path);
    REQUIRE(back.size() == probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) CHECK(back[i] == probs[i]);

    const std::string text = slurp(path);
    CHECK(text.rfind("position,probability\n", 0) == 0);
}

TEST_CASE("cmd_ladder circuit mode reports branches and fidelities") {
    TempDir dir;
    io::save_state(dir.file("in.json"), basis_state(2, 1));
    io::save_state(dir.file("add_ref.json"), basis_state(2, 2));
    io::save_state(dir.file("sub_ref.json"), basis_state(2, 0));

    cli::LadderOptions opt;
    opt.input_path = dir.file("in.json");
    opt.references = {"00=" + dir.file("add_ref.json"), "10=" + dir.file("sub_ref.json")};
    opt.output_path = dir.file("report.json");

    std::ostringstream out;
    const io::json report = cli::cmd_ladder(opt, out);

    CHECK(report.at("version").get<std::string>() == lcusim::version);
    CHECK(report.at("command").get<std::string>() == "ladder");
    double total = 0.0;
    for (const auto& row : report.at("outcomes")) total += row.at("probability").get<double>();
    CHECK(std::abs(total - 1.0) < 1e-10);
    CHECK(std::abs(report.at("outcomes")[0].at("probability").get<double>() - 0.5) < 1e-12);

    for (const auto& f : report.at("fidelities")) {
        CHECK(std::abs(f.at("fidelity").get<double>() - 1.0) < 1e-12);
        CHECK(f.at("fidelity_deviation").is_number());
    }

    CHECK(fs::exists(opt.output_path));
    const io::json reread = io::load_json(opt.output_path);
    CHECK(reread.at("outcomes") == report.at("outcomes"));
    CHECK(out.str().find("pattern") != std::string::npos);

    // a reference against a dead branch reports a null fidelity
    opt.references = {"01=" + dir.file("add_ref.json")};
    opt.output_path.clear();
    const io::json dead = cli::cmd_ladder(opt, out);
    CHECK(dead.at("fidelities")[0].at("fidelity").is_null());

    opt.references = {"xy=" + dir.file("add_ref.json")};
    CHECK_THROWS_AS(cli::cmd_ladder(opt, out), std::invalid_argument);
    opt.references = {"no-equals-sign"};
    CHECK_THROWS_AS(cli::cmd_ladder(opt, out), std::invalid_argument);
}

TEST_CASE("cmd_ladder oracle mode reports the raw operator output") {
    TempDir dir;
    io::save_state(dir.file("in.json"), basis_state(2, 0));

    cli::LadderOptions opt;
    opt.input_path = dir.file("in.json");
    opt.mode = "oracle";
    opt.kind = "sub";

    std::ostringstream out;
    const io::json report = cli::cmd_ladder(opt, out);
    CHECK(report.at("output_norm").get<double>() == 0.0);
    for (const auto& amp : report.at("oracle_output"))
        CHECK(amp[0].get<double>() == 0.0);

    opt.kind = "bogus";
    CHECK_THROWS_AS(cli::cmd_ladder(opt, out), std::invalid_argument);
    opt.kind.clear();
    CHECK_THROWS_AS(cli::cmd_ladder(opt, out), std::invalid_argument);
}

TEST_CASE("cmd_qrw writes the distribution and statistics") {
    TempDir dir;
    cli::QrwOptions opt;
    opt.walker_qubits = 3;
    opt.steps = 2;
    opt.start = 4;
    opt.output_csv = dir.file("dist.csv");
    opt.report_path = dir.file("report.json");

    std::ostringstream out;
    const io::json report = cli::cmd_qrw(opt, out);

    const auto csv = io::read_distribution_csv(opt.output_csv);
    const auto direct = run_walk(
        WalkConfig{3, 2, 45.0, basis_state(3, 4), basis_state(1, 0)});
    REQUIRE(csv.size() == direct.probabilities.size());
    for (std::size_t x = 0; x < csv.size(); ++x)
        CHECK(std::abs(csv[x] - direct.probabilities[x]) < 1e-15);

    CHECK(report.at("statistics").at("center").get<std::size_t>() == 4);
    CHECK(std::abs(report.at("total_probability").get<double>() - 1.0) < 1e-10);
    CHECK(fs::exists(opt.report_path));
}

TEST_CASE("cmd_qrw accepts a superposed start from a state spec") {
    TempDir dir;
    cvector_t amps(8, complex_t{0, 0});
    amps[2] = amps[3] = r2;
    io::save_state(dir.file("start.json"), from_amplitudes(3, std::move(amps), true));

    cli::QrwOptions opt;
    opt.walker_qubits = 3;
    opt.steps = 4;
    opt.start_spec_path = dir.file("start.json");
    opt.output_csv = dir.file("dist.csv");

    std::ostringstream out;
    cli::cmd_qrw(opt, out);
    const auto csv = io::read_distribution_csv(opt.output_csv);

    const auto single =
        run_walk(WalkConfig{3, 4, 45.0, basis_state(3, 2), basis_state(1, 0)});
    for (std::size_t x = 0; x < 8; ++x) {
        const double expect =
            0.5 * single.probabilities[x] + 0.5 * single.probabilities[(x + 7) % 8];
        CHECK(std::abs(csv[x] - expect) < 1e-12);
    }
}

TEST_CASE("cmd_fidelity compares state and density files") {
    TempDir dir;
    io::save_state(dir.file("a.json"), basis_state(2, 0));
    io::save_state(dir.file("b.json"), basis_state(2, 2));
    io::save_state(dir.file("c.json"), from_amplitudes(2, {r2, r2, 0.0, 0.0}, true));
    io::save_json(dir.file("rho.json"), io::density_to_json(from_pure(basis_state(2, 0))));

    CHECK(std::abs(cli::cmd_fidelity(dir.file("a.json"), dir.file("a.json")) - 1.0) < 1e-12);
    CHECK(cli::cmd_fidelity(dir.file("a.json"), dir.file("b.json")) == 0.0);
    CHECK(std::abs(cli::cmd_fidelity(dir.file("a.json"), dir.file("c.json")) - 0.5) < 1e-12);
    CHECK(std::abs(cli::cmd_fidelity(dir.file("rho.json"), dir.file("a.json")) - 1.0) < 1e-12);
}

TEST_CASE("cmd_reproduce regenerates the bundled scenarios") {
    TempDir dir;
    std::ostringstream out;

    const io::json t1 = cli::cmd_reproduce("table1", dir.file("t1"), out);
    CHECK(std::abs(t1.at("outcomes")[0].at("probability").get<double>() - 0.5) < 1e-12);
    CHECK(std::abs(t1.at("fidelities")[0].at("fidelity").get<double>() - 1.0) < 1e-12);
    CHECK(fs::exists(dir.file("t1") + "/table1_report.json"));
    CHECK(out.str().find("NMR experiment") != std::string::npos);
    CHECK(out.str().find("49.56") != std::string::npos);

    const io::json t2 = cli::cmd_reproduce("table2", dir.file("t2"), out);
    CHECK(std::abs(t2.at("fidelities")[1].at("fidelity").get<double>() - 1.0) < 1e-12);

    CHECK_THROWS_AS(cli::cmd_reproduce("table9", dir.file("t9"), out), std::invalid_argument);
}

TEST_CASE("reproduce fig7 delegates to the default qrw run") {
    TempDir dir;
    std::ostringstream out;
    cli::cmd_reproduce("fig7", dir.file("repro"), out);

    cli::QrwOptions opt;  // the defaults are the fig7 configuration
    opt.output_csv = dir.file("default.csv");
    cli::cmd_qrw(opt, out);

    CHECK(slurp(dir.file("repro") + "/fig7.csv") == slurp(opt.output_csv));
}

TEST_CASE("the CLI binary maps errors to documented exit codes") {
    TempDir dir;
    io::save_state(dir.file("a.json"), basis_state(2, 0));

    std::string output;
    CHECK(run_cli("--version", dir, &output) == 0);
    CHECK(output.find(lcusim::version) != std::string::npos);

    CHECK(run_cli("fidelity " + dir.file("a.json") + " " + dir.file("a.json"), dir, &output) ==
          0);
    CHECK(output.rfind("1.000000000000", 0) == 0);

    // usage errors
    CHECK(run_cli("bogus-subcommand", dir) == 1);
    CHECK(run_cli("reproduce --scenario table9 --output-dir " + dir.file("x"), dir) == 1);
    CHECK(run_cli("qrw", dir) == 1);  // missing required --output

    // validation errors
    CHECK(run_cli("ladder --input " + dir.file("missing.json"), dir) == 2);
    std::ofstream(dir.file("broken.json")) << "{ not json";
    CHECK(run_cli("ladder --input " + dir.file("broken.json"), dir) == 2);
    std::ofstream(dir.file("short.json")) << R"({"kind":"basis","num_qubits":2,"index":7})";
    CHECK(run_cli("ladder --input " + dir.file("short.json"), dir) == 2);

    // a full ladder run through the binary
    CHECK(run_cli("ladder --input " + dir.file("a.json") + " --output " + dir.file("rep.json"),
                  dir, &output) == 0);
    CHECK(fs::exists(dir.file("rep.json")));
}
