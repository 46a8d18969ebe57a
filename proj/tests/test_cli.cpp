#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = TREXKIT_CLI_PATH;

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "trexkit_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

int run_capture_stderr(const std::string& args, const fs::path& err_file,
                       std::string& err_text) {
    const std::string cmd =
        kCli + " " + args + " > /dev/null 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    std::ifstream in(err_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    err_text = buf.str();
    return WEXITSTATUS(status);
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

// Deterministic p = 8 design with three strong planted features, written once.
fs::path fixture_dir() {
    static const fs::path dir = [] {
        const fs::path d = scratch_dir() / "fixtures";
        fs::create_directories(d);
        write_file(d / "x1.csv", "1\n0\n");
        write_file(d / "y1.csv", "2\n1\n");

        const int n = 40, p = 8;
        std::uint64_t state = 12345;
        auto next_unit = [&state] {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<double>(state >> 11) * 0x1.0p-53;
        };
        auto next_normal = [&] {
            const double u = std::max(next_unit(), 1e-300);
            const double v = next_unit();
            return std::sqrt(-2.0 * std::log(u)) *
                   std::cos(2.0 * 3.14159265358979323846 * v);
        };
        std::ostringstream xs, ys;
        xs.precision(17);
        ys.precision(17);
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = 0; j < p; ++j) {
                const double value = next_normal();
                if (j < 3) dot += 2.5 * value;
                xs << value << (j + 1 < p ? "," : "\n");
            }
            ys << dot + 0.3 * next_normal() << "\n";
        }
        write_file(d / "xk.csv", xs.str());
        write_file(d / "yk.csv", ys.str());
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("single-feature solve reproduces the closed form") {
    const auto fx = fixture_dir();
    const auto out = scratch_dir() / "toy";
    REQUIRE(run("trex-solve " + (fx / "x1.csv").string() + " " +
                (fx / "y1.csv").string() + " --phi 0.5 --out " + out.string()) ==
            0);
    const json report = json::parse(read_file(out / "solution.json"));
    CHECK(report["value"].get<double>() ==
          doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(report["winner"]["feature"].get<int>() == 1);
    CHECK(report["beta_hat"][0].get<double>() ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-4));
    CHECK(report["config"]["command"].get<std::string>() == "trex-solve");
    CHECK(fs::exists(out / "topology.csv"));
    CHECK(fs::exists(out / "histogram.csv"));
}

TEST_CASE("exit codes distinguish usage, io, config, and dimension failures") {
    const auto fx = fixture_dir();
    const std::string x1 = (fx / "x1.csv").string();
    const std::string y1 = (fx / "y1.csv").string();

    CHECK(run("no-such-command") == 1);
    CHECK(run("trex-solve") == 1);
    CHECK(run("--help") == 0);

    std::string err;
    const auto err_file = scratch_dir() / "stderr.txt";
    CHECK(run_capture_stderr("trex-solve " + x1 + " /nonexistent/y.csv",
                             err_file, err) == 2);
    CHECK(err.find("/nonexistent/y.csv") != std::string::npos);

    CHECK(run("trex-solve " + x1 + " " + y1 + " --phi 0") == 3);
    CHECK(run("trex-heuristic " + x1 + " " + y1 + " --phi -1") == 3);
    CHECK(run("knockoff " + x1 + " " + y1 + " --q 1.5") == 3);
    CHECK(run("knockoff " + x1 + " " + y1 + " --stat banana") == 3);

    const auto bad = scratch_dir() / "bad";
    fs::create_directories(bad);
    write_file(bad / "y3.csv", "1\n2\n3\n");
    CHECK(run("trex-solve " + x1 + " " + (bad / "y3.csv").string()) == 3);
}

TEST_CASE("reports are byte-identical across runs and parallelism") {
    const auto fx = fixture_dir();
    const std::string xy =
        (fx / "xk.csv").string() + " " + (fx / "yk.csv").string();
    const auto a = scratch_dir() / "det_a";
    const auto b = scratch_dir() / "det_b";
    const auto c = scratch_dir() / "det_c";

    const std::string common = " --stat lasso --q 0.3 --seed 11 --out ";
    REQUIRE(run("knockoff " + xy + common + a.string()) == 0);
    REQUIRE(run("knockoff " + xy + common + b.string()) == 0);
    REQUIRE(run("knockoff " + xy + common + c.string() + " --parallelism 4") ==
            0);

    const std::string report = read_file(a / "knockoff.json");
    CHECK(!report.empty());
    CHECK(report == read_file(b / "knockoff.json"));
    CHECK(report == read_file(c / "knockoff.json"));
    CHECK(read_file(a / "w_statistics.csv") ==
          read_file(c / "w_statistics.csv"));
}

TEST_CASE("knockoff selection on planted signal includes the true features") {
    const auto fx = fixture_dir();
    const auto out = scratch_dir() / "ko_sel";
    REQUIRE(run("knockoff " + (fx / "xk.csv").string() + " " +
                (fx / "yk.csv").string() + " --stat lasso --q 0.3 --out " +
                out.string()) == 0);
    const json report = json::parse(read_file(out / "knockoff.json"));
    const auto selected = report["selected"].get<std::vector<int>>();
    for (int j : {1, 2, 3}) {
        CHECK(std::find(selected.begin(), selected.end(), j) != selected.end());
    }
    CHECK(report["W"].size() == 8);
    CHECK(report["Z"].size() == 16);
}

TEST_CASE("path and heuristic commands write their tables") {
    const auto fx = fixture_dir();
    const std::string xy =
        (fx / "xk.csv").string() + " " + (fx / "yk.csv").string();

    const auto pout = scratch_dir() / "path";
    REQUIRE(run("trex-path " + xy + " --phi-grid 1.5,1.0,0.5 --out " +
                pout.string()) == 0);
    const std::string points = read_file(pout / "path_points.csv");
    CHECK(count_lines(points) == 4);  // header + 3 grid values
    CHECK(points.rfind("phi,value,winner_feature,winner_sign", 0) == 0);
    CHECK(count_lines(read_file(pout / "entry_values.csv")) == 9);

    const auto hout = scratch_dir() / "heur";
    REQUIRE(run("trex-heuristic " + xy + " --starts 3 --seed 7 --out " +
                hout.string()) == 0);
    const json report = json::parse(read_file(hout / "heuristic.json"));
    CHECK(report["traces"].size() == 3);
    CHECK(report["best_value"].get<double>() > 0.0);
    CHECK(count_lines(read_file(hout / "traces.csv")) == 4);

    CHECK(run("trex-path " + xy + " --phi-grid 0.5,1.0") == 3);
}

TEST_CASE("simulation commands run a two-rep config reproducibly") {
    const auto cfg = scratch_dir() / "sim.json";
    write_file(cfg, R"({"n": 30, "p": 12, "sparsity": 3, "n_reps": 2,
        "seed": 5, "statistics": ["lasso"], "q_levels": [0.2],
        "n_starts": 3})");

    const auto a = scratch_dir() / "sim_a";
    const auto b = scratch_dir() / "sim_b";
    REQUIRE(run("sim-fdr " + cfg.string() + " --out " + a.string()) == 0);
    REQUIRE(run("sim-fdr " + cfg.string() + " --out " + b.string() +
                " --parallelism 3") == 0);
    const std::string records = read_file(a / "fdr_records.csv");
    CHECK(count_lines(records) == 3);  // header + 2 reps
    CHECK(read_file(a / "fdr_report.json") == read_file(b / "fdr_report.json"));
    CHECK(records == read_file(b / "fdr_records.csv"));
    const json report = json::parse(read_file(a / "fdr_report.json"));
    CHECK(report["records"].size() == 2);
    CHECK(report["config"]["n_reps"].get<int>() == 2);

    const auto h = scratch_dir() / "sim_h";
    REQUIRE(run("sim-heuristic " + cfg.string() + " --out " + h.string()) == 0);
    CHECK(count_lines(read_file(h / "success_curve.csv")) == 4);
    CHECK(count_lines(read_file(h / "heuristic_records.csv")) == 3);

    CHECK(run("sim-fdr /nonexistent/config.json") == 2);
    const auto bad_cfg = scratch_dir() / "bad.json";
    write_file(bad_cfg, R"({"n": 30, "p": 12, "kappa": 2.0})");
    CHECK(run("sim-fdr " + bad_cfg.string()) == 3);
}
