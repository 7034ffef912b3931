#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "retint/io.hpp"
#include "retint/theory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = RETINT_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("retint_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("generate writes the series, its sidecar, and is byte-reproducible") {
    TempDir tmp;
    const std::string out = (tmp.path / "series.bin").string();
    CHECK(run("generate --n 4096 --gamma 0.5 --seed 42 --out " + out) == 0);
    CHECK(fs::exists(out));
    CHECK(fs::file_size(out) == 4096 * sizeof(double));

    const json meta = read_json(out + ".json");
    CHECK(meta.at("n") == 4096);
    CHECK(meta.at("gamma") == 0.5);
    CHECK(meta.at("seed") == 42);
    CHECK(meta.at("kind") == "fourier_filtered");

    const std::string again = (tmp.path / "series2.bin").string();
    CHECK(run("generate --n 4096 --gamma 0.5 --seed 42 --out " + again) == 0);
    CHECK(slurp(out) == slurp(again));

    // CSV format round-trips through the reader
    const std::string csv = (tmp.path / "series.csv").string();
    CHECK(run("generate --n 4096 --gamma 0.5 --seed 42 --format csv --out " + csv) == 0);
    const auto from_csv = retint::io::read_series(csv);
    const auto from_bin = retint::io::read_series(out);
    REQUIRE(from_csv.n() == from_bin.n());
    for (std::size_t i = 0; i < 64; ++i)
        CHECK(from_csv.values[i] == from_bin.values[i]);
}

TEST_CASE("parameter errors exit with code 2, starved data with 3") {
    TempDir tmp;
    const std::string out = (tmp.path / "x.bin").string();
    CHECK(run("generate --n 4096 --gamma 1.5 --out " + out) == 2);
    CHECK(run("generate --n 1000 --gamma 0.5 --out " + out) == 2);
    CHECK(run("nonsense") == 2);
    CHECK(run("intervals --series " + (tmp.path / "missing.bin").string() +
              " --q 2 --out " + (tmp.path / "iv.csv").string()) == 2);

    CHECK(run("generate --n 4096 --gamma 0.5 --seed 1 --out " + out) == 0);
    CHECK(run("intervals --series " + out + " --q 50 --out " +
              (tmp.path / "iv.csv").string()) == 3);
}

TEST_CASE("intervals: summary fields and the q=0 sanity value") {
    TempDir tmp;
    const std::string series = (tmp.path / "iid.bin").string();
    CHECK(run("generate --iid --n 1048576 --seed 3 --out " + series) == 0);
    const std::string iv = (tmp.path / "iv.csv").string();
    CHECK(run("intervals --series " + series + " --q 0 --out " + iv) == 0);

    const json summary = read_json(iv + ".json");
    CHECK(summary.at("q") == 0.0);
    CHECK(summary.at("gamma_target") == 1.0);
    const double mean_r = summary.at("mean_r").get<double>();
    CHECK(std::abs(mean_r - 2.0) < 0.02);  // exceedance probability 1/2
    const auto n_events = summary.at("n_events").get<std::size_t>();
    const auto n_intervals = summary.at("n_intervals").get<std::size_t>();
    CHECK(n_intervals == n_events - 1);

    std::ifstream csv(iv);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "r,R");
}

TEST_CASE("theory: solved constants satisfy the normalization equation") {
    TempDir tmp;
    const std::string params_path = (tmp.path / "params.json").string();
    const std::string curve_path = (tmp.path / "curve.csv").string();
    CHECK(run("theory --gamma 0.5 --mean-r 743 --out " + params_path + " --curve " +
              curve_path) == 0);

    const auto params = retint::io::read_theory_params(params_path);
    CHECK(params.gamma == 0.5);
    CHECK(params.s0 == 1.0 / 743.0);
    const double s = 2.0;
    const double rhs =
        1.0 + std::exp(params.p0 +
                       retint::log_upper_incomplete_gamma(s, params.p0) -
                       std::log(0.5) - s * std::log(params.p0));
    CHECK(std::abs(params.s0 * rhs - 1.0) < 1e-12);

    std::ifstream curve(curve_path);
    std::string header;
    std::getline(curve, header);
    CHECK(header == "R,pdf_normalized,pdf_cutoff");
    CHECK(run("theory --gamma 0.5 --mean-r 0.5 --out " + params_path) == 2);
}

TEST_CASE("fit: table and report from an interval file") {
    TempDir tmp;
    const std::string series = (tmp.path / "s.bin").string();
    const std::string iv = (tmp.path / "iv.csv").string();
    const std::string fit = (tmp.path / "fit.csv").string();
    CHECK(run("generate --n 1048576 --gamma 0.5 --seed 11 --out " + series) == 0);
    CHECK(run("intervals --series " + series + " --q 2.0 --out " + iv) == 0);
    CHECK(run("fit --intervals " + iv + " --fit-lo-mult 1 --fit-hi 0.9 --out " + fit) ==
          0);

    const json report = read_json(fit + ".json");
    CHECK(report.at("gamma") == 0.5);
    CHECK(report.at("n_intervals").get<std::size_t>() > 1000);
    CHECK(std::isfinite(report.at("s_m").get<double>()));
    CHECK(report.at("ks_distance").get<double>() < 1.0);
    CHECK(report.at("params").at("p0").get<double>() > 0.0);

    std::ifstream table(fit);
    std::string header;
    std::getline(table, header);
    CHECK(header ==
          "R,density_empirical,density_theory_cutoff,density_theory_normalized");
}

TEST_CASE("procsim: sidecar carries the run metadata") {
    TempDir tmp;
    const std::string iv = (tmp.path / "proc.csv").string();
    CHECK(run("procsim --gamma 0.5 --k-max 1000 --events 2000 --seed 5 --out " + iv) ==
          0);
    const json sidecar = read_json(iv + ".json");
    CHECK(sidecar.at("kind") == "process_sim");
    CHECK(sidecar.at("tail_policy") == "extend");
    CHECK(sidecar.at("forced_events") == 0);
    CHECK(sidecar.at("n_intervals") == 2000);
    CHECK(std::abs(sidecar.at("lag1_correlation").get<double>()) < 0.1);

    CHECK(run("procsim --gamma 0.5 --k-max 1000 --events 2000 --tail force --out " +
              iv) == 0);
    CHECK(read_json(iv + ".json").at("forced_events").get<std::uint64_t>() > 0);
}

TEST_CASE("sweep: table layout, missing markers, reproducibility") {
    TempDir tmp;
    const std::string out = (tmp.path / "sweep.csv").string();
    const std::string cmd = "sweep --gamma 0.5 --n 262144 --seeds 1,2 "
                            "--q 1.0:2.0:0.5 --fit-lo-mult 1 --fit-hi 1.0 --out " +
                            out;
    CHECK(run(cmd) == 0);
    std::ifstream table(out);
    std::string line;
    std::getline(table, line);
    CHECK(line == "q,s_m,stderr,theta,gamma");
    std::vector<std::string> rows;
    while (std::getline(table, line)) rows.push_back(line);
    CHECK(rows.size() == 3);

    const std::string bytes = slurp(out);
    CHECK(run(cmd) == 0);
    CHECK(slurp(out) == bytes);
}

TEST_CASE("config file supplies flags, command line overrides") {
    TempDir tmp;
    const std::string cfg = (tmp.path / "cfg.json").string();
    {
        std::ofstream out(cfg);
        out << R"({"generate": {"n": 4096, "gamma": 0.5, "seed": 42, "out": ")"
            << (tmp.path / "a.bin").string() << R"("}})";
    }
    CHECK(run("--config " + cfg + " generate") == 0);
    CHECK(fs::exists(tmp.path / "a.bin"));
    CHECK(read_json((tmp.path / "a.bin").string() + ".json").at("seed") == 42);

    CHECK(run("--config " + cfg + " generate --seed 7") == 0);
    CHECK(read_json((tmp.path / "a.bin").string() + ".json").at("seed") == 7);
}

TEST_CASE("outdir resolves relative outputs") {
    TempDir tmp;
    CHECK(run("--outdir " + tmp.path.string() +
              " generate --n 4096 --gamma 0.3 --seed 2 --out rel.bin") == 0);
    CHECK(fs::exists(tmp.path / "rel.bin"));
}

TEST_CASE("validate passes on this build") {
    TempDir tmp;
    const std::string report = (tmp.path / "validation.json").string();
    CHECK(run("validate --out " + report) == 0);
    const json j = read_json(report);
    CHECK(j.at("all_passed") == true);
    CHECK(j.at("checks").size() > 50);
}
