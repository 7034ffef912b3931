// Command-line front end: generate | intervals | theory | fit | procsim |
// sweep | validate. Exit codes: 0 ok, 1 internal error, 2 parameter error,
// 3 insufficient data.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "retint/errors.hpp"
#include "retint/estimator.hpp"
#include "retint/extremes.hpp"
#include "retint/generator.hpp"
#include "retint/io.hpp"
#include "retint/procsim.hpp"
#include "retint/theory.hpp"
#include "retint/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace retint;

namespace {

// Flat or subcommand-scoped JSON config files; values given on the command
// line take precedence over the file.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        input >> j;
        std::vector<CLI::ConfigItem> items;
        flatten({}, j, items);
        return items;
    }

  private:
    static void flatten(std::vector<std::string> parents, const json& j,
                        std::vector<CLI::ConfigItem>& out) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                auto scoped = parents;
                scoped.push_back(it.key());
                flatten(scoped, *it, out);
            } else {
                CLI::ConfigItem item;
                item.parents = parents;
                item.name = it.key();
                if (it->is_array()) {
                    for (const auto& e : *it)
                        item.inputs.push_back(e.is_string() ? e.get<std::string>()
                                                            : e.dump());
                } else {
                    item.inputs.push_back(it->is_string() ? it->get<std::string>()
                                                          : it->dump());
                }
                out.push_back(item);
            }
        }
    }
};

struct GlobalOpts {
    std::string outdir = ".";
};

fs::path resolve(const GlobalOpts& g, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute()) return p;
    return fs::path(g.outdir) / p;
}

std::vector<double> parse_q_grid(const std::string& spec) {
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream in(spec);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(step > 0.0))
            throw ParameterError("bad q grid '" + spec + "', expected lo:hi:step");
        for (double q = lo; q <= hi + 1e-9 * step; q += step) grid.push_back(q);
    } else {
        std::istringstream in(spec);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (!tok.empty()) grid.push_back(std::stod(tok));
        }
    }
    if (grid.empty()) throw ParameterError("empty q grid");
    return grid;
}

io::IntervalSummary summarize(const IntervalSeries& iv, std::size_t n_events) {
    return {iv.q, n_events, iv.intervals.size(), iv.mean_r, iv.gamma_target};
}

void cmd_generate(const GlobalOpts& g, std::size_t n, bool paper_scale, bool n_given,
                  double gamma, bool iid, std::uint64_t seed, const std::string& out,
                  const std::string& format) {
    if (paper_scale && !n_given) n = std::size_t{1} << 25;
    const TimeSeries series = iid ? generate_iid_gaussian(n, seed)
                                  : generate_lrc_gaussian(n, gamma, seed);
    const auto fmt =
        format == "csv" ? io::SeriesFormat::csv : io::SeriesFormat::binary;
    io::write_series(resolve(g, out), series, fmt);
    std::cout << "wrote " << out << " (n=" << series.n()
              << ", kind=" << to_string(series.kind) << ")\n";
}

void cmd_intervals(const GlobalOpts& g, const std::string& series_path, double q,
                   const std::string& out) {
    const TimeSeries series = io::read_series(resolve(g, series_path));
    const EventSeries events = binarize(series, q);
    const IntervalSeries iv = return_intervals(events, series.gamma_target);
    const fs::path out_path = resolve(g, out);
    io::write_intervals(out_path, iv);
    io::write_interval_summary(fs::path(out_path.string() + ".json"),
                               summarize(iv, events.event_indices.size()));
    std::cout << "wrote " << out << ": n_intervals=" << iv.intervals.size()
              << " mean_r=" << iv.mean_r << "\n";
}

void cmd_theory(const GlobalOpts& g, double gamma, double mean_r,
                const std::string& out, const std::string& curve,
                int points_per_decade, double r_max) {
    const TheoryParams params = solve_constants(gamma, mean_r);
    io::write_theory_params(resolve(g, out), params);
    if (!curve.empty())
        io::write_theory_curve(resolve(g, curve), params, points_per_decade, r_max);
    std::cout << "p0=" << params.p0 << " A=" << params.A << " B=" << params.B
              << "\n";
}

void cmd_fit(const GlobalOpts& g, const std::string& intervals_path,
             std::string summary_path, double gamma_override, int bins_per_decade,
             double fit_lo_mult, double fit_hi, const std::string& out) {
    const fs::path in_path = resolve(g, intervals_path);
    if (summary_path.empty()) summary_path = intervals_path + ".json";
    const io::IntervalSummary meta =
        io::read_interval_summary(resolve(g, summary_path));
    const double gamma = gamma_override > 0.0 ? gamma_override : meta.gamma_target;

    const IntervalSeries iv = io::read_intervals(in_path, meta.q, gamma);
    const std::vector<double> scaled = scale_intervals(iv);
    const Histogram hist = log_binned_histogram(scaled, bins_per_decade, iv.mean_r);
    const TheoryParams params = solve_constants(gamma, iv.mean_r);
    const double s0 = 1.0 / iv.mean_r;
    const SlopeEstimate est =
        fit_powerlaw_slope(hist, fit_lo_mult * s0, fit_hi, meta.q, gamma);
    const double ks = ks_distance(scaled, params);

    const fs::path out_path = resolve(g, out);
    io::write_fit_table(out_path, hist, params);
    const json report{{"q", meta.q},
                      {"gamma", gamma},
                      {"mean_r", iv.mean_r},
                      {"n_intervals", iv.intervals.size()},
                      {"s_m", est.s_m},
                      {"stderr", est.stderr_s},
                      {"theta", gamma == 1.0 ? json() : json(est.theta())},
                      {"fit_lo", est.fit_lo},
                      {"fit_hi", est.fit_hi},
                      {"n_bins", est.n_bins},
                      {"ks_distance", ks},
                      {"params",
                       {{"gamma", params.gamma},
                        {"mean_r", params.mean_r},
                        {"s0", params.s0},
                        {"p0", params.p0},
                        {"A", params.A},
                        {"B", params.B}}}};
    std::ofstream jout(out_path.string() + ".json");
    jout << report.dump(2) << '\n';
    std::cout << "s_m=" << est.s_m << " theta="
              << (gamma == 1.0 ? std::string("n/a") : std::to_string(est.theta()))
              << " ks=" << ks << "\n";
}

void cmd_procsim(const GlobalOpts& g, double gamma, std::uint64_t k_max,
                 std::size_t events, std::uint64_t seed, const std::string& tail,
                 const std::string& exponent, const std::string& out) {
    ProcessConfig config;
    config.gamma = gamma;
    config.k_max = k_max;
    config.n_events_target = events;
    config.seed = seed;
    if (tail == "force")
        config.tail_policy = TailPolicy::force_at_k_max;
    else if (tail != "extend")
        throw ParameterError("procsim: --tail must be extend or force");
    if (exponent == "display")
        config.exponent = HazardExponent::display_gamma;
    else if (exponent != "standard")
        throw ParameterError("procsim: --exponent must be standard or display");

    const ProcessRun run = simulate_process(config);
    const IntervalSeries iv = return_intervals(run.events, gamma);
    const fs::path out_path = resolve(g, out);
    io::write_intervals(out_path, iv);

    const json sidecar{{"kind", "process_sim"},
                       {"gamma", gamma},
                       {"k_max", k_max},
                       {"n_events_target", events},
                       {"seed", seed},
                       {"tail_policy", tail},
                       {"exponent", exponent},
                       {"forced_events", run.forced_events},
                       {"clipped", run.clipped},
                       {"n_intervals", iv.intervals.size()},
                       {"mean_r", iv.mean_r},
                       {"lag1_correlation", lag1_interval_correlation(iv.intervals)}};
    std::ofstream jout(out_path.string() + ".json");
    jout << sidecar.dump(2) << '\n';
    std::cout << "simulated " << events << " events, mean_r=" << iv.mean_r
              << " forced=" << run.forced_events << "\n";
}

void cmd_sweep(const GlobalOpts& g, double gamma, std::size_t n, bool paper_scale,
               bool n_given, std::vector<std::uint64_t> seeds, const std::string& q_spec,
               int bins_per_decade, double fit_lo_mult, double fit_hi, unsigned jobs,
               const std::string& out) {
    if (paper_scale && !n_given) n = std::size_t{1} << 25;
    if (seeds.empty()) throw ParameterError("sweep: need at least one seed");
    const std::vector<double> q_grid = parse_q_grid(q_spec);

    // Pool intervals across seeds per threshold; series are generated one
    // at a time to bound memory.
    std::vector<std::vector<std::uint64_t>> pools(q_grid.size());
    for (std::uint64_t seed : seeds) {
        const TimeSeries series = generate_lrc_gaussian(n, gamma, seed);
        for (std::size_t i = 0; i < q_grid.size(); ++i) {
            const EventSeries events = binarize(series, q_grid[i]);
            if (events.event_indices.size() < 2) continue;
            const IntervalSeries iv = return_intervals(events, gamma);
            pools[i].insert(pools[i].end(), iv.intervals.begin(), iv.intervals.end());
        }
    }

    std::vector<SweepPoint> points(q_grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= q_grid.size()) return;
            SweepPoint& pt = points[i];
            pt.q = q_grid[i];
            pt.n_intervals = pools[i].size();
            if (pt.n_intervals < 100) continue;
            IntervalSeries iv;
            iv.intervals = pools[i];
            iv.q = pt.q;
            iv.gamma_target = gamma;
            double sum = 0.0;
            for (auto r : iv.intervals) sum += static_cast<double>(r);
            iv.mean_r = sum / static_cast<double>(iv.intervals.size());
            pt.mean_r = iv.mean_r;
            try {
                const std::vector<double> scaled = scale_intervals(iv);
                const Histogram hist =
                    log_binned_histogram(scaled, bins_per_decade, iv.mean_r);
                pt.estimate = fit_powerlaw_slope(hist, fit_lo_mult / iv.mean_r,
                                                 fit_hi, pt.q, gamma);
            } catch (const InsufficientDataError&) {
                pt.estimate.reset();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    io::write_sweep_table(resolve(g, out), points, gamma);
    std::size_t usable = 0;
    for (const auto& pt : points)
        if (pt.estimate) ++usable;
    std::cout << "wrote " << out << ": " << usable << "/" << points.size()
              << " usable thresholds\n";
}

int cmd_validate(const GlobalOpts& g, const std::string& out) {
    const std::vector<CheckResult> results = run_validation();
    bool all_passed = true;
    json checks = json::array();
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name
                  << "  measured=" << r.measured << " threshold=" << r.threshold
                  << "\n";
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"measured", r.measured},
                          {"threshold", r.threshold},
                          {"detail", r.detail}});
    }
    if (!out.empty()) {
        std::ofstream jout(resolve(g, out));
        jout << json{{"all_passed", all_passed}, {"checks", checks}}.dump(2) << '\n';
    }
    std::cout << (all_passed ? "validation passed" : "validation FAILED") << " ("
              << results.size() << " checks)\n";
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Return-interval statistics of extreme events in long-range "
        "correlated time series"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file; flags override its values");

    GlobalOpts global;
    app.add_option("--outdir", global.outdir,
                   "Directory for relative output paths")
        ->envname("RETINT_OUTDIR")
        ->capture_default_str();

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a Gaussian series");
    std::size_t gen_n = std::size_t{1} << 22;
    double gen_gamma = 0.5;
    bool gen_iid = false, gen_paper = false;
    std::uint64_t gen_seed = 42;
    std::string gen_out, gen_format = "bin";
    gen->add_option("--n", gen_n, "Series length (power of two)")
        ->capture_default_str();
    gen->add_flag("--paper-scale", gen_paper, "Default n becomes 2^25");
    gen->add_option("--gamma", gen_gamma, "Autocorrelation exponent in (0,1)");
    gen->add_flag("--iid", gen_iid, "Uncorrelated baseline instead of filtered noise");
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output series file")->required();
    gen->add_option("--format", gen_format, "bin or csv")
        ->check(CLI::IsMember({"bin", "csv"}))
        ->capture_default_str();
    gen->callback([&]() {
        cmd_generate(global, gen_n, gen_paper, gen->count("--n") > 0, gen_gamma,
                     gen_iid, gen_seed, gen_out, gen_format);
    });

    // intervals
    auto* ivc = app.add_subcommand("intervals", "Extract threshold return intervals");
    std::string iv_series, iv_out;
    double iv_q = 3.0;
    ivc->add_option("--series", iv_series, "Series file (with .json sidecar)")
        ->required();
    ivc->add_option("--q", iv_q, "Threshold in units of std dev")->required();
    ivc->add_option("--out", iv_out, "Output CSV (summary goes to <out>.json)")
        ->required();
    ivc->callback([&]() { cmd_intervals(global, iv_series, iv_q, iv_out); });

    // theory
    auto* thc = app.add_subcommand("theory", "Solve the distribution constants");
    double th_gamma = 0.5, th_mean = 743.0, th_rmax = 50.0;
    int th_ppd = 20;
    std::string th_out = "theory_params.json", th_curve;
    thc->add_option("--gamma", th_gamma, "Exponent in (0,1]")->required();
    thc->add_option("--mean-r", th_mean, "Mean return interval (> 1)")->required();
    thc->add_option("--out", th_out, "Params JSON path")->capture_default_str();
    thc->add_option("--curve", th_curve, "Optional theory-curve CSV path");
    thc->add_option("--points-per-decade", th_ppd, "Curve resolution")
        ->capture_default_str();
    thc->add_option("--r-max", th_rmax, "Curve upper end (scaled units)")
        ->capture_default_str();
    thc->callback([&]() {
        cmd_theory(global, th_gamma, th_mean, th_out, th_curve, th_ppd, th_rmax);
    });

    // fit
    auto* fit = app.add_subcommand("fit", "Histogram, slope fit and KS against theory");
    std::string fit_in, fit_summary, fit_out;
    double fit_gamma = -1.0, fit_lo_mult = 3.0, fit_hi = 0.3;
    int fit_bpd = 10;
    fit->add_option("--intervals", fit_in, "Interval CSV from 'intervals' or 'procsim'")
        ->required();
    fit->add_option("--summary", fit_summary,
                    "Summary JSON (default <intervals>.json)");
    fit->add_option("--gamma", fit_gamma, "Override gamma from the summary");
    fit->add_option("--bins-per-decade", fit_bpd, "Histogram resolution [4,20]")
        ->capture_default_str();
    fit->add_option("--fit-lo-mult", fit_lo_mult, "Fit window start, units of s0")
        ->capture_default_str();
    fit->add_option("--fit-hi", fit_hi, "Fit window end, scaled units (<= 1)")
        ->capture_default_str();
    fit->add_option("--out", fit_out, "Fit table CSV (report goes to <out>.json)")
        ->required();
    fit->callback([&]() {
        cmd_fit(global, fit_in, fit_summary, fit_gamma, fit_bpd, fit_lo_mult,
                fit_hi, fit_out);
    });

    // procsim
    auto* pro = app.add_subcommand("procsim", "Simulate the hazard process directly");
    double pro_gamma = 0.5;
    std::uint64_t pro_kmax = 100000, pro_seed = 1;
    std::size_t pro_events = 100000;
    std::string pro_tail = "extend", pro_expo = "standard", pro_out;
    pro->add_option("--gamma", pro_gamma, "Exponent in (0,1)")->required();
    pro->add_option("--k-max", pro_kmax, "Normalization horizon")->capture_default_str();
    pro->add_option("--events", pro_events, "Number of events to generate")
        ->capture_default_str();
    pro->add_option("--seed", pro_seed, "RNG seed")->capture_default_str();
    pro->add_option("--tail", pro_tail, "extend or force (beyond k_max)")
        ->check(CLI::IsMember({"extend", "force"}))
        ->capture_default_str();
    pro->add_option("--exponent", pro_expo,
                    "standard (k^-(1-gamma)) or display (k^-gamma)")
        ->check(CLI::IsMember({"standard", "display"}))
        ->capture_default_str();
    pro->add_option("--out", pro_out, "Interval CSV (sidecar <out>.json)")->required();
    pro->callback([&]() {
        cmd_procsim(global, pro_gamma, pro_kmax, pro_events, pro_seed, pro_tail,
                    pro_expo, pro_out);
    });

    // sweep
    auto* swp = app.add_subcommand("sweep", "Slope vs threshold sweep");
    double swp_gamma = 0.1, swp_lo_mult = 3.0, swp_hi = 0.3;
    std::size_t swp_n = std::size_t{1} << 22;
    bool swp_paper = false;
    std::vector<std::uint64_t> swp_seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::string swp_q, swp_out;
    int swp_bpd = 10;
    unsigned swp_jobs = std::max(1u, std::thread::hardware_concurrency());
    swp->add_option("--gamma", swp_gamma, "Exponent in (0,1)")->required();
    swp->add_option("--n", swp_n, "Series length per seed")->capture_default_str();
    swp->add_flag("--paper-scale", swp_paper, "Default n becomes 2^25");
    swp->add_option("--seeds", swp_seeds, "Seeds pooled into the statistics")
        ->delimiter(',')
        ->capture_default_str();
    swp->add_option("--q", swp_q, "Grid as lo:hi:step or comma list")->required();
    swp->add_option("--bins-per-decade", swp_bpd)->capture_default_str();
    swp->add_option("--fit-lo-mult", swp_lo_mult, "Fit window start, units of s0")
        ->capture_default_str();
    swp->add_option("--fit-hi", swp_hi, "Fit window end (<= 1)")->capture_default_str();
    swp->add_option("--jobs", swp_jobs, "Parallel threshold fits")
        ->capture_default_str();
    swp->add_option("--out", swp_out, "Sweep CSV")->required();
    swp->callback([&]() {
        cmd_sweep(global, swp_gamma, swp_n, swp_paper, swp->count("--n") > 0,
                  swp_seeds, swp_q, swp_bpd, swp_lo_mult, swp_hi, swp_jobs, swp_out);
    });

    // validate
    auto* val = app.add_subcommand("validate", "Run the analytical invariant suite");
    std::string val_out;
    val->add_option("--out", val_out, "Optional JSON report path");
    int exit_code = 0;
    val->callback([&]() { exit_code = cmd_validate(global, val_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientDataError& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
