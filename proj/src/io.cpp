#include "retint/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "retint/errors.hpp"

namespace retint::io {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw ParameterError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) throw ParameterError("cannot open for reading: " + path.string());
    return in;
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".json");
}

json read_json(const std::filesystem::path& path) {
    auto in = open_in(path, std::ios::in);
    json j;
    in >> j;
    return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_out(path, std::ios::out | std::ios::trunc);
    out << j.dump(2) << '\n';
}

}  // namespace

void write_series(const std::filesystem::path& path, const TimeSeries& series,
                  SeriesFormat format) {
    if (format == SeriesFormat::binary) {
        auto out = open_out(path, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(series.values.data()),
                  static_cast<std::streamsize>(series.values.size() * sizeof(double)));
    } else {
        auto out = open_out(path, std::ios::out | std::ios::trunc);
        out << "value\n";
        for (double x : series.values) out << fmt(x) << '\n';
    }
    write_json(sidecar(path), json{{"n", series.n()},
                                   {"gamma", series.gamma_target},
                                   {"seed", series.seed},
                                   {"kind", to_string(series.kind)}});
}

TimeSeries read_series(const std::filesystem::path& path) {
    const json meta = read_json(sidecar(path));
    TimeSeries series;
    series.gamma_target = meta.at("gamma").get<double>();
    series.seed = meta.at("seed").get<std::uint64_t>();
    series.kind = series_kind_from_string(meta.at("kind").get<std::string>());
    const auto n = meta.at("n").get<std::size_t>();

    if (path.extension() == ".csv") {
        auto in = open_in(path, std::ios::in);
        std::string line;
        std::getline(in, line);  // header
        series.values.reserve(n);
        while (std::getline(in, line)) {
            if (!line.empty()) series.values.push_back(std::stod(line));
        }
    } else {
        auto in = open_in(path, std::ios::binary);
        series.values.resize(n);
        in.read(reinterpret_cast<char*>(series.values.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        if (static_cast<std::size_t>(in.gcount()) != n * sizeof(double))
            throw ParameterError("series file shorter than metadata n: " + path.string());
    }
    if (series.n() != n)
        throw ParameterError("series length does not match metadata n: " + path.string());
    return series;
}

void write_intervals(const std::filesystem::path& path, const IntervalSeries& intervals) {
    auto out = open_out(path, std::ios::out | std::ios::trunc);
    out << "r,R\n";
    const double inv = 1.0 / intervals.mean_r;
    for (auto r : intervals.intervals)
        out << r << ',' << fmt(static_cast<double>(r) * inv) << '\n';
}

IntervalSeries read_intervals(const std::filesystem::path& path, double q,
                              double gamma_target) {
    auto in = open_in(path, std::ios::in);
    std::string line;
    std::getline(in, line);  // header
    IntervalSeries out;
    out.q = q;
    out.gamma_target = gamma_target;
    double sum = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::uint64_t r = std::stoull(line.substr(0, comma));
        out.intervals.push_back(r);
        sum += static_cast<double>(r);
    }
    if (out.intervals.empty())
        throw InsufficientDataError("no intervals in " + path.string(), 0);
    out.mean_r = sum / static_cast<double>(out.intervals.size());
    return out;
}

void write_interval_summary(const std::filesystem::path& path,
                            const IntervalSummary& summary) {
    write_json(path, json{{"q", summary.q},
                          {"n_events", summary.n_events},
                          {"n_intervals", summary.n_intervals},
                          {"mean_r", summary.mean_r},
                          {"gamma_target", summary.gamma_target}});
}

IntervalSummary read_interval_summary(const std::filesystem::path& path) {
    const json j = read_json(path);
    IntervalSummary s;
    s.q = j.at("q").get<double>();
    s.n_events = j.at("n_events").get<std::size_t>();
    s.n_intervals = j.at("n_intervals").get<std::size_t>();
    s.mean_r = j.at("mean_r").get<double>();
    s.gamma_target = j.at("gamma_target").get<double>();
    return s;
}

void write_theory_params(const std::filesystem::path& path, const TheoryParams& params) {
    write_json(path, json{{"gamma", params.gamma},
                          {"mean_r", params.mean_r},
                          {"s0", params.s0},
                          {"p0", params.p0},
                          {"A", params.A},
                          {"B", params.B}});
}

TheoryParams read_theory_params(const std::filesystem::path& path) {
    const json j = read_json(path);
    return {j.at("gamma").get<double>(), j.at("mean_r").get<double>(),
            j.at("s0").get<double>(),    j.at("p0").get<double>(),
            j.at("A").get<double>(),     j.at("B").get<double>()};
}

void write_theory_curve(const std::filesystem::path& path, const TheoryParams& params,
                        int points_per_decade, double r_max) {
    if (points_per_decade < 1)
        throw ParameterError("write_theory_curve: points_per_decade must be >= 1");
    if (!(r_max > params.s0))
        throw ParameterError("write_theory_curve: r_max must exceed s0");
    auto out = open_out(path, std::ios::out | std::ios::trunc);
    out << "R,pdf_normalized,pdf_cutoff\n";
    const double decades = std::log10(r_max / params.s0);
    const auto steps =
        static_cast<std::size_t>(std::ceil(decades * points_per_decade));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double r =
            params.s0 * std::pow(10.0, static_cast<double>(i) / points_per_decade);
        out << fmt(r) << ',' << fmt(pdf_normalized(r, params.gamma)) << ','
            << fmt(pdf_cutoff(r, params)) << '\n';
    }
}

void write_fit_table(const std::filesystem::path& path, const Histogram& hist,
                     const TheoryParams& params) {
    auto out = open_out(path, std::ios::out | std::ios::trunc);
    out << "R,density_empirical,density_theory_cutoff,density_theory_normalized\n";
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        if (hist.counts[i] == 0) continue;
        const double c = hist.center(i);
        const double cutoff = c >= params.s0 ? pdf_cutoff(c, params) : 0.0;
        out << fmt(c) << ',' << fmt(hist.density[i]) << ',' << fmt(cutoff) << ','
            << fmt(pdf_normalized(c, params.gamma)) << '\n';
    }
}

void write_sweep_table(const std::filesystem::path& path,
                       const std::vector<SweepPoint>& points, double gamma) {
    auto out = open_out(path, std::ios::out | std::ios::trunc);
    out << "q,s_m,stderr,theta,gamma\n";
    for (const auto& pt : points) {
        out << fmt(pt.q) << ',';
        if (pt.estimate) {
            const auto& est = *pt.estimate;
            out << fmt(est.s_m) << ',' << fmt(est.stderr_s) << ',';
            if (gamma == 1.0)
                out << ',';
            else
                out << fmt(est.theta()) << ',';
        } else {
            out << ",,,";
        }
        out << fmt(gamma) << '\n';
    }
}

}  // namespace retint::io
