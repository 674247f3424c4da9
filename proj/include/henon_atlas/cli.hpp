#pragma once

// Command implementations behind the henon-atlas executable. Each command
// writes its artifacts through an OutputSink and a human-readable report to
// the given stream; errors surface as henon::Error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "henon_atlas/errors.hpp"
#include "henon_atlas/image.hpp"
#include "henon_atlas/lyapunov.hpp"
#include "henon_atlas/manifold.hpp"
#include "henon_atlas/map_core.hpp"
#include "henon_atlas/presets.hpp"
#include "henon_atlas/spec_file.hpp"
#include "henon_atlas/spectrum.hpp"
#include "henon_atlas/sweep.hpp"

namespace henon::cli {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;

class OutputSink {
public:
    OutputSink(std::filesystem::path dir, std::string prefix, bool timestamp)
        : dir_(std::move(dir)), prefix_(std::move(prefix)), timestamp_(timestamp) {}

    std::filesystem::path path(const std::string& suffix) const { return dir_ / (prefix_ + suffix); }
    bool timestamp() const { return timestamp_; }
    const std::vector<std::filesystem::path>& written() const { return written_; }

    void write(const std::string& suffix, const std::string& content) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IOFailure("cannot create output directory '" + dir_.string() + "': " + ec.message());
        const auto p = path(suffix);
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw IOFailure("cannot open '" + p.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) throw IOFailure("write to '" + p.string() + "' failed");
        written_.push_back(p);
    }

    void write_json(const std::string& suffix, json meta) {
        meta["software"] = {{"name", "henon-atlas"}, {"version", kVersion}};
        if (timestamp_) {
            std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            meta["created"] = buf;
        }
        write(suffix, meta.dump(2) + "\n");
    }

private:
    std::filesystem::path dir_;
    std::string prefix_;
    bool timestamp_;
    std::vector<std::filesystem::path> written_;
};

// JSON has no NaN; absent values become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const PolyNonlinearity& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back({{"i", t.i}, {"j", t.j}, {"coeff", t.coeff}});
    return {{"expression", f.to_string()}, {"terms", terms}};
}

inline json to_json(const LyapunovConfig& c) {
    return {{"n_transient", c.n_transient},       {"n_measure", c.n_measure},
            {"renorm_period", c.renorm_period},   {"escape_radius", c.escape_radius},
            {"zero_threshold", c.zero_threshold}, {"epsilon_homoclinic", c.epsilon_homoclinic},
            {"initial_offset", c.initial_offset}, {"sample_capacity", c.sample_capacity}};
}

inline json to_json(const TraceConfig& c) {
    return {{"initial_offset", c.initial_offset}, {"seed_points", c.seed_points}, {"h_max", c.h_max},
            {"max_points", c.max_points},         {"trace_radius", c.trace_radius}, {"direction", c.direction}};
}

inline json to_json(const ParamRect& r, const Resolution& res) {
    return {{"A_min", r.A_min}, {"A_max", r.A_max}, {"C_min", r.C_min}, {"C_max", r.C_max}, {"W", res.W}, {"H", res.H}};
}

inline json palette_json(const Rgb* colours, std::size_t n) {
    json out = json::array();
    for (std::size_t k = 0; k < n; ++k) out.push_back({{"code", k}, {"rgb", {colours[k].r, colours[k].g, colours[k].b}}});
    return out;
}

inline std::string sign_char(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); }

// ---- classify ------------------------------------------------------------

inline int cmd_classify(double A, double B, double C, double tol, std::ostream& out) {
    PointClassification pc = classify_point(A, B, C, tol);
    const auto& d = pc.descriptor;
    out << "A = " << fmt17(A) << "\nB = " << fmt17(B) << "\nC = " << fmt17(C) << "\n";
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& v = pc.multipliers.values[k];
        out << "lambda" << k + 1 << " = " << fmt17(v.real()) << (v.imag() < 0 ? " - " : " + ") << fmt17(std::abs(v.imag()))
            << "i  |lambda| = " << fmt17(std::abs(v)) << "\n";
    }
    out << "sigma = " << fmt17(d.sigma) << "\n";
    out << "unstable_count = " << d.unstable_count << "\n";
    out << "unstable_real = " << (d.unstable_real ? "true" : "false") << "\n";
    out << "stable_pair = "
        << (d.stable_pair_kind == PairKind::Real ? "real" : d.stable_pair_kind == PairKind::Complex ? "complex" : "n/a")
        << "\n";
    out << "real_signs = ";
    for (int s : d.real_signs) out << sign_char(s);
    out << "\nleading_stable_sign = " << (d.leading_stable_sign ? sign_char(*d.leading_stable_sign) : "n/a") << "\n";
    out << "on_bifurcation = " << (d.on_bifurcation ? std::string(to_string(*d.on_bifurcation)) : "none") << "\n";
    out << "region = " << to_string(pc.label) << " (code " << code(pc.label) << ")\n";

    if (B > 0.0) {
        static const char* lorenz_names[] = {"C > A + B + 1", "C < 1 - B - A", "A < 0 and C > -B/A", "C > 1 + AB + B^2"};
        static const char* fig8_names[] = {"C > A + B + 1", "C < 1 - B - A", "A < 0 and C < -B/A", "C < B^2 - AB - 1"};
        auto lc = lorenz_region_conditions(A, B, C);
        auto fc = figure8_region_conditions(A, B, C);
        out << "lorenz-region:";
        for (std::size_t k = 0; k < 4; ++k) out << "\n  " << lorenz_names[k] << ": " << (lc[k] ? "true" : "false");
        out << "\n  all: " << (lorenz_region_test(A, B, C) ? "true" : "false") << "\n";
        out << "figure8-region:";
        for (std::size_t k = 0; k < 4; ++k) out << "\n  " << fig8_names[k] << ": " << (fc[k] ? "true" : "false");
        out << "\n  all: " << (figure8_region_test(A, B, C) ? "true" : "false") << "\n";
    } else {
        out << "lorenz-region: n/a (requires B > 0)\nfigure8-region: n/a (requires B > 0)\n";
    }
    return 0;
}

// ---- chart ---------------------------------------------------------------

inline int cmd_chart(double B, const ParamRect& rect, const Resolution& res, double tol, bool overlay, OutputSink& sink,
                     unsigned threads, std::ostream& out) {
    SaddleChart chart = saddle_chart(B, rect, res, tol, threads);
    auto curves = boundary_curves(B, rect.A_min, rect.A_max, std::max(2 * res.W, 256));
    sink.write(".ppm", chart_image(chart, overlay).ppm());
    sink.write(".csv", export_chart_csv(chart));
    sink.write("_curves.csv", export_curves_csv(curves));

    std::map<int, std::size_t> counts;
    for (const auto& c : chart.cells) ++counts[code(c.label)];
    json labels = json::array();
    for (std::size_t k = 0; k < kRegionLabelCount; ++k) labels.push_back(std::string(to_string(static_cast<RegionLabel>(k))));
    json meta{{"command", "chart"},
              {"B", B},
              {"grid", to_json(rect, res)},
              {"tol", tol},
              {"overlay", overlay},
              {"labels", labels},
              {"palette", palette_json(region_palette().data(), region_palette().size())}};
    sink.write_json(".json", meta);

    out << "saddle chart B = " << fmt17(B) << ", " << res.W << "x" << res.H << "\n";
    for (auto [c, n] : counts) out << "  " << to_string(static_cast<RegionLabel>(c)) << ": " << n << "\n";
    return 0;
}

// ---- diagram -------------------------------------------------------------

inline int cmd_diagram(const SweepSpec& spec, const std::string& family, OutputSink& sink, unsigned threads,
                       std::ostream& out) {
    Diagram d = run_sweep(spec, threads);
    sink.write(".ppm", render_ppm(d));
    sink.write(".csv", export_csv(d));
    json classes = json::array();
    for (int k = 0; k < 7; ++k) classes.push_back(std::string(to_string(static_cast<AttractorClass>(k))));
    json meta{{"command", "diagram"},
              {"map", {{"family", family}, {"B", spec.B}, {"nonlinearity", to_json(spec.nonlinearity)}}},
              {"grid", to_json(spec.rect, spec.resolution)},
              {"tol", spec.tol},
              {"overlay", spec.overlay},
              {"lyapunov", to_json(spec.lyapunov)},
              {"classes", classes},
              {"palette", palette_json(attractor_palette().data(), attractor_palette().size())},
              {"overlay_rgb", {0, 0, 0}}};
    sink.write_json(".json", meta);

    std::map<int, std::size_t> counts;
    for (const auto& c : d.cells) ++counts[code(c.cls)];
    out << "Lyapunov diagram " << family << " B = " << fmt17(spec.B) << ", " << spec.resolution.W << "x"
        << spec.resolution.H << "\n";
    for (auto [c, n] : counts) out << "  class " << c << " (" << to_string(static_cast<AttractorClass>(c)) << "): " << n << "\n";
    return 0;
}

// ---- attractor -----------------------------------------------------------

inline json run_report(const HenonMap& m, const std::string& family, const LyapunovConfig& cfg, const LyapunovRun& run) {
    const AttractorClass cls = classify_attractor(run, cfg);
    json spectrum = json::array();
    for (int k = 0; k < 3; ++k) spectrum.push_back(number(run.spectrum[static_cast<std::size_t>(k)]));
    json r{{"map", {{"family", family}, {"A", m.A}, {"B", m.B}, {"C", m.C}, {"nonlinearity", to_json(m.nonlinearity)}}},
           {"lyapunov", to_json(cfg)},
           {"dimension", run.dimension},
           {"escaped", run.escaped},
           {"spectrum", spectrum},
           {"sum12", number(run.sum12())},
           {"sum", number(run.escaped ? kNaN : run.sum())},
           {"min_distance_to_O", number(run.min_distance_to_O)},
           {"pseudohyperbolic", run.pseudohyperbolic},
           {"homoclinic", run.homoclinic},
           {"class_code", code(cls)},
           {"class", std::string(to_string(cls))},
           {"region", std::string(to_string(classify_point(m.A, m.B, m.C).label))}};
    if (m.B > 0.0) r["sum_minus_lnB"] = number(run.escaped ? kNaN : run.sum() - std::log(m.B));
    if (run.escaped) r["escape_iterate"] = run.escape_iterate;
    return r;
}

inline void print_run(const json& r, std::ostream& out) {
    auto show = [](const json& v) { return v.is_null() ? std::string("nan") : fmt17(v.get<double>()); };
    out << "family = " << r["map"]["family"].get<std::string>() << "\n";
    out << "A = " << fmt17(r["map"]["A"].get<double>()) << ", B = " << fmt17(r["map"]["B"].get<double>())
        << ", C = " << fmt17(r["map"]["C"].get<double>()) << "\n";
    out << "escaped = " << (r["escaped"].get<bool>() ? "true" : "false") << "\n";
    out << "L1 = " << show(r["spectrum"][0]) << "\nL2 = " << show(r["spectrum"][1]) << "\nL3 = " << show(r["spectrum"][2])
        << "\n";
    out << "L1+L2 = " << show(r["sum12"]) << "\nsum = " << show(r["sum"]) << "\n";
    if (r.contains("sum_minus_lnB")) out << "sum - ln B = " << show(r["sum_minus_lnB"]) << "\n";
    out << "min_distance_to_O = " << show(r["min_distance_to_O"]) << "\n";
    out << "pseudohyperbolic = " << (r["pseudohyperbolic"].get<bool>() ? "true" : "false") << "\n";
    out << "homoclinic = " << (r["homoclinic"].get<bool>() ? "true" : "false") << "\n";
    out << "class = " << r["class_code"].get<int>() << " (" << r["class"].get<std::string>() << ")\n";
    out << "region = " << r["region"].get<std::string>() << "\n";
}

inline int cmd_attractor(const HenonMap& m, const std::string& family, const LyapunovConfig& cfg, int image_size,
                         OutputSink& sink, std::ostream& out) {
    LyapunovRun run = lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
    json report = run_report(m, family, cfg, run);
    report["command"] = "attractor";
    report["sample_points"] = run.escaped ? 0 : run.attractor_sample.size();
    const std::vector<State> empty;
    const auto& sample = run.escaped ? empty : run.attractor_sample;
    sink.write(".csv", export_states_csv(sample));
    sink.write("_xy.ppm", density_image(sample, image_size, image_size, Plane::XY).ppm());
    sink.write_json(".json", report);
    print_run(report, out);
    return 0;
}

// ---- separatrix ----------------------------------------------------------

inline int cmd_separatrix(const HenonMap& m, const std::string& family, const TraceConfig& cfg, bool stable,
                          double exit_radius, int image_size, OutputSink& sink, std::ostream& out) {
    SeparatrixCurve curve = stable ? trace_stable_separatrix(m, cfg) : trace_separatrix(m, cfg);
    const double back = min_return_distance(curve, exit_radius);
    json meta{{"command", "separatrix"},
              {"map", {{"family", family}, {"A", m.A}, {"B", m.B}, {"C", m.C}, {"nonlinearity", to_json(m.nonlinearity)}}},
              {"kind", stable ? "stable" : "unstable"},
              {"trace", to_json(cfg)},
              {"multiplier", curve.eigen.multiplier},
              {"eigenvector", {curve.eigen.vector[0], curve.eigen.vector[1], curve.eigen.vector[2]}},
              {"period", curve.period},
              {"points", curve.size()},
              {"exited", curve.exited},
              {"exit_radius", exit_radius},
              {"min_return_distance_to_O", number(back)}};
    double plane = kNaN;
    if (!stable) {
        try {
            plane = min_return_plane_distance(m, curve, exit_radius);
        } catch (const WrongSplitting&) {
        }
        meta["min_return_stable_plane_distance"] = number(plane);
    }
    sink.write(".csv", export_separatrix_csv(curve));
    sink.write("_xy.ppm", density_image(curve.points, image_size, image_size, Plane::XY).ppm());
    sink.write_json(".json", meta);

    out << (stable ? "stable" : "unstable") << " separatrix of O, " << family << " A = " << fmt17(m.A)
        << ", C = " << fmt17(m.C) << "\n";
    out << "multiplier = " << fmt17(curve.eigen.multiplier) << "\n";
    out << "points = " << curve.size() << (curve.exited ? " (left the trace radius)" : "") << "\n";
    out << "min return distance to O (after leaving r = " << fmt17(exit_radius) << ") = " << fmt17(back) << "\n";
    if (!stable) out << "min return distance to stable plane = " << fmt17(plane) << "\n";
    return 0;
}

// ---- henon2d -------------------------------------------------------------

inline HenonMap henon2d_map(double A, double C) { return HenonMap{A, 0.0, C, PolyNonlinearity{{0, 2, -1.0}}}; }

inline int cmd_henon2d(double M, double C, bool run, const LyapunovConfig& cfg, OutputSink* sink, std::ostream& out) {
    Henon2dForm h = henon2d_normalize(M, C);
    out << "M = " << fmt17(M) << ", C = " << fmt17(C) << "\n";
    out << "D = " << fmt17(h.discriminant) << "\n";
    out << "y+ = " << fmt17(h.y_plus) << "\ny- = " << fmt17(h.y_minus) << "\n";
    out << "A = " << fmt17(h.A) << "\n";
    json meta{{"command", "henon2d"},
              {"M", M},
              {"C", C},
              {"D", h.discriminant},
              {"y_plus", h.y_plus},
              {"y_minus", h.y_minus},
              {"A", h.A}};
    if (run) {
        HenonMap m = henon2d_map(h.A, h.C);
        LyapunovRun r = lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
        json report = run_report(m, "henon2d", cfg, r);
        const double target = std::log(std::abs(C));
        report["sum_minus_ln_abs_C"] = number(r.escaped ? kNaN : r.sum() - target);
        meta["run"] = report;
        print_run(report, out);
        out << "ln|C| = " << fmt17(target) << "\n";
        out << "sum - ln|C| = " << fmt17(r.escaped ? kNaN : r.sum() - target) << "\n";
    }
    if (sink) sink->write_json(".json", meta);
    return 0;
}

} // namespace henon::cli
