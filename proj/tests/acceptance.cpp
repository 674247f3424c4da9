// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
// Usage: acceptance [lorenz_small.spec]

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "henon_atlas/cli.hpp"

using namespace henon;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
    if (!ok) ++failures;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct AttractorPoint {
    const char* preset;
    double A, C;
};

constexpr AttractorPoint kPoints[] = {
    {"lorenz-z2", -1.1, 0.85}, {"fig8-quad", -1.86, 0.03},  {"double-fig8", 0.82, 2.06},
    {"super-fig8", 3.71, -2.75}, {"fig8-quasi", -1.86, 0.03},
};

LyapunovRun run_point(const AttractorPoint& p, const LyapunovConfig& cfg) {
    HenonMap m = find_preset(p.preset).at(p.A, p.C);
    return lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
}

void criterion1(const std::vector<LyapunovRun>& runs, const std::vector<double>& times) {
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& p = kPoints[k];
        const double B = find_preset(p.preset).B;
        const auto& r = runs[k];
        std::string id = std::string("1 determinant identity ") + p.preset;
        if (r.escaped) {
            report(id, false, "orbit escaped at iterate " + std::to_string(r.escape_iterate) + "; no spectrum");
            continue;
        }
        const double err = std::abs(r.sum() - std::log(B));
        report(id, err < 5e-3 && times[k] < 10.0,
               "|sum - ln B| = " + num(err) + " (< 5e-3), " + num(times[k]) + " s (< 10 s)");
    }
}

void criterion2(const std::vector<LyapunovRun>& runs) {
    struct Target {
        double centre, tol;
    };
    const Target targets[] = {{0.02, 0.015}, {0.008, 0.02}, {0.22, 0.07}, {0.58, 0.1}, {-0.03, 0.02}};
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& r = runs[k];
        std::string id = std::string("2 L1+L2 ") + kPoints[k].preset;
        if (r.escaped) {
            report(id, false, "orbit escaped; expected " + num(targets[k].centre) + " +- " + num(targets[k].tol));
            continue;
        }
        const double s = r.sum12();
        bool ok = std::abs(s - targets[k].centre) <= targets[k].tol;
        std::string extra;
        if (k == 0) ok = ok && s > 0.0;
        if (k == 4) {
            ok = ok && s < 0.0 && !pseudohyperbolic_flag(r.spectrum);
            extra = ", pseudohyperbolic = " + std::string(pseudohyperbolic_flag(r.spectrum) ? "true" : "false");
        }
        report(id, ok, "L1+L2 = " + num(s) + " (target " + num(targets[k].centre) + " +- " + num(targets[k].tol) + ")" + extra);
    }
}

void criterion3() {
    struct Case {
        double A, B, C;
        RegionLabel expect;
    };
    const Case cases[] = {{-1.1, 0.7, 0.85, RegionLabel::LA},          {-1.86, 0.72, 0.03, RegionLabel::A8},
                          {0.82, 0.5, 2.06, RegionLabel::D8A},         {3.71, 0.05, -2.75, RegionLabel::S8A},
                          {2.13, 0.5, -1.29, RegionLabel::SpiralPoint}, {1.43, 0.5, -1.84, RegionLabel::ShilnikovPoint}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        RegionLabel got = classify_point(c.A, c.B, c.C).label;
        ok = ok && got == c.expect;
        detail += std::string(to_string(got)) + (got == c.expect ? " " : "(expected " + std::string(to_string(c.expect)) + ") ");
    }
    report("3 region labels", ok, detail);
}

// Distance-like measure to every chart curve; used to skip samples within 1e-6 of a boundary.
double boundary_distance(double A, double B, double C) {
    double d = std::min(std::abs(C - (1.0 - A - B)), std::abs(C - (A + B + 1.0)));
    if (A > B - 2.0 && A < B + 2.0) d = std::min(d, std::abs(C - (B * B - 1.0 - A * B)));
    d = std::min(d, std::abs(C - (1.0 + A * B + B * B)));
    d = std::min(d, std::abs(A));
    if (A != 0.0) d = std::min(d, std::abs(C + B / A));
    double scale = 0.0;
    const double disc = cubic_discriminant(A, B, C, &scale);
    return std::min(d, std::abs(disc) / std::max(scale, 1.0));
}

void criterion4() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    long long checked = 0, skipped = 0, mismatches = 0, la = 0, a8 = 0;
    for (double B : {0.5, 0.7}) {
        for (int k = 0; k < 100000; ++k) {
            const double A = u(rng), C = u(rng);
            if (boundary_distance(A, B, C) < 1e-6) {
                ++skipped;
                continue;
            }
            const RegionLabel label = classify_point(A, B, C).label;
            const bool lemma_la = lorenz_region_test(A, B, C), lemma_a8 = figure8_region_test(A, B, C);
            mismatches += (label == RegionLabel::LA) != lemma_la;
            mismatches += (label == RegionLabel::A8) != lemma_a8;
            la += lemma_la;
            a8 += lemma_a8;
            ++checked;
        }
    }
    report("4 lemma-oracle equivalence", mismatches == 0,
           std::to_string(checked) + " samples, " + std::to_string(skipped) + " near boundaries skipped, " +
               std::to_string(la) + " LA, " + std::to_string(a8) + " A8, " + std::to_string(mismatches) + " mismatches");
}

void criterion5() {
    HenonMap m{0.0, 0.5, 0.0, {}};
    LyapunovConfig cfg;
    LyapunovRun r = lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
    const double target = std::log(0.5) / 3.0;
    double err = 0.0;
    for (double l : r.spectrum) err = std::max(err, std::abs(l - target));
    report("5 linear exactness", !r.escaped && err < 1e-6, "max |L_i - ln(0.5)/3| = " + num(err));
}

void criterion6() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uA(-4.0, 4.0), uB(0.01, 1.5);
    double worst_residual = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double A = uA(rng), B = uB(rng), C = 1.0 - A - B;
        auto ms = solve_characteristic(A, B, C);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& v : ms.values) best = std::min(best, std::abs(v - std::complex<double>(1.0)));
        worst_residual = std::max(worst_residual, best);
    }
    report("6a L+ unit root", worst_residual < 1e-10, "worst |lambda - 1| over 1000 points = " + num(worst_residual));

    double worst_disc = 0.0;
    std::size_t count = 0;
    for (double B : {0.05, 0.5, 0.7, 0.72}) {
        for (const auto& curve : boundary_curves(B, -4.0, 4.0, 800)) {
            if (curve.name != "S+" && curve.name != "S-") continue;
            for (const auto& pt : curve.points) {
                worst_disc = std::max(worst_disc, std::abs(cubic_discriminant(pt.A, B, pt.C)));
                ++count;
            }
        }
    }
    report("6b double-root curves", count > 0 && worst_disc < 1e-9,
           std::to_string(count) + " points, max |discriminant| = " + num(worst_disc));

    const ParamRect rect{-1.5005, -1.4995, 0.0, 1.0};
    const Resolution res{1, 1000};
    SaddleChart scan = saddle_chart(0.5, rect, res);
    double flip = std::numeric_limits<double>::quiet_NaN();
    for (int j = 1; j < res.H; ++j)
        if (scan.at(0, j - 1).label == RegionLabel::LQA && scan.at(0, j).label == RegionLabel::LA) flip = cell_C(rect, res, j);
    report("6c LQA->LA transition at A = -1.5", std::abs(flip - 0.5) <= 1e-3,
           "flip at C = " + num(flip) + " (expected 0.5 +- 1e-3)");
}

void criterion7() {
    HenonMap m = find_preset("lorenz-z2").at(-1.1, 0.85);
    LyapunovConfig cfg;
    cfg.n_measure = 10'000'000;
    cfg.epsilon_homoclinic = 1e-4;
    const auto t0 = std::chrono::steady_clock::now();
    LyapunovRun r = lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
    const double t = seconds_since(t0);
    const AttractorClass cls = classify_attractor(r, cfg);
    report("7 homoclinic flag at eps = 1e-4", code(cls) == 6 && t < 60.0,
           "min distance to O over 1e7 iterates = " + num(r.min_distance_to_O) + ", class " + std::to_string(code(cls)) +
               ", " + num(t) + " s");
}

void criterion8() {
    Henon2dForm h = henon2d_normalize(1.4, 0.3);
    const double exact = 0.7 - std::sqrt(6.09);
    // -1.7677... is quoted as -1.767, i.e. truncated to three decimals
    const bool quoted = std::trunc(h.A * 1000.0) == -1767.0;
    report("8a planar shift", std::abs(h.A - exact) < 1e-12 && quoted,
           "A = " + num(h.A) + ", |A - (0.7 - sqrt(6.09))| = " + num(std::abs(h.A - exact)));

    HenonMap m = cli::henon2d_map(h.A, h.C);
    LyapunovConfig cfg;
    LyapunovRun r = lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
    const double err = std::abs(r.sum() - std::log(0.3));
    report("8b planar spectrum", !r.escaped && r.spectrum[0] > 0.0 && err < 5e-3,
           "L1 = " + num(r.spectrum[0]) + ", |L1 + L2 - ln 0.3| = " + num(err));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion9(const std::string& spec_path) {
    RunSpec spec = spec_path.empty() ? parse_run_spec("map.preset = lorenz-z2\ngrid.A_min = -1.2\ngrid.A_max = -1.0\n"
                                                      "grid.C_min = 0.7\ngrid.C_max = 0.9\ngrid.W = 64\ngrid.H = 64\n"
                                                      "lyapunov.n_transient = 1000\nlyapunov.n_measure = 2000\n")
                                     : load_run_spec(spec_path);
    SweepSpec sw = to_sweep_spec(spec);
    const auto base = std::filesystem::temp_directory_path() / "henon_atlas_acceptance";
    std::filesystem::remove_all(base);
    std::ostringstream sink_out;
    cli::OutputSink one(base / "t1", "diagram", false), many(base / "tn", "diagram", false);
    const unsigned n = 4;
    cli::cmd_diagram(sw, "lorenz-z2", one, 1, sink_out);
    cli::cmd_diagram(sw, "lorenz-z2", many, n, sink_out);
    const bool csv = slurp(base / "t1" / "diagram.csv") == slurp(base / "tn" / "diagram.csv");
    const bool ppm = slurp(base / "t1" / "diagram.ppm") == slurp(base / "tn" / "diagram.ppm");
    std::filesystem::remove_all(base);
    report("9 determinism", csv && ppm,
           std::to_string(sw.resolution.W) + "x" + std::to_string(sw.resolution.H) + " diagram, 1 vs " + std::to_string(n) +
               " threads: CSV " + (csv ? "identical" : "differs") + ", PPM " + (ppm ? "identical" : "differs"));
}

} // namespace

int main(int argc, char** argv) {
    const std::string spec_path = argc > 1 ? argv[1] : "";
    try {
        LyapunovConfig cfg;  // n_measure = 1e6
        std::vector<LyapunovRun> runs;
        std::vector<double> times;
        for (const auto& p : kPoints) {
            const auto t0 = std::chrono::steady_clock::now();
            runs.push_back(run_point(p, cfg));
            times.push_back(seconds_since(t0));
        }
        criterion1(runs, times);
        criterion2(runs);
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9(spec_path);
        std::cout << "SKIP 10 formal pseudohyperbolic splitting: out of scope; the spectrum condition is checked in 2 "
                     "and by pseudohyperbolic_flag"
                  << std::endl;
    } catch (const std::exception& e) {
        std::cout << "FAIL acceptance suite aborted: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
