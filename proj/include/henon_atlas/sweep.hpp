#pragma once

// Lyapunov diagrams over an (A, C) grid at fixed B, plus rendering and CSV
// serialization of diagrams, saddle charts, boundary curves and separatrices.

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "henon_atlas/errors.hpp"
#include "henon_atlas/image.hpp"
#include "henon_atlas/lyapunov.hpp"
#include "henon_atlas/manifold.hpp"
#include "henon_atlas/map_core.hpp"
#include "henon_atlas/parallel.hpp"
#include "henon_atlas/spectrum.hpp"

namespace henon {

struct SweepSpec {
    double B = 0.0;
    PolyNonlinearity nonlinearity;
    ParamRect rect{-4.0, 4.0, -4.0, 4.0};
    Resolution resolution{64, 64};
    LyapunovConfig lyapunov;
    bool overlay = true;
    double tol = kUnitCircleTolerance;

    void validate() const {
        rect.validate();
        resolution.validate();
        lyapunov.validate();
    }
};

struct DiagramCell {
    AttractorClass cls = AttractorClass::Escape;
    std::array<double, 3> spectrum{kNaN, kNaN, kNaN};
    double min_distance_to_O = kNaN;
    RegionLabel region = RegionLabel::OnBoundary;
};

struct Diagram {
    SweepSpec spec;
    std::vector<DiagramCell> cells;  // index j * W + i, j = 0 at C_min

    const DiagramCell& at(int i, int j) const {
        return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.resolution.W) + static_cast<std::size_t>(i)];
    }
};

inline DiagramCell sweep_cell(const SweepSpec& spec, int i, int j) {
    const double A = cell_A(spec.rect, spec.resolution, i), C = cell_C(spec.rect, spec.resolution, j);
    HenonMap m{A, spec.B, C, spec.nonlinearity};
    LyapunovConfig cfg = spec.lyapunov;
    cfg.sample_capacity = 0;
    LyapunovRun run = lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
    DiagramCell cell;
    cell.cls = classify_attractor(run, cfg);
    if (!run.escaped) {
        cell.spectrum = run.spectrum;
        cell.min_distance_to_O = run.min_distance_to_O;
    }
    cell.region = classify_point(A, spec.B, C, spec.tol).label;
    return cell;
}

inline Diagram run_sweep(const SweepSpec& spec, unsigned threads = 1) {
    spec.validate();
    Diagram d{spec, {}};
    const int W = spec.resolution.W;
    d.cells.resize(static_cast<std::size_t>(W) * static_cast<std::size_t>(spec.resolution.H));
    parallel_rows(static_cast<std::size_t>(spec.resolution.H), threads, [&](std::size_t j) {
        for (int i = 0; i < W; ++i)
            d.cells[j * static_cast<std::size_t>(W) + static_cast<std::size_t>(i)] = sweep_cell(spec, i, static_cast<int>(j));
    });
    return d;
}

// Raster with one pixel per cell, C decreasing downwards.
inline Image diagram_image(const Diagram& d, const std::array<Rgb, 7>& palette, bool overlay) {
    const int W = d.spec.resolution.W, H = d.spec.resolution.H;
    Image img(W, H);
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i) img.at(i, H - 1 - j) = palette[static_cast<std::size_t>(code(d.at(i, j).cls))];
    if (overlay) draw_boundary_overlay(img, d.spec.B, d.spec.rect);
    return img;
}

inline std::string render_ppm(const Diagram& d, const std::array<Rgb, 7>& palette, bool overlay) {
    return diagram_image(d, palette, overlay).ppm();
}

inline std::string render_ppm(const Diagram& d) { return render_ppm(d, attractor_palette(), d.spec.overlay); }

inline Image chart_image(const SaddleChart& chart, bool overlay) {
    const int W = chart.resolution.W, H = chart.resolution.H;
    Image img(W, H);
    const auto& palette = region_palette();
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i) img.at(i, H - 1 - j) = palette[static_cast<std::size_t>(code(chart.at(i, j).label))];
    if (overlay) draw_boundary_overlay(img, chart.B, chart.rect);
    return img;
}

// Shortest decimal with 17 significant digits; NaN is written as "nan".
inline std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string export_csv(const Diagram& d) {
    std::ostringstream out;
    out << "i,j,A,C,class_code,region_code,L1,L2,L3,sum_L,min_dist_O\n";
    const int W = d.spec.resolution.W, H = d.spec.resolution.H;
    for (int j = 0; j < H; ++j) {
        for (int i = 0; i < W; ++i) {
            const DiagramCell& c = d.at(i, j);
            double sum = kNaN;
            if (c.cls != AttractorClass::Escape) {
                sum = c.spectrum[0] + c.spectrum[1];
                if (!std::isnan(c.spectrum[2])) sum += c.spectrum[2];
            }
            out << i << ',' << j << ',' << fmt17(cell_A(d.spec.rect, d.spec.resolution, i)) << ','
                << fmt17(cell_C(d.spec.rect, d.spec.resolution, j)) << ',' << code(c.cls) << ',' << code(c.region) << ','
                << fmt17(c.spectrum[0]) << ',' << fmt17(c.spectrum[1]) << ',' << fmt17(c.spectrum[2]) << ','
                << fmt17(sum) << ',' << fmt17(c.min_distance_to_O) << '\n';
        }
    }
    return out.str();
}

struct CsvCell {
    int i = 0;
    int j = 0;
    double A = 0.0;
    double C = 0.0;
    int class_code = 0;
    int region_code = 0;
    std::array<double, 3> spectrum{kNaN, kNaN, kNaN};
    double sum = kNaN;
    double min_distance_to_O = kNaN;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_csv_double(const std::string& s) {
    if (s == "nan") return kNaN;
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw InvalidConfig("bad number in CSV: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidConfig("bad number in CSV: '" + s + "'");
    }
}

inline int parse_csv_int(const std::string& s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw InvalidConfig("bad integer in CSV: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidConfig("bad integer in CSV: '" + s + "'");
    }
}

} // namespace detail

inline std::vector<CsvCell> import_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "i,j,A,C,class_code,region_code,L1,L2,L3,sum_L,min_dist_O")
        throw InvalidConfig("diagram CSV: missing or unexpected header");
    std::vector<CsvCell> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 11) throw InvalidConfig("diagram CSV: expected 11 fields, got " + std::to_string(f.size()));
        CsvCell c;
        c.i = detail::parse_csv_int(f[0]);
        c.j = detail::parse_csv_int(f[1]);
        c.A = detail::parse_csv_double(f[2]);
        c.C = detail::parse_csv_double(f[3]);
        c.class_code = detail::parse_csv_int(f[4]);
        c.region_code = detail::parse_csv_int(f[5]);
        for (std::size_t k = 0; k < 3; ++k) c.spectrum[k] = detail::parse_csv_double(f[6 + k]);
        c.sum = detail::parse_csv_double(f[9]);
        c.min_distance_to_O = detail::parse_csv_double(f[10]);
        cells.push_back(c);
    }
    return cells;
}

inline std::string export_chart_csv(const SaddleChart& chart) {
    std::ostringstream out;
    out << "A,C,label_code,lambda1_re,lambda1_im,lambda2_re,lambda2_im,lambda3_re,lambda3_im,sigma\n";
    for (int j = 0; j < chart.resolution.H; ++j) {
        for (int i = 0; i < chart.resolution.W; ++i) {
            const auto& c = chart.at(i, j);
            out << fmt17(cell_A(chart.rect, chart.resolution, i)) << ',' << fmt17(cell_C(chart.rect, chart.resolution, j))
                << ',' << code(c.label);
            for (const auto& v : c.multipliers.values) out << ',' << fmt17(v.real()) << ',' << fmt17(v.imag());
            out << ',' << fmt17(c.descriptor.sigma) << '\n';
        }
    }
    return out.str();
}

inline std::string export_curves_csv(const std::vector<Polyline>& curves) {
    std::ostringstream out;
    out << "curve,piece,A,C\n";
    int piece = 0;
    for (const auto& c : curves) {
        for (const auto& p : c.points) out << c.name << ',' << piece << ',' << fmt17(p.A) << ',' << fmt17(p.C) << '\n';
        ++piece;
    }
    return out.str();
}

inline std::string export_separatrix_csv(const SeparatrixCurve& c) {
    std::ostringstream out;
    out << "index,generation,x,y,z,arclength\n";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const State& p = c.points[k];
        out << k << ',' << c.generation[k] << ',' << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.z) << ','
            << fmt17(c.arclength[k]) << '\n';
    }
    return out.str();
}

inline std::string export_states_csv(const std::vector<State>& pts) {
    std::ostringstream out;
    out << "x,y,z\n";
    for (const State& p : pts) out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.z) << '\n';
    return out.str();
}

} // namespace henon
