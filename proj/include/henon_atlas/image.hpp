#pragma once

// RGB rasters, binary PPM encoding, polyline overlays in parameter space and
// log-density projections of point clouds.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "henon_atlas/errors.hpp"
#include "henon_atlas/map_core.hpp"
#include "henon_atlas/spectrum.hpp"

namespace henon {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

class Image {
public:
    Image(int width, int height, Rgb fill = kWhite) : width_(width), height_(height) {
        if (width < 1 || height < 1) throw InvalidConfig("image must be at least 1x1");
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    // Row 0 is the top row.
    Rgb& at(int x, int row) { return pixels_[index(x, row)]; }
    const Rgb& at(int x, int row) const { return pixels_[index(x, row)]; }

    bool contains(int x, int row) const { return x >= 0 && row >= 0 && x < width_ && row < height_; }

    std::string ppm() const {
        std::string out = "P6\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n255\n";
        out.reserve(out.size() + pixels_.size() * 3);
        for (const Rgb& p : pixels_) {
            out.push_back(static_cast<char>(p.r));
            out.push_back(static_cast<char>(p.g));
            out.push_back(static_cast<char>(p.b));
        }
        return out;
    }

private:
    std::size_t index(int x, int row) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<Rgb> pixels_;
};

// Colours of attractor class codes 0..6.
inline const std::array<Rgb, 7>& attractor_palette() {
    static const std::array<Rgb, 7> p{Rgb{255, 255, 255}, Rgb{0, 160, 0},  Rgb{120, 200, 255}, Rgb{255, 220, 0},
                                      Rgb{220, 0, 0},     Rgb{0, 0, 140}, Rgb{80, 80, 80}};
    return p;
}

// Colours of region label codes 0..14.
inline const std::array<Rgb, kRegionLabelCount>& region_palette() {
    static const std::array<Rgb, kRegionLabelCount> p{
        Rgb{255, 255, 255}, // Stable
        Rgb{230, 60, 60},   // LA
        Rgb{250, 170, 170}, // LQA
        Rgb{40, 90, 220},   // A8
        Rgb{160, 190, 250}, // QA8
        Rgb{30, 150, 60},   // D8A
        Rgb{160, 220, 170}, // D8QA
        Rgb{200, 120, 20},  // S8A
        Rgb{245, 205, 140}, // S8QA
        Rgb{150, 60, 170},  // SpiralPoint
        Rgb{230, 200, 40},  // ShilnikovPoint
        Rgb{170, 170, 170}, // Saddle12Real
        Rgb{110, 110, 110}, // Saddle21Mixed
        Rgb{60, 40, 30},    // Repeller
        Rgb{0, 0, 0},       // OnBoundary
    };
    return p;
}

// Continuous pixel coordinates of a parameter point: x grows with A, rows grow as C decreases.
inline std::pair<double, double> to_pixel(const ParamRect& r, int width, int height, ACPoint p) {
    return {(p.A - r.A_min) / (r.A_max - r.A_min) * width, (r.C_max - p.C) / (r.C_max - r.C_min) * height};
}

namespace detail {

// Liang-Barsky clip of a segment to [lo_x, hi_x] x [lo_y, hi_y].
inline bool clip_segment(double& x0, double& y0, double& x1, double& y1, double lo_x, double hi_x, double lo_y,
                         double hi_y) {
    double t0 = 0.0, t1 = 1.0;
    const double dx = x1 - x0, dy = y1 - y0;
    const std::array<std::pair<double, double>, 4> edges{
        std::pair{-dx, x0 - lo_x}, std::pair{dx, hi_x - x0}, std::pair{-dy, y0 - lo_y}, std::pair{dy, hi_y - y0}};
    for (auto [p, q] : edges) {
        if (p == 0.0) {
            if (q < 0.0) return false;
            continue;
        }
        double t = q / p;
        if (p < 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
        if (t0 > t1) return false;
    }
    const double ax = x0 + t0 * dx, ay = y0 + t0 * dy;
    x1 = x0 + t1 * dx;
    y1 = y0 + t1 * dy;
    x0 = ax;
    y0 = ay;
    return true;
}

} // namespace detail

// Draws the segment between continuous pixel positions, one-pixel wide.
inline void draw_segment(Image& img, double x0, double y0, double x1, double y1, Rgb colour) {
    if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(x1) || !std::isfinite(y1)) return;
    if (!detail::clip_segment(x0, y0, x1, y1, -1.0, img.width() + 1.0, -1.0, img.height() + 1.0)) return;
    const double len = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
    const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
    for (int k = 0; k <= steps; ++k) {
        double t = static_cast<double>(k) / steps;
        int x = static_cast<int>(std::floor(x0 + t * (x1 - x0)));
        int row = static_cast<int>(std::floor(y0 + t * (y1 - y0)));
        if (img.contains(x, row)) img.at(x, row) = colour;
    }
}

inline void draw_polyline(Image& img, const ParamRect& r, const std::vector<ACPoint>& pts, Rgb colour = kBlack) {
    for (std::size_t k = 1; k < pts.size(); ++k) {
        auto [x0, y0] = to_pixel(r, img.width(), img.height(), pts[k - 1]);
        auto [x1, y1] = to_pixel(r, img.width(), img.height(), pts[k]);
        draw_segment(img, x0, y0, x1, y1, colour);
    }
}

// Boundary curves of the saddle chart at this B, rasterized over the image.
inline void draw_boundary_overlay(Image& img, double B, const ParamRect& r, Rgb colour = kBlack) {
    const int samples = std::max(2 * img.width(), 256);
    for (const auto& curve : boundary_curves(B, r.A_min, r.A_max, samples)) draw_polyline(img, r, curve.points, colour);
}

enum class Plane { XY, YZ, XZ };

// Point-density raster of a projection, darker where more points land (log scale).
inline Image density_image(const std::vector<State>& pts, int width, int height, Plane plane = Plane::XY) {
    Image img(width, height);
    if (pts.empty()) return img;
    auto project = [&](const State& s) -> std::pair<double, double> {
        switch (plane) {
        case Plane::XY: return {s.x, s.y};
        case Plane::YZ: return {s.y, s.z};
        case Plane::XZ: return {s.x, s.z};
        }
        return {s.x, s.y};
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    double lo_u = inf, hi_u = -inf, lo_v = inf, hi_v = -inf;
    for (const auto& s : pts) {
        auto [u, v] = project(s);
        if (!std::isfinite(u) || !std::isfinite(v)) continue;
        lo_u = std::min(lo_u, u), hi_u = std::max(hi_u, u);
        lo_v = std::min(lo_v, v), hi_v = std::max(hi_v, v);
    }
    if (!(lo_u <= hi_u)) return img;
    const double pad_u = 0.02 * std::max(hi_u - lo_u, 1e-12), pad_v = 0.02 * std::max(hi_v - lo_v, 1e-12);
    lo_u -= pad_u, hi_u += pad_u, lo_v -= pad_v, hi_v += pad_v;

    std::vector<std::uint32_t> count(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    for (const auto& s : pts) {
        auto [u, v] = project(s);
        if (!std::isfinite(u) || !std::isfinite(v)) continue;
        int x = std::clamp(static_cast<int>((u - lo_u) / (hi_u - lo_u) * width), 0, width - 1);
        int row = std::clamp(static_cast<int>((hi_v - v) / (hi_v - lo_v) * height), 0, height - 1);
        ++count[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }
    const double top = std::log1p(static_cast<double>(*std::max_element(count.begin(), count.end())));
    for (int row = 0; row < height; ++row) {
        for (int x = 0; x < width; ++x) {
            auto c = count[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
            if (c == 0) continue;
            // the faintest occupied pixel is still clearly visible
            double shade = 0.25 + 0.75 * std::log1p(static_cast<double>(c)) / top;
            auto level = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - shade)));
            img.at(x, row) = Rgb{level, level, level};
        }
    }
    return img;
}

} // namespace henon
