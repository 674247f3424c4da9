#pragma once

// Type of the origin fixed point as a function of (A, B, C): multiplier
// classification, region inequalities for Lorenz-type and figure-8 saddles,
// saddle-chart boundary curves and the chart raster itself.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "henon_atlas/cubic.hpp"
#include "henon_atlas/errors.hpp"
#include "henon_atlas/parallel.hpp"

namespace henon {

enum class RegionLabel : std::uint8_t {
    Stable,
    LA,
    LQA,
    A8,
    QA8,
    D8A,
    D8QA,
    S8A,
    S8QA,
    SpiralPoint,
    ShilnikovPoint,
    Saddle12Real,
    Saddle21Mixed,
    Repeller,
    OnBoundary,
};

inline constexpr std::size_t kRegionLabelCount = 15;

inline constexpr std::string_view to_string(RegionLabel r) {
    constexpr std::array<std::string_view, kRegionLabelCount> names{
        "Stable",        "LA",           "LQA",           "A8",       "QA8",
        "D8A",           "D8QA",         "S8A",           "S8QA",     "SpiralPoint",
        "ShilnikovPoint", "Saddle12Real", "Saddle21Mixed", "Repeller", "OnBoundary"};
    return names[static_cast<std::size_t>(r)];
}

inline constexpr int code(RegionLabel r) { return static_cast<int>(r); }

enum class PairKind : std::uint8_t { None, Real, Complex };
enum class Bifurcation : std::uint8_t { LPlus, LMinus, LPhi, DoubleRoot };

inline constexpr std::string_view to_string(Bifurcation b) {
    switch (b) {
    case Bifurcation::LPlus: return "L+";
    case Bifurcation::LMinus: return "L-";
    case Bifurcation::LPhi: return "Lphi";
    case Bifurcation::DoubleRoot: return "double-root";
    }
    return "?";
}

struct FixedPointDescriptor {
    int unstable_count = 0;
    bool unstable_real = true;
    PairKind stable_pair_kind = PairKind::None;
    std::vector<int> real_signs;              // signs of the real multipliers, in multiplier order
    std::optional<int> leading_stable_sign;   // empty when the leading stable multiplier is complex
    double sigma = std::numeric_limits<double>::quiet_NaN();
    std::optional<Bifurcation> on_bifurcation;
};

struct PointClassification {
    MultiplierSet multipliers;
    FixedPointDescriptor descriptor;
    RegionLabel label = RegionLabel::OnBoundary;
};

inline constexpr double kUnitCircleTolerance = 1e-9;

inline int unstable_count(const MultiplierSet& m) {
    int n = 0;
    for (const auto& v : m.values) n += std::abs(v) > 1.0;
    return n;
}

// |unstable multiplier| * largest stable modulus, for exactly one unstable multiplier.
inline double saddle_value(const MultiplierSet& m) {
    if (unstable_count(m) != 1) throw NotASaddle31("saddle value needs exactly one unstable multiplier");
    // values are sorted by modulus: [0] unstable, [1] leading stable
    return std::abs(m.values[0]) * std::abs(m.values[1]);
}

inline std::array<bool, 4> lorenz_region_conditions(double A, double B, double C) {
    if (!(B > 0.0)) throw AssumptionViolated("Lorenz-region inequalities hold only for B > 0");
    return {C > A + B + 1.0, C < 1.0 - B - A, A < 0.0 && C > -B / A, C > 1.0 + A * B + B * B};
}

inline std::array<bool, 4> figure8_region_conditions(double A, double B, double C) {
    if (!(B > 0.0)) throw AssumptionViolated("figure-8 inequalities hold only for B > 0");
    return {C > A + B + 1.0, C < 1.0 - B - A, A < 0.0 && C < -B / A, C < -1.0 - B * A + B * B};
}

inline bool lorenz_region_test(double A, double B, double C) {
    auto c = lorenz_region_conditions(A, B, C);
    return c[0] && c[1] && c[2] && c[3];
}

inline bool figure8_region_test(double A, double B, double C) {
    auto c = figure8_region_conditions(A, B, C);
    return c[0] && c[1] && c[2] && c[3];
}

inline PointClassification classify_point(double A, double B, double C, double tol = kUnitCircleTolerance) {
    PointClassification out;
    out.multipliers = solve_characteristic(A, B, C);
    const auto& v = out.multipliers.values;
    auto& d = out.descriptor;

    std::array<double, 3> mod{};
    std::array<int, 3> sign{};  // 0 for members of a complex pair
    for (std::size_t k = 0; k < 3; ++k) {
        mod[k] = std::abs(v[k]);
        if (v[k].imag() == 0.0) sign[k] = v[k].real() > 0.0 ? 1 : (v[k].real() < 0.0 ? -1 : 0);
        // B = 0: the zero root stands in for the B -> 0+ root B / (l1 l2), whose sign is that of -C
        if (B == 0.0 && v[k] == 0.0) sign[k] = C < 0.0 ? 1 : (C > 0.0 ? -1 : 0);
    }
    for (std::size_t k = 0; k < 3; ++k)
        if (v[k].imag() == 0.0) d.real_signs.push_back(sign[k]);

    d.unstable_count = unstable_count(out.multipliers);
    const auto first_stable = static_cast<std::size_t>(d.unstable_count);
    for (std::size_t k = 0; k < first_stable; ++k)
        if (v[k].imag() != 0.0) d.unstable_real = false;
    if (first_stable <= 1) {
        bool complex_stable = false;
        for (std::size_t k = first_stable; k < 3; ++k) complex_stable |= v[k].imag() != 0.0;
        d.stable_pair_kind = complex_stable ? PairKind::Complex : PairKind::Real;
    }
    if (first_stable < 3 && v[first_stable].imag() == 0.0) d.leading_stable_sign = sign[first_stable];
    if (d.unstable_count == 1) d.sigma = mod[0] * mod[1];

    bool near_unit = false;
    for (std::size_t k = 0; k < 3; ++k) {
        if (std::abs(mod[k] - 1.0) > tol) continue;
        near_unit = true;
        if (v[k].imag() != 0.0)
            d.on_bifurcation = Bifurcation::LPhi;
        else
            d.on_bifurcation = v[k].real() > 0.0 ? Bifurcation::LPlus : Bifurcation::LMinus;
    }
    double scale = 0.0;
    const double disc = cubic_discriminant(A, B, C, &scale);
    if (!d.on_bifurcation && scale > 0.0 && std::abs(disc) <= 1e-9 * scale) d.on_bifurcation = Bifurcation::DoubleRoot;

    if (near_unit) {
        out.label = RegionLabel::OnBoundary;
        return out;
    }
    switch (d.unstable_count) {
    case 0: out.label = RegionLabel::Stable; return out;
    case 3: out.label = RegionLabel::Repeller; return out;
    case 2: out.label = d.unstable_real ? RegionLabel::Saddle12Real : RegionLabel::ShilnikovPoint; return out;
    default: break;
    }
    if (d.stable_pair_kind == PairKind::Complex) {
        out.label = RegionLabel::SpiralPoint;
        return out;
    }

    const double l1 = v[0].real();
    const bool above = d.sigma > 1.0;
    if (l1 < -1.0 && sign[1] * sign[2] < 0) {
        const double pos = sign[1] > 0 ? mod[1] : mod[2];
        const double neg = sign[1] > 0 ? mod[2] : mod[1];
        if (pos > neg)
            out.label = above ? RegionLabel::LA : RegionLabel::LQA;
        else
            out.label = above ? RegionLabel::A8 : RegionLabel::QA8;
    } else if (l1 > 1.0 && sign[1] < 0 && sign[2] < 0) {
        out.label = above ? RegionLabel::D8A : RegionLabel::D8QA;
    } else if (l1 > 1.0 && sign[1] > 0 && sign[2] > 0) {
        out.label = above ? RegionLabel::S8A : RegionLabel::S8QA;
    } else {
        out.label = RegionLabel::Saddle21Mixed;
    }
    return out;
}

struct ACPoint {
    double A = 0.0;
    double C = 0.0;
};

struct Polyline {
    std::string name;
    std::vector<ACPoint> points;
};

// Points (A, C) on the double-root curves: l = t is a double root for
// A = 2t + B/t^2, C = -t^2 - 2B/t (S+ for t > 0, S- for t < 0).
inline ACPoint double_root_point(double B, double t) { return {2.0 * t + B / (t * t), -t * t - 2.0 * B / t}; }

// Saddle-chart boundaries over [A_min, A_max] at fixed B.
inline std::vector<Polyline> boundary_curves(double B, double A_min, double A_max, int samples) {
    if (samples < 2) throw InvalidConfig("boundary_curves needs at least 2 samples");
    const auto n = static_cast<std::size_t>(samples);
    auto line = [&](std::string name, double lo, double hi, auto C_of) {
        Polyline p{std::move(name), {}};
        if (!(hi > lo)) return p;
        for (std::size_t k = 0; k < n; ++k) {
            double A = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
            p.points.push_back({A, C_of(A)});
        }
        return p;
    };
    std::vector<Polyline> out;
    out.push_back(line("L+", A_min, A_max, [&](double A) { return 1.0 - A - B; }));
    out.push_back(line("L-", A_min, A_max, [&](double A) { return A + B + 1.0; }));
    out.push_back(line("Lphi", std::max(A_min, B - 2.0), std::min(A_max, B + 2.0),
                       [&](double A) { return B * B - 1.0 - A * B; }));
    out.push_back(line("sigma1", A_min, A_max, [&](double A) { return 1.0 + A * B + B * B; }));
    {
        // C = -B/A, A < 0; keep clear of the pole at A = 0
        double hi = std::min(A_max, -1e-3);
        out.push_back(line("resonance", A_min, hi, [&](double A) { return -B / A; }));
    }
    // S+ and S-; the A-range cut can split a branch into several pieces with the same name
    for (int sign : {1, -1}) {
        const std::string name = sign > 0 ? "S+" : "S-";
        const double lo = std::log(1e-3), hi = std::log(1e3);
        Polyline piece{name, {}};
        for (std::size_t k = 0; k < 4 * n; ++k) {
            double u = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(4 * n - 1);
            ACPoint pt = double_root_point(B, sign * std::exp(u));
            if (pt.A >= A_min && pt.A <= A_max) {
                piece.points.push_back(pt);
            } else if (!piece.points.empty()) {
                out.push_back(std::move(piece));
                piece = Polyline{name, {}};
            }
        }
        if (!piece.points.empty()) out.push_back(std::move(piece));
    }
    return out;
}

struct ParamRect {
    double A_min = 0.0;
    double A_max = 0.0;
    double C_min = 0.0;
    double C_max = 0.0;

    void validate() const {
        if (!(A_min < A_max) || !(C_min < C_max)) throw InvalidConfig("parameter rectangle must have A_min < A_max and C_min < C_max");
    }
};

struct Resolution {
    int W = 1;
    int H = 1;

    void validate() const {
        if (W < 1 || H < 1) throw InvalidConfig("resolution must be at least 1x1");
    }
};

// Cell (i, j) covers the parameter center (A_min + (i + 1/2) dA, C_min + (j + 1/2) dC); j = 0 is the bottom row.
inline double cell_A(const ParamRect& r, const Resolution& res, int i) {
    return r.A_min + (i + 0.5) * (r.A_max - r.A_min) / res.W;
}
inline double cell_C(const ParamRect& r, const Resolution& res, int j) {
    return r.C_min + (j + 0.5) * (r.C_max - r.C_min) / res.H;
}

struct SaddleChart {
    double B = 0.0;
    ParamRect rect;
    Resolution resolution;
    double tol = kUnitCircleTolerance;
    std::vector<PointClassification> cells;  // index j * W + i

    const PointClassification& at(int i, int j) const {
        return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(resolution.W) + static_cast<std::size_t>(i)];
    }
};

inline SaddleChart saddle_chart(double B, const ParamRect& rect, const Resolution& res, double tol = kUnitCircleTolerance,
                                unsigned threads = 1) {
    rect.validate();
    res.validate();
    SaddleChart chart{B, rect, res, tol, {}};
    chart.cells.resize(static_cast<std::size_t>(res.W) * static_cast<std::size_t>(res.H));
    parallel_rows(static_cast<std::size_t>(res.H), threads, [&](std::size_t j) {
        for (int i = 0; i < res.W; ++i)
            chart.cells[j * static_cast<std::size_t>(res.W) + static_cast<std::size_t>(i)] =
                classify_point(cell_A(rect, res, i), B, cell_C(rect, res, static_cast<int>(j)), tol);
    });
    return chart;
}

} // namespace henon
