#pragma once

// One-dimensional separatrices of the origin, traced by pushing a fundamental
// segment forward and refining in the seed parameter, plus homoclinic-proximity
// measures against the origin and its two-dimensional stable plane.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "henon_atlas/cubic.hpp"
#include "henon_atlas/errors.hpp"
#include "henon_atlas/map_core.hpp"

namespace henon {

struct EigenDirection {
    Vec3 vector{};  // unit length, first component positive
    double multiplier = 0.0;
};

// Eigenvector of the companion matrix for a real multiplier l.
inline Vec3 companion_eigenvector(double l) {
    Vec3 v{1.0, l, l * l};
    double n = norm(v);
    return {v[0] / n, v[1] / n, v[2] / n};
}

inline EigenDirection unstable_direction(const HenonMap& m) {
    MultiplierSet ms = solve_characteristic(m.A, m.B, m.C);
    const auto& v = ms.values;
    if (!(std::abs(v[0]) > 1.0) || std::abs(v[1]) > 1.0 || v[0].imag() != 0.0)
        throw NoUnstableDirection("origin has no simple real unstable multiplier");
    return {companion_eigenvector(v[0].real()), v[0].real()};
}

inline EigenDirection stable_direction(const HenonMap& m) {
    MultiplierSet ms = solve_characteristic(m.A, m.B, m.C);
    const auto& v = ms.values;
    if (!(std::abs(v[1]) > 1.0) || std::abs(v[2]) >= 1.0 || v[2].imag() != 0.0)
        throw NoStableDirection("origin needs exactly one real stable multiplier and two unstable ones");
    return {companion_eigenvector(v[2].real()), v[2].real()};
}

// Unit normal of the plane through O spanned by the two stable eigendirections.
// For stable multipliers m2, m3 (real, double or a complex pair) the plane is
// span{(0, 1, m2 + m3), (1, 0, -m2 m3)}.
inline Vec3 stable_plane_normal(const HenonMap& m) {
    MultiplierSet ms = solve_characteristic(m.A, m.B, m.C);
    const auto& v = ms.values;
    if (!(std::abs(v[0]) > 1.0) || !(std::abs(v[1]) < 1.0))
        throw WrongSplitting("stable eigenspace of the origin is not two-dimensional");
    const double sum = (v[1] + v[2]).real();
    const double prod = (v[1] * v[2]).real();
    Vec3 n = cross(Vec3{0.0, 1.0, sum}, Vec3{1.0, 0.0, -prod});
    double len = norm(n);
    return {n[0] / len, n[1] / len, n[2] / len};
}

inline double stable_plane_distance(const HenonMap& m, const State& p) {
    return std::abs(dot(stable_plane_normal(m), to_vec(p)));
}

struct TraceConfig {
    double initial_offset = 1e-6;
    int seed_points = 64;
    double h_max = 1e-2;
    std::size_t max_points = 1'000'000;
    double trace_radius = 1e3;
    int direction = 1;

    void validate() const {
        if (!(initial_offset > 0.0) || seed_points < 2 || !(h_max > 0.0) || max_points < 2 || !(trace_radius > 0.0))
            throw InvalidConfig("trace config: offsets, radii and h_max must be positive, seed_points >= 2, max_points >= 2");
        if (direction != 1 && direction != -1) throw InvalidConfig("trace direction must be +1 or -1");
    }
};

struct SeparatrixCurve {
    std::vector<State> points;
    std::vector<double> arclength;
    std::vector<int> generation;  // map applications from the seed segment
    EigenDirection eigen;
    int period = 1;               // 2 when the multiplier is negative and branches alternate
    bool exited = false;          // left the trace radius (or overflowed) before max_points

    std::size_t size() const { return points.size(); }
};

namespace detail {

struct SeedSample {
    double s;
    State point;
};

template <class Advance>
SeparatrixCurve trace_branch(const EigenDirection& eigen, double expansion, Advance advance, const TraceConfig& cfg) {
    cfg.validate();
    SeparatrixCurve curve;
    curve.eigen = eigen;
    curve.period = eigen.multiplier > 0.0 ? 1 : 2;
    const int p = curve.period;
    const double factor = std::pow(std::abs(expansion), p);
    const double delta = cfg.initial_offset;
    const Vec3 e = eigen.vector;
    const double sign = static_cast<double>(cfg.direction);

    auto seed = [&](double s) { return State{sign * s * e[0], sign * s * e[1], sign * s * e[2]}; };
    auto outside = [&](const State& q) { return !is_finite(q) || norm(q) > cfg.trace_radius; };
    auto push_forward = [&](State q, int steps) {
        for (int k = 0; k < steps && is_finite(q); ++k) q = advance(q);
        return q;
    };
    auto emit = [&](const State& q, int gen) {
        double arc = 0.0;
        if (!curve.points.empty()) arc = curve.arclength.back() + distance(curve.points.back(), q);
        curve.points.push_back(q);
        curve.arclength.push_back(arc);
        curve.generation.push_back(gen);
    };

    std::vector<SeedSample> current;
    const int n = cfg.seed_points;
    for (int k = 0; k < n; ++k) {
        double s = delta * std::pow(factor, static_cast<double>(k) / (n - 1));
        current.push_back({s, seed(s)});
    }
    // Gaps in the seed segment itself are refined like any other generation.
    int gen = 0;
    std::vector<SeedSample> refined;
    for (;;) {
        refined.clear();
        refined.push_back(current.front());
        for (std::size_t k = 1; k < current.size(); ++k) {
            // bisect the seed interval until the images are h_max-close
            std::vector<SeedSample> stack{current[k]};
            while (!stack.empty()) {
                const SeedSample& a = refined.back();
                SeedSample b = stack.back();
                bool split = distance(a.point, b.point) > cfg.h_max && !outside(b.point) && !outside(a.point) &&
                             (b.s - a.s) > 1e-13 * b.s &&
                             curve.points.size() + refined.size() + stack.size() < cfg.max_points;
                if (split) {
                    double mid = 0.5 * (a.s + b.s);
                    stack.push_back({mid, push_forward(seed(mid), p * gen)});
                } else {
                    refined.push_back(b);
                    stack.pop_back();
                }
            }
        }
        // generation > 0 starts with the image of the previous generation's endpoint
        for (std::size_t k = gen == 0 ? 0 : 1; k < refined.size(); ++k) {
            if (outside(refined[k].point)) {
                curve.exited = true;
                return curve;
            }
            if (curve.points.size() >= cfg.max_points) return curve;
            emit(refined[k].point, p * gen);
        }
        if (curve.points.size() >= cfg.max_points) return curve;
        ++gen;
        current.clear();
        for (const auto& sample : refined) current.push_back({sample.s, push_forward(sample.point, p)});
    }
}

} // namespace detail

inline SeparatrixCurve trace_separatrix(const HenonMap& m, const TraceConfig& cfg) {
    EigenDirection eigen = unstable_direction(m);
    return detail::trace_branch(eigen, eigen.multiplier, [&](const State& s) { return detail::step_unchecked(m, s); },
                                cfg);
}

inline SeparatrixCurve trace_stable_separatrix(const HenonMap& m, const TraceConfig& cfg) {
    if (m.B == 0.0) throw NotInvertible("stable separatrix needs the inverse map; B = 0");
    EigenDirection eigen = stable_direction(m);
    auto backward = [&](const State& s) {
        return State{(s.z - m.A * s.y - m.C * s.x - m.nonlinearity(s.x, s.y)) / m.B, s.x, s.y};
    };
    return detail::trace_branch(eigen, 1.0 / eigen.multiplier, backward, cfg);
}

// Index of the first point farther than exit_radius from O, or size() if none.
inline std::size_t first_exit_index(const SeparatrixCurve& c, double exit_radius) {
    for (std::size_t k = 0; k < c.points.size(); ++k)
        if (norm(c.points[k]) > exit_radius) return k;
    return c.points.size();
}

// Closest approach to O after the curve has first left the ball of exit_radius;
// infinity if it never leaves.
inline double min_return_distance(const SeparatrixCurve& c, double exit_radius = 0.1) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = first_exit_index(c, exit_radius); k < c.points.size(); ++k)
        best = std::min(best, norm(c.points[k]));
    return best;
}

inline double min_return_plane_distance(const HenonMap& m, const SeparatrixCurve& c, double exit_radius = 0.1) {
    const Vec3 n = stable_plane_normal(m);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = first_exit_index(c, exit_radius); k < c.points.size(); ++k)
        best = std::min(best, std::abs(dot(n, to_vec(c.points[k]))));
    return best;
}

} // namespace henon
