#pragma once

// Lyapunov spectra of orbits by tangent-frame iteration with modified
// Gram-Schmidt, escape and homoclinic-proximity tracking, and the attractor
// colour classes of Lyapunov diagrams.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "henon_atlas/cubic.hpp"
#include "henon_atlas/errors.hpp"
#include "henon_atlas/manifold.hpp"
#include "henon_atlas/map_core.hpp"

namespace henon {

struct LyapunovConfig {
    long long n_transient = 10'000;
    long long n_measure = 1'000'000;
    int renorm_period = 1;
    double escape_radius = 1e5;
    double zero_threshold = 1e-3;
    double epsilon_homoclinic = 1e-2;
    double initial_offset = 1e-3;
    std::size_t sample_capacity = 0;  // attractor points kept, evenly strided over the measurement phase

    void validate() const {
        if (n_transient < 0) throw InvalidConfig("lyapunov.n_transient must be >= 0");
        if (n_measure < 1) throw InvalidConfig("lyapunov.n_measure must be >= 1");
        if (renorm_period < 1) throw InvalidConfig("lyapunov.renorm_period must be >= 1");
        if (!(escape_radius > 0.0)) throw InvalidConfig("lyapunov.escape_radius must be > 0");
        if (!(epsilon_homoclinic > 0.0)) throw InvalidConfig("lyapunov.epsilon_homoclinic must be > 0");
        if (!(zero_threshold >= 0.0)) throw InvalidConfig("lyapunov.zero_threshold must be >= 0");
        if (!(initial_offset >= 0.0)) throw InvalidConfig("lyapunov.initial_offset must be >= 0");
    }
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LyapunovRun {
    std::array<double, 3> spectrum{kNaN, kNaN, kNaN};  // descending; third is NaN in the planar (B = 0) mode
    int dimension = 3;
    bool escaped = false;
    long long escape_iterate = -1;
    double min_distance_to_O = std::numeric_limits<double>::infinity();
    std::vector<State> attractor_sample;
    State final_state;
    bool pseudohyperbolic = false;
    bool homoclinic = false;

    double sum() const {
        double s = 0.0;
        for (int k = 0; k < dimension; ++k) s += spectrum[static_cast<std::size_t>(k)];
        return s;
    }
    double sum12() const { return spectrum[0] + spectrum[1]; }
};

enum class AttractorClass : std::uint8_t { Escape, Periodic, InvariantCurve, Chaos, ChaosZero2, Hyperchaos, Homoclinic };

inline constexpr int code(AttractorClass c) { return static_cast<int>(c); }

inline constexpr std::string_view to_string(AttractorClass c) {
    switch (c) {
    case AttractorClass::Escape: return "escape";
    case AttractorClass::Periodic: return "periodic";
    case AttractorClass::InvariantCurve: return "invariant-curve";
    case AttractorClass::Chaos: return "chaos";
    case AttractorClass::ChaosZero2: return "chaos-zero-L2";
    case AttractorClass::Hyperchaos: return "hyperchaos";
    case AttractorClass::Homoclinic: return "homoclinic-chaos";
    }
    return "?";
}

inline bool pseudohyperbolic_flag(const std::array<double, 3>& s) {
    return s[0] > 0.0 && s[0] + s[1] > 0.0 && s[0] + s[1] + s[2] < 0.0;
}

inline State default_initial_state(const HenonMap& m, const LyapunovConfig& cfg) {
    const double d = cfg.initial_offset;
    MultiplierSet ms = solve_characteristic(m.A, m.B, m.C);
    const auto& lead = ms.values[0];
    if (lead.imag() == 0.0 && std::abs(lead) > 1.0) {
        Vec3 e = companion_eigenvector(lead.real());
        return {d * e[0], d * e[1], d * e[2]};
    }
    return {d, d, d};
}

namespace detail {

template <std::size_t N>
using Frame = std::array<std::array<double, N>, N>;

// Orthonormalizes the columns in place (modified Gram-Schmidt) and returns their pre-normalization lengths.
template <std::size_t N>
std::array<double, N> gram_schmidt(Frame<N>& cols) {
    std::array<double, N> len{};
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            double proj = 0.0;
            for (std::size_t k = 0; k < N; ++k) proj += cols[a][k] * cols[b][k];
            for (std::size_t k = 0; k < N; ++k) cols[a][k] -= proj * cols[b][k];
        }
        double n = 0.0;
        for (std::size_t k = 0; k < N; ++k) n += cols[a][k] * cols[a][k];
        n = std::sqrt(n);
        len[a] = n;
        if (n > 0.0)
            for (std::size_t k = 0; k < N; ++k) cols[a][k] /= n;
    }
    return len;
}

template <std::size_t N>
Frame<N> identity_frame() {
    Frame<N> f{};
    for (std::size_t k = 0; k < N; ++k) f[k][k] = 1.0;
    return f;
}

} // namespace detail

// frame: optional initial tangent frame (columns); it is orthonormalized before use.
// In the planar mode (B = 0) only the (y, z) block of the frame is used.
inline LyapunovRun lyapunov_spectrum(const HenonMap& m, State x0, const LyapunovConfig& cfg,
                                     const std::optional<Mat3>& frame = std::nullopt) {
    cfg.validate();
    LyapunovRun run;
    const bool planar = m.B == 0.0;
    run.dimension = planar ? 2 : 3;

    auto escaped = [&](const State& s) {
        return !is_finite(s) || std::abs(s.x) > cfg.escape_radius || std::abs(s.y) > cfg.escape_radius ||
               std::abs(s.z) > cfg.escape_radius;
    };

    State s = x0;
    if (escaped(s)) {
        run.escaped = true;
        run.escape_iterate = 0;
        run.final_state = s;
        return run;
    }

    // Columns of the tangent frame: 3D over (x, y, z), or 2D over (y, z).
    detail::Frame<3> f3 = detail::identity_frame<3>();
    detail::Frame<2> f2 = detail::identity_frame<2>();
    if (frame) {
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t k = 0; k < 3; ++k) f3[a][k] = (*frame)[k][a];
        f2 = {{{f3[0][1], f3[0][2]}, {f3[1][1], f3[1][2]}}};
        detail::gram_schmidt(f3);
        detail::gram_schmidt(f2);
    }

    // Advances the state and the tangent frame by one iterate.
    auto advance = [&](const State& x) {
        PolyValue f = m.nonlinearity.evaluate(x.y, x.z);
        const double jy = m.C + f.d_dy, jz = m.A + f.d_dz;
        if (planar) {
            for (auto& c : f2) c = {c[1], jy * c[0] + jz * c[1]};
        } else {
            for (auto& c : f3) c = {c[1], c[2], m.B * c[0] + jy * c[1] + jz * c[2]};
        }
        return State{x.y, x.z, m.B * x.x + m.A * x.z + m.C * x.y + f.value};
    };

    // The frame is carried through the transient as well; only the measured iterates are accumulated.
    for (long long k = 0; k < cfg.n_transient; ++k) {
        s = advance(s);
        if (escaped(s)) {
            run.escaped = true;
            run.escape_iterate = k + 1;
            run.final_state = s;
            return run;
        }
        if ((k + 1) % cfg.renorm_period == 0) {
            if (planar) detail::gram_schmidt(f2);
            else detail::gram_schmidt(f3);
        }
    }
    if (planar) detail::gram_schmidt(f2);
    else detail::gram_schmidt(f3);

    const std::size_t stride =
        cfg.sample_capacity == 0
            ? 0
            : std::max<std::size_t>(1, static_cast<std::size_t>(cfg.n_measure) / cfg.sample_capacity);
    if (cfg.sample_capacity > 0) run.attractor_sample.reserve(cfg.sample_capacity);

    std::array<long double, 3> acc{0.0L, 0.0L, 0.0L};
    double min_dist = std::numeric_limits<double>::infinity();

    for (long long k = 0; k < cfg.n_measure; ++k) {
        s = advance(s);
        if (escaped(s)) {
            run.escaped = true;
            run.escape_iterate = cfg.n_transient + k + 1;
            run.final_state = s;
            run.min_distance_to_O = min_dist;
            return run;
        }
        min_dist = std::min(min_dist, norm(s));
        if (stride != 0 && static_cast<std::size_t>(k) % stride == 0 && run.attractor_sample.size() < cfg.sample_capacity)
            run.attractor_sample.push_back(s);

        if ((k + 1) % cfg.renorm_period == 0 || k + 1 == cfg.n_measure) {
            if (planar) {
                auto len = detail::gram_schmidt(f2);
                for (std::size_t a = 0; a < 2; ++a) acc[a] += std::log(static_cast<long double>(len[a]));
            } else {
                auto len = detail::gram_schmidt(f3);
                for (std::size_t a = 0; a < 3; ++a) acc[a] += std::log(static_cast<long double>(len[a]));
            }
        }
    }

    for (int a = 0; a < run.dimension; ++a)
        run.spectrum[static_cast<std::size_t>(a)] =
            static_cast<double>(acc[static_cast<std::size_t>(a)] / static_cast<long double>(cfg.n_measure));
    std::sort(run.spectrum.begin(), run.spectrum.begin() + run.dimension, std::greater<>());
    for (int a = 0; a < run.dimension; ++a)
        if (!std::isfinite(run.spectrum[static_cast<std::size_t>(a)])) run.escaped = true;
    if (run.escaped) {
        run.spectrum = {kNaN, kNaN, kNaN};
        run.escape_iterate = cfg.n_transient + cfg.n_measure;
    }

    run.final_state = s;
    run.min_distance_to_O = min_dist;
    if (!run.escaped) {
        // planar mode: the third direction is the zero multiplier, contracting infinitely fast
        std::array<double, 3> s3 = run.spectrum;
        if (planar) s3[2] = -std::numeric_limits<double>::infinity();
        run.pseudohyperbolic = pseudohyperbolic_flag(s3);
        run.homoclinic = run.spectrum[0] > cfg.zero_threshold && min_dist < cfg.epsilon_homoclinic;
    }
    return run;
}

inline LyapunovRun lyapunov_spectrum(const HenonMap& m, const LyapunovConfig& cfg) {
    return lyapunov_spectrum(m, default_initial_state(m, cfg), cfg);
}

inline AttractorClass classify_attractor(const LyapunovRun& run, const LyapunovConfig& cfg) {
    if (run.escaped) return AttractorClass::Escape;
    const double l1 = run.spectrum[0], l2 = run.spectrum[1], z = cfg.zero_threshold;
    if (l1 < -z) return AttractorClass::Periodic;
    if (l1 <= z) return AttractorClass::InvariantCurve;
    if (run.min_distance_to_O < cfg.epsilon_homoclinic) return AttractorClass::Homoclinic;
    if (l2 > z) return AttractorClass::Hyperchaos;
    if (std::abs(l2) <= z) return AttractorClass::ChaosZero2;
    return AttractorClass::Chaos;
}

} // namespace henon
