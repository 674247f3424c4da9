#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "henon_atlas/lyapunov.hpp"
#include "henon_atlas/presets.hpp"

using namespace henon;

namespace {

LyapunovConfig short_config(long long n = 100'000) {
    LyapunovConfig cfg;
    cfg.n_measure = n;
    return cfg;
}

HenonMap lorenz() { return find_preset("lorenz-z2").at(-1.1, 0.85); }

// Random orthonormal frame from QR of a Gaussian matrix.
Mat3 random_frame(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::array<Vec3, 3> cols{};
    for (auto& c : cols) c = {g(rng), g(rng), g(rng)};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            double p = dot(cols[k], cols[j]);
            for (std::size_t r = 0; r < 3; ++r) cols[k][r] -= p * cols[j][r];
        }
        double n = norm(cols[k]);
        for (auto& v : cols[k]) v /= n;
    }
    Mat3 f{};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) f[r][c] = cols[c][r];
    return f;
}

} // namespace

TEST(Lyapunov, LinearExactness) {
    HenonMap m{0.0, 0.5, 0.0, {}};
    LyapunovRun run = lyapunov_spectrum(m, LyapunovConfig{});
    ASSERT_FALSE(run.escaped);
    for (double l : run.spectrum) EXPECT_NEAR(l, std::log(0.5) / 3.0, 1e-6);
}

TEST(Lyapunov, LinearExactnessRealRoots) {
    // roots 0.9, -0.5, 0.2: the exponents are the log moduli
    const double r1 = 0.9, r2 = -0.5, r3 = 0.2;
    HenonMap m{r1 + r2 + r3, r1 * r2 * r3, -(r1 * r2 + r1 * r3 + r2 * r3), {}};
    LyapunovRun run = lyapunov_spectrum(m, State{1e-3, 2e-3, -1e-3}, LyapunovConfig{});
    ASSERT_FALSE(run.escaped);
    EXPECT_NEAR(run.spectrum[0], std::log(0.9), 1e-6);
    EXPECT_NEAR(run.spectrum[1], std::log(0.5), 1e-6);
    EXPECT_NEAR(run.spectrum[2], std::log(0.2), 1e-6);
}

TEST(Lyapunov, FarStartEscapes) {
    LyapunovRun run = lyapunov_spectrum(lorenz(), State{1e6, 1e6, 1e6}, short_config(1000));
    EXPECT_TRUE(run.escaped);
    EXPECT_EQ(classify_attractor(run, short_config()), AttractorClass::Escape);
    // direct iteration: one step already has |z| far above the radius
    State s = step(lorenz(), State{1e6, 1e6, 1e6});
    EXPECT_GT(std::abs(s.z), 1e5);
}

TEST(Lyapunov, EscapeIsDeterministic) {
    HenonMap m = find_preset("super-fig8").at_default();
    LyapunovConfig cfg = short_config(10'000);
    cfg.n_transient = 1000;
    auto a = lyapunov_spectrum(m, cfg), b = lyapunov_spectrum(m, cfg);
    EXPECT_EQ(a.escaped, b.escaped);
    EXPECT_EQ(a.escape_iterate, b.escape_iterate);
}

TEST(Pseudohyperbolic, Examples) {
    EXPECT_TRUE(pseudohyperbolic_flag({0.05, 0.01, -0.42}));
    EXPECT_FALSE(pseudohyperbolic_flag({0.05, -0.08, -0.33}));
    EXPECT_FALSE(pseudohyperbolic_flag({0.04, -0.07, -0.33}));
    EXPECT_FALSE(pseudohyperbolic_flag({-0.01, 0.0, -0.3}));
    EXPECT_FALSE(pseudohyperbolic_flag({0.5, 0.2, 0.1}));
}

TEST(ClassifyAttractor, Examples) {
    LyapunovConfig cfg;
    LyapunovRun run;
    run.escaped = true;
    EXPECT_EQ(code(classify_attractor(run, cfg)), 0);
    run.escaped = false;
    run.min_distance_to_O = 1.0;
    run.spectrum = {-0.1, -0.2, -0.3};
    EXPECT_EQ(code(classify_attractor(run, cfg)), 1);
    run.spectrum = {0.0005, -0.2, -0.3};
    EXPECT_EQ(code(classify_attractor(run, cfg)), 2);
    run.spectrum = {0.04, -0.05, -0.40};
    EXPECT_EQ(code(classify_attractor(run, cfg)), 3);
    run.spectrum = {0.04, 0.0002, -0.40};
    EXPECT_EQ(code(classify_attractor(run, cfg)), 4);
    run.spectrum = {0.04, 0.005, -0.40};
    EXPECT_EQ(code(classify_attractor(run, cfg)), 5);
    run.min_distance_to_O = 0.5 * cfg.epsilon_homoclinic;
    EXPECT_EQ(code(classify_attractor(run, cfg)), 6);
    // the homoclinic pass only applies to chaotic runs
    run.spectrum = {-0.1, -0.2, -0.3};
    EXPECT_EQ(code(classify_attractor(run, cfg)), 1);
}

TEST(ClassifyAttractor, LorenzPointIsHomoclinic) {
    LyapunovConfig cfg;
    LyapunovRun run = lyapunov_spectrum(lorenz(), cfg);
    ASSERT_FALSE(run.escaped);
    EXPECT_EQ(code(classify_attractor(run, cfg)), 6);
    EXPECT_TRUE(run.pseudohyperbolic);
    EXPECT_TRUE(run.homoclinic);
    EXPECT_GT(run.sum12(), 0.005);
    EXPECT_LT(run.sum12(), 0.035);
}

TEST(InitialState, Examples) {
    LyapunovConfig cfg;
    State s = default_initial_state(HenonMap{0.0, 0.5, 0.0, {}}, cfg);
    EXPECT_EQ(s, (State{1e-3, 1e-3, 1e-3}));

    State l = default_initial_state(lorenz(), cfg);
    EXPECT_NEAR(norm(l), 1e-3, 1e-15);
    // (1, l1, l1^2) direction
    auto ms = solve_characteristic(-1.1, 0.7, 0.85);
    const double l1 = ms.values[0].real();
    EXPECT_NEAR(l.y / l.x, l1, 1e-12);
    EXPECT_NEAR(l.z / l.x, l1 * l1, 1e-12);

    cfg.initial_offset = 0.0;
    EXPECT_EQ(default_initial_state(lorenz(), cfg), State{});
    LyapunovRun fixed = lyapunov_spectrum(lorenz(), default_initial_state(lorenz(), cfg), short_config(1000));
    EXPECT_FALSE(fixed.escaped);
    EXPECT_EQ(fixed.final_state, State{});
}

TEST(Lyapunov, DeterminantIdentity) {
    for (const char* name : {"lorenz-z2", "fig8-quad", "double-fig8", "fig8-quasi", "shilnikov-quad"}) {
        const Preset& p = find_preset(name);
        LyapunovRun run = lyapunov_spectrum(p.at_default(), LyapunovConfig{});
        ASSERT_FALSE(run.escaped) << name;
        EXPECT_NEAR(run.sum(), std::log(p.B), 5e-3) << name;
    }
}

TEST(Lyapunov, FrameIndependence) {
    HenonMap m = lorenz();
    LyapunovConfig cfg;
    State x0 = default_initial_state(m, cfg);
    auto a = lyapunov_spectrum(m, x0, cfg, random_frame(1));
    auto b = lyapunov_spectrum(m, x0, cfg, random_frame(2));
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(a.spectrum[k], b.spectrum[k], 1e-4);
}

TEST(Lyapunov, MonotoneConsistency) {
    for (const char* name : {"lorenz-z2", "fig8-quad", "double-fig8", "fig8-quasi"}) {
        HenonMap m = find_preset(name).at_default();
        LyapunovConfig cfg;
        auto a = lyapunov_spectrum(m, cfg);
        cfg.n_measure *= 2;
        auto b = lyapunov_spectrum(m, cfg);
        ASSERT_FALSE(a.escaped || b.escaped) << name;
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(a.spectrum[k], b.spectrum[k], 5e-3) << name << " " << k;
    }
}

TEST(Lyapunov, PlanarMode) {
    HenonMap m = find_preset("henon2d").at_default();
    LyapunovRun run = lyapunov_spectrum(m, short_config(200'000));
    ASSERT_FALSE(run.escaped);
    EXPECT_EQ(run.dimension, 2);
    EXPECT_GT(run.spectrum[0], 0.0);
    EXPECT_TRUE(std::isnan(run.spectrum[2]));
    EXPECT_NEAR(run.sum(), std::log(0.3), 5e-3);
    EXPECT_NEAR(run.sum12(), std::log(0.3), 5e-3);
}

TEST(Lyapunov, SampleCapacity) {
    LyapunovConfig cfg = short_config(10'000);
    cfg.sample_capacity = 500;
    auto run = lyapunov_spectrum(lorenz(), cfg);
    EXPECT_EQ(run.attractor_sample.size(), 500u);
    cfg.sample_capacity = 0;
    EXPECT_TRUE(lyapunov_spectrum(lorenz(), cfg).attractor_sample.empty());
}

TEST(LyapunovConfig, Validation) {
    LyapunovConfig cfg;
    cfg.n_measure = 0;
    EXPECT_THROW(cfg.validate(), InvalidConfig);
    cfg = LyapunovConfig{};
    cfg.escape_radius = -1.0;
    EXPECT_THROW(cfg.validate(), InvalidConfig);
}
