#pragma once

// Run-spec files: "key = value" lines, '#' starts a comment. Every key except the
// map selection (map.preset or map.B) has a default; unknown keys are errors.

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "henon_atlas/errors.hpp"
#include "henon_atlas/lyapunov.hpp"
#include "henon_atlas/manifold.hpp"
#include "henon_atlas/polynomial.hpp"
#include "henon_atlas/presets.hpp"
#include "henon_atlas/spectrum.hpp"
#include "henon_atlas/sweep.hpp"

namespace henon {

struct RunSpec {
    std::optional<std::string> preset;
    std::optional<double> B;
    std::vector<Term> f_terms;  // when non-empty, replaces the preset nonlinearity
    std::optional<double> A;
    std::optional<double> C;

    ParamRect rect{-4.0, 4.0, -4.0, 4.0};
    Resolution resolution{64, 64};
    double tol = kUnitCircleTolerance;
    bool overlay = true;

    LyapunovConfig lyapunov;
    std::optional<std::size_t> sample_capacity;
    TraceConfig trace;
    double exit_radius = 0.1;
    bool stable = false;

    std::optional<std::string> out_dir;
    std::optional<std::string> prefix;
    bool timestamp = true;
    int image_size = 512;

    std::set<std::string> keys_seen;

    bool has_map() const { return preset.has_value() || B.has_value(); }
};

struct MapFamily {
    std::string name;
    double B = 0.0;
    PolyNonlinearity nonlinearity;
    std::optional<ParameterPoint> default_point;
};

// B and f from the preset, overridden by map.B and f.* keys when present.
inline MapFamily resolve_family(const RunSpec& spec) {
    MapFamily fam;
    if (spec.preset) {
        const Preset& p = find_preset(*spec.preset);
        fam.name = p.name;
        fam.B = p.B;
        fam.nonlinearity = p.nonlinearity;
        fam.default_point = p.points.front();
    } else if (spec.B) {
        fam.name = "custom";
    } else {
        throw InvalidConfig("run spec selects no map: set map.preset or map.B");
    }
    if (spec.B) fam.B = *spec.B;
    if (!spec.f_terms.empty()) fam.nonlinearity = PolyNonlinearity(spec.f_terms);
    return fam;
}

inline SweepSpec to_sweep_spec(const RunSpec& spec) {
    MapFamily fam = resolve_family(spec);
    SweepSpec sw;
    sw.B = fam.B;
    sw.nonlinearity = fam.nonlinearity;
    sw.rect = spec.rect;
    sw.resolution = spec.resolution;
    sw.lyapunov = spec.lyapunov;
    sw.overlay = spec.overlay;
    sw.tol = spec.tol;
    return sw;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// from_chars for double rejects a leading '+', strtod-compatible otherwise.
inline std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return parse_number<double>(s);
}

inline std::optional<bool> parse_bool(std::string_view s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    return std::nullopt;
}

} // namespace detail

inline RunSpec parse_run_spec(const std::string& text, const std::string& filename = "<spec>") {
    RunSpec spec;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        auto fail = [&](const std::string& msg) { throw SpecParseError(filename, line_no, msg); };
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail("expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty()) fail("empty key");
        if (value.empty()) fail("empty value for '" + key + "'");
        if (!spec.keys_seen.insert(key).second) fail("duplicate key '" + key + "'");

        auto real = [&]() {
            auto v = detail::parse_real(value);
            if (!v || !std::isfinite(*v)) fail("'" + key + "' needs a finite real number, got '" + std::string(value) + "'");
            return *v;
        };
        auto integer = [&]() {
            auto v = detail::parse_number<long long>(value);
            if (!v) fail("'" + key + "' needs an integer, got '" + std::string(value) + "'");
            return *v;
        };
        auto positive_int = [&]() {
            long long v = integer();
            if (v < 1 || v > 1'000'000'000) fail("'" + key + "' must be a positive integer");
            return static_cast<int>(v);
        };
        auto boolean = [&]() {
            auto v = detail::parse_bool(value);
            if (!v) fail("'" + key + "' needs true or false, got '" + std::string(value) + "'");
            return *v;
        };

        if (key.rfind("f.", 0) == 0) {
            std::string_view rest = std::string_view(key).substr(2);
            const auto dot = rest.find('.');
            if (dot == std::string_view::npos) fail("polynomial key must be f.<i>.<j>");
            auto i = detail::parse_number<int>(rest.substr(0, dot));
            auto j = detail::parse_number<int>(rest.substr(dot + 1));
            if (!i || !j || *i < 0 || *j < 0) fail("polynomial key must be f.<i>.<j> with non-negative integers");
            if (*i + *j < 2) fail("nonlinearity terms need degree >= 2, got '" + key + "'");
            if (*i + *j > BivariatePolynomial::kMaxDegree) fail("polynomial degree too large in '" + key + "'");
            spec.f_terms.push_back({*i, *j, real()});
            continue;
        }

        if (key == "map.preset") {
            std::string name(value);
            try {
                find_preset(name);
            } catch (const UnknownPreset& e) {
                fail(e.what());
            }
            spec.preset = name;
        } else if (key == "map.B") spec.B = real();
        else if (key == "params.A") spec.A = real();
        else if (key == "params.C") spec.C = real();
        else if (key == "grid.A_min") spec.rect.A_min = real();
        else if (key == "grid.A_max") spec.rect.A_max = real();
        else if (key == "grid.C_min") spec.rect.C_min = real();
        else if (key == "grid.C_max") spec.rect.C_max = real();
        else if (key == "grid.W") spec.resolution.W = positive_int();
        else if (key == "grid.H") spec.resolution.H = positive_int();
        else if (key == "grid.tol") spec.tol = real();
        else if (key == "grid.overlay") spec.overlay = boolean();
        else if (key == "lyapunov.n_transient") {
            long long v = integer();
            if (v < 0) fail("'lyapunov.n_transient' must be >= 0");
            spec.lyapunov.n_transient = v;
        } else if (key == "lyapunov.n_measure") {
            long long v = integer();
            if (v < 1) fail("'lyapunov.n_measure' must be >= 1");
            spec.lyapunov.n_measure = v;
        } else if (key == "lyapunov.renorm_period") spec.lyapunov.renorm_period = positive_int();
        else if (key == "lyapunov.escape_radius") spec.lyapunov.escape_radius = real();
        else if (key == "lyapunov.zero_threshold") spec.lyapunov.zero_threshold = real();
        else if (key == "lyapunov.epsilon_homoclinic") spec.lyapunov.epsilon_homoclinic = real();
        else if (key == "lyapunov.initial_offset") spec.lyapunov.initial_offset = real();
        else if (key == "lyapunov.sample_capacity") {
            long long v = integer();
            if (v < 0) fail("'lyapunov.sample_capacity' must be >= 0");
            spec.sample_capacity = static_cast<std::size_t>(v);
        } else if (key == "trace.initial_offset") spec.trace.initial_offset = real();
        else if (key == "trace.seed_points") spec.trace.seed_points = positive_int();
        else if (key == "trace.h_max") spec.trace.h_max = real();
        else if (key == "trace.max_points") spec.trace.max_points = static_cast<std::size_t>(positive_int());
        else if (key == "trace.trace_radius") spec.trace.trace_radius = real();
        else if (key == "trace.direction") {
            long long v = integer();
            if (v != 1 && v != -1) fail("'trace.direction' must be 1 or -1");
            spec.trace.direction = static_cast<int>(v);
        } else if (key == "trace.exit_radius") spec.exit_radius = real();
        else if (key == "trace.stable") spec.stable = boolean();
        else if (key == "output.dir") spec.out_dir = std::string(value);
        else if (key == "output.prefix") spec.prefix = std::string(value);
        else if (key == "output.timestamp") spec.timestamp = boolean();
        else if (key == "output.image_size") spec.image_size = positive_int();
        else fail("unknown key '" + key + "'");
    }

    try {
        spec.lyapunov.validate();
        spec.trace.validate();
        if (!spec.f_terms.empty()) PolyNonlinearity check(spec.f_terms);
    } catch (const Error& e) {
        throw SpecParseError(filename, line_no, e.what());
    }
    return spec;
}

inline RunSpec load_run_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOFailure("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_spec(buf.str(), path);
}

} // namespace henon
