#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "henon_atlas/cli.hpp"

using namespace henon;

namespace {

struct Common {
    std::string spec_path;
    std::string out_dir;
    std::string prefix;
    unsigned threads = default_thread_count();
    bool no_timestamp = false;
};

struct Overrides {
    std::string preset;
    std::vector<double> rect;
    std::vector<int> size;
    std::optional<double> tol;
    bool no_overlay = false;
    std::optional<long long> n_measure;
    std::optional<long long> n_transient;
    std::optional<double> epsilon;
    std::optional<std::size_t> sample_capacity;
    std::optional<std::size_t> max_points;
    std::optional<double> h_max;
    std::optional<int> direction;
    bool stable = false;
    int image_size = 0;
};

RunSpec load(const Common& c) { return c.spec_path.empty() ? RunSpec{} : load_run_spec(c.spec_path); }

// Flags override the spec file, which overrides built-in defaults.
void apply(RunSpec& spec, const Overrides& o) {
    if (!o.preset.empty()) {
        find_preset(o.preset);
        spec.preset = o.preset;
    }
    if (o.rect.size() == 4) spec.rect = {o.rect[0], o.rect[1], o.rect[2], o.rect[3]};
    if (o.size.size() == 2) spec.resolution = {o.size[0], o.size[1]};
    if (o.tol) spec.tol = *o.tol;
    if (o.no_overlay) spec.overlay = false;
    if (o.n_measure) spec.lyapunov.n_measure = *o.n_measure;
    if (o.n_transient) spec.lyapunov.n_transient = *o.n_transient;
    if (o.epsilon) spec.lyapunov.epsilon_homoclinic = *o.epsilon;
    if (o.sample_capacity) spec.sample_capacity = *o.sample_capacity;
    if (o.max_points) spec.trace.max_points = *o.max_points;
    if (o.h_max) spec.trace.h_max = *o.h_max;
    if (o.direction) spec.trace.direction = *o.direction;
    if (o.stable) spec.stable = true;
    if (o.image_size > 0) spec.image_size = o.image_size;
}

cli::OutputSink sink_for(const RunSpec& spec, const Common& c, const std::string& command) {
    std::string dir = !c.out_dir.empty() ? c.out_dir : spec.out_dir.value_or(".");
    std::string prefix = !c.prefix.empty() ? c.prefix : spec.prefix.value_or(command);
    return cli::OutputSink(dir, prefix, spec.timestamp && !c.no_timestamp);
}

// Map and parameters for attractor/separatrix: positional preset/A/C, then the spec file, then the preset default point.
HenonMap pick_map(RunSpec& spec, const std::string& preset, std::optional<double> A, std::optional<double> C,
                  std::string& family_name) {
    if (!preset.empty()) {
        find_preset(preset);
        spec.preset = preset;
    }
    MapFamily fam = resolve_family(spec);
    family_name = fam.name;
    double a = 0.0, c = 0.0;
    if (A) a = *A;
    else if (spec.A) a = *spec.A;
    else if (fam.default_point) a = fam.default_point->A;
    else throw InvalidConfig("no value for A: pass it or set params.A");
    if (C) c = *C;
    else if (spec.C) c = *spec.C;
    else if (fam.default_point) c = fam.default_point->C;
    else throw InvalidConfig("no value for C: pass it or set params.C");
    return HenonMap{a, fam.B, c, fam.nonlinearity};
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--spec", c.spec_path, "run-spec file (key = value lines)");
    app->add_option("--out", c.out_dir, "output directory");
    app->add_option("--prefix", c.prefix, "output file prefix (default: command name)");
    app->add_option("--threads", c.threads, "worker threads for charts and diagrams")->check(CLI::PositiveNumber);
    app->add_flag("--no-timestamp", c.no_timestamp, "omit the creation time from metadata files");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplier charts, Lyapunov diagrams and separatrices of three-dimensional Henon maps"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::kVersion);
    Common common;
    Overrides ov;

    // classify
    double cA = 0, cB = 0, cC = 0;
    auto* classify = app.add_subcommand("classify", "type of the fixed point O at (A, B, C)");
    classify->add_option("A", cA)->required();
    classify->add_option("B", cB)->required();
    classify->add_option("C", cC)->required();
    classify->add_option("--tol", ov.tol, "unit-circle tolerance");
    add_common(classify, common);

    // chart
    std::optional<double> chart_B;
    auto* chart = app.add_subcommand("chart", "saddle chart of O over an (A, C) rectangle at fixed B");
    chart->add_option("B", chart_B, "B (default: from the spec file)");
    chart->add_option("--rect", ov.rect, "A_min A_max C_min C_max")->expected(4);
    chart->add_option("--size", ov.size, "W H")->expected(2);
    chart->add_option("--tol", ov.tol, "unit-circle tolerance");
    chart->add_flag("--no-overlay", ov.no_overlay, "omit boundary curves");
    add_common(chart, common);

    // diagram
    auto* diagram = app.add_subcommand("diagram", "Lyapunov diagram over an (A, C) rectangle");
    diagram->add_option("--preset", ov.preset, "map family");
    diagram->add_option("--rect", ov.rect, "A_min A_max C_min C_max")->expected(4);
    diagram->add_option("--size", ov.size, "W H")->expected(2);
    diagram->add_option("--n-measure", ov.n_measure, "measured iterates per cell");
    diagram->add_option("--n-transient", ov.n_transient, "discarded iterates per cell");
    diagram->add_option("--epsilon", ov.epsilon, "homoclinic distance threshold");
    diagram->add_flag("--no-overlay", ov.no_overlay, "omit saddle-chart boundary curves");
    add_common(diagram, common);

    // attractor
    std::string a_preset;
    std::optional<double> aA, aC;
    auto* attractor = app.add_subcommand("attractor", "Lyapunov spectrum and portrait of the attractor near O");
    attractor->add_option("preset", a_preset, "map family (default: from the spec file)");
    attractor->add_option("A", aA);
    attractor->add_option("C", aC);
    attractor->add_option("--n", ov.n_measure, "measured iterates");
    attractor->add_option("--n-transient", ov.n_transient, "discarded iterates");
    attractor->add_option("--epsilon", ov.epsilon, "homoclinic distance threshold");
    attractor->add_option("--sample", ov.sample_capacity, "attractor points kept for the CSV and raster");
    attractor->add_option("--image-size", ov.image_size, "projection raster size in pixels");
    add_common(attractor, common);

    // separatrix
    std::string s_preset;
    std::optional<double> sA, sC;
    auto* separatrix = app.add_subcommand("separatrix", "trace a one-dimensional separatrix of O");
    separatrix->add_option("preset", s_preset, "map family (default: from the spec file)");
    separatrix->add_option("A", sA);
    separatrix->add_option("C", sC);
    separatrix->add_option("--direction", ov.direction, "branch: 1 or -1")->check(CLI::IsMember({1, -1}));
    separatrix->add_flag("--stable", ov.stable, "trace the stable separatrix with the inverse map");
    separatrix->add_option("--max-points", ov.max_points, "point budget");
    separatrix->add_option("--h-max", ov.h_max, "largest gap between consecutive points");
    separatrix->add_option("--image-size", ov.image_size, "projection raster size in pixels");
    add_common(separatrix, common);

    // henon2d
    double hM = 0, hC = 0;
    bool h_run = false;
    auto* henon2d = app.add_subcommand("henon2d", "shift the planar Henon map to its fixed point");
    henon2d->add_option("M", hM)->required();
    henon2d->add_option("C", hC)->required();
    henon2d->add_flag("--run", h_run, "also compute the planar Lyapunov spectrum");
    henon2d->add_option("--n", ov.n_measure, "measured iterates");
    add_common(henon2d, common);

    CLI11_PARSE(app, argc, argv);

    try {
        RunSpec spec = load(common);
        apply(spec, ov);
        if (*classify) return cli::cmd_classify(cA, cB, cC, spec.tol, std::cout);

        if (*chart) {
            double B = 0.0;
            if (chart_B) B = *chart_B;
            else if (spec.has_map()) B = resolve_family(spec).B;
            else throw InvalidConfig("chart needs B: pass it or set map.B / map.preset");
            auto sink = sink_for(spec, common, "chart");
            return cli::cmd_chart(B, spec.rect, spec.resolution, spec.tol, spec.overlay, sink, common.threads, std::cout);
        }

        if (*diagram) {
            SweepSpec sw = to_sweep_spec(spec);
            const std::string family = resolve_family(spec).name;
            auto sink = sink_for(spec, common, "diagram");
            return cli::cmd_diagram(sw, family, sink, common.threads, std::cout);
        }

        if (*attractor) {
            std::string family;
            HenonMap m = pick_map(spec, a_preset, aA, aC, family);
            LyapunovConfig cfg = spec.lyapunov;
            cfg.sample_capacity = spec.sample_capacity.value_or(100'000);
            auto sink = sink_for(spec, common, "attractor");
            return cli::cmd_attractor(m, family, cfg, spec.image_size, sink, std::cout);
        }

        if (*separatrix) {
            std::string family;
            HenonMap m = pick_map(spec, s_preset, sA, sC, family);
            auto sink = sink_for(spec, common, "separatrix");
            return cli::cmd_separatrix(m, family, spec.trace, spec.stable, spec.exit_radius, spec.image_size, sink,
                                       std::cout);
        }

        if (*henon2d) {
            bool write = !common.out_dir.empty() || spec.out_dir.has_value();
            std::optional<cli::OutputSink> sink;
            if (write) sink.emplace(sink_for(spec, common, "henon2d"));
            return cli::cmd_henon2d(hM, hC, h_run, spec.lyapunov, sink ? &*sink : nullptr, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "henon-atlas: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "henon-atlas: unexpected failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
