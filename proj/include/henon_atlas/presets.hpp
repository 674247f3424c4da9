#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "henon_atlas/errors.hpp"
#include "henon_atlas/map_core.hpp"

namespace henon {

struct ParameterPoint {
    double A = 0.0;
    double C = 0.0;
    std::string note;
};

// A family of maps with fixed B and nonlinearity; A and C are free.
struct Preset {
    std::string name;
    double B = 0.0;
    PolyNonlinearity nonlinearity;
    std::string description;
    std::vector<ParameterPoint> points;  // first entry is the default

    HenonMap at(double A, double C) const { return HenonMap{A, B, C, nonlinearity}; }
    HenonMap at_default() const { return at(points.front().A, points.front().C); }
};

inline const std::vector<Preset>& preset_catalog() {
    static const std::vector<Preset> catalog = [] {
        const double henon_A = henon2d_normalize(1.4, 0.3).A;
        return std::vector<Preset>{
            {"lorenz-z2", 0.7, PolyNonlinearity{{0, 2, -1.0}}, "discrete Lorenz attractor",
             {{-1.1, 0.85, "Lorenz attractor"}, {-1.11, 0.77, "Lorenz attractor with a lacuna"}}},
            {"fig8-quad", 0.72, PolyNonlinearity{{2, 0, -1.0}, {1, 1, 0.515}, {0, 2, -1.45}},
             "discrete figure-8 attractor", {{-1.86, 0.03, "figure-8 attractor"}}},
            {"double-fig8", 0.5, PolyNonlinearity{{3, 0, -2.0}, {0, 3, -2.25}}, "discrete double figure-8 attractor",
             {{0.82, 2.06, "double figure-8 attractor"}}},
            {"super-fig8", 0.05, PolyNonlinearity{{3, 0, 1.0}, {0, 3, -1.0}}, "discrete super figure-8 attractor",
             {{3.71, -2.75, "super figure-8 attractor"}}},
            {"fig8-quasi", 0.7, PolyNonlinearity{{2, 0, -1.0}, {0, 2, -1.45}}, "discrete figure-8 quasiattractor",
             {{-1.86, 0.03, "figure-8 quasiattractor"}}},
            {"book-cubic", 0.5, PolyNonlinearity{{3, 0, -1.0}}, "book quasiattractors (2D unstable manifold)",
             {{0.13, 1.72, "book attractor containing all three fixed points"}, {-0.75, 1.5, "book attractor"}}},
            {"spiral-cubic", 0.5, PolyNonlinearity{{3, 0, 0.5}, {2, 1, -6.0}, {0, 3, 0.5}},
             "spiral quasiattractor (saddle-focus (2,1))", {{2.13, -1.29, "spiral attractor"}}},
            {"shilnikov-quad", 0.5, PolyNonlinearity{{2, 0, -1.0}}, "discrete Shilnikov attractor (saddle-focus (1,2))",
             {{1.43, -1.84, "Shilnikov attractor"}}},
            {"henon2d", 0.0, PolyNonlinearity{{0, 2, -1.0}}, "two-dimensional Henon map shifted to its fixed point",
             {{henon_A, 0.3, "Henon attractor (M = 1.4, C = 0.3)"}, {-1.92, -0.4, "figure-8 quasiattractor"}}},
        };
    }();
    return catalog;
}

inline const Preset& find_preset(std::string_view name) {
    for (const auto& p : preset_catalog())
        if (p.name == name) return p;
    throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

} // namespace henon
