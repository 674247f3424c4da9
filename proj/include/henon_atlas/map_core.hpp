#pragma once

// Generalized Henon maps
//
//     x' = y,  y' = z,  z' = B x + A z + C y + f(y, z)
//
// with f of degree >= 2, so that the origin is a fixed point. Also the raw family
// z' = B x + f(y, z) (constant and linear terms allowed), fixed-point shifting,
// the two-dimensional (B = 0) Henon normalization and companion-form parameters
// of a general 3x3 linear part.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "henon_atlas/errors.hpp"
#include "henon_atlas/polynomial.hpp"

namespace henon {

struct State {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline Vec3 to_vec(const State& s) { return {s.x, s.y, s.z}; }
inline State to_state(const Vec3& v) { return {v[0], v[1], v[2]}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm(const State& s) { return std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double distance(const State& a, const State& b) {
    return norm(State{a.x - b.x, a.y - b.y, a.z - b.z});
}
inline bool is_finite(const State& s) { return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z); }

inline double determinant(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Vec3 apply(const Mat3& m, const Vec3& v) {
    return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

// Map centred at its fixed point O = (0, 0, 0).
struct HenonMap {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    PolyNonlinearity nonlinearity;
};

// z' = B x + f(y, z), f arbitrary.
struct RawHenonMap {
    double B = 0.0;
    RawPolynomial f;
};

namespace detail {

inline State step_unchecked(const HenonMap& m, const State& s) noexcept {
    return {s.y, s.z, m.B * s.x + m.A * s.z + m.C * s.y + m.nonlinearity(s.y, s.z)};
}

} // namespace detail

inline State step(const HenonMap& m, const State& s) {
    State out = detail::step_unchecked(m, s);
    if (!is_finite(out)) throw Escape("step produced a non-finite state");
    return out;
}

inline Mat3 jacobian(const HenonMap& m, const State& s) {
    PolyValue f = m.nonlinearity.evaluate(s.y, s.z);
    return Mat3{Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}, Vec3{m.B, m.C + f.d_dy, m.A + f.d_dz}};
}

inline State inverse_step(const HenonMap& m, const State& s) {
    if (m.B == 0.0) throw NotInvertible("map with B = 0 is not invertible");
    State out{(s.z - m.A * s.y - m.C * s.x - m.nonlinearity(s.x, s.y)) / m.B, s.x, s.y};
    if (!is_finite(out)) throw Escape("inverse step produced a non-finite state");
    return out;
}

inline Mat3 companion_matrix(double A, double B, double C) {
    return Mat3{Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}, Vec3{B, C, A}};
}

struct CompanionParams {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
};

// (A, B, C) such that the companion matrix has the characteristic polynomial of D:
// lambda^3 - A lambda^2 - C lambda - B.
inline CompanionParams companion_params(const Mat3& d) {
    double scale = 0.0;
    for (const auto& row : d)
        for (double v : row) scale = std::max(scale, std::abs(v));
    double det = determinant(d);
    if (scale == 0.0 || std::abs(det) <= 1e-14 * scale * scale * scale)
        throw SingularLinearPart("linear part is singular");
    double minors = (d[0][0] * d[1][1] - d[0][1] * d[1][0]) + (d[0][0] * d[2][2] - d[0][2] * d[2][0]) +
                    (d[1][1] * d[2][2] - d[1][2] * d[2][1]);
    return {d[0][0] + d[1][1] + d[2][2], det, -minors};
}

namespace detail {

// Coefficients (ascending powers) of g(t) = f(t, t) + (B - 1) t.
inline std::vector<double> diagonal_polynomial(const RawHenonMap& raw) {
    std::vector<double> c(static_cast<std::size_t>(std::max(raw.f.degree(), 1)) + 1, 0.0);
    for (const auto& t : raw.f.terms()) c[static_cast<std::size_t>(t.i + t.j)] += t.coeff;
    c[1] += raw.B - 1.0;
    return c;
}

inline double horner(const std::vector<double>& c, double t, double* derivative = nullptr) {
    double p = 0.0, dp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * t + p;
        p = p * t + *it;
    }
    if (derivative) *derivative = dp;
    return p;
}

// Real roots of a real polynomial (ascending coefficients) via companion-matrix
// eigenvalues, each Newton-polished.
inline std::vector<double> real_polynomial_roots(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const std::size_t n = c.size() - 1;
    std::vector<double> candidates;
    if (n == 0) return {};
    if (n == 1) {
        candidates.push_back(-c[0] / c[1]);
    } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t k = 1; k < n; ++k) comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
        for (std::size_t k = 0; k < n; ++k)
            comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n - 1)) = -c[k] / c[n];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        for (const auto& ev : es.eigenvalues()) {
            if (std::abs(ev.imag()) <= 1e-6 * (1.0 + std::abs(ev.real()))) candidates.push_back(ev.real());
        }
    }
    std::vector<double> roots;
    for (double r : candidates) {
        for (int it = 0; it < 50; ++it) {
            double dp = 0.0;
            double p = horner(c, r, &dp);
            if (p == 0.0 || dp == 0.0) break;
            double next = r - p / dp;
            if (std::abs(horner(c, next)) >= std::abs(p)) break;
            r = next;
        }
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || std::abs(r - unique.back()) > 1e-9 * (1.0 + std::abs(r))) unique.push_back(r);
    return unique;
}

} // namespace detail

inline constexpr double kFixedPointResidual = 1e-10;

// Real fixed points (z, z, z) of the raw map, ascending.
inline std::vector<double> diagonal_fixed_points(const RawHenonMap& raw) {
    std::vector<double> c = detail::diagonal_polynomial(raw);
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; }))
        throw DegenerateFamily("every diagonal point is fixed");
    std::vector<double> roots;
    for (double r : detail::real_polynomial_roots(c))
        if (std::abs(detail::horner(c, r)) < kFixedPointResidual) roots.push_back(r);
    return roots;
}

// Moves the fixed point (zeta, zeta, zeta) of the raw map to the origin.
inline HenonMap shift_to_origin(const RawHenonMap& raw, double zeta) {
    std::vector<double> c = detail::diagonal_polynomial(raw);
    if (!(std::abs(detail::horner(c, zeta)) < kFixedPointResidual))
        throw NotAFixedPoint("diagonal point is not a fixed point of the raw map");
    BivariatePolynomial local = raw.f.shifted(zeta, zeta);
    std::vector<Term> higher;
    for (const auto& t : local.terms())
        if (t.i + t.j >= 2) higher.push_back(t);
    return HenonMap{local.coefficient(0, 1), raw.B, local.coefficient(1, 0), PolyNonlinearity(higher)};
}

struct Henon2dForm {
    double A = 0.0;
    double C = 0.0;
    double discriminant = 0.0;
    double y_plus = 0.0;
    double y_minus = 0.0;
};

// Henon map y' = z, z' = M + C y - z^2 shifted so its fixed point y+ sits at the origin:
// y' = z, z' = A z + C y - z^2 with A = -2 y+.
inline Henon2dForm henon2d_normalize(double M, double C) {
    double D = (C - 1.0) * (C - 1.0) + 4.0 * M;
    if (!(D > 0.0)) throw NoRealFixedPoints("Henon map has no pair of real fixed points (D <= 0)");
    double s = std::sqrt(D);
    Henon2dForm out;
    out.discriminant = D;
    out.y_plus = 0.5 * (C - 1.0 + s);
    out.y_minus = 0.5 * (C - 1.0 - s);
    out.A = -2.0 * out.y_plus;
    out.C = C;
    return out;
}

} // namespace henon
