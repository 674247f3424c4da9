#pragma once

// Multipliers of the origin: roots of chi(l) = l^3 - A l^2 - C l - B.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace henon {

struct MultiplierSet {
    // Sorted by decreasing modulus; a complex pair is adjacent, positive imaginary part first.
    std::array<std::complex<double>, 3> values{};
    bool complex_pair = false;

    // Real member when there is a complex pair.
    double real_root() const {
        for (const auto& v : values)
            if (v.imag() == 0.0) return v.real();
        return values[0].real();
    }
    double pair_modulus() const {
        for (const auto& v : values)
            if (v.imag() != 0.0) return std::abs(v);
        return 0.0;
    }
    // Argument in (0, pi) of the pair member with positive imaginary part.
    double pair_argument() const {
        for (const auto& v : values)
            if (v.imag() > 0.0) return std::arg(v);
        return 0.0;
    }
};

// chi(l) for the characteristic cubic.
inline std::complex<double> characteristic(double A, double B, double C, std::complex<double> l) {
    return ((l - A) * l - C) * l - B;
}

inline double characteristic(double A, double B, double C, double l) { return ((l - A) * l - C) * l - B; }

// Discriminant of l^3 - A l^2 - C l - B: positive for three distinct real roots,
// negative for a complex pair. Also returns the sum of the term magnitudes as a scale.
inline double cubic_discriminant(double A, double B, double C, double* scale = nullptr) {
    const double a = -A, b = -C, c = -B;
    const double t1 = 18.0 * a * b * c, t2 = -4.0 * a * a * a * c, t3 = a * a * b * b, t4 = -4.0 * b * b * b,
                 t5 = -27.0 * c * c;
    if (scale) *scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
    return t1 + t2 + t3 + t4 + t5;
}

namespace detail {

inline double polish_real_root(double A, double B, double C, double r) {
    for (int it = 0; it < 8; ++it) {
        double p = characteristic(A, B, C, r);
        double dp = (3.0 * r - 2.0 * A) * r - C;
        if (p == 0.0 || dp == 0.0) break;
        double next = r - p / dp;
        if (!(std::abs(characteristic(A, B, C, next)) < std::abs(p))) break;
        r = next;
    }
    return r;
}

// Roots of l^2 + s l + t, cancellation-free.
inline std::array<std::complex<double>, 2> solve_quadratic(double s, double t) {
    double disc = s * s - 4.0 * t;
    if (disc >= 0.0) {
        double q = -0.5 * (s + std::copysign(std::sqrt(disc), s));
        if (q == 0.0) return {std::complex<double>(0.0), std::complex<double>(0.0)};
        return {std::complex<double>(q), std::complex<double>(t / q)};
    }
    double re = -0.5 * s, im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(re, im), std::complex<double>(re, -im)};
}

// Factor chi(l) = (l - r)(l^2 + s l + t) for a real root r and return the pair.
inline std::array<std::complex<double>, 2> deflate(double A, double B, double C, double r) {
    double s = r - A;
    double t = std::abs(r) > 1e-3 ? B / r : r * s - C;
    return solve_quadratic(s, t);
}

inline void sort_multipliers(MultiplierSet& m) {
    std::sort(m.values.begin(), m.values.end(), [](const auto& u, const auto& v) {
        double au = std::abs(u), av = std::abs(v);
        if (au != av) return au > av;
        if (u.real() != v.real()) return u.real() > v.real();
        return u.imag() > v.imag();
    });
}

} // namespace detail

inline constexpr double kDiscriminantTolerance = 1e-12;

inline MultiplierSet solve_characteristic(double A, double B, double C) {
    MultiplierSet out;
    if (B == 0.0) {
        // l (l^2 - A l - C): the zero root is exact.
        auto q = detail::solve_quadratic(-A, -C);
        out.values = {q[0], q[1], std::complex<double>(0.0)};
        out.complex_pair = q[0].imag() != 0.0;
        detail::sort_multipliers(out);
        return out;
    }

    double scale = 0.0;
    const double disc = cubic_discriminant(A, B, C, &scale);
    // Depressed cubic t^3 + p t + q with l = t + A/3.
    const double shift = A / 3.0;
    const double p = -C - A * A / 3.0;
    const double q = -2.0 * A * A * A / 27.0 - A * C / 3.0 - B;

    if (disc < -kDiscriminantTolerance * scale) {
        double h = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        double u = std::cbrt(-q / 2.0 - std::copysign(h, q));
        double t = u == 0.0 ? 0.0 : u - p / (3.0 * u);
        double r = detail::polish_real_root(A, B, C, t + shift);
        auto pair = detail::deflate(A, B, C, r);
        out.values = {std::complex<double>(r), pair[0], pair[1]};
        out.complex_pair = pair[0].imag() != 0.0;
    } else {
        std::array<double, 3> roots{};
        if (p < 0.0) {
            double m = 2.0 * std::sqrt(-p / 3.0);
            double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
            double theta = std::acos(arg) / 3.0;
            for (int k = 0; k < 3; ++k) roots[static_cast<std::size_t>(k)] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift;
        } else {
            double t = std::cbrt(-q);
            roots = {t + shift, t + shift, t + shift};
        }
        for (auto& r : roots) r = detail::polish_real_root(A, B, C, r);
        out.values = {std::complex<double>(roots[0]), std::complex<double>(roots[1]), std::complex<double>(roots[2])};
    }
    detail::sort_multipliers(out);
    return out;
}

} // namespace henon
