#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "henon_atlas/errors.hpp"

namespace henon {

// One monomial coeff * y^i * z^j.
struct Term {
    int i = 0;
    int j = 0;
    double coeff = 0.0;
};

struct PolyValue {
    double value = 0.0;
    double d_dy = 0.0;
    double d_dz = 0.0;
};

// Sparse real polynomial in (y, z). Immutable once built; duplicate monomials
// are summed and exact zeros dropped.
class BivariatePolynomial {
public:
    static constexpr int kMaxDegree = 24;

    BivariatePolynomial() = default;
    BivariatePolynomial(std::initializer_list<Term> terms) : BivariatePolynomial(std::vector<Term>(terms)) {}

    explicit BivariatePolynomial(const std::vector<Term>& terms) {
        for (const auto& t : terms) {
            if (t.i < 0 || t.j < 0)
                throw InvalidPolynomial("negative exponent in term");
            if (t.i + t.j > kMaxDegree)
                throw InvalidPolynomial("term degree exceeds " + std::to_string(kMaxDegree));
            if (!std::isfinite(t.coeff))
                throw InvalidPolynomial("non-finite coefficient");
            coeffs_[{t.i, t.j}] += t.coeff;
        }
        std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0.0; });
        for (const auto& [key, c] : coeffs_) {
            flat_.push_back({key.first, key.second, c});
            max_i_ = std::max(max_i_, key.first);
            max_j_ = std::max(max_j_, key.second);
        }
    }

    const std::vector<Term>& terms() const noexcept { return flat_; }
    bool empty() const noexcept { return flat_.empty(); }

    int degree() const noexcept {
        int d = 0;
        for (const auto& t : flat_) d = std::max(d, t.i + t.j);
        return d;
    }

    int min_degree() const noexcept {
        int d = kMaxDegree + 1;
        for (const auto& t : flat_) d = std::min(d, t.i + t.j);
        return flat_.empty() ? 0 : d;
    }

    double coefficient(int i, int j) const {
        auto it = coeffs_.find({i, j});
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    double operator()(double y, double z) const { return evaluate(y, z).value; }

    // Value and both partial derivatives in one pass.
    PolyValue evaluate(double y, double z) const noexcept {
        std::array<double, kMaxDegree + 1> yp{}, zp{};
        yp[0] = 1.0;
        zp[0] = 1.0;
        for (int k = 1; k <= max_i_; ++k) yp[k] = yp[k - 1] * y;
        for (int k = 1; k <= max_j_; ++k) zp[k] = zp[k - 1] * z;
        PolyValue out;
        for (const auto& t : flat_) {
            out.value += t.coeff * yp[t.i] * zp[t.j];
            if (t.i > 0) out.d_dy += t.coeff * t.i * yp[t.i - 1] * zp[t.j];
            if (t.j > 0) out.d_dz += t.coeff * t.j * yp[t.i] * zp[t.j - 1];
        }
        return out;
    }

    // Taylor re-expansion about (y0, z0): returns q with q(u, v) = p(y0 + u, z0 + v).
    BivariatePolynomial shifted(double y0, double z0) const {
        std::vector<Term> out;
        for (const auto& t : flat_) {
            for (int a = 0; a <= t.i; ++a) {
                for (int b = 0; b <= t.j; ++b) {
                    double c = t.coeff * binomial(t.i, a) * binomial(t.j, b) * std::pow(y0, t.i - a) *
                               std::pow(z0, t.j - b);
                    out.push_back({a, b, c});
                }
            }
        }
        return BivariatePolynomial(out);
    }

    // Human-readable form, e.g. "-1*z^2 + 0.515*y*z".
    std::string to_string() const {
        if (flat_.empty()) return "0";
        std::ostringstream os;
        os.precision(17);
        bool first = true;
        for (const auto& t : flat_) {
            if (!first) os << " + ";
            first = false;
            os << t.coeff;
            if (t.i > 0) os << "*y" << (t.i > 1 ? "^" + std::to_string(t.i) : "");
            if (t.j > 0) os << "*z" << (t.j > 1 ? "^" + std::to_string(t.j) : "");
        }
        return os.str();
    }

    friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    static double binomial(int n, int k) {
        double r = 1.0;
        for (int m = 1; m <= k; ++m) r = r * (n - k + m) / m;
        return r;
    }

    std::map<std::pair<int, int>, double> coeffs_;
    std::vector<Term> flat_;
    int max_i_ = 0;
    int max_j_ = 0;
};

// Polynomial with constant and linear parts allowed: f(y, z) of the raw family.
using RawPolynomial = BivariatePolynomial;

// Nonlinearity of a map centred at its fixed point: every term has degree >= 2,
// so the value and gradient at (0, 0) vanish exactly.
class PolyNonlinearity {
public:
    PolyNonlinearity() = default;
    PolyNonlinearity(std::initializer_list<Term> terms) : PolyNonlinearity(BivariatePolynomial(terms)) {}
    explicit PolyNonlinearity(const std::vector<Term>& terms) : PolyNonlinearity(BivariatePolynomial(terms)) {}

    explicit PolyNonlinearity(BivariatePolynomial p) : poly_(std::move(p)) {
        for (const auto& t : poly_.terms())
            if (t.i + t.j < 2)
                throw InvalidPolynomial("nonlinearity term y^" + std::to_string(t.i) + " z^" + std::to_string(t.j) +
                                        " has degree < 2");
    }

    const BivariatePolynomial& polynomial() const noexcept { return poly_; }
    const std::vector<Term>& terms() const noexcept { return poly_.terms(); }
    double operator()(double y, double z) const { return poly_(y, z); }
    PolyValue evaluate(double y, double z) const noexcept { return poly_.evaluate(y, z); }
    std::string to_string() const { return poly_.to_string(); }

    friend bool operator==(const PolyNonlinearity& a, const PolyNonlinearity& b) { return a.poly_ == b.poly_; }

private:
    BivariatePolynomial poly_;
};

} // namespace henon
