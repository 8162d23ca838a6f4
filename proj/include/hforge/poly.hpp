/*
   Copyright 2026 The hermite-forge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HFORGE_POLY_HPP
#define HFORGE_POLY_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace hforge {

/// Polynomial in the monomial basis, c[i] multiplies x^i. Trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(const Rational& c) : c_{c} { trim(); }  // NOLINT
    Poly(long c) : Poly(Rational(c)) {}          // NOLINT
    Poly(int c) : Poly(Rational(c)) {}           // NOLINT

    static Poly x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }
    static Poly monomial(unsigned k, const Rational& c = Rational(1)) {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& at) const {
        Rational s(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * at + *it;
        return s;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<Rational> r(a.c_);
        for (auto& c : r) c = -c;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// p(x + k), by binomial expansion.
    Poly shift(long k) const {
        std::vector<Rational> r(c_.size());
        const Rational kk(k);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            Rational kp(1);
            for (std::size_t m = 0; m <= i; ++m) {
                // x^i at x+k contributes C(i, m) k^m x^{i-m}
                r[i - m] += c_[i] * binomial(static_cast<long>(i), static_cast<long>(m)) * kp;
                kp *= kk;
            }
        }
        return Poly(std::move(r));
    }

    /// Delta^order p, with (Delta p)(x) = p(x+1) - p(x).
    Poly forward_difference(unsigned order = 1) const {
        Poly p = *this;
        for (unsigned i = 0; i < order; ++i) p = p.shift(1) - p;
        return p;
    }

    Poly derivative(unsigned order = 1) const {
        Poly p = *this;
        for (unsigned o = 0; o < order; ++o) {
            if (p.c_.size() <= 1) return Poly();
            std::vector<Rational> r(p.c_.size() - 1);
            for (std::size_t i = 1; i < p.c_.size(); ++i) r[i - 1] = p.c_[i] * Rational(static_cast<long>(i));
            p = Poly(std::move(r));
        }
        return p;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].str() + ")";
            if (i) s += i == 1 ? "*x" : "*x^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// (x)_j = x(x-1)...(x-j+1), or [x]_j = (x)_j / j! when normalized.
inline Poly pochhammer(unsigned j, bool normalized) {
    Poly p(1);
    for (unsigned i = 0; i < j; ++i) p = p * (Poly::x() - Poly(static_cast<long>(i)));
    if (normalized) p = p * Poly(Rational(1) / factorial(j));
    return p;
}

/// Coordinates c_k = (Delta^k p)(0) with p = sum_k c_k [x]_k.
inline std::vector<Rational> to_pochhammer(const Poly& p) {
    std::vector<Rational> out;
    Poly q = p;
    for (int k = 0; k <= p.degree(); ++k) {
        out.push_back(q(Rational(0)));
        q = q.forward_difference();
    }
    return out;
}

inline Poly from_pochhammer(const std::vector<Rational>& coords) {
    Poly p;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero()) p += pochhammer(static_cast<unsigned>(k), true) * Poly(coords[k]);
    return p;
}

/// The q with Delta q = p and q(0) = c.
inline Poly antidifference(const Poly& p, const Rational& c = Rational(0)) {
    const auto coords = to_pochhammer(p);
    std::vector<Rational> q(coords.size() + 1);
    q[0] = c;
    for (std::size_t k = 0; k < coords.size(); ++k) q[k + 1] = coords[k];
    return from_pochhammer(q);
}

/** Element of V_d: components v_0..v_d stored by ascending degree, where v_j
 *  has exact degree j and leading coefficient 1/j!. The column layout used by
 *  matrices puts degree d on top, so row = d - degree. */
struct PolyVec {
    int d = 0;
    std::vector<Poly> components;

    const Poly& operator[](int j) const { return components.at(static_cast<std::size_t>(j)); }
    /// Component in matrix row `row` (row 0 holds degree d).
    const Poly& row(int r) const { return (*this)[d - r]; }
    /// u_j = v_j - [x]_j.
    Poly u(int j) const { return (*this)[j] - pochhammer(static_cast<unsigned>(j), true); }

    friend bool operator==(const PolyVec& a, const PolyVec& b) { return a.d == b.d && a.components == b.components; }
};

/// Checks every V_d invariant; NotInVd names the first offending component.
inline PolyVec polyvec_validate(const PolyVec& v) {
    if (v.d < 0) fail(errc::not_in_vd, "negative order");
    if (static_cast<int>(v.components.size()) != v.d + 1)
        fail(errc::not_in_vd, "expected " + std::to_string(v.d + 1) + " components, got " + std::to_string(v.components.size()));
    for (int j = 0; j <= v.d; ++j) {
        const Poly& p = v[j];
        if (p.degree() != j)
            fail(errc::not_in_vd, "component " + std::to_string(j) + " has degree " + std::to_string(p.degree()) + ", expected " + std::to_string(j));
        if (p.leading() != Rational(1) / factorial(static_cast<unsigned>(j)))
            fail(errc::not_in_vd, "component " + std::to_string(j) + " has leading coefficient " + p.leading().str() + ", expected 1/" +
                                      factorial(static_cast<unsigned>(j)).str());
    }
    return v;
}

inline PolyVec make_polyvec(std::vector<Poly> components) {
    PolyVec v{static_cast<int>(components.size()) - 1, std::move(components)};
    return polyvec_validate(v);
}

} // namespace hforge

#endif // HFORGE_POLY_HPP
