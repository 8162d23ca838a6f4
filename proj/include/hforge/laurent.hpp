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

#ifndef HFORGE_LAURENT_HPP
#define HFORGE_LAURENT_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace hforge {

/** Laurent polynomial in one variable z with rational coefficients.
 *
 *  Sparse exponent map; zero coefficients are never stored, so the empty map
 *  is the zero polynomial. */
class LaurentPoly {
public:
    using map_type = std::map<long, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) { set(0, c); }  // NOLINT: constants embed implicitly
    LaurentPoly(long c) { set(0, Rational(c)); }   // NOLINT
    LaurentPoly(int c) { set(0, Rational(c)); }    // NOLINT

    static LaurentPoly monomial(long exp, const Rational& c = Rational(1)) {
        LaurentPoly p;
        p.set(exp, c);
        return p;
    }
    static LaurentPoly z() { return monomial(1); }
    /// z^{-1} - 1, the symbol of the forward difference.
    static LaurentPoly delta() { return monomial(-1) - LaurentPoly(1); }

    /// Coefficient list c[0..] for exponents lo, lo+1, ...
    static LaurentPoly from_coeffs(long lo, const std::vector<Rational>& cs) {
        LaurentPoly p;
        for (std::size_t i = 0; i < cs.size(); ++i) p.set(lo + static_cast<long>(i), cs[i]);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    long min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    long max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    const map_type& terms() const { return c_; }

    Rational coeff(long exp) const {
        const auto it = c_.find(exp);
        return it == c_.end() ? Rational(0) : it->second;
    }

    void set(long exp, const Rational& c) {
        if (c.is_zero())
            c_.erase(exp);
        else
            c_[exp] = c;
    }
    void add_to(long exp, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = c_.try_emplace(exp, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.c_) add_to(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.c_) add_to(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [e, c] : a.c_) r.c_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) r.add_to(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

    LaurentPoly pow(unsigned n) const {
        LaurentPoly r(1), base = *this;
        while (n) {
            if (n & 1u) r *= base;
            n >>= 1u;
            if (n) base *= base;
        }
        return r;
    }

    /// Multiplication by z^k.
    LaurentPoly shift(long k) const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_.emplace(e + k, c);
        return r;
    }

    /// p(z^k).
    LaurentPoly substitute_power(long k) const {
        if (k < 1) fail(errc::invalid_argument, "substitute_power needs k >= 1");
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_.emplace(e * k, c);
        return r;
    }

    /// p(z^{-1}).
    LaurentPoly reflect() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_.emplace(-e, c);
        return r;
    }

    /// Exact quotient p / q; NotDivisible when the remainder is nonzero.
    LaurentPoly divide_exact(const LaurentPoly& q) const {
        LaurentPoly r;
        if (!try_divide(q, r)) fail(errc::not_divisible, "Laurent polynomial division leaves a remainder");
        return r;
    }

    /// Exact division that reports failure instead of throwing.
    bool try_divide(const LaurentPoly& q, LaurentPoly& out) const {
        if (q.is_zero()) fail(errc::invalid_argument, "division by the zero Laurent polynomial");
        out = LaurentPoly();
        if (is_zero()) return true;
        // Monomials are units, so strip the lowest powers and divide ordinary polynomials.
        const long qlo = q.min_exp(), qdeg = q.max_exp() - qlo;
        const long plo = min_exp();
        std::vector<Rational> rem(static_cast<std::size_t>(max_exp() - plo + 1));
        for (const auto& [e, c] : c_) rem[static_cast<std::size_t>(e - plo)] = c;
        std::vector<Rational> qc(static_cast<std::size_t>(qdeg + 1));
        for (const auto& [e, c] : q.c_) qc[static_cast<std::size_t>(e - qlo)] = c;
        const Rational lead = qc.back();
        const long pdeg = static_cast<long>(rem.size()) - 1;
        for (long i = pdeg - qdeg; i >= 0; --i) {
            const Rational f = rem[static_cast<std::size_t>(i + qdeg)] / lead;
            if (f.is_zero()) continue;
            out.set(i + plo - qlo, f);
            for (long k = 0; k <= qdeg; ++k) rem[static_cast<std::size_t>(i + k)] -= f * qc[static_cast<std::size_t>(k)];
        }
        for (const auto& c : rem)
            if (!c.is_zero()) {
                out = LaurentPoly();
                return false;
            }
        return true;
    }

    /// r-th derivative at z = 1, termwise with falling factorials of the exponents.
    Rational derivative_at_one(unsigned r) const {
        Rational s(0);
        for (const auto& [e, c] : c_) s += c * falling_factorial(e, r);
        return s;
    }

    /// Formal derivative d/dz.
    LaurentPoly derivative() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_)
            if (e != 0) r.c_.emplace(e - 1, c * Rational(e));
        return r;
    }

    /// Value at a nonzero rational point.
    Rational eval(const Rational& at) const {
        Rational s(0);
        for (const auto& [e, c] : c_) {
            const Rational p = e >= 0 ? at.pow(static_cast<unsigned>(e))
                                      : Rational(1) / at.pow(static_cast<unsigned>(-e));
            s += c * p;
        }
        return s;
    }

    Rational eval_at_one() const {
        Rational s(0);
        for (const auto& [e, c] : c_) s += c;
        return s;
    }

    /// Sum of coefficients whose exponent is congruent to `residue` mod `modulus`.
    Rational residue_sum(long residue, long modulus) const {
        Rational s(0);
        for (const auto& [e, c] : c_)
            if (((e - residue) % modulus + modulus) % modulus == 0) s += c;
        return s;
    }

    /// Human-readable form, e.g. "1/2*z^-1 - 1 + z^2".
    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : c_) {
            Rational mag = c;
            if (first) {
                if (c.sign() < 0) {
                    out += "-";
                    mag = -c;
                }
            } else {
                out += c.sign() < 0 ? " - " : " + ";
                if (c.sign() < 0) mag = -c;
            }
            first = false;
            if (e == 0) {
                out += mag.str();
                continue;
            }
            if (mag != Rational(1)) out += mag.str() + "*";
            out += "z";
            if (e != 1) out += "^" + std::to_string(e);
        }
        return out;
    }

private:
    map_type c_;
};

} // namespace hforge

#endif // HFORGE_LAURENT_HPP
