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

#ifndef HFORGE_TAYLOR_HPP
#define HFORGE_TAYLOR_HPP

#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "laurent_matrix.hpp"
#include "poly.hpp"

namespace hforge {

/** Generalized Taylor operator of order d.
 *
 *  Matrix form (rows/cols 0..d): Delta on the diagonal (bottom-right 1 when
 *  incomplete), entry (k, l) = -w_{l,k+1} for k < l. w[l-1] holds
 *  w_l = [w_{l,1}, ..., w_{l,l}] and w_{l,l} = 1, so the superdiagonal is -1. */
struct TaylorOperator {
    int d = 0;
    bool complete = true;
    std::vector<std::vector<Rational>> w;

    const Rational& weight(int l, int i) const { return w.at(static_cast<std::size_t>(l - 1)).at(static_cast<std::size_t>(i - 1)); }
    Rational& weight(int l, int i) { return w.at(static_cast<std::size_t>(l - 1)).at(static_cast<std::size_t>(i - 1)); }

    /// Constant part of matrix entry (k, l), k < l.
    Rational upper(int k, int l) const { return -weight(l, k + 1); }

    TaylorOperator with_complete(bool c) const {
        TaylorOperator t = *this;
        t.complete = c;
        return t;
    }
    /// Leading (j+1)x(j+1) block, the operator of order j.
    TaylorOperator truncated(int j) const {
        TaylorOperator t{j, complete, {w.begin(), w.begin() + j}};
        return t;
    }

    friend bool operator==(const TaylorOperator& a, const TaylorOperator& b) {
        return a.d == b.d && a.complete == b.complete && a.w == b.w;
    }
};

inline TaylorOperator taylor_validate(const TaylorOperator& t) {
    if (t.d < 0) fail(errc::invalid_argument, "Taylor operator order must be nonnegative");
    if (static_cast<int>(t.w.size()) != t.d)
        fail(errc::invalid_argument, "Taylor operator of order " + std::to_string(t.d) + " needs " + std::to_string(t.d) + " weight vectors");
    for (int l = 1; l <= t.d; ++l) {
        if (static_cast<int>(t.w[static_cast<std::size_t>(l - 1)].size()) != l)
            fail(errc::invalid_argument, "weight vector w_" + std::to_string(l) + " must have length " + std::to_string(l));
        if (t.weight(l, l) != Rational(1)) fail(errc::invalid_argument, "w_{" + std::to_string(l) + "," + std::to_string(l) + "} must be 1");
    }
    return t;
}

/// Operator with w_l = [0, ..., 0, 1]: the pure difference operator.
inline TaylorOperator taylor_delta(int d, bool complete = true) {
    TaylorOperator t{d, complete, {}};
    for (int l = 1; l <= d; ++l) {
        std::vector<Rational> v(static_cast<std::size_t>(l));
        v.back() = Rational(1);
        t.w.push_back(v);
    }
    return t;
}

/// Classical Taylor operator: entry (k, l) = -1/(l-k)!.
inline TaylorOperator taylor_classical(int d, bool complete = true) {
    TaylorOperator t{d, complete, {}};
    for (int l = 1; l <= d; ++l) {
        std::vector<Rational> v;
        for (int i = 1; i <= l; ++i) v.push_back(Rational(1) / factorial(static_cast<unsigned>(l - i + 1)));
        t.w.push_back(v);
    }
    return t;
}

/// Operator with every weight equal to 1, attached to B-spline schemes.
inline TaylorOperator taylor_spline(int d, bool complete = true) {
    TaylorOperator t{d, complete, {}};
    for (int l = 1; l <= d; ++l) t.w.emplace_back(static_cast<std::size_t>(l), Rational(1));
    return t;
}

/// Symbol with Delta -> z^{-1} - 1; evaluate at z^2 via substitute_power(2).
inline LaurentMatrix taylor_symbol(const TaylorOperator& t) {
    const int n = t.d + 1;
    LaurentMatrix m(n);
    for (int k = 0; k < n; ++k) {
        m(k, k) = (!t.complete && k == t.d) ? LaurentPoly(1) : LaurentPoly::delta();
        for (int l = k + 1; l < n; ++l) m(k, l) = LaurentPoly(t.upper(k, l));
    }
    return m;
}

/// Padded column [v_j; 0]: row k holds the component of degree j - k.
inline std::vector<Poly> padded_column(const PolyVec& v, int d) {
    std::vector<Poly> col(static_cast<std::size_t>(d + 1));
    for (int k = 0; k <= v.d; ++k) col[static_cast<std::size_t>(k)] = v[v.d - k];
    return col;
}

/// T applied to a column of polynomials (rows 0..d).
inline std::vector<Poly> taylor_apply_poly(const TaylorOperator& t, const std::vector<Poly>& col) {
    if (static_cast<int>(col.size()) != t.d + 1) fail(errc::invalid_argument, "column length does not match Taylor operator");
    std::vector<Poly> out(col.size());
    for (int k = 0; k <= t.d; ++k) {
        Poly r = (!t.complete && k == t.d) ? col[static_cast<std::size_t>(k)] : col[static_cast<std::size_t>(k)].forward_difference();
        for (int l = k + 1; l <= t.d; ++l) r += Poly(t.upper(k, l)) * col[static_cast<std::size_t>(l)];
        out[static_cast<std::size_t>(k)] = r;
    }
    return out;
}

/// T applied to vector samples; the output window loses its last point.
template <class S>
Grid<S> taylor_apply(const TaylorOperator& t, const Grid<S>& c) {
    if (c.dim() != t.d + 1) fail(errc::invalid_argument, "sample dimension does not match Taylor operator");
    if (c.width() < 2) fail(errc::window_too_small, "Taylor operator needs at least two samples");
    Grid<S> out = Grid<S>::zeros(c.level, c.lo, c.hi() - 1, t.d + 1);
    std::vector<S> up(static_cast<std::size_t>((t.d + 1) * (t.d + 1)), S(0));
    for (int k = 0; k <= t.d; ++k)
        for (int l = k + 1; l <= t.d; ++l) up[static_cast<std::size_t>(k * (t.d + 1) + l)] = scalar_cast<S>(t.upper(k, l));
    for (long a = out.lo; a <= out.hi(); ++a) {
        const auto& now = c.at(a);
        const auto& next = c.at(a + 1);
        auto& o = out.at(a);
        for (int k = 0; k <= t.d; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            S r = (!t.complete && k == t.d) ? now[kk] : S(next[kk] - now[kk]);
            for (int l = k + 1; l <= t.d; ++l) r += up[kk * static_cast<std::size_t>(t.d + 1) + static_cast<std::size_t>(l)] * now[static_cast<std::size_t>(l)];
            o[kk] = r;
        }
    }
    return out;
}

/** Ordered family v_0..v_d with v_j in V_j. */
struct Chain {
    int d = 0;
    std::vector<PolyVec> vecs;
    const PolyVec& operator[](int j) const { return vecs.at(static_cast<std::size_t>(j)); }
    friend bool operator==(const Chain& a, const Chain& b) { return a.d == b.d && a.vecs == b.vecs; }
};

/** Unique complete Taylor operator annihilating v.
 *
 *  For j = 1..d the residual Delta v_j - v_{j-1} lies in Pi_{j-2}; its
 *  coordinates c_m against v_0..v_{j-2} are the weights w_{d-m, d-j+1}. */
inline TaylorOperator annihilator(const PolyVec& v) {
    polyvec_validate(v);
    const int d = v.d;
    TaylorOperator t = taylor_delta(d);
    for (int j = 1; j <= d; ++j) {
        Poly r = v[j].forward_difference() - v[j - 1];
        for (int m = j - 2; m >= 0; --m) {
            const Rational c = r.coeff(m) * factorial(static_cast<unsigned>(m));
            t.weight(d - m, d - j + 1) = c;
            r -= Poly(c) * v[m];
        }
        if (!r.is_zero()) fail(errc::invariant_violated, "difference residual left the expected polynomial space");
    }
    for (const auto& p : taylor_apply_poly(t, padded_column(v, d)))
        if (!p.is_zero()) fail(errc::invariant_violated, "computed annihilator does not annihilate its input");
    return t;
}

/// v_j in V_j with T v_j = 0 (leading block of T); free values v_{j,s}(0) = constants[s].
inline PolyVec chain_member(const TaylorOperator& t, int j, const std::vector<Rational>& constants = {}) {
    std::vector<Poly> comp{Poly(1)};
    for (int s = 1; s <= j; ++s) {
        Poly rhs;
        for (int l = 0; l < s; ++l) rhs += Poly(t.weight(j - l, j - s + 1)) * comp[static_cast<std::size_t>(l)];
        const Rational c = static_cast<std::size_t>(s) < constants.size() ? constants[static_cast<std::size_t>(s)] : Rational(0);
        comp.push_back(antidifference(rhs, c));
    }
    return make_polyvec(std::move(comp));
}

/// Compatibility vector T(v_j) [v_{j+1,j+1}; ...; v_{j+1,1}]; must be constant.
inline std::vector<Poly> compatibility_vector(const Chain& chain, int j) {
    const TaylorOperator tj = annihilator(chain[j]);
    const PolyVec& next = chain[j + 1];
    std::vector<Poly> col;
    for (int k = 0; k <= j; ++k) col.push_back(next[j + 1 - k]);
    return taylor_apply_poly(tj, col);
}

/// Compatibility in the form "every compatibility vector is constant".
inline bool chain_compatible(const Chain& chain) {
    for (int j = 0; j < chain.d; ++j)
        for (const auto& p : compatibility_vector(chain, j))
            if (p.degree() > 0) return false;
    return true;
}

/// Compatibility in the form "T(v_d) annihilates every padded member".
inline bool chain_block_annihilated(const Chain& chain) {
    const TaylorOperator t = annihilator(chain[chain.d]);
    for (int j = 0; j <= chain.d; ++j)
        for (const auto& p : taylor_apply_poly(t, padded_column(chain[j], chain.d)))
            if (!p.is_zero()) return false;
    return true;
}

/// Compatibility in the block-recursive form: T(v_j) is the leading block of T(v_{j+1}).
inline bool chain_blocks_nested(const Chain& chain) {
    for (int j = 0; j < chain.d; ++j)
        if (!(annihilator(chain[j + 1]).truncated(j) == annihilator(chain[j]))) return false;
    return true;
}

/** A chain whose annihilator is T. constants[j][s] prescribes v_{j,s}(0)
 *  (s >= 1); missing entries are 0. */
inline Chain chain_for(const TaylorOperator& t, const std::vector<std::vector<Rational>>& constants = {}) {
    taylor_validate(t);
    if (!t.complete) fail(errc::invalid_argument, "chain_for needs a complete Taylor operator");
    Chain c{t.d, {}};
    for (int j = 0; j <= t.d; ++j)
        c.vecs.push_back(chain_member(t, j, static_cast<std::size_t>(j) < constants.size() ? constants[static_cast<std::size_t>(j)] : std::vector<Rational>{}));
    if (!chain_block_annihilated(c) || !(annihilator(c[t.d]) == t))
        fail(errc::invariant_violated, "constructed chain is not annihilated by its operator");
    return c;
}

/// A chain ending in v.
inline Chain chain_with_last(const PolyVec& v) {
    const TaylorOperator t = annihilator(v);
    std::vector<std::vector<Rational>> constants(static_cast<std::size_t>(v.d + 1));
    for (int s = 0; s <= v.d; ++s) constants[static_cast<std::size_t>(v.d)].push_back(v[s](Rational(0)));
    Chain c = chain_for(t, constants);
    if (!(c[v.d] == v)) fail(errc::invariant_violated, "chain top differs from the requested vector");
    return c;
}

} // namespace hforge

#endif // HFORGE_TAYLOR_HPP
