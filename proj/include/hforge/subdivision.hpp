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

#ifndef HFORGE_SUBDIVISION_HPP
#define HFORGE_SUBDIVISION_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "laurent_matrix.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace hforge {


inline RMatrix zero_matrix(int n) { return RMatrix(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n))); }

inline bool is_zero_matrix(const RMatrix& m) {
    for (const auto& row : m)
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

/** Finitely supported mask A(alpha), alpha = support_min .. support_max, each
 *  a (d+1)x(d+1) rational matrix. Leading and trailing zero matrices are
 *  trimmed; the zero mask has no coefficients. */
struct Mask {
    int d = 0;
    long support_min = 0;
    std::vector<RMatrix> coeffs;

    long support_max() const { return support_min + static_cast<long>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    int dim() const { return d + 1; }

    RMatrix at(long alpha) const {
        if (alpha < support_min || alpha > support_max()) return zero_matrix(dim());
        return coeffs[static_cast<std::size_t>(alpha - support_min)];
    }

    void normalize() {
        while (!coeffs.empty() && is_zero_matrix(coeffs.back())) coeffs.pop_back();
        std::size_t lead = 0;
        while (lead < coeffs.size() && is_zero_matrix(coeffs[lead])) ++lead;
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead));
        support_min = coeffs.empty() ? 0 : support_min + static_cast<long>(lead);
    }

    friend bool operator==(const Mask& a, const Mask& b) {
        return a.d == b.d && a.support_min == b.support_min && a.coeffs == b.coeffs;
    }
};

inline Mask mask_validate(Mask m) {
    if (m.d < 0) fail(errc::invalid_argument, "mask order must be nonnegative");
    for (const auto& c : m.coeffs) {
        if (static_cast<int>(c.size()) != m.dim()) fail(errc::invalid_argument, "mask coefficient has wrong row count");
        for (const auto& row : c)
            if (static_cast<int>(row.size()) != m.dim()) fail(errc::invalid_argument, "mask coefficient has wrong column count");
    }
    m.normalize();
    return m;
}

/// A*(z) = sum_alpha A(alpha) z^alpha.
inline LaurentMatrix mask_to_symbol(const Mask& m) {
    LaurentMatrix s(m.dim());
    for (std::size_t a = 0; a < m.coeffs.size(); ++a)
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < m.dim(); ++j)
                s(i, j).add_to(m.support_min + static_cast<long>(a), m.coeffs[a][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return s;
}

inline Mask symbol_to_mask(const LaurentMatrix& s) {
    Mask m{s.dim() - 1, 0, {}};
    if (s.is_zero()) return m;
    m.support_min = s.min_exp();
    for (long a = s.min_exp(); a <= s.max_exp(); ++a) {
        RMatrix c = zero_matrix(s.dim());
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s(i, j).coeff(a);
        m.coeffs.push_back(std::move(c));
    }
    m.normalize();
    return m;
}

/// Scalar mask from a Laurent polynomial (d = 0).
inline Mask scalar_mask(const LaurentPoly& p) {
    LaurentMatrix s(1);
    s(0, 0) = p;
    return symbol_to_mask(s);
}

/// Output window of subdivide for input window [lo, hi].
inline std::pair<long, long> subdivision_window(const Mask& a, long lo, long hi) {
    return {2 * lo + a.support_max(), 2 * hi + a.support_min};
}

namespace detail {
inline long floor_div2(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }
inline long ceil_div2(long v) { return -floor_div2(-v); }

template <class S>
Grid<S> apply_mask(const std::vector<std::vector<std::vector<S>>>& coeffs, long smin, long smax, const Grid<S>& c, long olo, long ohi) {
    if (olo > ohi) fail(errc::window_too_small, "input window too small for a nonempty output window");
    if (2 * c.lo + smax > olo || 2 * c.hi() + smin < ohi)
        fail(errc::window_too_small, "requested output [" + std::to_string(olo) + ", " + std::to_string(ohi) + "] needs more input samples");
    const int n = c.dim();
    Grid<S> out = Grid<S>::zeros(c.level + 1, olo, ohi, n);
    for (long alpha = olo; alpha <= ohi; ++alpha) {
        auto& o = out.at(alpha);
        // Sum in increasing beta for a fixed floating-point order.
        for (long beta = ceil_div2(alpha - smax); beta <= floor_div2(alpha - smin); ++beta) {
            const auto& m = coeffs[static_cast<std::size_t>(alpha - 2 * beta - smin)];
            const auto& v = c.at(beta);
            for (int i = 0; i < n; ++i) {
                S acc = o[static_cast<std::size_t>(i)];
                for (int j = 0; j < n; ++j) acc += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
                o[static_cast<std::size_t>(i)] = acc;
            }
        }
    }
    return out;
}

template <class S>
std::vector<std::vector<std::vector<S>>> cast_coeffs(const Mask& a) {
    std::vector<std::vector<std::vector<S>>> out;
    for (const auto& m : a.coeffs) {
        std::vector<std::vector<S>> mm;
        for (const auto& row : m) {
            std::vector<S> r;
            for (const auto& v : row) r.push_back(scalar_cast<S>(v));
            mm.push_back(std::move(r));
        }
        out.push_back(std::move(mm));
    }
    return out;
}
} // namespace detail

/// c'(alpha) = sum_beta A(alpha - 2 beta) c(beta) on the largest computable window.
template <class S>
Grid<S> subdivide(const Mask& a, const Grid<S>& c) {
    if (a.is_zero()) fail(errc::invalid_argument, "cannot subdivide with the zero mask");
    const auto [olo, ohi] = subdivision_window(a, c.lo, c.hi());
    return detail::apply_mask(detail::cast_coeffs<S>(a), a.support_min, a.support_max(), c, olo, ohi);
}

/// Same, restricted to the output window [olo, ohi].
template <class S>
Grid<S> subdivide(const Mask& a, const Grid<S>& c, long olo, long ohi) {
    if (a.is_zero()) fail(errc::invalid_argument, "cannot subdivide with the zero mask");
    return detail::apply_mask(detail::cast_coeffs<S>(a), a.support_min, a.support_max(), c, olo, ohi);
}

/// Mask D^{-(n+1)} A(alpha) D^n with D = diag(1, 1/2, ..., 2^{-d}).
inline Mask hermite_level_mask(const Mask& a, int n) {
    Mask m = a;
    for (auto& c : m.coeffs)
        for (int i = 0; i <= a.d; ++i)
            for (int j = 0; j <= a.d; ++j)
                c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *= Rational::pow2(static_cast<long>(n + 1) * i - static_cast<long>(n) * j);
    return m;
}

/// f_{n+1} = D^{-(n+1)} S_A D^n f_n, with n = f.level.
template <class S>
Grid<S> hermite_step(const Mask& a, const Grid<S>& f) {
    return subdivide(hermite_level_mask(a, f.level), f);
}

template <class S>
Grid<S> hermite_step(const Mask& a, const Grid<S>& f, long olo, long ohi) {
    return subdivide(hermite_level_mask(a, f.level), f, olo, ohi);
}

struct SampleVerdict {
    bool ok = true;
    long first_failure = 0;
    std::string detail;
};

/// Largest degree in a polynomial column (at least the mask order d).
inline int column_degree(const std::vector<Poly>& col, int d) {
    int m = d;
    for (const auto& p : col) m = std::max(m, p.degree());
    return m;
}

/** Exact check S_A c = lambda c for the polynomial column c (rows 0..d).
 *  On each parity class S_A c is a polynomial of degree <= m (the largest
 *  degree in c), so m+2 samples per class, alpha in [0, 2(m+2)), settle it. */
inline SampleVerdict apply_to_polyvec(const Mask& a, const std::vector<Poly>& col, const Rational& lambda) {
    if (static_cast<int>(col.size()) != a.dim()) fail(errc::invalid_argument, "column length does not match mask");
    const long olo = 0, ohi = 2L * (column_degree(col, a.d) + 2) - 1;
    Grid<Rational> c;
    c.lo = detail::floor_div2(olo - a.support_max());
    const long ihi = detail::ceil_div2(ohi - a.support_min);
    for (long b = c.lo; b <= ihi; ++b) {
        std::vector<Rational> v;
        for (const auto& p : col) v.push_back(p(Rational(b)));
        c.values.push_back(std::move(v));
    }
    SampleVerdict verdict;
    if (a.is_zero()) {
        // S_A c = 0, so the relation holds iff lambda c vanishes.
        for (long alpha = olo; alpha <= ohi; ++alpha)
            for (const auto& p : col)
                if (!(lambda * p(Rational(alpha))).is_zero()) return {false, alpha, "zero mask cannot reproduce a nonzero vector"};
        return verdict;
    }
    const Grid<Rational> out = subdivide(a, c, olo, ohi);
    for (long alpha = olo; alpha <= ohi; ++alpha)
        for (std::size_t i = 0; i < col.size(); ++i)
            if (out.at(alpha)[i] != lambda * col[i](Rational(alpha)))
                return {false, alpha, "row " + std::to_string(i) + " at alpha=" + std::to_string(alpha) + ": got " + out.at(alpha)[i].str() +
                                           ", expected " + (lambda * col[i](Rational(alpha))).str()};
    return verdict;
}

} // namespace hforge

#endif // HFORGE_SUBDIVISION_HPP
