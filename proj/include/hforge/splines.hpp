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

#ifndef HFORGE_SPLINES_HPP
#define HFORGE_SPLINES_HPP

#include <string>
#include <vector>

#include "analysis.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "subdivision.hpp"
#include "taylor.hpp"

namespace hforge {

/// a_r*(z) = (1+z)^{r+1} / 2^r.
inline LaurentPoly spline_symbol(int r) {
    return LaurentPoly(Rational::pow2(-r)) * (LaurentPoly::z() + LaurentPoly(1)).pow(static_cast<unsigned>(r + 1));
}

/// Hermite mask with first column (1+z)^{r+1} (1-z)^j / 2^r, j = 0..d; other columns zero.
inline Mask spline_hermite_mask(int r, int d) {
    if (r < 0 || d < 0 || d > r) fail(errc::bad_order, "spline scheme needs 0 <= d <= r (got r=" + std::to_string(r) + ", d=" + std::to_string(d) + ")");
    LaurentMatrix s(d + 1);
    const LaurentPoly a = spline_symbol(r), omz = LaurentPoly(1) - LaurentPoly::z();
    for (int j = 0; j <= d; ++j) s(j, 0) = a * omz.pow(static_cast<unsigned>(j));
    return symbol_to_mask(s);
}

/// l_r(x) = (1/r!) prod_{j=1}^r (x + j).
inline Poly spline_ell(int r) {
    Poly p(Rational(1) / factorial(static_cast<unsigned>(r)));
    for (int j = 1; j <= r; ++j) p = p * (Poly::x() + Poly(j));
    return p;
}

/// p_i = l_r^{(r-i)}, the eigenpolynomial of S_{a_r} for eigenvalue 2^{-i}.
inline Poly spline_eigenpoly(int r, int i) { return spline_ell(r).derivative(static_cast<unsigned>(r - i)); }

/// [p, Delta p(.-1), ..., Delta^j p(.-j)] as an element of V_j (j = deg p).
inline PolyVec difference_vector(const Poly& p) {
    const int j = p.degree();
    std::vector<Poly> comp(static_cast<std::size_t>(j + 1));
    for (int k = 0; k <= j; ++k) comp[static_cast<std::size_t>(j - k)] = p.forward_difference(static_cast<unsigned>(k)).shift(-k);
    return make_polyvec(std::move(comp));
}

/** R with Delta^k p(. - k) = sum_m R_{km} p^{(m)}, k, m = 0..d:
 *  R_{km} = sum_i (-1)^{k-i} C(k,i) (i-k)^m / m!. Unit upper triangular. */
inline RMatrix difference_taylor_matrix(int d) {
    RMatrix r(static_cast<std::size_t>(d + 1), std::vector<Rational>(static_cast<std::size_t>(d + 1)));
    for (int k = 0; k <= d; ++k)
        for (int m = 0; m <= d; ++m) {
            Rational s(0);
            for (int i = 0; i <= k; ++i) {
                const Rational term = binomial(k, i) * Rational(i - k).pow(static_cast<unsigned>(m)) / factorial(static_cast<unsigned>(m));
                s += ((k - i) % 2 ? -term : term);
            }
            r[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] = s;
        }
    for (int k = 0; k <= d; ++k)
        for (int m = 0; m <= d; ++m) {
            const Rational& v = r[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
            if ((m < k && !v.is_zero()) || (m == k && v != Rational(1))) fail(errc::invariant_violated, "R is not unit upper triangular");
        }
    return r;
}

struct SplineScheme {
    int r = 0;
    int d = 0;
    LaurentPoly a;
    Mask A;
    Chain chain;
};

/// Chain vhat_{p_j}, j = 0..d; each member is annihilated by the all-ones Taylor operator.
inline Chain spline_chain(int r, int d) {
    if (r < 0 || d < 0 || d > r) fail(errc::bad_order, "spline chain needs 0 <= d <= r");
    Chain c{d, {}};
    for (int j = 0; j <= d; ++j) c.vecs.push_back(difference_vector(spline_eigenpoly(r, j)));
    const TaylorOperator t = taylor_spline(d);
    for (int j = 0; j <= d; ++j)
        for (const auto& p : taylor_apply_poly(t, padded_column(c[j], d)))
            if (!p.is_zero()) fail(errc::invariant_violated, "spline chain member " + std::to_string(j) + " is not annihilated");
    return c;
}

inline SplineScheme spline_mask(int r, int d) {
    SplineScheme s{r, d, spline_symbol(r), spline_hermite_mask(r, d), spline_chain(r, d)};
    return s;
}

/// S_{a_r} p_i = 2^{-i} p_i, exactly.
inline SampleVerdict spline_eigen_relation(int r, int i) {
    return apply_to_polyvec(scalar_mask(spline_symbol(r)), {spline_eigenpoly(r, i)}, Rational::pow2(-i));
}

/// The reference Btilde for r = 4, d = 3: every row equals this one.
inline std::vector<LaurentPoly> spline_golden_row_r4d3() {
    const LaurentPoly z = LaurentPoly::z(), zm1 = z - LaurentPoly(1), zp1 = z + LaurentPoly(1), half(Rational(1, 2));
    return {-half * zm1.pow(3) * z * zp1.pow(4), half * zm1.pow(2) * z.pow(3) * zp1.pow(3), -half * zm1 * z.pow(3) * zp1.pow(2),
            half * z.pow(3) * zp1};
}

struct SplineReport {
    int r = 0, d = 0;
    bool spectral = false;
    SpectralVerdict spectral_detail;
    Factorization factorization;
    bool golden_checked = false;
    bool golden_match = false;
    bool classical_spectral = false;   // is some chain for the classical operator spectral?
    bool classical_expected = false;   // it should exactly when d <= 1
    bool ok = false;
};

inline SplineReport spline_verify(int r, int d) {
    const SplineScheme s = spline_mask(r, d);
    SplineReport rep;
    rep.r = r;
    rep.d = d;
    rep.spectral_detail = verify_spectral_chain(s.A, s.chain);
    rep.spectral = rep.spectral_detail.ok;
    if (rep.spectral) rep.factorization = taylor_factorize(s.A, s.chain);
    if (r == 4 && d == 3) {
        rep.golden_checked = true;
        const LaurentMatrix b = mask_to_symbol(rep.factorization.B);
        const auto row = spline_golden_row_r4d3();
        rep.golden_match = rep.spectral;
        for (int i = 0; i <= d && rep.golden_match; ++i)
            for (int k = 0; k <= d; ++k)
                if (!(b(i, k) == row[static_cast<std::size_t>(k)])) rep.golden_match = false;
    }
    Chain classical;
    rep.classical_spectral = find_spectral_chain(s.A, taylor_classical(d), classical);
    rep.classical_expected = d <= 1;
    rep.ok = rep.spectral && (!rep.golden_checked || rep.golden_match) && rep.classical_spectral == rep.classical_expected;
    return rep;
}

/** Limit values Phi_i(2^{-n} beta) of the spline Hermite scheme from level-n
 *  data, for i <= min(d, r-1): Phi_i(2^{-n} beta) = sum_alpha f_n^{(i)}(alpha) phi_{r-i}(beta - alpha),
 *  with phi_s the B-spline of degree s (integer values computed exactly). */
inline Grid<double> spline_grid_limit(int r, const Grid<double>& f, long lo, long hi) {
    const int comps = std::min(f.dim() - 1, r - 1) + 1;
    if (comps < 1) fail(errc::invalid_argument, "grid limits need r >= 1");
    Grid<double> out = Grid<double>::zeros(f.level, lo, hi, comps);
    for (int i = 0; i < comps; ++i) {
        long first = 0;
        const auto phi = refinable_integer_values(spline_symbol(r - i), &first);
        for (long beta = lo; beta <= hi; ++beta) {
            double s = 0;
            for (std::size_t k = 0; k < phi.size(); ++k) {
                const long alpha = beta - (first + static_cast<long>(k));
                if (phi[k].is_zero()) continue;
                s += f.at(alpha)[static_cast<std::size_t>(i)] * phi[k].to_double();
            }
            out.at(beta)[static_cast<std::size_t>(i)] = s;
        }
    }
    return out;
}

} // namespace hforge

#endif // HFORGE_SPLINES_HPP
