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

#ifndef HFORGE_FACTOR_HPP
#define HFORGE_FACTOR_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "subdivision.hpp"
#include "taylor.hpp"

namespace hforge {

struct SpectralVerdict {
    bool ok = true;
    std::vector<SampleVerdict> members;  // one per chain member j, eigenvalue 2^{-j}
};

/// S_A vhat_j = 2^{-j} vhat_j for every member of the chain.
inline SpectralVerdict verify_spectral_chain(const Mask& a, const Chain& v) {
    if (v.d != a.d) fail(errc::invalid_argument, "chain length does not match mask dimension");
    SpectralVerdict out;
    for (int j = 0; j <= v.d; ++j) {
        out.members.push_back(apply_to_polyvec(a, padded_column(v[j], v.d), Rational::pow2(-j)));
        out.ok = out.ok && out.members.back().ok;
    }
    return out;
}

/** Searches the free constants of chain_for(T) for a chain that is spectral
 *  for A. The members depend affinely on the constants, so each member is a
 *  small exact linear system on the conclusive sample window. Returns false
 *  when no chain for T is spectral. */
inline bool find_spectral_chain(const Mask& a, const TaylorOperator& t, Chain& out) {
    taylor_validate(t);
    if (t.d != a.d) fail(errc::invalid_argument, "operator and mask orders differ");
    const int d = t.d;
    out = Chain{d, {}};
    for (int j = 0; j <= d; ++j) {
        const PolyVec base = chain_member(t, j);
        std::vector<std::vector<Poly>> cols{padded_column(base, d)};
        for (int s = 1; s <= j; ++s) {
            std::vector<Rational> e(static_cast<std::size_t>(j + 1));
            e[static_cast<std::size_t>(s)] = Rational(1);
            auto col = padded_column(chain_member(t, j, e), d);
            for (std::size_t k = 0; k < col.size(); ++k) col[k] -= cols[0][k];
            cols.push_back(col);
        }
        // Residual (S_A - 2^{-j}) applied to base + sum_s c_s E_s must vanish.
        const Rational lambda = Rational::pow2(-j);
        const long olo = 0, ohi = 2L * (std::max(d, j) + 2) - 1;
        std::vector<std::vector<Rational>> samples;  // per column: stacked residual values
        for (const auto& col : cols) {
            Grid<Rational> in;
            in.lo = detail::floor_div2(olo - a.support_max());
            const long ihi = detail::ceil_div2(ohi - a.support_min);
            for (long b = in.lo; b <= ihi; ++b) {
                std::vector<Rational> v;
                for (const auto& p : col) v.push_back(p(Rational(b)));
                in.values.push_back(std::move(v));
            }
            const Grid<Rational> res = subdivide(a, in, olo, ohi);
            std::vector<Rational> flat;
            for (long al = olo; al <= ohi; ++al)
                for (std::size_t k = 0; k < col.size(); ++k) flat.push_back(res.at(al)[k] - lambda * col[k](Rational(al)));
            samples.push_back(std::move(flat));
        }
        RMatrix m(samples[0].size(), std::vector<Rational>(static_cast<std::size_t>(j)));
        std::vector<Rational> rhs(samples[0].size());
        for (std::size_t row = 0; row < samples[0].size(); ++row) {
            rhs[row] = -samples[0][row];
            for (int s = 1; s <= j; ++s) m[row][static_cast<std::size_t>(s - 1)] = samples[static_cast<std::size_t>(s)][row];
        }
        std::vector<Rational> c;
        if (j == 0) {
            for (const auto& v : rhs)
                if (!v.is_zero()) return false;
        } else if (!solve_consistent(m, rhs, c)) {
            return false;
        }
        std::vector<Rational> constants(static_cast<std::size_t>(j + 1));
        for (int s = 1; s <= j; ++s) constants[static_cast<std::size_t>(s)] = c[static_cast<std::size_t>(s - 1)];
        out.vecs.push_back(chain_member(t, j, constants));
    }
    if (!verify_spectral_chain(a, out).ok) fail(errc::invariant_violated, "solved chain constants do not give a spectral chain");
    return true;
}

/** B with C*(z) = B*(z) T*(z^2), T complete. Column k:
 *  b_k = (c_k + sum_{i<k} w_{k,i+1} b_i) / (z^{-2} - 1). */
inline LaurentMatrix factor_symbol(const LaurentMatrix& c, const TaylorOperator& t) {
    const int n = t.d + 1;
    const LaurentPoly x2 = LaurentPoly::delta().substitute_power(2);
    LaurentMatrix b(n);
    for (int k = 0; k < n; ++k)
        for (int row = 0; row < n; ++row) {
            LaurentPoly num = c(row, k);
            for (int i = 0; i < k; ++i) num += LaurentPoly(t.weight(k, i + 1)) * b(row, i);
            LaurentPoly q;
            if (!num.try_divide(x2, q))
                fail(errc::not_divisible, "column " + std::to_string(k) + ", row " + std::to_string(row) + " is not divisible by z^-2 - 1");
            b(row, k) = q;
        }
    if (!(b * taylor_symbol(t).substitute_power(2) == c)) fail(errc::invariant_violated, "column factorization does not multiply back");
    return b;
}

/// B with S_C = S_B T(V); requires S_C vhat_j = 0 for all chain members.
inline Mask factor_through(const Mask& c, const Chain& v) {
    if (v.d != c.d) fail(errc::invalid_argument, "chain length does not match mask dimension");
    for (int j = 0; j <= v.d; ++j) {
        const auto verdict = apply_to_polyvec(c, padded_column(v[j], v.d), Rational(0));
        if (!verdict.ok) fail(errc::not_annihilated, "mask does not annihilate chain member " + std::to_string(j) + " (" + verdict.detail + ")");
    }
    return symbol_to_mask(factor_symbol(mask_to_symbol(c), annihilator(v[v.d])));
}

/// A, T, B with T*(z) A*(z) = scale B*(z) T*(z^2).
struct Factorization {
    Mask A;
    TaylorOperator T;
    Mask B;
    Rational scale;
};

inline bool factorization_identity_holds(const Mask& a, const TaylorOperator& t, const Mask& b, const Rational& scale) {
    const LaurentMatrix ts = taylor_symbol(t);
    return ts * mask_to_symbol(a) == (mask_to_symbol(b) * ts.substitute_power(2)).scaled(LaurentPoly(scale));
}

inline Factorization taylor_factorize(const Mask& a, const Chain& v, const Rational& scale) {
    if (scale.is_zero()) fail(errc::invalid_argument, "scale must be nonzero");
    const auto spectral = verify_spectral_chain(a, v);
    if (!spectral.ok) {
        for (std::size_t j = 0; j < spectral.members.size(); ++j)
            if (!spectral.members[j].ok)
                fail(errc::invalid_argument, "chain is not spectral for the mask at member " + std::to_string(j) + ": " + spectral.members[j].detail);
    }
    const TaylorOperator t = annihilator(v[v.d]);
    const LaurentMatrix c = taylor_symbol(t) * mask_to_symbol(a);
    Factorization f{a, t, symbol_to_mask(factor_symbol(c, t).scaled(LaurentPoly(Rational(1) / scale))), scale};
    if (!factorization_identity_holds(f.A, f.T, f.B, f.scale)) fail(errc::invariant_violated, "factorization identity fails");
    return f;
}

inline Factorization taylor_factorize(const Mask& a, const Chain& v) { return taylor_factorize(a, v, Rational::pow2(-a.d)); }

/** Difference scheme for the complete operator from the one for the
 *  incomplete operator, and back. With x = z^{-1}-1 both satisfy
 *  diag(I, x) B*(z) = Btilde*(z) diag(I, x(z^2)). */
inline Mask complete_from_incomplete(const Mask& b) {
    const LaurentMatrix s = mask_to_symbol(b);
    const int d = b.d;
    LaurentMatrix t(d + 1);
    const LaurentPoly x = LaurentPoly::delta(), x2 = x.substitute_power(2);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            if (i < d && j < d)
                t(i, j) = s(i, j);
            else if (i < d) {
                LaurentPoly q;
                if (!s(i, j).try_divide(x2, q)) fail(errc::not_divisible, "upper-right block entry " + std::to_string(i) + " is not divisible by z^-2 - 1");
                t(i, j) = q;
            } else if (j < d)
                t(i, j) = x * s(i, j);
            else {
                LaurentPoly q;
                if (!s(i, j).try_divide(LaurentPoly::monomial(-1) + LaurentPoly(1), q))
                    fail(errc::not_divisible, "bottom-right entry is not divisible by z^-1 + 1");
                t(i, j) = q;
            }
        }
    return symbol_to_mask(t);
}

inline Mask incomplete_from_complete(const Mask& bt) {
    const LaurentMatrix s = mask_to_symbol(bt);
    const int d = bt.d;
    LaurentMatrix b(d + 1);
    const LaurentPoly x = LaurentPoly::delta(), x2 = x.substitute_power(2);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            if (i < d && j < d)
                b(i, j) = s(i, j);
            else if (i < d)
                b(i, j) = x2 * s(i, j);
            else if (j < d) {
                LaurentPoly q;
                if (!s(i, j).try_divide(x, q))
                    fail(errc::not_divisible, "lower-left block entry " + std::to_string(j) + " does not vanish at z = 1");
                b(i, j) = q;
            } else
                b(i, j) = (LaurentPoly::monomial(-1) + LaurentPoly(1)) * s(i, j);
        }
    return symbol_to_mask(b);
}

/// Parity sums of the last column equal e_d, i.e. S_B maps the constant e_d to itself.
inline bool preserves_last_unit(const Mask& b) {
    const LaurentMatrix s = mask_to_symbol(b);
    for (int i = 0; i <= b.d; ++i)
        for (long eps = 0; eps < 2; ++eps)
            if (s(i, b.d).residue_sum(eps, 2) != (i == b.d ? Rational(1) : Rational(0))) return false;
    return true;
}

namespace detail {
inline std::vector<std::vector<Rational>> sample_column(const std::vector<Poly>& col, long lo, long hi) {
    std::vector<std::vector<Rational>> out;
    for (long a = lo; a <= hi; ++a) {
        std::vector<Rational> v;
        for (const auto& p : col) v.push_back(p(Rational(a)));
        out.push_back(std::move(v));
    }
    return out;
}
} // namespace detail

/** Spectral chain from a factorization T S_A = 2^{-d} S_B T with the
 *  incomplete operator T. Expresses S_A vhat_j in the basis vhat_0..vhat_j of
 *  a chain for T, then diagonalizes the resulting upper triangular matrix. */
inline Chain spectral_chain_from_factorization(const Mask& a, const Mask& b, const TaylorOperator& t) {
    taylor_validate(t);
    if (t.complete) fail(errc::invalid_argument, "expected the incomplete Taylor operator");
    if (a.d != t.d || b.d != t.d) fail(errc::invalid_argument, "mask and operator orders differ");
    if (!factorization_identity_holds(a, t, b, Rational::pow2(-t.d)))
        fail(errc::invalid_argument, "T S_A = 2^-d S_B T does not hold");
    if (!preserves_last_unit(b)) fail(errc::invalid_argument, "S_B e_d = e_d does not hold");

    const int d = t.d;
    const Chain v = chain_for(t.with_complete(true));
    std::vector<std::vector<Poly>> cols;
    for (int j = 0; j <= d; ++j) cols.push_back(padded_column(v[j], d));

    const long olo = 0, ohi = 2L * (d + 2) - 1;
    std::vector<std::vector<Rational>> u(static_cast<std::size_t>(d + 1), std::vector<Rational>(static_cast<std::size_t>(d + 1)));
    for (int j = 0; j <= d; ++j) {
        Grid<Rational> in;
        in.lo = detail::floor_div2(olo - a.support_max());
        in.values = detail::sample_column(cols[static_cast<std::size_t>(j)], in.lo, detail::ceil_div2(ohi - a.support_min));
        Grid<Rational> r = subdivide(a, in, olo, ohi);
        // vhat_i has row i identically 1 and zeros below, so peel off from i = j down.
        for (int row = d; row > j; --row)
            for (long al = olo; al <= ohi; ++al)
                if (!r.at(al)[static_cast<std::size_t>(row)].is_zero())
                    fail(errc::span_hypothesis_failed, "S_A vhat_" + std::to_string(j) + " has a nonzero row " + std::to_string(row));
        for (int i = j; i >= 0; --i) {
            const Rational c = r.at(olo)[static_cast<std::size_t>(i)];
            for (long al = olo; al <= ohi; ++al) {
                if (r.at(al)[static_cast<std::size_t>(i)] != c)
                    fail(errc::span_hypothesis_failed, "S_A vhat_" + std::to_string(j) + " is not in the span of vhat_0..vhat_" + std::to_string(j));
                for (int k = 0; k <= i; ++k) r.at(al)[static_cast<std::size_t>(k)] -= c * cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)](Rational(al));
            }
            u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
        }
        for (long al = olo; al <= ohi; ++al)
            for (const auto& val : r.at(al))
                if (!val.is_zero()) fail(errc::span_hypothesis_failed, "S_A vhat_" + std::to_string(j) + " leaves a residual outside the span");
    }
    for (int j = 0; j <= d; ++j)
        if (u[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] != Rational::pow2(-j))
            fail(errc::eigenvalue_clash, "diagonal entry " + std::to_string(j) + " is " + u[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)].str() +
                                            ", expected 2^-" + std::to_string(j));

    // Upper triangular eigenvector matrix of u, unit diagonal.
    std::vector<std::vector<Rational>> s(static_cast<std::size_t>(d + 1), std::vector<Rational>(static_cast<std::size_t>(d + 1)));
    for (int j = 0; j <= d; ++j) {
        const auto J = static_cast<std::size_t>(j);
        s[J][J] = Rational(1);
        for (int i = j - 1; i >= 0; --i) {
            const auto I = static_cast<std::size_t>(i);
            Rational acc(0);
            for (int k = i + 1; k <= j; ++k) acc += u[I][static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)][J];
            s[I][J] = -acc / (u[I][I] - u[J][J]);
        }
    }
    Chain out{d, {}};
    for (int j = 0; j <= d; ++j) {
        std::vector<Poly> comp(static_cast<std::size_t>(j + 1));
        for (int i = 0; i <= j; ++i) {
            const Rational& sij = s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (sij.is_zero()) continue;
            for (int row = 0; row <= i; ++row) comp[static_cast<std::size_t>(j - row)] += Poly(sij) * cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(row)];
        }
        out.vecs.push_back(make_polyvec(std::move(comp)));
    }
    if (!verify_spectral_chain(a, out).ok) fail(errc::invariant_violated, "diagonalized chain is not spectral");
    return out;
}

} // namespace hforge

#endif // HFORGE_FACTOR_HPP
