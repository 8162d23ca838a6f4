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

#ifndef HFORGE_CONSTRUCT_HPP
#define HFORGE_CONSTRUCT_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "linalg.hpp"
#include "subdivision.hpp"
#include "taylor.hpp"

namespace hforge {

/** Right-hand side used for the (j = 1, r = 1) closure row when d >= 2.
 *  `printed` reproduces the reference d = 2 system (2 h_11 - h_01 = 2^{d-1});
 *  `derivative_consistent` takes q_1'(1) = 0 literally (= -2^{d-1}). Both
 *  leave every entry of A a Laurent polynomial. */
enum class ClosureRule { printed, derivative_consistent };

/** How the last row of Btilde is found: the linear system works for any
 *  Taylor operator; the reverse recurrence only for the pure difference
 *  operator, where it gives h*_{dj} = (z+1) h*_{d,j+1}. */
enum class LastRowMethod { forward_system, delta_recurrence };

/** Unknowns h = [h_{d-1}; ...; h_0], h_j = [h_{j,j+1}, ..., h_{j,1}] with
 *  h_{j,r} the r-th derivative at 1 of h*_{dj}. Equations are
 *  q_j^{(r)}(1) = 0 for r = j..1 and blocks j = d..1, where
 *  q_j(z) = (z+1) h*_{dj} - h*_{d,j-1} - sum_{k=1}^{j-1} w_{j,j-k} (z-1)^k h*_{d,j-1-k}. */
struct LastRowSystem {
    int d = 0;
    TaylorOperator T;
    LaurentPoly h_dd;
    ClosureRule closure = ClosureRule::printed;
    RMatrix H;
    std::vector<Rational> b;
    std::vector<Rational> h;

    static long index(int d, int j, int r) {
        long off = 0;
        for (int m = d - 1; m > j; --m) off += m + 1;
        return off + (j + 1 - r);
    }
    /// h_{j,r}; r = 0 gives the fixed value 2^{d-j}, j = d reads h_dd.
    Rational value(int j, int r) const {
        if (j == d) return h_dd.derivative_at_one(static_cast<unsigned>(r));
        if (r == 0) return Rational::pow2(d - j);
        return h.at(static_cast<std::size_t>(index(d, j, r)));
    }
};

inline bool is_delta_operator(const TaylorOperator& t) {
    for (int l = 1; l <= t.d; ++l)
        for (int i = 1; i < l; ++i)
            if (!t.weight(l, i).is_zero()) return false;
    return true;
}

inline LastRowSystem build_last_row_system(const TaylorOperator& t, const LaurentPoly& h_dd, ClosureRule closure = ClosureRule::printed) {
    taylor_validate(t);
    if (!t.complete) fail(errc::invalid_argument, "the last-row system needs a complete Taylor operator");
    if (t.d < 1) fail(errc::invalid_argument, "the last-row system needs order d >= 1");
    if (h_dd.eval_at_one() != Rational(1)) fail(errc::bad_seed, "h_dd(1) = " + h_dd.eval_at_one().str() + ", expected 1");

    LastRowSystem sys;
    sys.d = t.d;
    sys.T = t;
    sys.h_dd = h_dd;
    sys.closure = closure;
    const int d = t.d;
    const auto n = static_cast<std::size_t>(d * (d + 1) / 2);
    sys.H.assign(n, std::vector<Rational>(n));
    sys.b.assign(n, Rational(0));

    std::size_t row = 0;
    for (int j = d; j >= 1; --j)
        for (int r = j; r >= 1; --r, ++row) {
            // Accumulate q_j^{(r)}(1) as sum coef * unknown + known.
            std::vector<Rational> coef(n);
            Rational known(0);
            auto term = [&](int m, int s, const Rational& c) {
                if (m == d)
                    known += c * h_dd.derivative_at_one(static_cast<unsigned>(s));
                else if (s == 0)
                    known += c * Rational::pow2(d - m);
                else
                    coef[static_cast<std::size_t>(LastRowSystem::index(d, m, s))] += c;
            };
            term(j, r, Rational(2));
            term(j, r - 1, Rational(r));
            term(j - 1, r, Rational(-1));
            for (int k = 1; k <= std::min(j - 1, r); ++k)
                term(j - 1 - k, r - k, -t.weight(j, j - k) * falling_factorial(r, static_cast<unsigned>(k)));
            // Block d is written with +1 on h_{d-1,r}, the others with -1 on h_{j-1,r}.
            const Rational orient = j == d ? Rational(-1) : Rational(1);
            Rational rhs = -known;
            if (closure == ClosureRule::printed && d >= 2 && j == 1 && r == 1) rhs = known;
            for (std::size_t c = 0; c < n; ++c) sys.H[row][c] = orient * coef[c];
            sys.b[row] = orient * rhs;
        }
    sys.h = solve(sys.H, sys.b);
    return sys;
}

/// h*_{d0} .. h*_{dd} and the matching last row of Btilde.
struct LastRow {
    std::vector<LaurentPoly> h;       // h*_{dj}, j = 0..d
    std::vector<LaurentPoly> btilde;  // (z^{-1}-1)^{d-j} h*_{dj}(z^{-1})
};

/// q_j(z) for the polynomials h (indexed by j).
inline LaurentPoly last_row_q(const TaylorOperator& t, const std::vector<LaurentPoly>& h, int j) {
    const LaurentPoly zm1 = LaurentPoly::z() - LaurentPoly(1);
    LaurentPoly q = (LaurentPoly::z() + LaurentPoly(1)) * h[static_cast<std::size_t>(j)] - h[static_cast<std::size_t>(j - 1)];
    for (int k = 1; k <= j - 1; ++k) q -= LaurentPoly(t.weight(j, j - k)) * zm1.pow(static_cast<unsigned>(k)) * h[static_cast<std::size_t>(j - 1 - k)];
    return q;
}

inline LastRow last_row_from_h(const TaylorOperator& t, std::vector<LaurentPoly> h) {
    const int d = t.d;
    for (int j = 1; j <= d; ++j) {
        const LaurentPoly q = last_row_q(t, h, j);
        for (int r = 0; r < j; ++r)
            if (!q.derivative_at_one(static_cast<unsigned>(r)).is_zero())
                fail(errc::zero_order_check_failed, "q_" + std::to_string(j) + " has no zero of order " + std::to_string(j) + " at 1 (derivative " +
                                                         std::to_string(r) + ")");
    }
    LastRow out{std::move(h), {}};
    const LaurentPoly x = LaurentPoly::delta();
    for (int j = 0; j <= d; ++j) out.btilde.push_back(x.pow(static_cast<unsigned>(d - j)) * out.h[static_cast<std::size_t>(j)].reflect());
    return out;
}

/// h*_{dj}(z) = 2^{d-j} + sum_{r=1}^{j+1} h_{j,r}/r! (z-1)^r.
inline LastRow last_row_symbols(const LastRowSystem& sys) {
    const int d = sys.d;
    const LaurentPoly zm1 = LaurentPoly::z() - LaurentPoly(1);
    std::vector<LaurentPoly> h;
    for (int j = 0; j < d; ++j) {
        LaurentPoly p(Rational::pow2(d - j));
        for (int r = 1; r <= j + 1; ++r) p += LaurentPoly(sys.value(j, r) / factorial(static_cast<unsigned>(r))) * zm1.pow(static_cast<unsigned>(r));
        h.push_back(p);
    }
    h.push_back(sys.h_dd);
    return last_row_from_h(sys.T, std::move(h));
}

/// Reverse recurrence for the pure difference operator: h*_{dj} = (z+1) h*_{d,j+1}.
inline LastRow last_row_delta_recurrence(const TaylorOperator& t, const LaurentPoly& h_dd) {
    taylor_validate(t);
    if (!is_delta_operator(t)) fail(errc::invalid_argument, "the reverse recurrence applies to the pure difference operator only");
    if (h_dd.eval_at_one() != Rational(1)) fail(errc::bad_seed, "h_dd(1) = " + h_dd.eval_at_one().str() + ", expected 1");
    std::vector<LaurentPoly> h(static_cast<std::size_t>(t.d + 1));
    h[static_cast<std::size_t>(t.d)] = h_dd;
    for (int j = t.d - 1; j >= 0; --j) h[static_cast<std::size_t>(j)] = (LaurentPoly::z() + LaurentPoly(1)) * h[static_cast<std::size_t>(j + 1)];
    return last_row_from_h(t, std::move(h));
}

using FillMap = std::map<std::pair<int, int>, LaurentPoly>;

/** Lower triangular Btilde: rows j < d are (z^{-1}-1)^{j+1} g_{jk} below the
 *  diagonal and (z^{-1}-1)^{j+1}/2^{j+1} on it; row d is the given last row. */
inline Mask assemble_btilde(int d, const std::vector<LaurentPoly>& last_row, const FillMap& g = {}) {
    if (static_cast<int>(last_row.size()) != d + 1) fail(errc::invalid_argument, "last row has the wrong length");
    LaurentMatrix s(d + 1);
    const LaurentPoly x = LaurentPoly::delta();
    for (int j = 0; j < d; ++j) {
        const LaurentPoly xp = x.pow(static_cast<unsigned>(j + 1));
        s(j, j) = LaurentPoly(Rational::pow2(-(j + 1))) * xp;
        for (int k = 0; k < j; ++k) {
            const auto it = g.find({j, k});
            if (it != g.end()) s(j, k) = xp * it->second;
        }
    }
    for (const auto& [jk, p] : g)
        if (!(jk.second >= 0 && jk.second < jk.first && jk.first < d))
            fail(errc::invalid_argument, "fill polynomial g(" + std::to_string(jk.first) + "," + std::to_string(jk.second) + ") is outside 0 <= k < j < d");
    for (int k = 0; k <= d; ++k) s(d, k) = last_row[static_cast<std::size_t>(k)];
    return symbol_to_mask(s);
}

/** A with T*(z) A*(z) = 2^{-d} Btilde*(z) T*(z^2), through the factored
 *  inverse T^{-1} = (1/x) D P D^{-1}:
 *  a_jk = 2^{-d} sum_l p_jl x^j E_lk / x^{l+1},  E = Btilde*(z) T*(z^2). */
inline Mask unfactor(const TaylorOperator& t, const Mask& btilde) {
    taylor_validate(t);
    if (!t.complete) fail(errc::invalid_argument, "unfactor needs a complete Taylor operator");
    if (btilde.d != t.d) fail(errc::invalid_argument, "Btilde and Taylor operator orders differ");
    const int d = t.d;
    const LaurentMatrix ts = taylor_symbol(t);
    const LaurentMatrix e = mask_to_symbol(btilde) * ts.substitute_power(2);
    const TriangularInverse inv = triangular_inverse(ts);
    const LaurentPoly x = inv.x;

    LaurentMatrix reduced(d + 1);  // E_lk / x^{l+1}
    for (int l = 0; l <= d; ++l) {
        const LaurentPoly xp = x.pow(static_cast<unsigned>(l + 1));
        for (int k = 0; k <= d; ++k) {
            LaurentPoly q;
            if (!e(l, k).try_divide(xp, q))
                fail(errc::not_divisible, "row divisibility condition failed at (" + std::to_string(l) + "," + std::to_string(k) + ")");
            reduced(l, k) = q;
        }
    }
    LaurentMatrix a(d + 1);
    const LaurentPoly scale(Rational::pow2(-d));
    for (int j = 0; j <= d; ++j) {
        const LaurentPoly xj = scale * x.pow(static_cast<unsigned>(j));
        for (int k = 0; k <= d; ++k) {
            LaurentPoly s;
            for (int l = j; l <= d; ++l) s += inv.P(j, l) * reduced(l, k);
            a(j, k) = xj * s;
        }
    }
    Mask out = symbol_to_mask(a);
    if (!factorization_identity_holds(out, t, btilde, Rational::pow2(-d)))
        fail(errc::invariant_violated, "unfactored mask does not satisfy the factorization identity");
    return out;
}

struct SynthesisOptions {
    LastRowMethod method = LastRowMethod::forward_system;
    ClosureRule closure = ClosureRule::printed;
    FillMap g;
    bool check_seed_contractive = true;
    int n_max = default_nmax();
};

struct SynthesisCheck {
    std::string name;
    bool ok = false;
};

struct SynthesizedScheme {
    TaylorOperator T;
    LaurentPoly h_dd;
    bool has_system = false;
    LastRowSystem system;
    LastRow last_row;
    Mask Btilde;
    Mask A;
    std::vector<SynthesisCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Named fill presets; "exdelta" sets g_10 = 1 (d >= 2).
inline FillMap fill_preset(const std::string& name, int d) {
    if (name == "none" || name.empty()) return {};
    if (name == "exdelta") {
        if (d < 2) fail(errc::invalid_argument, "preset exdelta needs d >= 2");
        return {{{1, 0}, LaurentPoly(1)}};
    }
    fail(errc::invalid_argument, "unknown fill preset '" + name + "'");
}

inline SynthesizedScheme synthesize(const TaylorOperator& t, const LaurentPoly& h_dd, const SynthesisOptions& opt = {}) {
    taylor_validate(t);
    if (!t.complete) fail(errc::invalid_argument, "synthesis needs a complete Taylor operator");
    if (h_dd.eval_at_one() != Rational(1)) fail(errc::bad_seed, "h_dd(1) = " + h_dd.eval_at_one().str() + ", expected 1");
    if (opt.check_seed_contractive && scalar_contraction_level(h_dd, opt.n_max) == 0)
        fail(errc::bad_seed, "h_dd is not contractive as a scalar scheme within n_max = " + std::to_string(opt.n_max));

    SynthesizedScheme s;
    s.T = t;
    s.h_dd = h_dd;
    const int d = t.d;
    if (d == 0) {
        s.last_row.h = {h_dd};
        s.last_row.btilde = {h_dd.reflect()};
    } else if (opt.method == LastRowMethod::delta_recurrence) {
        s.last_row = last_row_delta_recurrence(t, h_dd);
    } else {
        s.system = build_last_row_system(t, h_dd, opt.closure);
        s.has_system = true;
        s.last_row = last_row_symbols(s.system);
    }
    s.Btilde = assemble_btilde(d, s.last_row.btilde, opt.g);
    s.A = unfactor(t, s.Btilde);

    const LaurentMatrix bs = mask_to_symbol(s.Btilde);
    s.checks.push_back({"factorization identity T*(z)A*(z) = 2^-d Btilde*(z)T*(z^2)", factorization_identity_holds(s.A, t, s.Btilde, Rational::pow2(-d))});
    bool at_one = true;
    for (int j = 0; j <= d; ++j) at_one = at_one && s.last_row.h[static_cast<std::size_t>(j)].eval_at_one() == Rational::pow2(d - j);
    s.checks.push_back({"h*_dj(1) = 2^(d-j)", at_one});
    s.checks.push_back({"Btilde lower triangular", bs.is_lower_triangular()});
    bool corner = bs(d, d).eval_at_one() == Rational(1);
    for (int k = 0; k < d; ++k) corner = corner && bs(d, k).eval_at_one().is_zero();
    s.checks.push_back({"last row of Btilde vanishes at 1 left of the diagonal, Btilde_dd(1) = 1", corner});
    if (s.has_system) s.checks.push_back({"|det H| = 1", determinant(s.system.H).abs() == Rational(1)});
    return s;
}

} // namespace hforge

#endif // HFORGE_CONSTRUCT_HPP
