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

#ifndef HFORGE_ANALYSIS_HPP
#define HFORGE_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "subdivision.hpp"
#include "taylor.hpp"

namespace hforge {

inline int default_nmax() {
    if (const char* env = std::getenv("HERMITE_FORGE_NMAX")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 8;
}

/// B*(z) B*(z^2) ... B*(z^{2^{n-1}}).
inline LaurentMatrix iterated_symbol(const LaurentMatrix& b, int n) {
    LaurentMatrix p = b;
    for (int k = 1; k < n; ++k) p = p * b.substitute_power(1L << k);
    return p;
}

/** Operator norm of S_B^n on l^infinity: max over residues eps mod 2^n and
 *  rows i of sum_beta sum_j |B^[n]_ij(eps + 2^n beta)|. */
inline Rational symbol_norm(const LaurentMatrix& iterated, int n) {
    const long m = 1L << n;
    const int dim = iterated.dim();
    std::vector<Rational> sums(static_cast<std::size_t>(dim * m));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (const auto& [e, c] : iterated(i, j).terms()) sums[static_cast<std::size_t>(i * m + ((e % m) + m) % m)] += c.abs();
    Rational best(0);
    for (const auto& s : sums) best = std::max(best, s);
    return best;
}

inline Rational scheme_norm(const Mask& b, int n) {
    if (n < 1) fail(errc::invalid_argument, "scheme_norm needs n >= 1");
    return symbol_norm(iterated_symbol(mask_to_symbol(b), n), n);
}

struct ContractivityReport {
    int n_star = 0;                    // fast path level if triangular, else first n with norm < 1; 0 if none
    int general_n_star = 0;            // first n with ||S^[n]|| < 1 for the whole matrix
    std::vector<Rational> norms;       // ||S^[n]||, n = 1..
    std::vector<double> root_norms;    // ||S^[n]||^{1/n}
    bool contractive = false;
    bool lower_triangular = false;
    // Lower-triangular fast path: per diagonal entry, the first n with
    // scalar norm < 1 and the norm at n = 1.
    std::vector<int> diagonal_n_star;
    std::vector<Rational> diagonal_norm_n1;
    bool fast_path_contractive = false;
    bool general_contractive = false;
    Rational fast_path_factor;         // max diagonal norm at n = 1
};

/// First n <= n_max with ||S^[n]|| < 1 for a scalar symbol, or 0.
inline int scalar_contraction_level(const LaurentPoly& p, int n_max, std::vector<Rational>* norms = nullptr) {
    LaurentMatrix s(1);
    s(0, 0) = p;
    LaurentMatrix it = s;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) it = it * s.substitute_power(1L << (n - 1));
        const Rational v = symbol_norm(it, n);
        if (norms) norms->push_back(v);
        if (v < Rational(1)) return n;
    }
    return 0;
}

inline ContractivityReport check_contractive(const Mask& b, int n_max = default_nmax()) {
    ContractivityReport r;
    const LaurentMatrix s = mask_to_symbol(b);
    LaurentMatrix it = s;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) it = it * s.substitute_power(1L << (n - 1));
        const Rational v = symbol_norm(it, n);
        r.norms.push_back(v);
        r.root_norms.push_back(std::pow(v.to_double(), 1.0 / n));
        if (v < Rational(1)) {
            r.n_star = n;
            r.general_n_star = n;
            r.general_contractive = true;
            break;
        }
    }
    r.lower_triangular = s.is_lower_triangular();
    if (r.lower_triangular) {
        // A block triangular operator contracts iff its diagonal blocks do.
        r.fast_path_contractive = true;
        for (int i = 0; i < s.dim(); ++i) {
            std::vector<Rational> dn;
            const int level = scalar_contraction_level(s(i, i), n_max, &dn);
            r.diagonal_n_star.push_back(level);
            r.diagonal_norm_n1.push_back(dn.front());
            r.fast_path_factor = std::max(r.fast_path_factor, dn.front());
            if (level == 0) r.fast_path_contractive = false;
        }
        if (r.fast_path_contractive) {
            int worst = 0;
            for (int l : r.diagonal_n_star) worst = std::max(worst, l);
            r.n_star = worst;
        }
    }
    r.contractive = r.general_contractive || r.fast_path_contractive;
    return r;
}

/// Initial data f_0 = delta_{alpha,0} e_component on [lo, hi].
template <class S>
Grid<S> delta_grid(int dim, int component, long lo, long hi) {
    Grid<S> g = Grid<S>::zeros(0, lo, hi, dim);
    if (g.contains(0)) g.at(0)[static_cast<std::size_t>(component)] = S(1);
    return g;
}

/// f_0 .. f_levels by repeated hermite_step on the largest computable windows.
template <class S>
std::vector<Grid<S>> cascade(const Mask& a, const Grid<S>& init, int levels) {
    std::vector<Grid<S>> out{init};
    for (int n = 0; n < levels; ++n) out.push_back(hermite_step(a, out.back()));
    return out;
}

/** Cascade from delta data in `component`, with an initial window wide
 *  enough that level `levels` covers x in [-radius, radius]. Samples outside
 *  the delta support are genuinely zero, so the wide start is exact. */
template <class S>
std::vector<Grid<S>> cascade_delta(const Mask& a, int component, int levels, long radius) {
    const long lo = -radius - std::max(a.support_max(), 0L) - 1;
    const long hi = radius - std::min(a.support_min, 0L) + 1;
    return cascade(a, delta_grid<S>(a.dim(), component, lo, hi), levels);
}

inline Grid<double> to_double(const Grid<Rational>& g) {
    Grid<double> out = Grid<double>::zeros(g.level, g.lo, g.hi(), g.dim());
    for (std::size_t i = 0; i < g.values.size(); ++i)
        for (std::size_t j = 0; j < g.values[i].size(); ++j) out.values[i][j] = g.values[i][j].to_double();
    return out;
}

/// Restriction of a level-n grid to x = 2^{-n} alpha in [-radius, radius].
template <class S>
Grid<S> crop(const Grid<S>& g, long radius) {
    const long lo = -(radius << g.level), hi = radius << g.level;
    if (!g.contains(lo) || !g.contains(hi)) fail(errc::window_too_small, "grid does not cover the requested window");
    Grid<S> out;
    out.level = g.level;
    out.lo = lo;
    out.values.assign(g.values.begin() + (lo - g.lo), g.values.begin() + (hi - g.lo) + 1);
    return out;
}

struct ConvergenceReport {
    int levels = 0;
    long radius = 0;
    // sup_diff[n] = sup |L f_{n+1}^{(i)} - L f_n^{(i)}| on the window, L the piecewise linear
    // interpolant on the dyadic grid, n = 0..levels-1.
    std::vector<double> sup_diff;
    std::vector<double> ratios;
    // residual[n][k] = max_alpha |2^n Delta f_n^{(k)}(alpha) - f_n^{(k+1)}(alpha)|, k = 0..d-1.
    std::vector<std::vector<double>> residual;
    // scaled[n][k] = max_alpha 2^{n(d-k)} |(T D^n f_n)_k(alpha)|, the quantity controlled by the difference scheme.
    std::vector<std::vector<double>> scaled_residual;
    double decay_ratio = 0;      // max of the last three inter-level ratios
    double final_sup_diff = 0;
    double final_residual = 0;   // max over k of residual at the final level
    double final_scaled_residual = 0;
    double residual_decay_ratio = 0;  // max over k of the last-level residual ratio
    bool decaying = false;            // sup differences shrink geometrically
    bool residual_decaying = false;   // Taylor residuals shrink geometrically
    bool sup_ok = false;              // final sup difference within tolerance
    bool residual_ok = false;         // final Taylor residual within tolerance
    bool converging = false;          // all four
    std::string verdict;              // converging | decaying_above_tolerance | diverging
};

struct ConvergenceOptions {
    int levels = 8;
    long radius = 4;
    double sup_tol = 1e-6;
    double residual_tol = 1e-4;
    double ratio_threshold = 0.9;
};

/** Numerical falsification test: cascades from delta data in each
 *  component, compares consecutive levels on [-radius, radius] and measures
 *  the Taylor residuals. The Taylor operator enters only through the scaled
 *  residual; pass the operator the scheme factors with. */
inline ConvergenceReport check_convergence(const Mask& a, const TaylorOperator& t, const ConvergenceOptions& opt = {}) {
    if (opt.levels < 3) fail(errc::invalid_argument, "check_convergence needs at least 3 levels");
    const int d = a.d;
    ConvergenceReport rep;
    rep.levels = opt.levels;
    rep.radius = opt.radius;
    rep.sup_diff.assign(static_cast<std::size_t>(opt.levels), 0.0);
    rep.residual.assign(static_cast<std::size_t>(opt.levels + 1), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    rep.scaled_residual = rep.residual;
    for (int comp = 0; comp <= d; ++comp) {
        const auto grids = cascade_delta<double>(a, comp, opt.levels, opt.radius + 1);
        for (int n = 0; n <= opt.levels; ++n) {
            const Grid<double>& g = grids[static_cast<std::size_t>(n)];
            const long lo = -(opt.radius << n), hi = opt.radius << n;
            if (n < opt.levels) {
                // Piecewise linear interpolants of levels n and n+1: even fine
                // points against coarse samples, odd ones against midpoints.
                const Grid<double>& f = grids[static_cast<std::size_t>(n + 1)];
                double& sd = rep.sup_diff[static_cast<std::size_t>(n)];
                for (long al = lo; al <= hi; ++al)
                    for (int i = 0; i <= d; ++i) {
                        const auto I = static_cast<std::size_t>(i);
                        sd = std::max(sd, std::abs(f.at(2 * al)[I] - g.at(al)[I]));
                        if (al < hi) sd = std::max(sd, std::abs(f.at(2 * al + 1)[I] - 0.5 * (g.at(al)[I] + g.at(al + 1)[I])));
                    }
            }
            const double scale = std::ldexp(1.0, n);
            for (long al = lo; al <= hi; ++al) {
                const auto& now = g.at(al);
                const auto& next = g.at(al + 1);
                for (int k = 0; k < d; ++k) {
                    const auto K = static_cast<std::size_t>(k);
                    const double r = scale * (next[K] - now[K]) - now[K + 1];
                    rep.residual[static_cast<std::size_t>(n)][K] = std::max(rep.residual[static_cast<std::size_t>(n)][K], std::abs(r));
                    // 2^{n(d-k)} (T D^n f)_k = 2^{n(d-k)} (2^{-nk} Delta f^(k) - sum_l w_{l,k+1} 2^{-nl} f^(l)).
                    double s = std::ldexp(next[K] - now[K], -n * k);
                    for (int l = k + 1; l <= d; ++l) s += t.upper(k, l).to_double() * std::ldexp(now[static_cast<std::size_t>(l)], -n * l);
                    s = std::ldexp(s, n * (d - k));
                    rep.scaled_residual[static_cast<std::size_t>(n)][K] = std::max(rep.scaled_residual[static_cast<std::size_t>(n)][K], std::abs(s));
                }
            }
        }
    }
    for (std::size_t n = 1; n < rep.sup_diff.size(); ++n)
        rep.ratios.push_back(rep.sup_diff[n - 1] > 0 ? rep.sup_diff[n] / rep.sup_diff[n - 1] : 0.0);
    const std::size_t tail = std::min<std::size_t>(3, rep.ratios.size());
    for (std::size_t i = rep.ratios.size() - tail; i < rep.ratios.size(); ++i) rep.decay_ratio = std::max(rep.decay_ratio, rep.ratios[i]);
    rep.final_sup_diff = rep.sup_diff.back();
    for (double v : rep.residual.back()) rep.final_residual = std::max(rep.final_residual, v);
    for (double v : rep.scaled_residual.back()) rep.final_scaled_residual = std::max(rep.final_scaled_residual, v);
    const auto& last = rep.residual[rep.residual.size() - 1];
    const auto& prev = rep.residual[rep.residual.size() - 2];
    for (std::size_t k = 0; k < last.size(); ++k)
        rep.residual_decay_ratio = std::max(rep.residual_decay_ratio, prev[k] > 0 ? last[k] / prev[k] : 0.0);
    rep.decaying = rep.decay_ratio <= opt.ratio_threshold;
    rep.residual_decaying = rep.residual_decay_ratio <= opt.ratio_threshold;
    rep.sup_ok = rep.final_sup_diff <= opt.sup_tol;
    rep.residual_ok = rep.final_residual <= opt.residual_tol;
    rep.converging = rep.decaying && rep.residual_decaying && rep.sup_ok && rep.residual_ok;
    rep.verdict = rep.converging ? "converging" : (rep.decaying && rep.residual_decaying ? "decaying_above_tolerance" : "diverging");
    return rep;
}

/** phi_i(x) = y_i + int_0^x phi_{i+1}, i = d-1..0, by the composite trapezoid
 *  rule from 0 outward on the level-n grid of psi. Output component i holds
 *  phi_i; component d is psi itself. */
inline Grid<double> reconstruct_limits(const Grid<double>& psi, const std::vector<double>& y) {
    if (psi.dim() != 1) fail(errc::invalid_argument, "expected scalar samples of the last component");
    if (!psi.contains(0)) fail(errc::window_too_small, "samples must contain x = 0");
    const int d = static_cast<int>(y.size()) - 1;
    const double h = std::ldexp(1.0, -psi.level);
    Grid<double> out = Grid<double>::zeros(psi.level, psi.lo, psi.hi(), d + 1);
    for (long a = psi.lo; a <= psi.hi(); ++a) out.at(a)[static_cast<std::size_t>(d)] = psi.at(a)[0];
    for (int i = d - 1; i >= 0; --i) {
        const auto I = static_cast<std::size_t>(i);
        out.at(0)[I] = y[I];
        for (long a = 1; a <= out.hi(); ++a) out.at(a)[I] = out.at(a - 1)[I] + h * 0.5 * (out.at(a - 1)[I + 1] + out.at(a)[I + 1]);
        for (long a = -1; a >= out.lo; --a) out.at(a)[I] = out.at(a + 1)[I] - h * 0.5 * (out.at(a + 1)[I + 1] + out.at(a)[I + 1]);
    }
    return out;
}

/** Integer samples phi(k) of the refinable function of a scalar mask with
 *  sum of coefficients 2, as the eigenvector of [a(2i - j)] for eigenvalue 1
 *  normalized to sum 1. Exact. */
inline std::vector<Rational> refinable_integer_values(const LaurentPoly& a, long* first = nullptr) {
    const long lo = a.min_exp(), hi = a.max_exp();
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    // phi is supported in [lo, hi]; phi(k) = sum_j a(2k - j) phi(j).
    RMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const long k = lo + static_cast<long>(i), l = lo + static_cast<long>(j);
            m[i][j] = a.coeff(2 * k - l) - (i == j ? Rational(1) : Rational(0));
        }
    // Replace the last equation by the normalization sum phi(k) = 1.
    m.back().assign(n, Rational(1));
    std::vector<Rational> rhs(n);
    rhs.back() = Rational(1);
    if (first) *first = lo;
    return solve(m, rhs);
}

} // namespace hforge

#endif // HFORGE_ANALYSIS_HPP
