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

#ifndef HFORGE_LINALG_HPP
#define HFORGE_LINALG_HPP

#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace hforge {

using RMatrix = std::vector<std::vector<Rational>>;

/** Fraction-free (Bareiss) elimination on [M | rhs]. Returns det M; on a
 *  nonsingular M the solution is written to x. No pivot tolerance: exact
 *  zero tests only. */
inline Rational bareiss(RMatrix m, std::vector<Rational> rhs, std::vector<Rational>* x) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) fail(errc::invalid_argument, "matrix is not square");
    if (x && rhs.size() != n) fail(errc::invalid_argument, "right-hand side has the wrong length");
    if (rhs.size() != n) rhs.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);

    Rational sign(1), prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) ++p;
        if (p == n) {
            if (x) fail(errc::invalid_argument, "singular linear system");
            return Rational(0);
        }
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = Rational(0);
        }
        prev = m[k][k];
    }
    if (x) {
        x->assign(n, Rational(0));
        for (std::size_t i = n; i-- > 0;) {
            Rational s = m[i][n];
            for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * (*x)[j];
            (*x)[i] = s / m[i][i];
        }
    }
    return n == 0 ? Rational(1) : sign * m[n - 1][n - 1];
}

/** Solution of a possibly over- or underdetermined system M x = rhs, with
 *  free variables set to 0; false when the system is inconsistent. */
inline bool solve_consistent(RMatrix m, std::vector<Rational> rhs, std::vector<Rational>& x) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        const Rational inv = Rational(1) / m[r][c];
        for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Rational f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return false;
    x.assign(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
    return true;
}

inline Rational determinant(const RMatrix& m) { return bareiss(m, {}, nullptr); }

inline std::vector<Rational> solve(const RMatrix& m, const std::vector<Rational>& rhs) {
    std::vector<Rational> x;
    bareiss(m, rhs, &x);
    return x;
}

} // namespace hforge

#endif // HFORGE_LINALG_HPP
