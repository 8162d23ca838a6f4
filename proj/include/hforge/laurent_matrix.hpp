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

#ifndef HFORGE_LAURENT_MATRIX_HPP
#define HFORGE_LAURENT_MATRIX_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "laurent.hpp"

namespace hforge {

/// Square matrix of Laurent polynomials, row-major.
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    explicit LaurentMatrix(int dim) : n_(dim), e_(static_cast<std::size_t>(dim * dim)) {
        if (dim < 1) fail(errc::invalid_argument, "matrix dimension must be positive");
    }

    static LaurentMatrix identity(int dim) {
        LaurentMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = LaurentPoly(1);
        return m;
    }
    static LaurentMatrix diagonal(const std::vector<LaurentPoly>& diag) {
        LaurentMatrix m(static_cast<int>(diag.size()));
        for (int i = 0; i < m.n_; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
        return m;
    }

    int dim() const { return n_; }
    LaurentPoly& operator()(int i, int j) { return e_[idx(i, j)]; }
    const LaurentPoly& operator()(int i, int j) const { return e_[idx(i, j)]; }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }
    bool is_upper_triangular() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j)
                if (!(*this)(i, j).is_zero()) return false;
        return true;
    }
    bool is_lower_triangular() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!(*this)(i, j).is_zero()) return false;
        return true;
    }

    long min_exp() const {
        long m = 0;
        bool any = false;
        for (const auto& p : e_)
            if (!p.is_zero()) {
                m = any ? std::min(m, p.min_exp()) : p.min_exp();
                any = true;
            }
        return m;
    }
    long max_exp() const {
        long m = 0;
        bool any = false;
        for (const auto& p : e_)
            if (!p.is_zero()) {
                m = any ? std::max(m, p.max_exp()) : p.max_exp();
                any = true;
            }
        return m;
    }

    LaurentMatrix substitute_power(long k) const { return map([k](const LaurentPoly& p) { return p.substitute_power(k); }); }
    LaurentMatrix scaled(const LaurentPoly& s) const { return map([&s](const LaurentPoly& p) { return s * p; }); }

    /// Entrywise value at z = 1.
    std::vector<std::vector<Rational>> eval_at_one() const {
        std::vector<std::vector<Rational>> out(static_cast<std::size_t>(n_), std::vector<Rational>(static_cast<std::size_t>(n_)));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j).eval_at_one();
        return out;
    }

    friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
        a.check_same(b);
        LaurentMatrix r(a.n_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
        a.check_same(b);
        LaurentMatrix r(a.n_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
        a.check_same(b);
        LaurentMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const LaurentPoly& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < a.n_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < n_; ++i) {
            s += i ? ", [" : "[";
            for (int j = 0; j < n_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) fail(errc::invalid_argument, "matrix index out of range");
        return static_cast<std::size_t>(i * n_ + j);
    }
    void check_same(const LaurentMatrix& o) const {
        if (n_ != o.n_) fail(errc::invalid_argument, "matrix dimensions differ");
    }
    template <class F>
    LaurentMatrix map(F f) const {
        LaurentMatrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f(e_[i]);
        return r;
    }

    int n_ = 0;
    std::vector<LaurentPoly> e_;
};

/** Inverse of an upper triangular matrix with every diagonal entry z^{-1}-1,
 *  kept in the factored form T^{-1} = (1/x) D P D^{-1}, x = z^{-1}-1,
 *  D = diag(1, x, ..., x^d). Only P is a genuine Laurent matrix. */
struct TriangularInverse {
    LaurentPoly x;      // the scalar prefactor is 1/x
    LaurentMatrix D;
    LaurentMatrix P;
};

inline TriangularInverse triangular_inverse(const LaurentMatrix& T) {
    const int n = T.dim();
    if (!T.is_upper_triangular()) fail(errc::not_triangular, "matrix is not upper triangular");
    const LaurentPoly x = LaurentPoly::delta();
    for (int i = 0; i < n; ++i)
        if (!(T(i, i) == x)) fail(errc::singular_diagonal, "diagonal entry " + std::to_string(i) + " is not z^-1 - 1");

    LaurentMatrix negU(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) negU(i, j) = -T(i, j);

    // p_jk = sum_m ((-U)^m)_jk x^{k-j-m}; (-U)^m vanishes for m > k - j.
    LaurentMatrix P(n);
    LaurentMatrix power = LaurentMatrix::identity(n);
    std::vector<LaurentPoly> xpow(static_cast<std::size_t>(n), LaurentPoly(1));
    for (int i = 1; i < n; ++i) xpow[static_cast<std::size_t>(i)] = xpow[static_cast<std::size_t>(i - 1)] * x;
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j)
            for (int k = j + m; k < n; ++k)
                if (!power(j, k).is_zero()) P(j, k) += power(j, k) * xpow[static_cast<std::size_t>(k - j - m)];
        power = power * negU;
    }

    std::vector<LaurentPoly> dd(xpow.begin(), xpow.end());
    TriangularInverse inv{x, LaurentMatrix::diagonal(dd), P};
    // T D P = x D is the inverse identity with D^{-1} cleared.
    if (!(T * inv.D * inv.P == inv.D.scaled(x)))
        fail(errc::invariant_violated, "triangular inverse failed its own check");
    return inv;
}

} // namespace hforge

#endif // HFORGE_LAURENT_MATRIX_HPP
