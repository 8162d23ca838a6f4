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

#include <gtest/gtest.h>

#include "hforge/analysis.hpp"
#include "hforge/splines.hpp"
#include "oracles.hpp"

using namespace hforge;

TEST(Spline, SymbolIsBinomial) {
    for (int r = 0; r <= 6; ++r) {
        const LaurentPoly a = spline_symbol(r);
        for (int k = 0; k <= r + 1; ++k) EXPECT_EQ(a.coeff(k), oracle::pascal(r + 1, k) / Rational::pow2(r));
    }
}

TEST(Spline, EigenRelations) {
    for (int r = 1; r <= 6; ++r)
        for (int i = 0; i <= r; ++i) EXPECT_TRUE(spline_eigen_relation(r, i).ok) << "r=" << r << " i=" << i;
    // Wrong eigenvalue is rejected.
    EXPECT_FALSE(apply_to_polyvec(scalar_mask(spline_symbol(3)), {spline_eigenpoly(3, 2)}, Rational(1, 2)).ok);
}

TEST(Spline, EllHasTheRightRoots) {
    for (int r = 1; r <= 6; ++r) {
        const Poly l = spline_ell(r);
        EXPECT_EQ(l.degree(), r);
        for (int j = 1; j <= r; ++j) EXPECT_TRUE(l(Rational(-j)).is_zero());
        EXPECT_EQ(l(Rational(0)), Rational(1));
    }
}

TEST(Spline, DifferenceOfDegreeDIsConstantOne) {
    // Delta^d p_d = 1 for p_d = l_r^{(r-d)}.
    for (int r = 1; r <= 6; ++r)
        for (int d = 0; d <= r; ++d) EXPECT_EQ(spline_eigenpoly(r, d).forward_difference(static_cast<unsigned>(d)), Poly(1)) << r << "," << d;
}

TEST(Spline, DifferenceTaylorMatrixIsUnitUpper) {
    for (int d = 0; d <= 6; ++d) {
        const RMatrix r = difference_taylor_matrix(d);
        for (int k = 0; k <= d; ++k)
            for (int m = 0; m <= d; ++m) {
                const Rational& v = r[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
                if (m < k) {
                    EXPECT_TRUE(v.is_zero());
                } else if (m == k) {
                    EXPECT_EQ(v, Rational(1));
                }
            }
        // Check the defining relation on x^d: Delta^k p(. - k) = sum_m R_km p^{(m)} at a few points.
        const Poly p = Poly::monomial(static_cast<unsigned>(d));
        for (int k = 0; k <= d; ++k)
            for (long x = -2; x <= 2; ++x) {
                Rational rhs(0);
                for (int m = 0; m <= d; ++m) rhs += r[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] * p.derivative(static_cast<unsigned>(m))(Rational(x));
                EXPECT_EQ(p.forward_difference(static_cast<unsigned>(k)).shift(-k)(Rational(x)), rhs);
            }
    }
}

TEST(Spline, ChainIsAnnihilatedBySplineOperator) {
    for (int r = 1; r <= 5; ++r)
        for (int d = 0; d <= r; ++d) {
            const Chain c = spline_chain(r, d);
            for (int j = 0; j <= d; ++j) EXPECT_TRUE(oracle::taylor_annihilates(taylor_spline(d), padded_column(c[j], d), r));
        }
    EXPECT_THROW(spline_chain(2, 3), error);
}

TEST(Spline, GoldenFactorizationOrderThree) {
    const SplineReport rep = spline_verify(4, 3);
    EXPECT_TRUE(rep.spectral);
    ASSERT_TRUE(rep.golden_checked);
    EXPECT_TRUE(rep.golden_match);
    // Spot-check entry (0,3) = z^3 (1+z) / 2 against a hand transcription.
    const LaurentMatrix b = mask_to_symbol(rep.factorization.B);
    LaurentPoly e03;
    e03.add_to(3, Rational(1, 2));
    e03.add_to(4, Rational(1, 2));
    EXPECT_EQ(b(0, 3), e03);
    for (int i = 1; i <= 3; ++i)
        for (int k = 0; k <= 3; ++k) EXPECT_EQ(b(i, k), b(0, k));
}

TEST(Spline, ClassicalConditionOnlyForLowOrders) {
    for (int r = 1; r <= 5; ++r)
        for (int d = 0; d <= std::min(r, 4); ++d) {
            const SplineReport rep = spline_verify(r, d);
            EXPECT_TRUE(rep.ok) << r << "," << d;
            EXPECT_EQ(rep.classical_spectral, d <= 1) << r << "," << d;
        }
    EXPECT_TRUE(spline_verify(0, 0).ok);
}

TEST(Spline, GridLimitMatchesClosedForm) {
    for (int r = 1; r <= 4; ++r) {
        const int d = std::min(r, 3);
        const Mask a = spline_hermite_mask(r, d);
        const auto grids = cascade_delta<double>(a, 0, 8, r + 3);
        const Grid<double>& f = grids.back();
        const long lo = 0, hi = (static_cast<long>(r) + 1) << 8;
        const Grid<double> lim = spline_grid_limit(r, f, lo, hi);
        double err = 0;
        for (long b = lo; b <= hi; ++b)
            for (int i = 0; i < lim.dim(); ++i) {
                // With D-scaled data the i-th component approximates the i-th derivative.
                const double x = std::ldexp(static_cast<double>(b), -8);
                err = std::max(err, std::abs(lim.at(b)[static_cast<std::size_t>(i)] - oracle::bspline(r, i, x)));
            }
        EXPECT_LT(err, 1e-6) << "r = " << r;
    }
}

TEST(Spline, BadOrder) {
    try {
        spline_hermite_mask(2, 3);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::bad_order);
    }
}
