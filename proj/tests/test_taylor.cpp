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

#include "hforge/identities.hpp"
#include "hforge/taylor.hpp"
#include "oracles.hpp"

using namespace hforge;

namespace {
/// [1, x, x^2/2, ..., x^d/d!] by ascending degree.
PolyVec monomial_vector(int d) {
    std::vector<Poly> c;
    for (int j = 0; j <= d; ++j) c.push_back(Poly::monomial(static_cast<unsigned>(j), Rational(1) / oracle::fact(j)));
    return make_polyvec(c);
}
} // namespace

TEST(Taylor, SymbolShape) {
    const LaurentMatrix s = taylor_symbol(taylor_classical(3));
    for (int i = 0; i <= 3; ++i) {
        EXPECT_EQ(s(i, i), LaurentPoly::delta());
        for (int j = 0; j < i; ++j) EXPECT_TRUE(s(i, j).is_zero());
    }
    for (int k = 0; k < 3; ++k) EXPECT_EQ(s(k, k + 1), LaurentPoly(-1));
    const LaurentMatrix inc = taylor_symbol(taylor_delta(2, false));
    EXPECT_EQ(inc(2, 2), LaurentPoly(1));
}

TEST(Taylor, ValidationRejectsBadWeights) {
    TaylorOperator t = taylor_delta(2);
    t.weight(2, 2) = Rational(2);
    EXPECT_THROW(taylor_validate(t), error);
    t = taylor_delta(2);
    t.w.pop_back();
    EXPECT_THROW(taylor_validate(t), error);
}

TEST(Taylor, ClassicalChainGivesInverseFactorials) {
    for (int d = 0; d <= 6; ++d) {
        const TaylorOperator t = annihilator(monomial_vector(d));
        EXPECT_EQ(t, taylor_classical(d));
        for (int k = 0; k <= d; ++k)
            for (int l = k + 1; l <= d; ++l) EXPECT_EQ(t.upper(k, l), -Rational(1) / oracle::fact(l - k)) << k << "," << l;
    }
}

TEST(Taylor, AnnihilatorKillsItsInput) {
    oracle::Gen g(31);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = static_cast<int>(g.integer(0, 6));
        std::vector<Poly> c;
        for (int j = 0; j <= d; ++j) {
            auto cs = g.coeffs(j + 1);
            cs.back() = Rational(1) / oracle::fact(j);
            c.push_back(Poly(cs));
        }
        const PolyVec v = make_polyvec(c);
        const TaylorOperator t = annihilator(v);
        EXPECT_TRUE(oracle::taylor_annihilates(t, padded_column(v, d), d));
    }
}

TEST(Taylor, AnnihilatorChainRoundTrip) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> dd(0, 6);
    for (int rep = 0; rep < 200; ++rep) {
        const TaylorOperator t = random_taylor(rng, dd(rng));
        const Chain c = chain_for(t);
        EXPECT_EQ(annihilator(c[t.d]), t);
        for (int j = 0; j <= t.d; ++j) EXPECT_TRUE(oracle::taylor_annihilates(t, padded_column(c[j], t.d), t.d));
    }
}

TEST(Taylor, ChainCompatibilityFormsAgree) {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 40; ++rep) {
        const TaylorOperator t = random_taylor(rng, 1 + rep % 5);
        std::vector<std::vector<Rational>> constants;
        for (int j = 0; j <= t.d; ++j) {
            std::vector<Rational> cj(static_cast<std::size_t>(j + 1));
            for (auto& v : cj) v = random_rational(rng);
            constants.push_back(cj);
        }
        const Chain c = chain_for(t, constants);
        EXPECT_TRUE(chain_compatible(c));
        EXPECT_TRUE(chain_block_annihilated(c));
        EXPECT_TRUE(chain_blocks_nested(c));
        for (int j = 1; j <= t.d; ++j)
            for (int s = 1; s <= j; ++s) EXPECT_EQ(c[j][s](Rational(0)), constants[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)]);
    }
}

TEST(Taylor, IncompatibleChainDetected) {
    // Lower members from T_Delta, top from the classical operator: the weight
    // w_{2,1} differs (0 against 1/2), which every compatibility form notices.
    const Chain delta = chain_for(taylor_delta(3));
    const Chain mixed{3, {delta[0], delta[1], delta[2], monomial_vector(3)}};
    EXPECT_FALSE(chain_compatible(mixed));
    EXPECT_FALSE(chain_block_annihilated(mixed));
    EXPECT_FALSE(chain_blocks_nested(mixed));
}

TEST(Taylor, ChainWithLastEndsInTheGivenVector) {
    const PolyVec v = monomial_vector(3);
    const Chain c = chain_with_last(v);
    EXPECT_EQ(c[3], v);
    EXPECT_TRUE(chain_block_annihilated(c));
}

TEST(Taylor, DeltaOperatorChainIsPochhammer) {
    // T_Delta: all free weights zero, so each member is [[x]_j, ..., [x]_0].
    const Chain c = chain_for(taylor_delta(4));
    for (int j = 0; j <= 4; ++j)
        for (int s = 0; s <= j; ++s) EXPECT_EQ(c[j][s], pochhammer(static_cast<unsigned>(s), true));
}

TEST(Taylor, InverseAtOneIsAllOnesUpperTriangle) {
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<int> dd(1, 5);
    for (int rep = 0; rep < 50; ++rep) EXPECT_TRUE(p_star_at_one_all_ones(random_taylor(rng, dd(rng))));
    // For T_Delta the factor P* is the constant all-ones upper triangle.
    const auto inv = triangular_inverse(taylor_symbol(taylor_delta(3)));
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) EXPECT_EQ(inv.P(i, j), LaurentPoly(j >= i ? 1 : 0));
}

TEST(Taylor, ApplyOnGridMatchesPointOracle) {
    const TaylorOperator t = taylor_classical(2);
    const Chain c = chain_for(taylor_delta(2));
    const auto col = padded_column(c[2], 2);
    Grid<Rational> g = Grid<Rational>::zeros(0, -3, 3, 3);
    for (long a = -3; a <= 3; ++a)
        for (int k = 0; k < 3; ++k) g.at(a)[static_cast<std::size_t>(k)] = col[static_cast<std::size_t>(k)](Rational(a));
    const Grid<Rational> out = taylor_apply(t, g);
    for (long a = out.lo; a <= out.hi(); ++a)
        for (int k = 0; k < 3; ++k) EXPECT_EQ(out.at(a)[static_cast<std::size_t>(k)], oracle::taylor_row_at(t, col, k, a));
}
