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

#include "hforge/construct.hpp"
#include "hforge/factor.hpp"
#include "hforge/identities.hpp"
#include "hforge/io.hpp"
#include "oracles.hpp"

using namespace hforge;

namespace {
Mask load_symbol(const std::string& name) { return mask_from_json(read_json_file(std::string(HFORGE_DATA_DIR) + "/" + name)); }

/// The reference exdelta difference symbol, transcribed independently of the data files.
LaurentMatrix printed_btilde() {
    LaurentMatrix b(3);
    b(0, 0) = parse_laurent("-(z-1)/(2*z)");
    b(1, 0) = parse_laurent("(z-1)^2/z^2");
    b(1, 1) = parse_laurent("(z-1)^2/(4*z^2)");
    b(2, 0) = parse_laurent("(z-1)^2*(1+z)^3/(2*z^5)");
    b(2, 1) = parse_laurent("-(z-1)*(1+z)^2/(2*z^3)");
    b(2, 2) = parse_laurent("(1+z)/(2*z)");
    return b;
}
} // namespace

TEST(DeltaExample, FactorsToThePrintedDifferenceScheme) {
    const Mask a = load_symbol("exdelta_A.json");
    Chain v;
    ASSERT_TRUE(find_spectral_chain(a, taylor_delta(2), v));
    const Factorization f = taylor_factorize(a, v);
    EXPECT_EQ(f.T, taylor_delta(2));
    EXPECT_EQ(mask_to_symbol(f.B), printed_btilde());
    EXPECT_EQ(f.scale, Rational(1, 4));
    EXPECT_EQ(mask_to_symbol(unfactor(taylor_delta(2), f.B)), mask_to_symbol(a));
}

TEST(DeltaExample, ClassicalSpectralConditionFails) {
    const Mask a = load_symbol("exdelta_A.json");
    Chain v;
    EXPECT_FALSE(find_spectral_chain(a, taylor_classical(2), v));
    // Also with the classical chain itself.
    EXPECT_FALSE(verify_spectral_chain(a, chain_for(taylor_classical(2))).ok);
}

TEST(Factor, SynthesizedSchemesFactorBackToTheirDifferenceScheme) {
    std::mt19937_64 rng(51);
    for (int rep = 0; rep < 12; ++rep) {
        const int d = 1 + rep % 3;
        const TaylorOperator t = random_taylor(rng, d);
        SynthesisOptions opt;
        opt.method = LastRowMethod::forward_system;
        const SynthesizedScheme s = synthesize(t, parse_laurent("(z+1)/2"), opt);
        Chain v;
        ASSERT_TRUE(find_spectral_chain(s.A, t, v)) << "d = " << d;
        EXPECT_EQ(annihilator(v[d]), t);
        const Factorization f = taylor_factorize(s.A, v);
        EXPECT_EQ(f.B, s.Btilde);
        // Identity checked through evaluation at a rational point, independent of symbol products.
        const Rational z0(3, 2);
        const LaurentMatrix lhs = taylor_symbol(t) * mask_to_symbol(s.A);
        const LaurentMatrix rhs = mask_to_symbol(f.B) * taylor_symbol(t).substitute_power(2);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) EXPECT_EQ(oracle::eval_terms(lhs(i, j), z0), Rational::pow2(-d) * oracle::eval_terms(rhs(i, j), z0));
    }
}

TEST(Factor, NotAnnihilatedAndNotDivisible) {
    const Mask a = load_symbol("exdelta_A.json");
    try {
        factor_through(a, chain_for(taylor_delta(2)));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_annihilated);
    }
    LaurentMatrix c(1);
    c(0, 0) = LaurentPoly::z();
    try {
        factor_symbol(c, taylor_delta(0));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_divisible);
    }
}

TEST(Factor, NonSpectralChainRejected) {
    const Mask a = load_symbol("exdelta_A.json");
    EXPECT_THROW(taylor_factorize(a, chain_for(taylor_classical(2))), error);
}

TEST(Factor, CompleteIncompleteConversionRoundTrips) {
    const Mask bt = symbol_to_mask(printed_btilde());
    const Mask b = incomplete_from_complete(bt);
    EXPECT_EQ(complete_from_incomplete(b), bt);
    EXPECT_TRUE(preserves_last_unit(b));
    // The incomplete pair satisfies its own identity.
    const Mask a = load_symbol("exdelta_A.json");
    EXPECT_TRUE(factorization_identity_holds(a, taylor_delta(2, false), b, Rational(1, 4)));
}

TEST(Factor, SpectralChainRecoveredFromFactorization) {
    const Mask a = load_symbol("exdelta_A.json");
    const Mask b = incomplete_from_complete(symbol_to_mask(printed_btilde()));
    const Chain v = spectral_chain_from_factorization(a, b, taylor_delta(2, false));
    EXPECT_TRUE(verify_spectral_chain(a, v).ok);
    EXPECT_EQ(annihilator(v[2]), taylor_delta(2));
}

TEST(Factor, SpectralChainRejectsBrokenIdentity) {
    const Mask a = load_symbol("exdelta_A.json");
    Mask b = incomplete_from_complete(symbol_to_mask(printed_btilde()));
    b.coeffs.front()[0][0] += Rational(1);
    EXPECT_THROW(spectral_chain_from_factorization(a, b, taylor_delta(2, false)), error);
}
