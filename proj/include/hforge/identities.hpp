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

#ifndef HFORGE_IDENTITIES_HPP
#define HFORGE_IDENTITIES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "laurent_matrix.hpp"
#include "poly.hpp"
#include "taylor.hpp"

namespace hforge {

// ---- seeded generators ------------------------------------------------------

/// p/q with |p| <= num_max, 1 <= q <= den_max.
inline Rational random_rational(std::mt19937_64& rng, long num_max = 9, long den_max = 6) {
    std::uniform_int_distribution<long> num(-num_max, num_max), den(1, den_max);
    const long p = num(rng);
    return Rational(p) / Rational(den(rng));
}

inline Poly random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = random_rational(rng);
    return Poly(std::move(c));
}

/// Complete operator of order d with random free weights w_{l,i}, i < l.
inline TaylorOperator random_taylor(std::mt19937_64& rng, int d) {
    TaylorOperator t = taylor_delta(d);
    for (int l = 1; l <= d; ++l)
        for (int i = 1; i < l; ++i) t.weight(l, i) = random_rational(rng);
    return t;
}

// ---- identities -------------------------------------------------------------

/// Delta p = sum_{k=1}^{n-1} Delta^k p(.-k) + Delta^n p(.-n+1).
inline bool diff_identity_holds(const Poly& p, unsigned n) {
    if (n == 0) fail(errc::invalid_argument, "difference identity needs n >= 1");
    Poly rhs;
    for (unsigned k = 1; k < n; ++k) rhs += p.shift(-static_cast<long>(k)).forward_difference(k);
    rhs += p.shift(1 - static_cast<long>(n)).forward_difference(n);
    return rhs == p.forward_difference(1);
}

/// C(n, j+1) = sum_{k=j}^{n-1} C(k, j).
inline bool binomial_sum_identity_holds(long n, long j) {
    Rational s(0);
    for (long k = j; k < n; ++k) s += binomial(k, j);
    return s == binomial(n, j + 1);
}

/// Delta [.]_j = [.]_{j-1}, and Delta (.)_j = j (.)_{j-1} unnormalized.
inline bool pochhammer_difference_holds(unsigned j) {
    if (j == 0) return pochhammer(0, true) == Poly(1);
    return pochhammer(j, true).forward_difference(1) == pochhammer(j - 1, true) &&
           pochhammer(j, false).forward_difference(1) == Poly(static_cast<long>(j)) * pochhammer(j - 1, false);
}

inline bool pochhammer_roundtrip_holds(const Poly& p) { return from_pochhammer(to_pochhammer(p)) == p; }

/// The triangular-inverse factor P*(z) evaluates at z = 1 to the all-ones upper triangle.
inline bool p_star_at_one_all_ones(const TaylorOperator& t) {
    const auto p1 = triangular_inverse(taylor_symbol(t.with_complete(true))).P.eval_at_one();
    for (int i = 0; i <= t.d; ++i)
        for (int j = 0; j <= t.d; ++j)
            if (p1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != Rational(j >= i ? 1 : 0)) return false;
    return true;
}

struct IdentityCheck {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

/** Seeded suites: difference identity (100 random polynomials of degree <= 8,
 *  n = 1..10), binomial sums for 0 <= j < n <= 20, Pochhammer identities,
 *  and P*(1) for 50 random operators with d <= 5. */
inline std::vector<IdentityCheck> run_identity_suites(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<IdentityCheck> out;
    auto record = [](IdentityCheck& c, bool ok, const std::string& what) {
        ++c.cases;
        if (!ok && c.failures++ == 0) c.first_failure = what;
    };

    IdentityCheck diff{"difference_identity", 0, 0, ""};
    for (int i = 0; i < 100; ++i) {
        const Poly p = random_poly(rng, 8);
        for (unsigned n = 1; n <= 10; ++n) record(diff, diff_identity_holds(p, n), "p = " + p.str() + ", n = " + std::to_string(n));
    }
    out.push_back(diff);

    IdentityCheck binom{"binomial_sum_identity", 0, 0, ""};
    for (long n = 1; n <= 20; ++n)
        for (long j = 0; j < n; ++j) record(binom, binomial_sum_identity_holds(n, j), "n = " + std::to_string(n) + ", j = " + std::to_string(j));
    out.push_back(binom);

    IdentityCheck poch{"pochhammer_identities", 0, 0, ""};
    for (unsigned j = 0; j <= 12; ++j) record(poch, pochhammer_difference_holds(j), "j = " + std::to_string(j));
    for (int i = 0; i < 50; ++i) {
        const Poly p = random_poly(rng, 8);
        record(poch, pochhammer_roundtrip_holds(p), "roundtrip of " + p.str());
    }
    out.push_back(poch);

    IdentityCheck pstar{"p_star_at_one", 0, 0, ""};
    std::uniform_int_distribution<int> dd(1, 5);
    for (int i = 0; i < 50; ++i) {
        const TaylorOperator t = random_taylor(rng, dd(rng));
        record(pstar, p_star_at_one_all_ones(t), "operator of order " + std::to_string(t.d));
    }
    out.push_back(pstar);
    return out;
}

} // namespace hforge

#endif // HFORGE_IDENTITIES_HPP
