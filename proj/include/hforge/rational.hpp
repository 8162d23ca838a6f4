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

#ifndef HFORGE_RATIONAL_HPP
#define HFORGE_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace hforge {

/** Exact fraction over arbitrary-precision integers.
 *
 *  Always canonical: lowest terms, positive denominator. Thin value wrapper
 *  around GMP's mpq so that no expression templates leak into user code. */
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT: implicit from integers is intended
    Rational(int value) : q_(static_cast<long>(value)) {}
    Rational(long num, long den) {
        if (den == 0) fail(errc::invalid_argument, "zero denominator");
        q_ = mpq_class(mpz_class(num), mpz_class(den));
        q_.canonicalize();
    }

    /// Parses "p/q" or "p" (optional sign, decimal digits).
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto trim = [](std::string& t) {
            const auto b = t.find_first_not_of(" \t");
            const auto e = t.find_last_not_of(" \t");
            t = b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
        };
        trim(s);
        if (s.empty()) fail(errc::parse_error, "empty rational");
        const auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
        trim(num);
        trim(den);
        auto valid = [](const std::string& t, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (!valid(num, true) || !valid(den, false))
            fail(errc::parse_error, "malformed rational '" + std::string(text) + "'");
        if (num[0] == '+') num.erase(0, 1);
        Rational r;
        r.q_ = mpq_class(mpz_class(num), mpz_class(den));
        if (r.q_.get_den() == 0) fail(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
        r.q_.canonicalize();
        return r;
    }

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    std::string numerator() const { return q_.get_num().get_str(); }
    std::string denominator() const { return q_.get_den().get_str(); }

    double to_double() const { return q_.get_d(); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational abs() const {
        Rational r;
        r.q_ = ::abs(q_);
        return r;
    }

    /// 2^k for any integer k.
    static Rational pow2(long k) {
        Rational r;
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
        r.q_ = k < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
        r.q_.canonicalize();
        return r;
    }

    Rational pow(unsigned n) const {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), n);
        mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), n);
        Rational r;
        r.q_ = mpq_class(num, den);
        r.q_.canonicalize();
        return r;
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) fail(errc::invalid_argument, "division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.q_ = -a.q_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

/// n! as an exact rational.
inline Rational factorial(unsigned n) {
    Rational r(1);
    for (unsigned k = 2; k <= n; ++k) r *= Rational(static_cast<long>(k));
    return r;
}

/// Binomial coefficient; zero outside 0 <= k <= n.
inline Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    Rational r(1);
    for (long i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
    return r;
}

/// Falling factorial (x)_r = x (x-1) ... (x-r+1) for integer x (negative allowed).
inline Rational falling_factorial(long x, unsigned r) {
    Rational out(1);
    for (unsigned i = 0; i < r; ++i) out *= Rational(x - static_cast<long>(i));
    return out;
}

/// Conversion used by templated kernels that run in exact or floating mode.
template <class T>
T scalar_cast(const Rational& r);

template <>
inline Rational scalar_cast<Rational>(const Rational& r) { return r; }

template <>
inline double scalar_cast<double>(const Rational& r) { return r.to_double(); }

inline double abs_value(double v) { return v < 0 ? -v : v; }
inline Rational abs_value(const Rational& v) { return v.abs(); }

} // namespace hforge

#endif // HFORGE_RATIONAL_HPP
