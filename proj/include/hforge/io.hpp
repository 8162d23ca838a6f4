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

#ifndef HFORGE_IO_HPP
#define HFORGE_IO_HPP

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "construct.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "laurent_matrix.hpp"
#include "poly.hpp"
#include "subdivision.hpp"
#include "taylor.hpp"

namespace hforge {

using json = nlohmann::ordered_json;

namespace detail {
inline void expect(bool cond, const std::string& what) {
    if (!cond) fail(errc::parse_error, what);
}
} // namespace detail

// ---- Rational -------------------------------------------------------------

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    fail(errc::parse_error, "expected a rational string such as \"-3/8\", got " + j.dump());
}

// ---- LaurentPoly ------------------------------------------------------------

inline json to_json(const LaurentPoly& p) {
    json o = json::object();
    for (const auto& [e, c] : p.terms()) o[std::to_string(e)] = c.str();
    return o;
}

/** Parser for the inline grammar
 *    expr  := term (('+' | '-') term)*
 *    term  := unary (('*' | '/') unary)*
 *    unary := ('+' | '-') unary | power
 *    power := atom ('^' ['-'] digits)?
 *    atom  := digits | 'z' | '(' expr ')'
 *  Division is allowed by constants and single monomials; negative powers
 *  only of monomials. Errors report the 1-based character position. */
class LaurentParser {
public:
    explicit LaurentParser(std::string text) : s_(std::move(text)) {}

    LaurentPoly parse() {
        LaurentPoly p = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(errc::parse_error, "at position " + std::to_string(pos_ + 1) + " in \"" + s_ + "\": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    LaurentPoly expr() {
        LaurentPoly p = term();
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }
    LaurentPoly term() {
        LaurentPoly p = unary();
        for (;;) {
            if (accept('*')) {
                p *= unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                const LaurentPoly q = unary();
                if (q.terms().size() != 1) {
                    pos_ = at;
                    error("division only by a nonzero constant or a single monomial");
                }
                const auto& [e, c] = *q.terms().begin();
                p = p.shift(-e) * LaurentPoly(Rational(1) / c);
            } else {
                return p;
            }
        }
    }
    LaurentPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    LaurentPoly power() {
        LaurentPoly base = atom();
        if (!accept('^')) return base;
        skip();
        bool neg = false;
        bool paren = accept('(');
        if (accept('-')) neg = true;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected an integer exponent");
        if (pos_ - start > 6) error("exponent too large");
        const unsigned k = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
        if (paren && !accept(')')) error("expected ')'");
        if (!neg) return base.pow(k);
        if (base.terms().size() != 1) error("negative powers are allowed for monomials only");
        const auto& [e, c] = *base.terms().begin();
        return LaurentPoly::monomial(-e * static_cast<long>(k), Rational(1) / c.pow(k));
    }
    LaurentPoly atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPoly p = expr();
            if (!accept(')')) error("expected ')'");
            return p;
        }
        if (c == 'z') {
            ++pos_;
            return LaurentPoly::z();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return LaurentPoly(Rational::parse(s_.substr(start, pos_ - start)));
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

inline LaurentPoly parse_laurent(const std::string& text) { return LaurentParser(text).parse(); }

inline LaurentPoly laurent_from_json(const json& j) {
    if (j.is_string()) return parse_laurent(j.get<std::string>());
    detail::expect(j.is_object(), "expected a Laurent polynomial object {exponent: rational}");
    LaurentPoly p;
    for (const auto& [k, v] : j.items()) {
        long e = 0;
        std::size_t used = 0;
        try {
            e = std::stol(k, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        detail::expect(used == k.size() && !k.empty(), "invalid exponent key \"" + k + "\"");
        p.add_to(e, rational_from_json(v));
    }
    return p;
}

// ---- LaurentMatrix ----------------------------------------------------------

inline json to_json(const LaurentMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline LaurentMatrix laurent_matrix_from_json(const json& j) {
    detail::expect(j.is_array() && !j.empty(), "expected a nonempty array of rows");
    const int n = static_cast<int>(j.size());
    LaurentMatrix m(n);
    for (int i = 0; i < n; ++i) {
        detail::expect(j[static_cast<std::size_t>(i)].is_array() && static_cast<int>(j[static_cast<std::size_t>(i)].size()) == n, "matrix must be square");
        for (int k = 0; k < n; ++k) m(i, k) = laurent_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    }
    return m;
}

// ---- Poly, PolyVec ------------------------------------------------------------

inline json to_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.str());
    return a;
}

inline Poly poly_from_json(const json& j) {
    detail::expect(j.is_array(), "expected a polynomial as an array of rational strings");
    std::vector<Rational> c;
    for (const auto& v : j) c.push_back(rational_from_json(v));
    return Poly(std::move(c));
}

inline json to_json(const PolyVec& v) {
    json comps = json::array();
    for (const auto& p : v.components) comps.push_back(to_json(p));
    return json{{"d", v.d}, {"components", comps}};
}

inline PolyVec polyvec_from_json(const json& j) {
    detail::expect(j.is_object() && j.contains("d") && j.contains("components"), "expected {\"d\", \"components\"}");
    PolyVec v;
    v.d = j.at("d").get<int>();
    for (const auto& p : j.at("components")) v.components.push_back(poly_from_json(p));
    return polyvec_validate(v);
}

// ---- TaylorOperator, Chain ----------------------------------------------------

inline json to_json(const TaylorOperator& t) {
    json w = json::array();
    for (const auto& wl : t.w) {
        json a = json::array();
        for (const auto& c : wl) a.push_back(c.str());
        w.push_back(a);
    }
    return json{{"d", t.d}, {"complete", t.complete}, {"w", w}};
}

inline TaylorOperator taylor_from_json(const json& j) {
    detail::expect(j.is_object() && j.contains("d") && j.contains("w"), "expected {\"d\", \"complete\", \"w\"}");
    TaylorOperator t;
    t.d = j.at("d").get<int>();
    t.complete = j.value("complete", true);
    for (const auto& wl : j.at("w")) {
        std::vector<Rational> v;
        for (const auto& c : wl) v.push_back(rational_from_json(c));
        t.w.push_back(std::move(v));
    }
    return taylor_validate(t);
}

inline json to_json(const Chain& c) {
    json vecs = json::array();
    for (const auto& v : c.vecs) vecs.push_back(to_json(v));
    return json{{"d", c.d}, {"vecs", vecs}};
}

inline Chain chain_from_json(const json& j) {
    detail::expect(j.is_object() && j.contains("d") && j.contains("vecs"), "expected {\"d\", \"vecs\"}");
    Chain c;
    c.d = j.at("d").get<int>();
    for (const auto& v : j.at("vecs")) c.vecs.push_back(polyvec_from_json(v));
    detail::expect(static_cast<int>(c.vecs.size()) == c.d + 1, "chain of order d needs d+1 members");
    for (int k = 0; k <= c.d; ++k) detail::expect(c[k].d == k, "chain member " + std::to_string(k) + " must lie in V_" + std::to_string(k));
    return c;
}

// ---- Mask -------------------------------------------------------------------

inline json to_json(const Mask& m) {
    json coeffs = json::array();
    for (const auto& c : m.coeffs) {
        json rows = json::array();
        for (const auto& row : c) {
            json r = json::array();
            for (const auto& v : row) r.push_back(v.str());
            rows.push_back(r);
        }
        coeffs.push_back(rows);
    }
    return json{{"d", m.d}, {"support_min", m.support_min}, {"coeffs", coeffs}};
}

/// Accepts the mask format or {"symbol": LaurentMatrix}.
inline Mask mask_from_json(const json& j) {
    detail::expect(j.is_object(), "expected a mask object");
    if (j.contains("symbol")) return symbol_to_mask(laurent_matrix_from_json(j.at("symbol")));
    detail::expect(j.contains("d") && j.contains("support_min") && j.contains("coeffs"), "expected {\"d\", \"support_min\", \"coeffs\"}");
    Mask m;
    m.d = j.at("d").get<int>();
    m.support_min = j.at("support_min").get<long>();
    for (const auto& c : j.at("coeffs")) {
        RMatrix mm;
        for (const auto& row : c) {
            std::vector<Rational> r;
            for (const auto& v : row) r.push_back(rational_from_json(v));
            mm.push_back(std::move(r));
        }
        m.coeffs.push_back(std::move(mm));
    }
    return mask_validate(m);
}

// ---- bundles ----------------------------------------------------------------

inline json to_json(const Factorization& f) {
    return json{{"A", to_json(f.A)}, {"T", to_json(f.T)}, {"B", to_json(f.B)}, {"scale", f.scale.str()}};
}

/// "(j,k)" -> (j, k).
inline std::pair<int, int> parse_fill_key(const std::string& key) {
    int j = 0, k = 0;
    char tail = 0;
    if (std::sscanf(key.c_str(), " (%d ,%d ) %c", &j, &k, &tail) != 2) fail(errc::parse_error, "fill key \"" + key + "\" is not of the form \"(j,k)\"");
    return {j, k};
}

inline FillMap fill_from_json(const json& j) {
    detail::expect(j.is_object(), "expected \"g\" as an object {\"(j,k)\": polynomial}");
    FillMap g;
    for (const auto& [k, v] : j.items()) g[parse_fill_key(k)] = laurent_from_json(v);
    return g;
}

inline json fill_to_json(const FillMap& g) {
    json o = json::object();
    for (const auto& [jk, p] : g) o["(" + std::to_string(jk.first) + "," + std::to_string(jk.second) + ")"] = to_json(p);
    return o;
}

// ---- files ------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(errc::parse_error, "'" + path + "': " + e.what());
    }
}

/// 17 significant digits, the round-trip precision of double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with header x,f0,...,fd and x = 2^{-n} alpha.
inline std::string grid_to_csv(const Grid<double>& g) {
    std::ostringstream os;
    os << "x";
    for (int i = 0; i < g.dim(); ++i) os << ",f" << i;
    os << "\n";
    for (long a = g.lo; a <= g.hi(); ++a) {
        os << format_double(std::ldexp(static_cast<double>(a), -g.level));
        for (double v : g.at(a)) os << "," << format_double(v);
        os << "\n";
    }
    return os.str();
}

} // namespace hforge

#endif // HFORGE_IO_HPP
