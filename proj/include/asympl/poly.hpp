#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "asympl/errors.hpp"
#include "asympl/rational.hpp"

namespace asympl {

/// Sparse monomial: sorted (variable id, exponent > 0) pairs.
class Mono {
public:
    Mono() = default;
    explicit Mono(int var, int exp = 1) {
        if (exp < 0) throw domain_error("monomial exponent must be nonnegative");
        if (exp > 0) factors_.emplace_back(var, exp);
    }

    const std::vector<std::pair<int, int>>& factors() const { return factors_; }
    bool trivial() const { return factors_.empty(); }

    int degree() const {
        int d = 0;
        for (auto& [v, e] : factors_) d += e;
        return d;
    }

    int exponent_of(int var) const {
        for (auto& [v, e] : factors_)
            if (v == var) return e;
        return 0;
    }

    Mono operator*(const Mono& o) const {
        Mono r;
        std::size_t i = 0, j = 0;
        while (i < factors_.size() || j < o.factors_.size()) {
            if (j == o.factors_.size() || (i < factors_.size() && factors_[i].first < o.factors_[j].first))
                r.factors_.push_back(factors_[i++]);
            else if (i == factors_.size() || o.factors_[j].first < factors_[i].first)
                r.factors_.push_back(o.factors_[j++]);
            else {
                r.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
                ++i, ++j;
            }
        }
        return r;
    }

    bool divides(const Mono& o) const {
        for (auto& [v, e] : factors_)
            if (o.exponent_of(v) < e) return false;
        return true;
    }

    /// Quotient; requires divides(o) == false ? caller must guarantee divisibility of o by this.
    Mono divide_into(const Mono& o) const {
        Mono r;
        std::size_t i = 0;
        for (auto& [v, e] : o.factors_) {
            int sub = 0;
            while (i < factors_.size() && factors_[i].first < v) ++i;
            if (i < factors_.size() && factors_[i].first == v) sub = factors_[i].second;
            if (e - sub > 0) r.factors_.emplace_back(v, e - sub);
        }
        return r;
    }

    static Mono gcd(const Mono& a, const Mono& b) {
        Mono r;
        for (auto& [v, e] : a.factors_) {
            int eb = b.exponent_of(v);
            int m = std::min(e, eb);
            if (m > 0) r.factors_.emplace_back(v, m);
        }
        return r;
    }

    /// Degree-lexicographic order; returns -1, 0, 1.
    static int cmp(const Mono& a, const Mono& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db ? -1 : 1;
        std::size_t i = 0, j = 0;
        while (i < a.factors_.size() && j < b.factors_.size()) {
            auto [va, ea] = a.factors_[i];
            auto [vb, eb] = b.factors_[j];
            if (va != vb) return va < vb ? 1 : -1; // earlier variable with positive exponent wins
            if (ea != eb) return ea > eb ? 1 : -1;
            ++i, ++j;
        }
        if (i < a.factors_.size()) return 1;
        if (j < b.factors_.size()) return -1;
        return 0;
    }

    bool operator==(const Mono& o) const { return factors_ == o.factors_; }

    Rational eval(const std::vector<Rational>& values) const {
        Rational r(1);
        for (auto& [v, e] : factors_) r *= rational_pow(values[static_cast<std::size_t>(v)], e);
        return r;
    }

    std::string str(const std::vector<std::string>& names) const {
        std::string s;
        for (auto& [v, e] : factors_) {
            if (!s.empty()) s += "*";
            s += names[static_cast<std::size_t>(v)];
            if (e != 1) s += "**" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<std::pair<int, int>> factors_;
};

/// Multivariate polynomial over the rationals; terms sorted descending, leading term first.
///
/// This is the "pure" layer used for exp/ln atom arguments; the full scalar ring
/// with transcendental atoms is built on top of it in exppoly.hpp.
class PurePoly {
public:
    using Term = std::pair<Mono, Rational>;

    PurePoly() = default;
    static PurePoly constant(const Rational& c) {
        PurePoly p;
        if (c != 0) p.terms_.emplace_back(Mono(), c);
        return p;
    }
    static PurePoly variable(int var) {
        PurePoly p;
        p.terms_.emplace_back(Mono(var), Rational(1));
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.trivial()); }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw domain_error("polynomial is not constant");
        return terms_[0].second;
    }
    int degree() const { return terms_.empty() ? -1 : terms_[0].first.degree(); }
    const Rational& leading_coefficient() const {
        static const Rational zero(0);
        return terms_.empty() ? zero : terms_[0].second;
    }

    PurePoly operator-() const {
        PurePoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    PurePoly operator+(const PurePoly& o) const {
        PurePoly r;
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int c = i == terms_.size() ? -1 : j == o.terms_.size() ? 1 : Mono::cmp(terms_[i].first, o.terms_[j].first);
            if (c > 0)
                r.terms_.push_back(terms_[i++]);
            else if (c < 0)
                r.terms_.push_back(o.terms_[j++]);
            else {
                Rational s = terms_[i].second + o.terms_[j].second;
                if (s != 0) r.terms_.emplace_back(terms_[i].first, std::move(s));
                ++i, ++j;
            }
        }
        return r;
    }
    PurePoly operator-(const PurePoly& o) const { return *this + (-o); }

    PurePoly operator*(const PurePoly& o) const {
        std::map<Mono, Rational, decltype([](const Mono& a, const Mono& b) { return Mono::cmp(a, b) > 0; })> acc;
        for (auto& [ma, ca] : terms_)
            for (auto& [mb, cb] : o.terms_) acc[ma * mb] += ca * cb;
        PurePoly r;
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.emplace_back(m, c);
        return r;
    }

    PurePoly scaled(const Rational& c) const {
        if (c == 0) return PurePoly();
        PurePoly r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    PurePoly derivative(int var) const {
        PurePoly r;
        for (auto& [m, c] : terms_) {
            int e = m.exponent_of(var);
            if (e == 0) continue;
            Mono dm = Mono(var).divide_into(m);
            r = r + PurePoly::monomial(dm, c * e);
        }
        return r;
    }

    static PurePoly monomial(const Mono& m, const Rational& c) {
        PurePoly p;
        if (c != 0) p.terms_.emplace_back(m, c);
        return p;
    }

    Rational eval(const std::vector<Rational>& values) const {
        Rational r(0);
        for (auto& [m, c] : terms_) r += c * m.eval(values);
        return r;
    }

    /// Translation-invariant total order: sign of the leading coefficient of (a - b).
    static int cmp(const PurePoly& a, const PurePoly& b) {
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = Mono::cmp(a.terms_[i].first, b.terms_[j].first);
            if (c > 0) return a.terms_[i].second > 0 ? 1 : -1;
            if (c < 0) return b.terms_[j].second > 0 ? -1 : 1;
            if (a.terms_[i].second != b.terms_[j].second)
                return a.terms_[i].second > b.terms_[j].second ? 1 : -1;
            ++i, ++j;
        }
        if (i < a.terms_.size()) return a.terms_[i].second > 0 ? 1 : -1;
        if (j < b.terms_.size()) return b.terms_[j].second > 0 ? -1 : 1;
        return 0;
    }

    bool operator==(const PurePoly& o) const { return terms_ == o.terms_; }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& [m, c] = terms_[i];
            Rational a = c < 0 ? Rational(-c) : c;
            if (i == 0)
                s += c < 0 ? "-" : "";
            else
                s += c < 0 ? " - " : " + ";
            std::string ms = m.str(names);
            if (ms.empty())
                s += rational_str(a);
            else if (a == 1)
                s += ms;
            else
                s += rational_str(a) + "*" + ms;
        }
        return s;
    }

private:
    std::vector<Term> terms_;
};

} // namespace asympl
