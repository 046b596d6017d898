#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asympl/errors.hpp"
#include "asympl/poly.hpp"
#include "asympl/rational.hpp"

namespace asympl {

/// One ln(p)^k factor; p is a nonzero polynomial in the chart variables, k >= 1.
struct LnFactor {
    PurePoly arg;
    int power = 1;

    bool operator==(const LnFactor& o) const { return power == o.power && arg == o.arg; }
};

/// Multiplicative key of a term: monomial * product of ln atoms * exp(exparg).
///
/// exp factors are fused additively through exparg, which makes the rewrite
/// exp(p)*exp(q) -> exp(p+q) (and exp(0) -> 1) automatic under multiplication.
struct TermKey {
    Mono mono;
    std::vector<LnFactor> lns; // sorted descending by arg
    PurePoly exparg;

    bool transcendental() const { return !lns.empty() || !exparg.is_zero(); }

    int ln_degree() const {
        int d = 0;
        for (auto& f : lns) d += f.power;
        return d;
    }

    TermKey operator*(const TermKey& o) const {
        TermKey r;
        r.mono = mono * o.mono;
        std::size_t i = 0, j = 0;
        while (i < lns.size() || j < o.lns.size()) {
            if (j == o.lns.size())
                r.lns.push_back(lns[i++]);
            else if (i == lns.size())
                r.lns.push_back(o.lns[j++]);
            else {
                int c = PurePoly::cmp(lns[i].arg, o.lns[j].arg);
                if (c > 0)
                    r.lns.push_back(lns[i++]);
                else if (c < 0)
                    r.lns.push_back(o.lns[j++]);
                else {
                    r.lns.push_back({lns[i].arg, lns[i].power + o.lns[j].power});
                    ++i, ++j;
                }
            }
        }
        r.exparg = exparg + o.exparg;
        return r;
    }

    /// Componentwise divisibility on mono and ln parts (exp args always divide).
    bool divides(const TermKey& o) const {
        if (!mono.divides(o.mono)) return false;
        for (auto& f : lns) {
            bool found = false;
            for (auto& g : o.lns)
                if (g.arg == f.arg && g.power >= f.power) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }

    TermKey divide_into(const TermKey& o) const {
        TermKey r;
        r.mono = mono.divide_into(o.mono);
        for (auto& g : o.lns) {
            int sub = 0;
            for (auto& f : lns)
                if (f.arg == g.arg) sub = f.power;
            if (g.power - sub > 0) r.lns.push_back({g.arg, g.power - sub});
        }
        r.exparg = o.exparg - exparg;
        return r;
    }

    /// Multiplication-compatible total order (deg-lex on mono, then on ln atoms,
    /// then the translation-invariant polynomial order on exp arguments).
    static int cmp(const TermKey& a, const TermKey& b) {
        if (int c = Mono::cmp(a.mono, b.mono)) return c;
        int da = a.ln_degree(), db = b.ln_degree();
        if (da != db) return da < db ? -1 : 1;
        std::size_t i = 0, j = 0;
        while (i < a.lns.size() && j < b.lns.size()) {
            if (int c = PurePoly::cmp(a.lns[i].arg, b.lns[j].arg)) return c;
            if (a.lns[i].power != b.lns[j].power) return a.lns[i].power > b.lns[j].power ? 1 : -1;
            ++i, ++j;
        }
        if (i < a.lns.size()) return 1;
        if (j < b.lns.size()) return -1;
        return PurePoly::cmp(a.exparg, b.exparg);
    }

    bool operator==(const TermKey& o) const {
        return mono == o.mono && lns == o.lns && exparg == o.exparg;
    }
};

/// Result of a point evaluation: exact rational whenever no exp/ln value entered.
struct EvalValue {
    bool exact = true;
    Rational rat;
    double dbl = 0.0;

    static EvalValue of(Rational r) { return {true, std::move(r), 0.0}; }
    static EvalValue of(double d) { return {false, Rational(0), d}; }
    double as_double() const { return exact ? to_double(rat) : dbl; }
};

/// Polynomial over the chart variables extended by exp/ln atoms of polynomial arguments.
/// Terms are kept sorted descending by key with nonzero coefficients: syntactic zero
/// is a sound certificate that the function vanishes identically.
class Poly {
public:
    struct Term {
        TermKey key;
        Rational coeff;
        bool operator==(const Term& o) const { return coeff == o.coeff && key == o.key; }
    };

    Poly() = default;

    static Poly constant(const Rational& c) {
        Poly p;
        if (c != 0) p.terms_.push_back({TermKey{}, c});
        return p;
    }
    static Poly variable(int var) {
        Poly p;
        p.terms_.push_back({TermKey{Mono(var), {}, {}}, Rational(1)});
        return p;
    }
    static Poly from_pure(const PurePoly& q) {
        Poly p;
        for (auto& [m, c] : q.terms()) p.terms_.push_back({TermKey{m, {}, {}}, c});
        return p;
    }
    static Poly term(TermKey k, Rational c) {
        Poly p;
        if (c != 0) p.terms_.push_back({std::move(k), std::move(c)});
        return p;
    }

    /// exp(arg); exp(0) -> 1 falls out of the zero polynomial argument.
    static Poly exp_of(const PurePoly& arg) { return term(TermKey{Mono(), {}, arg}, Rational(1)); }

    /// ln(arg) with the fixed rewrite ln(1) -> 0.
    static Poly ln_of(const PurePoly& arg) {
        if (arg.is_zero()) throw domain_error("ln of the zero polynomial");
        if (arg.is_constant() && arg.constant_value() == 1) return Poly();
        return term(TermKey{Mono(), {LnFactor{arg, 1}}, {}}, Rational(1));
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_[0].key.mono.trivial() && !terms_[0].key.transcendental());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw domain_error("value is not constant");
        return terms_[0].coeff;
    }
    bool is_pure() const {
        for (auto& t : terms_)
            if (t.key.transcendental()) return false;
        return true;
    }
    PurePoly to_pure() const {
        if (!is_pure()) throw domain_error("value contains exp/ln atoms where a polynomial is required");
        PurePoly p;
        for (auto& t : terms_) p = p + PurePoly::monomial(t.key.mono, t.coeff);
        return p;
    }

    const Term& leading() const {
        if (terms_.empty()) throw domain_error("leading term of the zero polynomial");
        return terms_[0];
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    Poly operator+(const Poly& o) const {
        Poly r;
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int c = i == terms_.size()   ? -1
                    : j == o.terms_.size() ? 1
                                           : TermKey::cmp(terms_[i].key, o.terms_[j].key);
            if (c > 0)
                r.terms_.push_back(terms_[i++]);
            else if (c < 0)
                r.terms_.push_back(o.terms_[j++]);
            else {
                Rational s = terms_[i].coeff + o.terms_[j].coeff;
                if (s != 0) r.terms_.push_back({terms_[i].key, std::move(s)});
                ++i, ++j;
            }
        }
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        std::map<TermKey, Rational, decltype([](const TermKey& a, const TermKey& b) {
                     return TermKey::cmp(a, b) > 0;
                 })>
            acc;
        for (auto& a : terms_)
            for (auto& b : o.terms_) acc[a.key * b.key] += a.coeff * b.coeff;
        Poly r;
        for (auto& [k, c] : acc)
            if (c != 0) r.terms_.push_back({k, c});
        return r;
    }

    Poly scaled(const Rational& c) const {
        if (c == 0) return Poly();
        Poly r = *this;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    Poly pow(int e) const {
        if (e < 0) throw domain_error("negative power at polynomial level");
        Poly acc = constant(Rational(1));
        Poly base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /// Exact division f = q * d; returns q or nullopt. Step-capped: the exp-argument
    /// component of the term order is not well-founded, so a runaway reduction is
    /// treated as "does not divide" (division is only used as a simplifier).
    static std::optional<Poly> try_divide(const Poly& f, const Poly& d) {
        if (d.is_zero()) return std::nullopt;
        Poly r = f, q;
        std::size_t cap = 4 * (f.terms_.size() + 1) * (d.terms_.size() + 1) + 64;
        std::size_t steps = 0;
        while (!r.is_zero()) {
            if (++steps > cap) return std::nullopt;
            const Term& lr = r.leading();
            const Term& ld = d.leading();
            if (!ld.key.divides(lr.key)) return std::nullopt;
            Term t{ld.key.divide_into(lr.key), lr.coeff / ld.coeff};
            Poly tp = term(t.key, t.coeff);
            q = q + tp;
            r = r - tp * d;
        }
        return q;
    }

    EvalValue eval(const std::vector<Rational>& values) const {
        bool all_exact = true;
        Rational exact_sum(0);
        double dbl_sum = 0.0;
        for (auto& t : terms_) {
            Rational factor = t.coeff * t.key.mono.eval(values);
            bool term_exact = true;
            double term_dbl = 1.0;
            bool term_is_zero = false;
            for (auto& f : t.key.lns) {
                Rational a = f.arg.eval(values);
                if (a <= 0) throw eval_error("ln of a non-positive value at the sample point");
                if (a == 1) {
                    term_is_zero = true;
                    break;
                }
                term_exact = false;
                term_dbl *= std::pow(std::log(to_double(a)), f.power);
            }
            if (term_is_zero) continue;
            if (!t.key.exparg.is_zero()) {
                Rational a = t.key.exparg.eval(values);
                if (a != 0) {
                    term_exact = false;
                    term_dbl *= std::exp(to_double(a));
                }
            }
            if (term_exact) {
                exact_sum += factor;
            } else {
                all_exact = false;
                dbl_sum += to_double(factor) * term_dbl;
            }
        }
        if (all_exact) return EvalValue::of(exact_sum);
        return EvalValue::of(dbl_sum + to_double(exact_sum));
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            Rational a = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
            if (i == 0)
                s += t.coeff < 0 ? "-" : "";
            else
                s += t.coeff < 0 ? " - " : " + ";
            std::vector<std::string> factors;
            std::string ms = t.key.mono.str(names);
            if (!ms.empty()) factors.push_back(ms);
            for (auto& f : t.key.lns) {
                std::string ls = "ln(" + f.arg.str(names) + ")";
                if (f.power != 1) ls += "**" + std::to_string(f.power);
                factors.push_back(ls);
            }
            if (!t.key.exparg.is_zero()) factors.push_back("exp(" + t.key.exparg.str(names) + ")");
            std::string body;
            for (std::size_t k = 0; k < factors.size(); ++k) {
                if (k) body += "*";
                body += factors[k];
            }
            if (body.empty())
                s += rational_str(a);
            else if (a == 1)
                s += body;
            else
                s += rational_str(a) + "*" + body;
        }
        return s;
    }

private:
    std::vector<Term> terms_;
};

} // namespace asympl
