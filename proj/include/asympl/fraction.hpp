#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asympl/errors.hpp"
#include "asympl/exppoly.hpp"
#include "asympl/poly.hpp"
#include "asympl/rational.hpp"

namespace asympl {

/// Canonical quotient of two atom-extended polynomials. The denominator is never
/// syntactically zero, is monic in the term order, and carries exp argument 0 in
/// its leading term; common monomial/ln factors are cancelled and full exact
/// divisions are applied when they succeed. Syntactic zero of the numerator is
/// the sound zero certificate for the whole fraction.
class Fraction {
public:
    Fraction() : num_(), den_(Poly::constant(Rational(1))) {}
    Fraction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw domain_error("division by the zero expression");
        normalize();
    }

    static Fraction constant(const Rational& c) { return Fraction(Poly::constant(c), Poly::constant(Rational(1))); }
    static Fraction variable(int var) { return Fraction(Poly::variable(var), Poly::constant(Rational(1))); }
    static Fraction from_poly(Poly p) { return Fraction(std::move(p), Poly::constant(Rational(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_canonical_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    Fraction operator-() const {
        Fraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Fraction operator+(const Fraction& o) const {
        if (den_ == o.den_) return Fraction(num_ + o.num_, den_);
        return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Fraction operator-(const Fraction& o) const { return *this + (-o); }
    Fraction operator*(const Fraction& o) const { return Fraction(num_ * o.num_, den_ * o.den_); }
    Fraction operator/(const Fraction& o) const {
        if (o.num_.is_zero()) throw domain_error("division by the zero expression");
        return Fraction(num_ * o.den_, den_ * o.num_);
    }

    Fraction scaled(const Rational& c) const { return Fraction(num_.scaled(c), den_); }

    Fraction pow(int e) const {
        if (e >= 0) return Fraction(num_.pow(e), den_.pow(e));
        if (num_.is_zero()) throw domain_error("negative power of the zero expression");
        return Fraction(den_.pow(-e), num_.pow(-e));
    }

    bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// Exact mathematical equality over the fraction field (cross multiplication).
    static bool equal(const Fraction& a, const Fraction& b) {
        return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }

    /// d/dx_var; parameters and absent variables differentiate to zero.
    Fraction derivative(int var) const {
        Fraction dn = poly_derivative(num_, var);
        Fraction dd = poly_derivative(den_, var);
        Fraction den_f = from_poly(den_);
        return (dn * den_f - from_poly(num_) * dd) / Fraction(den_ * den_, Poly::constant(Rational(1)));
    }

    EvalValue eval(const std::vector<Rational>& values) const {
        EvalValue n = num_.eval(values);
        EvalValue d = den_.eval(values);
        if (d.exact && d.rat == 0) throw eval_error("division by zero at the sample point");
        if (!d.exact && d.dbl == 0.0) throw eval_error("division by zero at the sample point");
        if (n.exact && d.exact) return EvalValue::of(Rational(n.rat / d.rat));
        return EvalValue::of(n.as_double() / d.as_double());
    }

    /// ln of an arbitrary fraction value. Fractions split as ln(num) - ln(den); the split
    /// is derivative-exact, while numeric evaluation of either side requires positivity.
    static Fraction ln_of(const Fraction& x) {
        if (x.num_.is_zero()) throw domain_error("ln of the zero expression");
        if (!x.num_.is_pure() || !x.den_.is_pure())
            throw domain_error("ln argument must be free of exp/ln atoms");
        Fraction r = from_poly(Poly::ln_of(ln_ready(x.num_.to_pure())));
        if (!x.den_.is_constant()) r = r - from_poly(Poly::ln_of(ln_ready(x.den_.to_pure())));
        else {
            // fold a constant denominator into the single atom: ln(p/c) with p/c polynomial
            Rational c = x.den_.constant_value();
            if (c != 1) r = from_poly(Poly::ln_of(ln_ready(x.num_.to_pure().scaled(Rational(1) / c))));
        }
        return r;
    }

    static Fraction exp_of(const Fraction& x) {
        if (!x.num_.is_pure() || !x.den_.is_constant())
            throw domain_error("exp argument must be a polynomial");
        PurePoly arg = x.num_.to_pure().scaled(Rational(1) / x.den_.constant_value());
        return from_poly(Poly::exp_of(arg));
    }

    /// Evaluates the fraction with each source variable replaced by images[var].
    Fraction substituted(const std::vector<Fraction>& images) const {
        Fraction n = subst_poly(num_, images);
        Fraction d = subst_poly(den_, images);
        if (d.is_canonical_zero())
            throw domain_error("denominator vanishes identically under substitution");
        return n / d;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str(names);
        std::string ns = num_.str(names);
        if (num_.terms().size() > 1 || needs_parens_as_factor(num_)) ns = "(" + ns + ")";
        std::string ds = den_.str(names);
        if (den_.terms().size() > 1 || needs_parens_as_factor(den_)) ds = "(" + ds + ")";
        return ns + "/" + ds;
    }

private:
    static bool needs_parens_as_factor(const Poly& p) {
        if (p.terms().size() != 1) return false;
        const auto& t = p.terms()[0];
        int pieces = (t.coeff != 1 && t.coeff != -1 ? 1 : 0) + (t.coeff < 0 ? 1 : 0);
        pieces += static_cast<int>(t.key.mono.factors().size());
        pieces += static_cast<int>(t.key.lns.size());
        pieces += t.key.exparg.is_zero() ? 0 : 1;
        return pieces > 1;
    }

    static PurePoly ln_ready(const PurePoly& p) {
        if (p.is_constant() && p.constant_value() <= 0)
            throw domain_error("ln of an identically non-positive argument");
        return p;
    }

    static Fraction poly_derivative(const Poly& p, int var) {
        Fraction acc;
        for (const auto& t : p.terms()) {
            // power rule on the monomial part
            int e = t.key.mono.exponent_of(var);
            if (e > 0) {
                TermKey k = t.key;
                k.mono = Mono(var).divide_into(k.mono);
                acc = acc + from_poly(Poly::term(k, t.coeff * e));
            }
            // chain rule through exp
            PurePoly dexp = t.key.exparg.derivative(var);
            if (!dexp.is_zero())
                acc = acc + from_poly(Poly::term(t.key, t.coeff) * Poly::from_pure(dexp));
            // chain rule through each ln factor: d ln(p) = dp / p
            for (std::size_t a = 0; a < t.key.lns.size(); ++a) {
                PurePoly darg = t.key.lns[a].arg.derivative(var);
                if (darg.is_zero()) continue;
                TermKey k = t.key;
                if (k.lns[a].power == 1)
                    k.lns.erase(k.lns.begin() + static_cast<std::ptrdiff_t>(a));
                else
                    k.lns[a].power -= 1;
                Poly numer = Poly::term(k, t.coeff * t.key.lns[a].power) * Poly::from_pure(darg);
                acc = acc + Fraction(std::move(numer), Poly::from_pure(t.key.lns[a].arg));
            }
        }
        return acc;
    }

    static Fraction subst_pure(const PurePoly& p, const std::vector<Fraction>& images) {
        Fraction acc;
        for (const auto& [m, c] : p.terms()) {
            Fraction t = constant(c);
            for (auto& [v, e] : m.factors()) t = t * images.at(static_cast<std::size_t>(v)).pow(e);
            acc = acc + t;
        }
        return acc;
    }

    static Fraction subst_poly(const Poly& p, const std::vector<Fraction>& images) {
        Fraction acc;
        for (const auto& t : p.terms()) {
            Fraction f = constant(t.coeff);
            for (auto& [v, e] : t.key.mono.factors())
                f = f * images.at(static_cast<std::size_t>(v)).pow(e);
            for (auto& lf : t.key.lns) f = f * ln_of(subst_pure(lf.arg, images)).pow(lf.power);
            if (!t.key.exparg.is_zero()) f = f * exp_of(subst_pure(t.key.exparg, images));
            acc = acc + f;
        }
        return acc;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(Rational(1));
            return;
        }
        cancel_common();
        if (auto q = Poly::try_divide(num_, den_)) {
            num_ = *q;
            den_ = Poly::constant(Rational(1));
        } else if (auto q2 = Poly::try_divide(den_, num_)) {
            num_ = Poly::constant(Rational(1));
            den_ = *q2;
            cancel_common();
        }
        Rational lead = den_.leading().coeff;
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    void cancel_common() {
        // common monomial factor across every term of num and den
        Mono g = num_.leading().key.mono;
        auto fold = [&g](const Poly& p) {
            for (auto& t : p.terms()) g = Mono::gcd(g, t.key.mono);
        };
        fold(num_);
        fold(den_);
        // common ln factors
        std::vector<LnFactor> lg = num_.leading().key.lns;
        auto fold_ln = [&lg](const Poly& p) {
            for (auto& t : p.terms()) {
                std::vector<LnFactor> keep;
                for (auto& f : lg) {
                    for (auto& h : t.key.lns)
                        if (h.arg == f.arg) {
                            keep.push_back({f.arg, std::min(f.power, h.power)});
                            break;
                        }
                }
                lg = keep;
                if (lg.empty()) return;
            }
        };
        fold_ln(num_);
        fold_ln(den_);
        // shift exp arguments so that the denominator's leading term carries exp(0)
        PurePoly shift = den_.leading().key.exparg;
        bool any = !g.trivial() || !lg.empty() || !shift.is_zero();
        if (!any) return;
        auto rewrite = [&](const Poly& p) {
            Poly out;
            for (auto& t : p.terms()) {
                TermKey k;
                k.mono = g.divide_into(t.key.mono);
                for (auto& f : t.key.lns) {
                    int sub = 0;
                    for (auto& c : lg)
                        if (c.arg == f.arg) sub = c.power;
                    if (f.power - sub > 0) k.lns.push_back({f.arg, f.power - sub});
                }
                k.exparg = t.key.exparg - shift;
                out = out + Poly::term(std::move(k), t.coeff);
            }
            return out;
        };
        num_ = rewrite(num_);
        den_ = rewrite(den_);
    }

    Poly num_, den_;
};

} // namespace asympl
