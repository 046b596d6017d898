#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asympl/chart.hpp"
#include "asympl/errors.hpp"
#include "asympl/fraction.hpp"

namespace asympl {

namespace detail {

struct Token {
    enum class Kind { Int, Ident, Plus, Minus, Star, Slash, DoubleStar, Caret, LParen, RParen, Comma, At, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t pos = 0;
};

/// Shared lexer for the scalar and form grammars.
class Lexer {
public:
    explicit Lexer(std::string src) : src_(std::move(src)) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    bool accept(Token::Kind k) {
        if (tok_.kind != k) return false;
        advance();
        return true;
    }
    Token expect(Token::Kind k, const std::string& what) {
        if (tok_.kind != k) throw parse_error("expected " + what, tok_.pos);
        return take();
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", i_};
            return;
        }
        char c = src_[i_];
        auto single = [&](Token::Kind k) {
            tok_ = {k, std::string(1, c), i_};
            ++i_;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t s = i_;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
            tok_ = {Token::Kind::Int, src_.substr(s, i_ - s), s};
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t s = i_;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                ++i_;
            tok_ = {Token::Kind::Ident, src_.substr(s, i_ - s), s};
        } else if (c == '*') {
            if (i_ + 1 < src_.size() && src_[i_ + 1] == '*') {
                tok_ = {Token::Kind::DoubleStar, "**", i_};
                i_ += 2;
            } else
                single(Token::Kind::Star);
        } else
            switch (c) {
                case '+': single(Token::Kind::Plus); break;
                case '-': single(Token::Kind::Minus); break;
                case '/': single(Token::Kind::Slash); break;
                case '^': single(Token::Kind::Caret); break;
                case '(': single(Token::Kind::LParen); break;
                case ')': single(Token::Kind::RParen); break;
                case ',': single(Token::Kind::Comma); break;
                case '@': single(Token::Kind::At); break;
                default: throw parse_error(std::string("unexpected character '") + c + "'", i_);
            }
    }

    std::string src_;
    std::size_t i_ = 0;
    Token tok_;
};

} // namespace detail

/// Symbolic scalar function on a chart, stored in canonical form. Immutable; all
/// operations are pure and chart-checked.
class Expr {
public:
    Expr() = default;

    static Expr zero(ChartPtr chart) { return Expr(std::move(chart), Fraction()); }
    static Expr one(ChartPtr chart) { return constant(std::move(chart), Rational(1)); }
    static Expr constant(ChartPtr chart, const Rational& c) {
        return Expr(std::move(chart), Fraction::constant(c));
    }
    static Expr coordinate(ChartPtr chart, const std::string& name) {
        int id = chart->require(name);
        return Expr(std::move(chart), Fraction::variable(id));
    }
    static Expr coordinate(ChartPtr chart, int id) { return Expr(std::move(chart), Fraction::variable(id)); }

    /// Parses the scalar grammar (see README) and canonicalizes.
    static Expr parse(const std::string& src, const ChartPtr& chart);

    const ChartPtr& chart() const { return chart_; }
    const Fraction& fraction() const { return f_; }

    bool is_canonical_zero() const { return f_.is_canonical_zero(); }
    bool is_constant() const { return f_.is_constant(); }
    Rational constant_value() const { return f_.constant_value(); }

    Expr operator-() const { return Expr(chart_, -f_); }
    Expr operator+(const Expr& o) const { return Expr(same_chart(o), f_ + o.f_); }
    Expr operator-(const Expr& o) const { return Expr(same_chart(o), f_ - o.f_); }
    Expr operator*(const Expr& o) const { return Expr(same_chart(o), f_ * o.f_); }
    Expr operator/(const Expr& o) const { return Expr(same_chart(o), f_ / o.f_); }
    Expr pow(int e) const { return Expr(chart_, f_.pow(e)); }
    Expr scaled(const Rational& c) const { return Expr(chart_, f_.scaled(c)); }

    friend Expr exp(const Expr& x) { return Expr(x.chart_, Fraction::exp_of(x.f_)); }
    friend Expr ln(const Expr& x) { return Expr(x.chart_, Fraction::ln_of(x.f_)); }

    /// Exact partial derivative; parameters differentiate to zero.
    Expr derivative(int var) const { return Expr(chart_, f_.derivative(var)); }
    Expr derivative(const std::string& coord) const { return derivative(chart_->require(coord)); }

    EvalValue eval(const SamplePoint& p) const {
        if (!Chart::same(p.chart, chart_)) throw chart_error("sample point lives on a different chart");
        return f_.eval(p.values);
    }

    /// Transplants the expression along variable images living on a new chart.
    Expr composed(const ChartPtr& target, const std::vector<Expr>& images) const {
        if (static_cast<int>(images.size()) != chart_->nvars())
            throw chart_error("substitution needs one image per source variable");
        std::vector<Fraction> imgs;
        imgs.reserve(images.size());
        for (const auto& e : images) {
            if (!Chart::same(e.chart(), target)) throw chart_error("substitution image on wrong chart");
            imgs.push_back(e.fraction());
        }
        return Expr(target, f_.substituted(imgs));
    }

    bool operator==(const Expr& o) const {
        return Chart::same(chart_, o.chart_) && Fraction::equal(f_, o.f_);
    }
    bool operator!=(const Expr& o) const { return !(*this == o); }

    std::string str() const { return f_.str(all_names()); }

private:
    Expr(ChartPtr chart, Fraction f) : chart_(std::move(chart)), f_(std::move(f)) {}

    ChartPtr same_chart(const Expr& o) const {
        if (!chart_ || !o.chart_) throw chart_error("operation on an uninitialized expression");
        if (!Chart::same(chart_, o.chart_))
            throw chart_error("chart mismatch: '" + chart_->name() + "' vs '" + o.chart_->name() + "'");
        return chart_;
    }

    std::vector<std::string> all_names() const {
        std::vector<std::string> n = chart_->coords();
        n.insert(n.end(), chart_->params().begin(), chart_->params().end());
        return n;
    }

    ChartPtr chart_;
    Fraction f_;
};

inline Expr differentiate(const Expr& e, const std::string& coord) { return e.derivative(coord); }

/// Outcome of the sound zero test.
struct ZeroVerdict {
    enum class Kind { Zero, NonZero, Indeterminate };
    Kind kind = Kind::Indeterminate;
    std::optional<SamplePoint> witness; // set for NonZero
    double witness_value = 0.0;

    bool is_zero() const { return kind == Kind::Zero; }
    bool is_nonzero() const { return kind == Kind::NonZero; }
    std::string str() const {
        switch (kind) {
            case Kind::Zero: return "zero";
            case Kind::NonZero: return "nonzero at " + witness->str();
            case Kind::Indeterminate: return "indeterminate";
        }
        return "";
    }
};

struct ZeroTestOptions {
    int max_samples = 64;
    std::uint64_t seed = 0x51ab5eedULL;
    double threshold = 1e-9;
};

/// Sound zero test: "zero" only for syntactically zero canonical forms; "nonzero"
/// always carries a sample-point witness; gives up as "indeterminate" otherwise.
inline ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& opt = {}) {
    if (e.is_canonical_zero()) return {ZeroVerdict::Kind::Zero, std::nullopt, 0.0};
    Rng rng(opt.seed);
    for (int k = 0; k < opt.max_samples; ++k) {
        SamplePoint p = random_point(e.chart(), rng);
        try {
            double v = e.eval(p).as_double();
            if (std::abs(v) > opt.threshold && std::isfinite(v))
                return {ZeroVerdict::Kind::NonZero, std::move(p), v};
        } catch (const eval_error&) {
            // pole or log branch at this draw; try another point
        }
    }
    return {ZeroVerdict::Kind::Indeterminate, std::nullopt, 0.0};
}

// ---------------------------------------------------------------------------
// scalar parser
// ---------------------------------------------------------------------------

namespace detail {

class ScalarParser {
public:
    ScalarParser(Lexer& lx, ChartPtr chart) : lx_(lx), chart_(std::move(chart)) {}

    Expr parse_expr() {
        Expr acc = parse_term();
        for (;;) {
            if (lx_.accept(Token::Kind::Plus))
                acc = acc + parse_term();
            else if (lx_.accept(Token::Kind::Minus))
                acc = acc - parse_term();
            else
                return acc;
        }
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        for (;;) {
            if (lx_.accept(Token::Kind::Star))
                acc = acc * parse_factor();
            else if (lx_.accept(Token::Kind::Slash))
                acc = acc / parse_factor();
            else
                return acc;
        }
    }

    Expr parse_factor() {
        Expr b = parse_base();
        if (lx_.accept(Token::Kind::DoubleStar)) return b.pow(parse_int_exponent());
        return b;
    }

    int parse_int_exponent() {
        bool neg = lx_.accept(Token::Kind::Minus);
        Token t = lx_.expect(Token::Kind::Int, "integer exponent");
        int v = std::stoi(t.text);
        return neg ? -v : v;
    }

    Expr parse_base() {
        const Token& t = lx_.peek();
        switch (t.kind) {
            case Token::Kind::Minus: lx_.take(); return -parse_base();
            case Token::Kind::Int: {
                Token n = lx_.take();
                return Expr::constant(chart_, Rational(Integer(n.text)));
            }
            case Token::Kind::LParen: {
                lx_.take();
                Expr e = parse_expr();
                lx_.expect(Token::Kind::RParen, "')'");
                return e;
            }
            case Token::Kind::Ident: {
                Token id = lx_.take();
                if ((id.text == "exp" || id.text == "ln") && lx_.peek().kind == Token::Kind::LParen) {
                    lx_.take();
                    Expr arg = parse_expr();
                    lx_.expect(Token::Kind::RParen, "')'");
                    return id.text == "exp" ? exp(arg) : ln(arg);
                }
                if (!chart_->find(id.text))
                    throw parse_error("unknown coordinate name '" + id.text + "'", id.pos);
                return Expr::coordinate(chart_, id.text);
            }
            default: throw parse_error("expected a scalar expression", t.pos);
        }
    }

private:
    Lexer& lx_;
    ChartPtr chart_;
};

} // namespace detail

inline Expr Expr::parse(const std::string& src, const ChartPtr& chart) {
    detail::Lexer lx(src);
    detail::ScalarParser p(lx, chart);
    Expr e = p.parse_expr();
    if (lx.peek().kind != detail::Token::Kind::End)
        throw parse_error("trailing input after expression", lx.peek().pos);
    return e;
}

inline Expr parse_scalar(const std::string& src, const ChartPtr& chart) { return Expr::parse(src, chart); }

/// eval_at per the module contract: exact rational when no exp/ln occurs.
inline EvalValue eval_at(const Expr& e, const SamplePoint& p) { return e.eval(p); }

} // namespace asympl
