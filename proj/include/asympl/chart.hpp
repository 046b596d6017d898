#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "asympl/errors.hpp"
#include "asympl/rational.hpp"

namespace asympl {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// One inequality of a chart's domain hint, e.g. `x1 > 0`.
struct DomainConstraint {
    enum class Kind { GT, GE, LT, LE, NE };
    int var = 0;
    Kind kind = Kind::GT;
    Rational bound;

    bool satisfied(const Rational& v) const {
        switch (kind) {
            case Kind::GT: return v > bound;
            case Kind::GE: return v >= bound;
            case Kind::LT: return v < bound;
            case Kind::LE: return v <= bound;
            case Kind::NE: return v != bound;
        }
        return false;
    }
};

/// A named coordinate chart: ordered coordinates plus optional constant parameters.
///
/// Coordinates are the differentiable variables; parameters are extra symbols
/// (level-set values and the like) that behave as constants under d. Variable
/// ids are 0..m-1 for coordinates and m.. for parameters.
class Chart {
public:
    static ChartPtr make(std::string name, std::vector<std::string> coords,
                         std::vector<std::string> params = {}, const std::string& domain_hint = "") {
        auto c = std::shared_ptr<Chart>(new Chart());
        c->name_ = std::move(name);
        c->coords_ = std::move(coords);
        c->params_ = std::move(params);
        if (c->coords_.empty()) throw chart_error("chart '" + c->name_ + "' needs at least one coordinate");
        auto check_names = [&](const std::vector<std::string>& v) {
            for (const auto& n : v) {
                if (n.empty()) throw chart_error("empty variable name in chart '" + c->name_ + "'");
                if (!std::isalpha(static_cast<unsigned char>(n[0])))
                    throw chart_error("variable name '" + n + "' must start with a letter");
            }
        };
        check_names(c->coords_);
        check_names(c->params_);
        std::vector<std::string> all = c->coords_;
        all.insert(all.end(), c->params_.begin(), c->params_.end());
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw chart_error("duplicate variable name in chart '" + c->name_ + "'");
        c->domain_hint_ = domain_hint;
        c->constraints_ = parse_domain_hint(*c, domain_hint);
        return c;
    }

    const std::string& name() const { return name_; }
    /// Chart dimension (number of coordinates).
    int dim() const { return static_cast<int>(coords_.size()); }
    /// Total number of symbols: coordinates followed by parameters.
    int nvars() const { return static_cast<int>(coords_.size() + params_.size()); }
    int nparams() const { return static_cast<int>(params_.size()); }
    const std::vector<std::string>& coords() const { return coords_; }
    const std::vector<std::string>& params() const { return params_; }
    const std::string& domain_hint() const { return domain_hint_; }
    const std::vector<DomainConstraint>& constraints() const { return constraints_; }

    const std::string& var_name(int id) const {
        return id < dim() ? coords_[static_cast<std::size_t>(id)]
                          : params_[static_cast<std::size_t>(id - dim())];
    }

    std::optional<int> find(const std::string& name) const {
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] == name) return static_cast<int>(i);
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (params_[i] == name) return static_cast<int>(coords_.size() + i);
        return std::nullopt;
    }

    int require(const std::string& name) const {
        if (auto id = find(name)) return *id;
        throw chart_error("unknown coordinate '" + name + "' on chart '" + name_ + "'");
    }

    bool is_coordinate(int id) const { return id >= 0 && id < dim(); }

    /// Structural identity: same name, coordinates and parameters.
    static bool same(const Chart& a, const Chart& b) {
        return &a == &b || (a.name_ == b.name_ && a.coords_ == b.coords_ && a.params_ == b.params_);
    }
    static bool same(const ChartPtr& a, const ChartPtr& b) { return same(*a, *b); }

private:
    Chart() = default;

    /// Grammar: comma- or `&&`-separated `name OP rational` with OP in > >= < <= !=.
    static std::vector<DomainConstraint> parse_domain_hint(const Chart& chart, const std::string& hint) {
        std::vector<DomainConstraint> out;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < hint.size() &&
                   (std::isspace(static_cast<unsigned char>(hint[i])) || hint[i] == ',' || hint[i] == '&'))
                ++i;
        };
        skip();
        while (i < hint.size()) {
            std::size_t start = i;
            while (i < hint.size() && (std::isalnum(static_cast<unsigned char>(hint[i])) || hint[i] == '_')) ++i;
            if (i == start) throw parse_error("expected variable name in domain hint", i);
            std::string var = hint.substr(start, i - start);
            while (i < hint.size() && std::isspace(static_cast<unsigned char>(hint[i]))) ++i;
            DomainConstraint c;
            c.var = chart.require(var);
            if (i < hint.size() && hint[i] == '>') {
                ++i;
                c.kind = (i < hint.size() && hint[i] == '=') ? (++i, DomainConstraint::Kind::GE)
                                                             : DomainConstraint::Kind::GT;
            } else if (i < hint.size() && hint[i] == '<') {
                ++i;
                c.kind = (i < hint.size() && hint[i] == '=') ? (++i, DomainConstraint::Kind::LE)
                                                             : DomainConstraint::Kind::LT;
            } else if (i + 1 < hint.size() && hint[i] == '!' && hint[i + 1] == '=') {
                i += 2;
                c.kind = DomainConstraint::Kind::NE;
            } else {
                throw parse_error("expected comparison operator in domain hint", i);
            }
            while (i < hint.size() && std::isspace(static_cast<unsigned char>(hint[i]))) ++i;
            start = i;
            while (i < hint.size() && hint[i] != ',' && hint[i] != '&' &&
                   !std::isspace(static_cast<unsigned char>(hint[i])))
                ++i;
            c.bound = parse_rational(hint.substr(start, i - start));
            out.push_back(std::move(c));
            skip();
        }
        return out;
    }

    std::string name_;
    std::vector<std::string> coords_;
    std::vector<std::string> params_;
    std::string domain_hint_;
    std::vector<DomainConstraint> constraints_;
};

/// Exact rational values for every coordinate and parameter of a chart.
struct SamplePoint {
    ChartPtr chart;
    std::vector<Rational> values;

    SamplePoint() = default;
    SamplePoint(ChartPtr c, std::vector<Rational> v) : chart(std::move(c)), values(std::move(v)) {
        if (static_cast<int>(values.size()) != chart->nvars())
            throw chart_error("sample point arity mismatch for chart '" + chart->name() + "'");
    }

    bool satisfies_domain() const {
        for (const auto& c : chart->constraints())
            if (!c.satisfied(values[static_cast<std::size_t>(c.var)])) return false;
        return true;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ", ";
            s += chart->var_name(static_cast<int>(i)) + "=" + rational_str(values[i]);
        }
        return s + ")";
    }
};

using Rng = std::mt19937_64;

/// Random rational with denominator <= 16 and magnitude <= 8, honoring the domain hint.
inline SamplePoint random_point(const ChartPtr& chart, Rng& rng) {
    std::uniform_int_distribution<int> den_dist(1, 16);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::vector<Rational> vals;
        vals.reserve(static_cast<std::size_t>(chart->nvars()));
        for (int i = 0; i < chart->nvars(); ++i) {
            int d = den_dist(rng);
            std::uniform_int_distribution<long> num_dist(-8L * d, 8L * d);
            vals.emplace_back(Rational(num_dist(rng), d));
        }
        SamplePoint p(chart, std::move(vals));
        if (p.satisfies_domain()) return p;
    }
    throw math_error("failed to sample a point satisfying the domain hint of chart '" + chart->name() + "'");
}

} // namespace asympl
