#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formfind/dataset.hpp"
#include "formfind/dimension.hpp"
#include "formfind/errors.hpp"
#include "formfind/rational.hpp"

namespace formfind {

enum class FuncKind {
    exp, log,
    sinh, cosh, tanh_, coth,
    sin, cos, tan, cot, sec, csc,
    sin2, cos2, tan2, cot2, sec2, csc2,
};

inline const char* func_name(FuncKind k) {
    switch (k) {
        case FuncKind::exp: return "exp";
        case FuncKind::log: return "log";
        case FuncKind::sinh: return "sinh";
        case FuncKind::cosh: return "cosh";
        case FuncKind::tanh_: return "tanh";
        case FuncKind::coth: return "coth";
        case FuncKind::sin: return "sin";
        case FuncKind::cos: return "cos";
        case FuncKind::tan: return "tan";
        case FuncKind::cot: return "cot";
        case FuncKind::sec: return "sec";
        case FuncKind::csc: return "csc";
        case FuncKind::sin2: return "sin2";
        case FuncKind::cos2: return "cos2";
        case FuncKind::tan2: return "tan2";
        case FuncKind::cot2: return "cot2";
        case FuncKind::sec2: return "sec2";
        case FuncKind::csc2: return "csc2";
    }
    return "?";
}

inline bool func_is_trig(FuncKind k) { return k >= FuncKind::sin; }

inline std::optional<FuncKind> func_from_name(const std::string& s) {
    static const std::pair<const char*, FuncKind> table[] = {
        {"exp", FuncKind::exp},   {"log", FuncKind::log},   {"sinh", FuncKind::sinh},
        {"cosh", FuncKind::cosh}, {"tanh", FuncKind::tanh_}, {"coth", FuncKind::coth},
        {"sin", FuncKind::sin},   {"cos", FuncKind::cos},   {"tan", FuncKind::tan},
        {"cot", FuncKind::cot},   {"sec", FuncKind::sec},   {"csc", FuncKind::csc},
        {"sin2", FuncKind::sin2}, {"cos2", FuncKind::cos2}, {"tan2", FuncKind::tan2},
        {"cot2", FuncKind::cot2}, {"sec2", FuncKind::sec2}, {"csc2", FuncKind::csc2},
    };
    for (const auto& [name, kind] : table)
        if (s == name) return kind;
    return std::nullopt;
}

class Expr;

struct ExprNode {
    enum class Kind { feature, constant, power, product, sum, func };
    Kind kind = Kind::constant;
    int feature = -1;                   // feature
    double value = 0.0;                 // constant
    Rational exponent;                  // power
    std::vector<Expr> children;         // power/func: exactly one; product/sum: 2+
    std::vector<double> coefficients;   // sum, per child
    FuncKind func = FuncKind::exp;      // func
    double func_coefficient = 1.0;      // func: f(c * child), c > 0
};

// Immutable expression tree with value semantics.
class Expr {
  public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

    const ExprNode& node() const { return *node_; }
    bool empty() const { return node_ == nullptr; }

    static Expr feature(int index) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::feature;
        n->feature = index;
        return Expr(std::move(n));
    }
    static Expr constant(double v) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::constant;
        n->value = v;
        return Expr(std::move(n));
    }
    static Expr pow(Expr base, Rational a) {
        if (a == Rational(1)) return base;
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::power;
        n->exponent = a;
        n->children.push_back(std::move(base));
        return Expr(std::move(n));
    }
    static Expr product(std::vector<Expr> factors) {
        if (factors.size() == 1) return factors[0];
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::product;
        n->children = std::move(factors);
        return Expr(std::move(n));
    }
    static Expr sum(std::vector<double> coefficients, std::vector<Expr> terms) {
        if (terms.size() == 1 && coefficients[0] == 1.0) return terms[0];
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::sum;
        n->children = std::move(terms);
        n->coefficients = std::move(coefficients);
        return Expr(std::move(n));
    }
    static Expr func(FuncKind kind, double coefficient, Expr arg) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::func;
        n->func = kind;
        n->func_coefficient = coefficient;
        n->children.push_back(std::move(arg));
        return Expr(std::move(n));
    }

  private:
    std::shared_ptr<const ExprNode> node_;
};

struct Complexity {
    int node_count = 0;
    int transcendental_count = 0;
};

inline Complexity complexity(const Expr& e) {
    const auto& n = e.node();
    Complexity c{1, n.kind == ExprNode::Kind::func ? 1 : 0};
    for (const auto& ch : n.children) {
        Complexity sub = complexity(ch);
        c.node_count += sub.node_count;
        c.transcendental_count += sub.transcendental_count;
    }
    return c;
}

namespace detail {

// Scalar power respecting domain rules; NaN marks an undefined row.
inline double checked_pow(double base, const Rational& a) {
    if (a.is_integer()) {
        if (base == 0.0 && a.num() < 0) return std::nan("");
        return std::pow(base, static_cast<double>(a.num()));
    }
    if (base < 0.0) return std::nan("");
    if (base == 0.0 && a.num() < 0) return std::nan("");
    return std::pow(base, a.value());
}

inline double apply_func(FuncKind k, double x) {
    switch (k) {
        case FuncKind::exp: return std::exp(x);
        case FuncKind::log: return x > 0.0 ? std::log(x) : std::nan("");
        case FuncKind::sinh: return std::sinh(x);
        case FuncKind::cosh: return std::cosh(x);
        case FuncKind::tanh_: return std::tanh(x);
        case FuncKind::coth: {
            double s = std::sinh(x);
            return s == 0.0 ? std::nan("") : std::cosh(x) / s;
        }
        case FuncKind::sin: return std::sin(x);
        case FuncKind::cos: return std::cos(x);
        case FuncKind::tan: return std::tan(x);
        case FuncKind::cot: {
            double s = std::sin(x);
            return s == 0.0 ? std::nan("") : std::cos(x) / s;
        }
        case FuncKind::sec: {
            double c = std::cos(x);
            return c == 0.0 ? std::nan("") : 1.0 / c;
        }
        case FuncKind::csc: {
            double s = std::sin(x);
            return s == 0.0 ? std::nan("") : 1.0 / s;
        }
        case FuncKind::sin2: { double v = std::sin(x); return v * v; }
        case FuncKind::cos2: { double v = std::cos(x); return v * v; }
        case FuncKind::tan2: { double v = std::tan(x); return v * v; }
        case FuncKind::cot2: { double s = std::sin(x); return s == 0.0 ? std::nan("") : (std::cos(x) / s) * (std::cos(x) / s); }
        case FuncKind::sec2: { double c = std::cos(x); return c == 0.0 ? std::nan("") : 1.0 / (c * c); }
        case FuncKind::csc2: { double s = std::sin(x); return s == 0.0 ? std::nan("") : 1.0 / (s * s); }
    }
    return std::nan("");
}

inline double eval_row(const ExprNode& n, const std::vector<const std::vector<double>*>& cols,
                       std::size_t row) {
    switch (n.kind) {
        case ExprNode::Kind::feature: return (*cols[static_cast<std::size_t>(n.feature)])[row];
        case ExprNode::Kind::constant: return n.value;
        case ExprNode::Kind::power: return checked_pow(eval_row(n.children[0].node(), cols, row), n.exponent);
        case ExprNode::Kind::product: {
            double acc = 1.0;
            for (const auto& ch : n.children) acc *= eval_row(ch.node(), cols, row);
            return acc;
        }
        case ExprNode::Kind::sum: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n.children.size(); ++i)
                acc += n.coefficients[i] * eval_row(n.children[i].node(), cols, row);
            return acc;
        }
        case ExprNode::Kind::func:
            return apply_func(n.func, n.func_coefficient * eval_row(n.children[0].node(), cols, row));
    }
    return std::nan("");
}

inline void collect_features(const ExprNode& n, std::vector<int>& out) {
    if (n.kind == ExprNode::Kind::feature) out.push_back(n.feature);
    for (const auto& ch : n.children) collect_features(ch.node(), out);
}

}  // namespace detail

inline std::vector<int> feature_support(const Expr& e) {
    std::vector<int> ids;
    detail::collect_features(e.node(), ids);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

// Evaluates over raw column vectors; throws DomainViolation listing undefined rows.
inline std::vector<double> evaluate(const Expr& e, const std::vector<const std::vector<double>*>& cols,
                                    std::size_t rows) {
    for (int f : feature_support(e))
        if (f < 0 || static_cast<std::size_t>(f) >= cols.size())
            throw UsageError("expression references feature index " + std::to_string(f) +
                             " outside the dataset");
    std::vector<double> out(rows);
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < rows; ++i) {
        out[i] = detail::eval_row(e.node(), cols, i);
        if (!std::isfinite(out[i])) bad.push_back(i);
    }
    if (!bad.empty()) throw DomainViolation(std::move(bad));
    return out;
}

inline std::vector<double> evaluate(const Expr& e, const Dataset& ds) {
    std::vector<const std::vector<double>*> cols;
    cols.reserve(ds.features.size());
    for (const auto& f : ds.features) cols.push_back(&f.values);
    return evaluate(e, cols, ds.rows());
}

// Dimension inference. Unknown feature dimensions make the result unknown
// (nullopt). Violations of dimensional homogeneity throw UnitMismatch.
// With `constrained_trig`, trigonometric arguments must be angles.
inline std::optional<Dimension> infer_dimension(const Expr& e,
                                                const std::vector<std::optional<Dimension>>& feature_dims,
                                                bool constrained_trig = false) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::feature: {
            auto idx = static_cast<std::size_t>(n.feature);
            if (idx >= feature_dims.size()) throw UsageError("feature index outside dimension table");
            return feature_dims[idx];
        }
        case ExprNode::Kind::constant: return Dimension::dimensionless();
        case ExprNode::Kind::power: {
            auto d = infer_dimension(n.children[0], feature_dims, constrained_trig);
            if (!d) return std::nullopt;
            return d->scaled(n.exponent);
        }
        case ExprNode::Kind::product: {
            Dimension acc;
            for (const auto& ch : n.children) {
                auto d = infer_dimension(ch, feature_dims, constrained_trig);
                if (!d) return std::nullopt;
                acc = acc + *d;
            }
            return acc;
        }
        case ExprNode::Kind::sum: {
            std::optional<Dimension> acc;
            for (const auto& ch : n.children) {
                auto d = infer_dimension(ch, feature_dims, constrained_trig);
                if (!d) return std::nullopt;
                if (!acc)
                    acc = d;
                else if (*acc != *d)
                    throw UnitMismatch("sum of terms with dimensions " + acc->str() + " and " + d->str());
            }
            return acc;
        }
        case ExprNode::Kind::func: {
            auto d = infer_dimension(n.children[0], feature_dims, constrained_trig);
            if (!d) return std::nullopt;
            if (func_is_trig(n.func)) {
                const bool ok = constrained_trig ? d->is_angle() : (d->is_dimensionless() || d->is_angle());
                if (!ok)
                    throw UnitMismatch(std::string(func_name(n.func)) + " of argument with dimension " +
                                       d->str());
            } else if (!d->is_dimensionless()) {
                throw UnitMismatch(std::string(func_name(n.func)) + " of argument with dimension " + d->str());
            }
            return Dimension::dimensionless();
        }
    }
    return std::nullopt;
}

}  // namespace formfind
