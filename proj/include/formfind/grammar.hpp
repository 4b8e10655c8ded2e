#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <tuple>
#include <vector>

#include "formfind/expression.hpp"

namespace formfind {

// Canonical infix grammar shared by reports, library dumps and the parser:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' exponent)?          exponent := rational, '(' rational ')'
//   base   := IDENT | NUMBER | FUNC '(' NUMBER '*' expr ')' | '(' expr ')'

namespace detail {

inline std::string default_name(int index) { return "X" + std::to_string(index + 1); }

inline std::string feature_name(int index, const std::vector<std::string>& names) {
    if (index >= 0 && static_cast<std::size_t>(index) < names.size()) return names[index];
    return default_name(index);
}

inline std::string exponent_str(const Rational& a) {
    std::string s = a.str();
    bool needs_parens = a.num() < 0 || s.find('/') != std::string::npos;
    return needs_parens ? "(" + s + ")" : s;
}

struct ProductKey {
    int rank;
    int feature;
    double exponent;
    std::string text;
    bool operator<(const ProductKey& o) const {
        return std::tie(rank, feature, exponent, text) < std::tie(o.rank, o.feature, o.exponent, o.text);
    }
};

}  // namespace detail

inline std::string format(const Expr& e, const std::vector<std::string>& names = {});

namespace detail {

inline std::string format_base(const Expr& e, const std::vector<std::string>& names) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::feature:
        case ExprNode::Kind::constant:
        case ExprNode::Kind::func: return format(e, names);
        default: return "(" + format(e, names) + ")";
    }
}

inline std::string format_factor(const Expr& e, const std::vector<std::string>& names) {
    const auto& n = e.node();
    if (n.kind == ExprNode::Kind::power)
        return format_base(n.children[0], names) + "^" + exponent_str(n.exponent);
    if (n.kind == ExprNode::Kind::sum) return "(" + format(e, names) + ")";
    return format(e, names);
}

inline ProductKey product_key(const Expr& e, const std::vector<std::string>& names) {
    const auto& n = e.node();
    if (n.kind == ExprNode::Kind::constant) return {0, 0, n.value, {}};
    if (n.kind == ExprNode::Kind::feature) return {1, n.feature, 1.0, {}};
    if (n.kind == ExprNode::Kind::power && n.children[0].node().kind == ExprNode::Kind::feature)
        return {1, n.children[0].node().feature, n.exponent.value(), {}};
    return {2, 0, 0.0, format(e, names)};
}

}  // namespace detail

inline std::string format(const Expr& e, const std::vector<std::string>& names) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::feature: return detail::feature_name(n.feature, names);
        case ExprNode::Kind::constant: return detail::format_double(n.value);
        case ExprNode::Kind::power: return detail::format_factor(e, names);
        case ExprNode::Kind::product: {
            std::vector<Expr> kids = n.children;
            std::sort(kids.begin(), kids.end(), [&](const Expr& a, const Expr& b) {
                return detail::product_key(a, names) < detail::product_key(b, names);
            });
            std::string out;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (i) out += "*";
                out += detail::format_factor(kids[i], names);
            }
            return out;
        }
        case ExprNode::Kind::sum: {
            std::vector<std::pair<std::string, double>> terms;
            for (std::size_t i = 0; i < n.children.size(); ++i)
                terms.emplace_back(detail::format_factor(n.children[i], names), n.coefficients[i]);
            std::sort(terms.begin(), terms.end());
            std::string out;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                double c = terms[i].second;
                if (i == 0) {
                    if (c < 0) out += "-";
                } else {
                    out += c < 0 ? " - " : " + ";
                }
                double mag = c < 0 ? -c : c;
                if (mag != 1.0) out += detail::format_double(mag) + "*";
                out += terms[i].first;
            }
            return out;
        }
        case ExprNode::Kind::func:
            return std::string(func_name(n.func)) + "(" + detail::format_double(n.func_coefficient) + "*" +
                   format(n.children[0], names) + ")";
    }
    return {};
}

namespace detail {

class Parser {
  public:
    Parser(const std::string& text, const std::vector<std::string>& names) : text_(text), names_(names) {}

    Expr parse() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "end of input, '+', '-' or '*'");
        return e;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool consume(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!consume(c)) throw ParseError(pos_, what);
    }

    Expr parse_expr() {
        std::vector<double> coeffs;
        std::vector<Expr> terms;
        bool neg = consume('-');
        auto [c, t] = parse_term();
        coeffs.push_back(neg ? -c : c);
        terms.push_back(std::move(t));
        while (true) {
            skip_ws();
            if (consume('+'))
                neg = false;
            else if (consume('-'))
                neg = true;
            else
                break;
            auto [c2, t2] = parse_term();
            coeffs.push_back(neg ? -c2 : c2);
            terms.push_back(std::move(t2));
        }
        if (terms.size() == 1 && coeffs[0] == 1.0) return terms[0];
        if (terms.size() == 1)
            return Expr::product({Expr::constant(coeffs[0]), terms[0]});
        return Expr::sum(std::move(coeffs), std::move(terms));
    }

    // Returns (leading numeric coefficient, remaining product).
    std::pair<double, Expr> parse_term() {
        std::vector<Expr> factors{parse_factor()};
        while (consume('*')) factors.push_back(parse_factor());
        double coeff = 1.0;
        std::vector<Expr> rest;
        for (auto& f : factors) {
            if (f.node().kind == ExprNode::Kind::constant)
                coeff *= f.node().value;
            else
                rest.push_back(std::move(f));
        }
        if (rest.empty()) return {coeff, Expr::constant(1.0)};
        if (rest.size() == 1) return {coeff, rest[0]};
        return {coeff, Expr::product(std::move(rest))};
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (consume('^')) {
            bool parens = consume('(');
            Rational a = parse_rational();
            if (parens) expect(')', "')'");
            return Expr::pow(std::move(base), a);
        }
        return base;
    }

    Expr parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "identifier, number, function or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(parse_number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident = parse_ident();
            if (peek('(')) {
                auto kind = func_from_name(ident);
                if (!kind) throw ParseError(pos_, "known function name, got '" + ident + "'");
                expect('(', "'('");
                double coeff = parse_number();
                expect('*', "'*' after function coefficient");
                Expr arg = parse_expr();
                expect(')', "')'");
                return Expr::func(*kind, coeff, std::move(arg));
            }
            return Expr::feature(feature_index(ident));
        }
        throw ParseError(pos_, "identifier, number, function or '('");
    }

    int feature_index(const std::string& ident) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == ident) return static_cast<int>(i);
        if (names_.empty() && ident.size() > 1 && ident[0] == 'X') {
            int idx = 0;
            auto [p, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), idx);
            if (ec == std::errc() && p == ident.data() + ident.size() && idx >= 1) return idx - 1;
        }
        throw ParseError(pos_, "known column name, got '" + ident + "'");
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    double parse_number() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == 'e' || text_[pos_] == 'E' ||
                ((text_[pos_] == '-' || text_[pos_] == '+') &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
            ++pos_;
        double v = 0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || p != text_.data() + pos_) throw ParseError(start, "number");
        return v;
    }

    Rational parse_rational() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == '/'))
            ++pos_;
        if (pos_ == start) throw ParseError(start, "rational exponent");
        return Rational::parse(text_.substr(start, pos_ - start));
    }

    const std::string& text_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(const std::string& text, const std::vector<std::string>& names = {}) {
    return detail::Parser(text, names).parse();
}

}  // namespace formfind
