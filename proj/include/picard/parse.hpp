#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "picard/expr.hpp"

namespace picard {

struct ParseError : Error {
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Accumulated (position, message) pairs from parsing a multi-line source.
struct ParseDiagnostics {
    struct Item {
        size_t position;
        std::string message;
    };
    std::vector<Item> items;

    bool empty() const { return items.empty(); }
    void add(size_t pos, std::string msg) { items.push_back({pos, std::move(msg)}); }
    std::string summary() const {
        std::string s;
        for (const auto& it : items) {
            if (!s.empty()) s += "\n";
            s += "line " + std::to_string(it.position) + ": " + it.message;
        }
        return s;
    }
};

namespace detail {

struct Token {
    enum class Kind { Number, Ident, Op, End } kind;
    size_t pos = 0;
    double number = 0.0;
    std::string text;  // ident name or single-char operator
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{Token::Kind::End, pos_, 0.0, ""};
        if (pos_ >= src_.size()) return;
        const char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const char* begin = src_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            tok_ = Token{Token::Kind::Number, pos_, v,
                         std::string(begin, static_cast<size_t>(end - begin))};
            pos_ += static_cast<size_t>(end - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            tok_ = Token{Token::Kind::Ident, pos_, 0.0, src_.substr(pos_, end - pos_)};
            pos_ = end;
            return;
        }
        static const std::string ops = "+-*/^()[]";
        if (ops.find(ch) != std::string::npos) {
            tok_ = Token{Token::Kind::Op, pos_, 0.0, std::string(1, ch)};
            ++pos_;
            return;
        }
        throw ParseError(pos_, std::string("unexpected character '") + ch + "'");
    }

    const std::string& src_;
    size_t pos_ = 0;
    Token tok_;
};

inline std::optional<DerivAxis> deriv_axis_from(const std::string& s) {
    if (s == "t") return DerivAxis::T;
    if (s == "x") return DerivAxis::X;
    if (s == "tt") return DerivAxis::TT;
    if (s == "xx") return DerivAxis::XX;
    if (s == "tx") return DerivAxis::TX;
    return std::nullopt;
}

class ExprParser {
public:
    ExprParser(const std::string& src, const std::map<std::string, double>& constants)
        : lex_(src), constants_(constants) {}

    Expr parse() {
        Expr e = sum();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError(lex_.peek().pos, "unexpected trailing input '" + lex_.peek().text + "'");
        return e;
    }

private:
    bool next_is_op(const char* op) const {
        return lex_.peek().kind == Token::Kind::Op && lex_.peek().text == op;
    }
    void expect_op(const char* op, const char* what) {
        if (!next_is_op(op)) throw ParseError(lex_.peek().pos, std::string("expected '") + op + "' " + what);
        lex_.take();
    }

    Expr sum() {
        Expr left = product();
        while (next_is_op("+") || next_is_op("-")) {
            const bool add = lex_.take().text == "+";
            Expr right = product();
            left = Expr::binary(add ? ExprKind::Add : ExprKind::Sub, std::move(left), std::move(right));
        }
        return left;
    }

    Expr product() {
        Expr left = unary();
        while (next_is_op("*") || next_is_op("/")) {
            const bool mul = lex_.take().text == "*";
            Expr right = unary();
            left = Expr::binary(mul ? ExprKind::Mul : ExprKind::Div, std::move(left), std::move(right));
        }
        return left;
    }

    Expr unary() {
        if (next_is_op("-")) {
            lex_.take();
            return Expr::unary(ExprKind::Neg, unary());
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (next_is_op("^")) {
            const size_t at = lex_.take().pos;
            Expr exp_tree = primary();
            auto folded = fold_constant(exp_tree, constants_);
            if (!folded)
                throw ParseError(at, "exponent does not fold to a constant");
            const double v = *folded;
            const double r = std::round(v);
            if (std::abs(v - r) > 1e-9)
                throw ParseError(at, "exponent must be an integer, got " + format_double(v));
            if (r < 0)
                throw ParseError(at, "negative exponent: write an explicit division instead");
            return Expr::pow_int(std::move(base), static_cast<int>(r));
        }
        return base;
    }

    Expr primary() {
        const Token t = lex_.take();
        if (t.kind == Token::Kind::Number) return Expr::number_of(t.number);
        if (t.kind == Token::Kind::Op && t.text == "(") {
            Expr e = sum();
            expect_op(")", "to close parenthesis");
            return e;
        }
        if (t.kind == Token::Kind::Ident) return ident(t);
        throw ParseError(t.pos, "expected a number, identifier or '('");
    }

    Expr ident(const Token& t) {
        const std::string& name = t.text;
        // D[axis](expr): derivative of a subexpression
        if (name == "D" && next_is_op("[")) {
            lex_.take();
            const Token axis_tok = lex_.take();
            if (axis_tok.kind != Token::Kind::Ident)
                throw ParseError(axis_tok.pos, "expected an axis inside D[...]");
            auto d = deriv_axis_from(axis_tok.text);
            if (!d) throw ParseError(axis_tok.pos, "bad derivative axis '" + axis_tok.text + "'");
            expect_op("]", "after derivative axis");
            expect_op("(", "to open D[...] argument");
            Expr arg = sum();
            expect_op(")", "to close D[...] argument");
            return wrap_d_of(*d, std::move(arg));
        }
        if (next_is_op("(")) {
            if (!is_known_function(name))
                throw ParseError(t.pos, "unknown function '" + name + "'");
            lex_.take();
            Expr arg = sum();
            expect_op(")", "to close function argument");
            return Expr::func(name, std::move(arg));
        }
        if (name == "t") return Expr::var(Axis::T);
        if (name == "x") return Expr::var(Axis::X);
        // trailing _t/_x/_tt/_xx/_tx marks a derivative reference
        const size_t us = name.rfind('_');
        if (us != std::string::npos && us > 0) {
            auto d = deriv_axis_from(name.substr(us + 1));
            if (d) return Expr::deriv(name.substr(0, us), *d);
        }
        if (constants_.count(name)) return Expr::constant(name);
        return Expr::state(name);
    }

    static Expr wrap_d_of(DerivAxis d, Expr arg) {
        switch (d) {
            case DerivAxis::T: return Expr::d_of(Axis::T, std::move(arg));
            case DerivAxis::X: return Expr::d_of(Axis::X, std::move(arg));
            case DerivAxis::TT:
                return Expr::d_of(Axis::T, Expr::d_of(Axis::T, std::move(arg)));
            case DerivAxis::XX:
                return Expr::d_of(Axis::X, Expr::d_of(Axis::X, std::move(arg)));
            case DerivAxis::TX:
                return Expr::d_of(Axis::T, Expr::d_of(Axis::X, std::move(arg)));
        }
        throw ParseError(0, "bad derivative axis");
    }

    Lexer lex_;
    const std::map<std::string, double>& constants_;
};

}  // namespace detail

/// Parse an expression. Identifiers matching the constant table become Const
/// nodes, `t`/`x` become Var, `u_x`-style suffixes become Deriv, everything
/// else becomes State.
inline Expr parse_expr(const std::string& text, const std::map<std::string, double>& constants) {
    return detail::ExprParser(text, constants).parse();
}

}  // namespace picard
