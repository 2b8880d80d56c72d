#pragma once

/**
 * @file expr.hpp
 * @brief Expression syntax shared by scalars and algebra elements.
 *
 * Precedence, tightest first: ^, unary minus, * / and juxtaposition, + -.
 * Exponents are integers; the only fractional exponent accepted is q^(n/2),
 * which lowers to t^n.
 */

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qiso/algebra.hpp"
#include "qiso/errors.hpp"

namespace qiso {

struct Expr {
    enum class Kind { Number, Symbol, Generator, Add, Sub, Mul, Div, Neg, Pow };

    Kind kind;
    std::string text;  // digits for Number, name for Symbol/Generator
    int index = 0;     // k of G[k]
    /// Exponent of a Pow node is num/den with den in {1, 2}.
    int exp_num = 1;
    int exp_den = 1;
    std::vector<std::shared_ptr<const Expr>> kids;

    bool has_generator() const
    {
        if (kind == Kind::Generator)
            return true;
        for (const auto& k : kids)
            if (k->has_generator())
                return true;
        return false;
    }

    /// Longest generator word produced by expanding this expression.
    long max_word_length() const
    {
        switch (kind) {
        case Kind::Generator:
            return 1;
        case Kind::Number:
        case Kind::Symbol:
            return 0;
        case Kind::Add:
        case Kind::Sub:
            return std::max(kids[0]->max_word_length(), kids[1]->max_word_length());
        case Kind::Mul:
            return kids[0]->max_word_length() + kids[1]->max_word_length();
        case Kind::Div:
        case Kind::Neg:
            return kids[0]->max_word_length();
        case Kind::Pow:
            return kids[0]->max_word_length() * std::abs(exp_num);
        }
        return 0;
    }
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

struct Token {
    enum class Type { Int, Ident, Op, End } type;
    std::string text;
    int line;
    int col;
};

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            out.push_back({Token::Type::Int, std::string(src.substr(i, j - i)), line, col});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j])))
                ++j;
            out.push_back({Token::Type::Ident, std::string(src.substr(i, j - i)), line, col});
            advance(j - i);
            continue;
        }
        if (std::string_view("+-*/^()[]").find(c) != std::string_view::npos) {
            out.push_back({Token::Type::Op, std::string(1, c), line, col});
            advance(1);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back({Token::Type::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view src, std::optional<Algebra> algebra) : toks_(tokenize(src)), algebra_(algebra) {}

    ExprPtr parse()
    {
        ExprPtr e = sum();
        if (peek().type != Token::Type::End)
            fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is_op(const char* op) const { return peek().type == Token::Type::Op && peek().text == op; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        const Token& t = peek();
        std::string m = t.type == Token::Type::End ? msg + " (unexpected end of input)" : msg;
        throw ParseError(m, t.line, t.col);
    }

    void expect(const char* op)
    {
        if (!is_op(op))
            fail(std::string("expected '") + op + "'");
        ++pos_;
    }

    static ExprPtr node(Expr::Kind k, std::vector<ExprPtr> kids)
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = std::move(kids);
        return e;
    }

    ExprPtr sum()
    {
        ExprPtr lhs = product();
        while (is_op("+") || is_op("-")) {
            bool plus = next().text == "+";
            ExprPtr rhs = product();
            lhs = node(plus ? Expr::Kind::Add : Expr::Kind::Sub, {lhs, rhs});
        }
        return lhs;
    }

    bool starts_primary() const
    {
        return peek().type == Token::Type::Int || peek().type == Token::Type::Ident || is_op("(");
    }

    ExprPtr product()
    {
        ExprPtr lhs = unary();
        while (true) {
            if (is_op("*") || is_op("/")) {
                bool mul = next().text == "*";
                ExprPtr rhs = unary();
                lhs = node(mul ? Expr::Kind::Mul : Expr::Kind::Div, {lhs, rhs});
            } else if (starts_primary()) {
                ExprPtr rhs = power();
                lhs = node(Expr::Kind::Mul, {lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary()
    {
        if (is_op("-")) {
            ++pos_;
            return node(Expr::Kind::Neg, {unary()});
        }
        return power();
    }

    ExprPtr power()
    {
        ExprPtr base = primary();
        if (!is_op("^"))
            return base;
        const Token caret = next();
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Pow;
        e->kids = {base};
        auto read_int = [this](bool allow_sign) {
            bool neg = false;
            if (allow_sign && is_op("-")) {
                ++pos_;
                neg = true;
            }
            if (peek().type != Token::Type::Int)
                fail("expected integer exponent");
            long v = std::stol(next().text);
            return static_cast<int>(neg ? -v : v);
        };
        if (is_op("(")) {
            ++pos_;
            e->exp_num = read_int(true);
            if (is_op("/")) {
                ++pos_;
                e->exp_den = read_int(false);
            }
            expect(")");
        } else {
            e->exp_num = read_int(true);
        }
        if (e->exp_den == 0)
            throw ParseError("zero exponent denominator", caret.line, caret.col);
        if (e->exp_den != 1) {
            if (e->exp_num % e->exp_den == 0) {
                e->exp_num /= e->exp_den;
                e->exp_den = 1;
            } else {
                bool q_half = e->exp_den == 2 && base->kind == Expr::Kind::Symbol && base->text == "q";
                if (!q_half)
                    throw ParseError("fractional exponent is only allowed as q^(n/2)", caret.line, caret.col);
            }
        }
        return e;
    }

    ExprPtr primary()
    {
        const Token& t = peek();
        if (t.type == Token::Type::Int) {
            ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->text = t.text;
            return e;
        }
        if (is_op("(")) {
            ++pos_;
            ExprPtr inner = sum();
            expect(")");
            return inner;
        }
        if (t.type == Token::Type::Ident) {
            const Token tok = next();
            auto e = std::make_shared<Expr>();
            const std::string& n = tok.text;
            if (n == "i" || n == "t" || n == "s" || n == "r" || n == "q") {
                e->kind = Expr::Kind::Symbol;
                e->text = n;
                return e;
            }
            std::optional<Algebra> owner;
            if (n == "I" || n == "T1" || n == "T2")
                owner = Algebra::Iso2;
            else if (n == "K" || n == "Kinv" || n == "E" || n == "F" || n == "G")
                owner = Algebra::M2;
            if (!owner)
                throw ParseError("unknown symbol '" + n + "'", tok.line, tok.col);
            if (algebra_ && *algebra_ != *owner)
                throw ParseError("generator '" + n + "' does not belong to algebra " + algebra_name(*algebra_),
                                 tok.line, tok.col);
            if (!algebra_)
                algebra_ = owner;
            e->kind = Expr::Kind::Generator;
            e->text = n;
            if (n == "G") {
                expect("[");
                bool neg = false;
                if (is_op("-")) {
                    ++pos_;
                    neg = true;
                }
                if (peek().type != Token::Type::Int)
                    fail("expected integer index in G[k]");
                int k = static_cast<int>(std::stol(next().text));
                e->index = neg ? -k : k;
                expect("]");
            }
            return e;
        }
        fail(t.type == Token::Type::End ? "expected operand" : "unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<Algebra> algebra_;
};

}  // namespace detail

/// Parse an element (or scalar) expression.  Generators must belong to `algebra`.
inline ExprPtr parse_expression(std::string_view text, Algebra algebra)
{
    return detail::Parser(text, algebra).parse();
}

/// Parse an expression whose generators (if any) all belong to one algebra.
inline ExprPtr parse_any(std::string_view text) { return detail::Parser(text, std::nullopt).parse(); }

}  // namespace qiso
