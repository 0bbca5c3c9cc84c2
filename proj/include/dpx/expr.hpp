#ifndef DPX_EXPR_HPP
#define DPX_EXPR_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "dpx/errors.hpp"
#include "dpx/poly.hpp"

namespace dpx {

// Recursive-descent parser for the shared expression grammar:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' natural)?
//   base   := integer | identifier | '(' expr ')'
//
// '/' divides by a scalar (a constant of the coefficient field); rational
// literals like 3/4 fall out of the same rule. 't' names the deformation
// parameter and is only meaningful over ratfunc scalars.
template <ScalarField K>
class ExprParser {
public:
    ExprParser(std::string_view src, PolyRingPtr ring, int line = 0)
        : src_(src), ring_(std::move(ring)), line_(line) {}

    Poly<K> parse() {
        skip_ws();
        Poly<K> p = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    bool eat(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly<K> parse_expr() {
        bool negate = false;
        skip_ws();
        if (eat('-'))
            negate = true;
        else
            eat('+');
        Poly<K> acc = parse_term();
        if (negate) acc = -acc;
        for (;;) {
            skip_ws();
            if (eat('+'))
                acc = acc + parse_term();
            else if (eat('-'))
                acc = acc - parse_term();
            else
                break;
        }
        return acc;
    }

    Poly<K> parse_term() {
        Poly<K> acc = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_factor();
            } else if (eat('/')) {
                Poly<K> d = parse_factor();
                if (!d.is_constant()) fail("division is only defined by scalars");
                const K dv = d.constant_value();
                if (scalar_traits<K>::is_zero(dv)) fail("division by zero");
                acc = acc.scaled(scalar_traits<K>::div(scalar_traits<K>::one(), dv));
            } else {
                break;
            }
        }
        return acc;
    }

    Poly<K> parse_factor() {
        Poly<K> b = parse_base();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected natural exponent");
            std::uint32_t n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                n = n * 10 + static_cast<std::uint32_t>(peek() - '0');
                if (n > 64) fail("exponent too large");
                ++pos_;
            }
            b = b.pow(n);
        }
        return b;
    }

    Poly<K> parse_base() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Poly<K> p = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) digits += src_[pos_++];
            return Poly<K>::constant(ring_, scalar_traits<K>::from_rational(Rational(Integer(digits))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                name += src_[pos_++];
            if (name == "t") {
                if constexpr (scalar_traits<K>::has_parameter)
                    return Poly<K>::constant(ring_, RatFunc::t());
                else
                    fail("'t' requires ratfunc scalars");
            }
            if (auto idx = ring_->index_of(name)) return Poly<K>::generator(ring_, *idx);
            fail("unknown identifier '" + name + "'");
        }
        if (c == '\0') fail("unexpected end of expression");
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    PolyRingPtr ring_;
    int line_;
    std::size_t pos_ = 0;
};

template <ScalarField K>
Poly<K> parse_poly(std::string_view src, const PolyRingPtr& ring, int line = 0) {
    return ExprParser<K>(src, ring, line).parse();
}

/// Parse an expression that must reduce to a scalar of K.
template <ScalarField K>
K parse_scalar(std::string_view src, const PolyRingPtr& ring, int line = 0) {
    Poly<K> p = parse_poly<K>(src, ring, line);
    if (!p.is_constant()) throw ParseError("expected a scalar expression", line, 1);
    return p.constant_value();
}

} // namespace dpx

#endif
