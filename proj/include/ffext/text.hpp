#ifndef FFEXT_TEXT_HPP
#define FFEXT_TEXT_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace ffext {

// Text syntax.
//
//   field elements   integers for prime fields, polynomials in u otherwise:  u^2+2*u+1
//   polynomials      t^3+2*t+1,  (u+1)*t^2+u
//   rational funcs   num / den, with the usual precedence:  1/t+t,  1/(t*(t+1))
//
// Integers are reduced mod p. Exponents are non-negative decimal integers.

namespace detail {

class ExprParser {
   public:
    ExprParser(const Field& field, std::string_view text, char variable = 't', bool allow_u = true)
        : field_(field), s_(text), var_(variable), allow_u_(allow_u) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc acc = term();
        for (;;) {
            if (accept('+')) acc = acc + term();
            else if (accept('-')) acc = acc - term();
            else return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RatFunc power() {
        RatFunc base = primary();
        if (accept('^')) {
            skip_ws();
            const std::uint64_t n = integer("exponent");
            if (n > 100000) fail("exponent too large");
            return pow(base, n);
        }
        return base;
    }

    std::uint64_t integer(const char* what) {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail(std::string("expected ") + what);
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (~0ULL - 9) / 10) fail("integer too large");
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
        }
        return v;
    }

    RatFunc primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::uint64_t n = integer("integer");
            return RatFunc::constant(field_, field_->from_int(static_cast<long long>(n % field_->p())));
        }
        if (c == var_) {
            ++pos_;
            return RatFunc(Poly::t(field_));
        }
        if (c == 'u' && allow_u_) {
            if (field_->is_prime_field()) fail("'u' is only meaningful in extension fields");
            ++pos_;
            return RatFunc::constant(field_, field_->generator());
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    const Field& field_;
    std::string_view s_;
    char var_;
    bool allow_u_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(const Field& field, std::string_view text) { return detail::ExprParser(field, text).parse(); }

inline Poly parse_poly(const Field& field, std::string_view text) {
    RatFunc v = parse_ratfunc(field, text);
    if (!v.is_polynomial()) throw ParseError("expected a polynomial, got a proper rational function", 0);
    return v.num();
}

inline FieldElem parse_field_elem(const Field& field, std::string_view text) {
    Poly v = parse_poly(field, text);
    if (!v.is_constant()) throw ParseError("expected a field element, got a polynomial in t", 0);
    return v.coeff(0);
}

/// Coefficients (low first) of a polynomial in u over F_p, for user-supplied moduli.
inline std::vector<std::uint32_t> parse_modulus(std::uint32_t p, std::string_view text) {
    const Field fp = FieldCtx::make(p, 1);
    RatFunc v = detail::ExprParser(fp, text, 'u', false).parse();
    if (!v.is_polynomial()) throw ParseError("modulus must be a polynomial in u", 0);
    std::vector<std::uint32_t> out;
    for (auto c : v.num().coeffs()) out.push_back(c.packed);
    return out;
}

/// Splits a comma-separated list at top level (commas inside parentheses are kept).
inline std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

namespace detail {

inline std::string format_monomial_poly(std::span<const std::uint32_t> coeffs, char var) {
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const std::uint32_t c = coeffs[k];
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (k == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

}  // namespace detail

inline std::string format_elem(const FieldCtx& F, FieldElem x) {
    if (F.is_prime_field()) return std::to_string(x.packed);
    return detail::format_monomial_poly(F.coords(x), 'u');
}

inline std::string format_poly(const Poly& f) {
    const FieldCtx& F = f.ctx();
    std::string out;
    for (std::size_t k = f.size(); k-- > 0;) {
        const FieldElem c = f.coeff(k);
        if (c.is_zero()) continue;
        if (!out.empty()) out += '+';
        std::string cs = format_elem(F, c);
        if (k == 0) {
            out += cs;
            continue;
        }
        if (c != F.one()) {
            if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
            out += cs + "*";
        }
        out += 't';
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

inline std::string format_ratfunc(const RatFunc& x) {
    std::string num = format_poly(x.num());
    if (x.is_polynomial()) return num;
    std::string den = format_poly(x.den());
    if (num.find('+') != std::string::npos) num = "(" + num + ")";
    if (den.find_first_of("+*") != std::string::npos) den = "(" + den + ")";
    return num + "/" + den;
}

}  // namespace ffext

#endif  // FFEXT_TEXT_HPP
