#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "bool_expr.hpp"
#include "errors.hpp"

namespace logicon {

/// What the expression grammar may mention. Decisions in scenario files see
/// only numbered inputs; update rules in rule files also see state variables
/// and may write the section's input as a bare "u".
struct parse_options {
    bool allow_state = false;
    bool allow_bare_input = false;
    std::size_t bare_input_index = 0;
};

namespace detail {

// Grammar (whitespace insignificant, NOT > AND > OR, left-associative):
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := '!' factor | '(' expr ')' | variable
//   variable := 'u' digits | 'x' digits | 'u'
class expr_parser {
public:
    expr_parser(std::string_view text, const parse_options& opts) : text_(text), opts_(opts) {}

    bool_expr parse() {
        bool_expr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected trailing input '" + std::string(text_.substr(pos_)) + "'",
                              pos_);
        return e;
    }

private:
    bool_expr expr() {
        std::vector<bool_expr> terms;
        terms.push_back(term());
        while (eat('|')) terms.push_back(term());
        return bool_expr::disjunction(std::move(terms));
    }

    bool_expr term() {
        std::vector<bool_expr> factors;
        factors.push_back(factor());
        while (eat('&')) factors.push_back(factor());
        return bool_expr::conjunction(std::move(factors));
    }

    bool_expr factor() {
        skip_ws();
        if (eat('!')) return bool_expr::negation(factor());
        if (eat('(')) {
            bool_expr e = expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return e;
        }
        return variable();
    }

    bool_expr variable() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("expected a variable", pos_);
        const std::size_t at = pos_;
        const char c = text_[pos_];
        if (c == 'u') {
            ++pos_;
            if (!digit_next()) {
                if (opts_.allow_bare_input) return bool_expr::input_var(opts_.bare_input_index);
                throw parse_error("expected digits after 'u'", pos_);
            }
            return bool_expr::input_var(read_index(at));
        }
        if (c == 'x' && opts_.allow_state) {
            ++pos_;
            if (!digit_next()) throw parse_error("expected digits after 'x'", pos_);
            return bool_expr::state_var(read_index(at));
        }
        // Anything word-like that is not a known variable gets its own message.
        if (std::isalpha(static_cast<unsigned char>(c)))
            throw parse_error(std::string("unknown identifier starting with '") + c + "'", at);
        throw parse_error(std::string("unexpected character '") + c + "'", at);
    }

    // Reads 1-based digits and converts to a 0-based index.
    std::size_t read_index(std::size_t at) {
        std::size_t value = 0;
        while (digit_next()) {
            value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (value > 1000000) throw parse_error("variable index is absurdly large", at);
            ++pos_;
        }
        if (value == 0) throw parse_error("variable indices start at 1", at);
        return value - 1;
    }

    bool digit_next() const {
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view text_;
    parse_options opts_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline bool_expr parse_bool_expr(std::string_view text, const parse_options& opts = {}) {
    return detail::expr_parser(text, opts).parse();
}

/// Parses a decision: an expression over numbered inputs (u1, u2, ...).
inline bool_expr parse_decision(std::string_view text) { return parse_bool_expr(text, {}); }

} // namespace logicon
