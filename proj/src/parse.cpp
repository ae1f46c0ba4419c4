#include "ratrec/parse.hpp"

#include <cctype>
#include <map>

#include "ratrec/errors.hpp"

namespace ratrec {

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    FieldTag field;
    std::uint32_t nvars;
    std::map<std::string, std::uint32_t> vars;

    void skip_ws() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    mpz_class integer_literal() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (pos == start) fail("expected integer literal");
        return mpz_class(text.substr(start, pos - start));
    }

    RationalFunction atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (std::isdigit((unsigned char)c))
            return RationalFunction::constant(field, nvars, ExactScalar(field, integer_literal()));
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            auto it = vars.find(name);
            if (it == vars.end()) {
                pos = start;
                fail("unknown identifier '" + name + "'");
            }
            return RationalFunction::variable(field, nvars, it->second);
        }
        if (eat('(')) {
            RationalFunction e = expression();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    RationalFunction power() {
        RationalFunction base = atom();
        while (eat('^')) {
            skip_ws();
            if (pos >= text.size() || !std::isdigit((unsigned char)text[pos]))
                fail("exponent must be a nonnegative integer literal");
            mpz_class e = integer_literal();
            if (!e.fits_uint_p()) fail("exponent too large");
            base = base.pow(e.get_ui());
        }
        return base;
    }

    RationalFunction unary() {
        if (eat('-')) return -unary();
        return power();
    }

    RationalFunction term() {
        RationalFunction acc = unary();
        while (true) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                RationalFunction d = unary();
                if (d.is_zero()) fail("division by the zero polynomial");
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction expression() {
        RationalFunction acc = term();
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }
};

}  // namespace

RationalFunction parse_expr(const std::string& text, const std::vector<std::string>& variables,
                            FieldTag field) {
    std::vector<std::pair<std::string, std::uint32_t>> bindings;
    for (std::uint32_t i = 0; i < variables.size(); ++i) bindings.emplace_back(variables[i], i);
    return parse_expr_bound(text, bindings, (std::uint32_t)variables.size(), field);
}

RationalFunction parse_expr_bound(
    const std::string& text,
    const std::vector<std::pair<std::string, std::uint32_t>>& bindings, std::uint32_t nvars,
    FieldTag field) {
    Parser p{text, 0, field, nvars, {}};
    for (const auto& [name, idx] : bindings) {
        if (idx >= nvars) throw Error("binding index out of range");
        p.vars[name] = idx;
    }
    RationalFunction r = p.expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

ExactScalar parse_scalar(const std::string& text, FieldTag field) {
    RationalFunction r = parse_expr(text, {}, field);
    if (!r.is_constant()) throw Error("expected a constant: " + text);
    return r.num().constant_term();
}

}  // namespace ratrec
