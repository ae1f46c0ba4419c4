#include "ratrec/rational.hpp"

#include "ratrec/errors.hpp"

namespace ratrec {

RationalFunction::RationalFunction(FieldTag field, std::uint32_t nvars)
    : num_(field, nvars), den_(Polynomial::constant(field, nvars, 1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    check_same_field(num_.field(), den_.field(), "rational function");
    if (den_.is_zero()) throw DivisionByZero("zero polynomial denominator");
    num_.raise_nvars(den_.nvars());
    den_.raise_nvars(num_.nvars());
    reduce_();
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.field(), num_.nvars(), 1)) {}

RationalFunction RationalFunction::constant(FieldTag field, std::uint32_t nvars,
                                            const ExactScalar& c) {
    return RationalFunction(Polynomial::constant(field, nvars, c));
}

RationalFunction RationalFunction::constant(FieldTag field, std::uint32_t nvars, long c) {
    return RationalFunction(Polynomial::constant(field, nvars, c));
}

RationalFunction RationalFunction::variable(FieldTag field, std::uint32_t nvars,
                                            std::uint32_t var) {
    return RationalFunction(Polynomial::variable(field, nvars, var));
}

void RationalFunction::reduce_() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.field(), num_.nvars(), 1);
        return;
    }
    if (!den_.is_constant()) {
        Polynomial g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = *num_.exact_div(g);
            den_ = *den_.exact_div(g);
        }
    }
    ExactScalar s = den_.unit_factor();
    den_ = den_.scaled(s);
    num_ = num_.scaled(s);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(std::uint32_t e) const {
    return RationalFunction(num_.pow(e), den_.pow(e));
}

RationalFunction RationalFunction::derivative(std::uint32_t var) const {
    if (!field().is_rationals())
        throw Error("derivative over a prime field is unsupported");
    if (is_polynomial()) return RationalFunction(num_.derivative(var));
    // (g f' - f g') / g^2
    Polynomial n = den_ * num_.derivative(var) - num_ * den_.derivative(var);
    return RationalFunction(std::move(n), den_ * den_);
}

ExactScalar RationalFunction::eval(const std::vector<ExactScalar>& point) const {
    ExactScalar d = den_.eval(point);
    if (d.is_zero()) throw DivisionByZero("denominator vanishes at evaluation point");
    return num_.eval(point) / d;
}

RationalFunction RationalFunction::substitute(
    const std::map<std::uint32_t, RationalFunction>& assignment) const {
    std::vector<RationalFunction> values;
    values.reserve(nvars());
    for (std::uint32_t v = 0; v < nvars(); ++v) {
        auto it = assignment.find(v);
        values.push_back(it != assignment.end() ? it->second
                                                : variable(field(), nvars(), v));
    }
    return substitute_all(values);
}

namespace {

RationalFunction substitute_poly(const Polynomial& p,
                                 const std::vector<RationalFunction>& values, FieldTag field,
                                 std::uint32_t out_nvars) {
    // per-variable power cache
    std::vector<std::vector<RationalFunction>> powers(values.size());
    auto power = [&](std::uint32_t var, std::uint32_t e) -> const RationalFunction& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(RationalFunction::constant(field, out_nvars, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * values[var]);
        return cache[e];
    };
    RationalFunction acc(field, out_nvars);
    for (const auto& [m, c] : p.terms()) {
        RationalFunction t = RationalFunction::constant(field, out_nvars, c);
        for (const auto& [var, exp] : m.entries()) t = t * power(var, exp);
        acc = acc + t;
    }
    return acc;
}

}  // namespace

RationalFunction RationalFunction::substitute_all(
    const std::vector<RationalFunction>& values) const {
    if (values.size() != nvars()) throw Error("substitution arity mismatch");
    // every variable is replaced, so the result lives in the values' space
    std::uint32_t out_nvars = 0;
    for (const auto& v : values) {
        check_same_field(field(), v.field(), "substitute");
        out_nvars = std::max(out_nvars, v.nvars());
    }
    RationalFunction n = substitute_poly(num_, values, field(), out_nvars);
    RationalFunction d = substitute_poly(den_, values, field(), out_nvars);
    if (d.is_zero()) throw DivisionByZero("substituted denominator is the zero polynomial");
    return n / d;
}

bool RationalFunction::equivalent_to(const RationalFunction& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::string RationalFunction::to_string(const std::vector<std::string>& names) const {
    std::string n = num_.to_string(names);
    if (den_.is_one()) return n;
    std::string d = den_.to_string(names);
    bool nwrap = num_.term_count() > 1;
    bool dwrap = den_.term_count() > 1;
    return (nwrap ? "(" + n + ")" : n) + "/" + (dwrap ? "(" + d + ")" : d);
}

}  // namespace ratrec
