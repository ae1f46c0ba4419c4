#include "ratrec/polynomial.hpp"

#include <algorithm>

#include "ratrec/errors.hpp"

namespace ratrec {

Polynomial Polynomial::constant(FieldTag field, std::uint32_t nvars, const ExactScalar& c) {
    Polynomial p(field, nvars);
    check_same_field(field, c.field(), "constant");
    if (!c.is_zero()) p.terms_.emplace(Monomial(), c);
    return p;
}

Polynomial Polynomial::constant(FieldTag field, std::uint32_t nvars, long c) {
    return constant(field, nvars, ExactScalar(field, c));
}

Polynomial Polynomial::variable(FieldTag field, std::uint32_t nvars, std::uint32_t var) {
    if (var >= nvars) throw Error("variable index out of range");
    Polynomial p(field, nvars);
    p.terms_.emplace(Monomial::variable(var), ExactScalar::one(field));
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_constant() &&
           terms_.begin()->second.is_one();
}

std::uint64_t Polynomial::degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

ExactScalar Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactScalar::zero(field_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const ExactScalar& c) {
    if (c.is_zero()) return;
    check_same_field(field_, c.field(), "add_term");
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw Error("leading monomial of the zero polynomial");
    return terms_.begin()->first;
}

const ExactScalar& Polynomial::leading_coeff() const {
    if (terms_.empty()) throw Error("leading coefficient of the zero polynomial");
    return terms_.begin()->second;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(field_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_field(field_, o.field_, "poly add");
    raise_nvars(o.nvars_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_field(field_, o.field_, "poly sub");
    raise_nvars(o.nvars_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_field(a.field(), b.field(), "poly mul");
    Polynomial r(a.field(), std::max(a.nvars(), b.nvars()));
    const Polynomial& outer = a.term_count() <= b.term_count() ? a : b;
    const Polynomial& inner = a.term_count() <= b.term_count() ? b : a;
    for (const auto& [ma, ca] : outer.terms())
        for (const auto& [mb, cb] : inner.terms()) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::scaled(const ExactScalar& c) const {
    Polynomial r(field_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
    return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const ExactScalar& c) const {
    Polynomial r(field_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm * m, cc * c);
    return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
    Polynomial r = constant(field_, nvars_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return r;
}

Polynomial Polynomial::derivative(std::uint32_t var) const {
    Polynomial r(field_, nvars_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.exponent(var);
        if (e == 0) continue;
        std::vector<Monomial::Entry> es = m.entries();
        for (auto& [v, x] : es)
            if (v == var) --x;
        r.add_term(Monomial::from_entries(std::move(es)), c * ExactScalar(field_, (long)e));
    }
    return r;
}

ExactScalar scalar_pow(const ExactScalar& base, std::uint64_t e) {
    ExactScalar r = ExactScalar::one(base.field());
    ExactScalar b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return r;
}

ExactScalar Polynomial::eval(const std::vector<ExactScalar>& point) const {
    if (point.size() < nvars_) throw Error("evaluation point has too few coordinates");
    ExactScalar acc = ExactScalar::zero(field_);
    for (const auto& [m, c] : terms_) {
        ExactScalar t = c;
        for (const auto& [var, exp] : m.entries()) t *= scalar_pow(point[var], exp);
        acc += t;
    }
    return acc;
}

std::optional<Polynomial> Polynomial::exact_div(const Polynomial& d) const {
    check_same_field(field_, d.field_, "poly div");
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    Polynomial q(field_, nvars_);
    Polynomial r = *this;
    const Monomial& dm = d.leading_monomial();
    const ExactScalar& dc = d.leading_coeff();
    while (!r.is_zero()) {
        const Monomial& rm = r.leading_monomial();
        if (!dm.divides(rm)) return std::nullopt;
        Monomial qm = rm.divided_by(dm);
        ExactScalar qc = r.leading_coeff() / dc;
        q.add_term(qm, qc);
        r -= d.times_term(qm, qc);
    }
    return q;
}

ExactScalar Polynomial::unit_factor() const {
    if (is_zero()) throw Error("unit factor of the zero polynomial");
    if (field_.is_prime()) return leading_coeff().inverse();
    // over Q: s = lcm(denominators) / gcd(numerators), signed by the leading coefficient
    mpz_class g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        (void)m;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.value().get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den().get_mpz_t());
    }
    mpq_class s(l, g);
    s.canonicalize();
    if (sgn(leading_coeff().value()) < 0) s = -s;
    return ExactScalar(field_, s);
}

Polynomial Polynomial::unit_normalized() const {
    if (is_zero()) return *this;
    return scaled(unit_factor());
}

bool Polynomial::operator==(const Polynomial& o) const {
    // the ambient variable count is bookkeeping, not identity
    if (!(field_ == o.field_) || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpq_class v = c.value();
        bool neg = field_.is_rationals() && sgn(v) < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        mpq_class mag = neg ? mpq_class(-v) : v;
        std::string cs = mag.get_str();
        if (m.is_constant()) {
            out += cs;
        } else {
            if (cs != "1") {
                out += cs;
                out += "*";
            }
            bool firstv = true;
            for (const auto& [var, exp] : m.entries()) {
                if (!firstv) out += "*";
                firstv = false;
                out += var < names.size() ? names[var] : "x" + std::to_string(var + 1);
                if (exp > 1) out += "^" + std::to_string(exp);
            }
        }
    }
    return out;
}

}  // namespace ratrec
