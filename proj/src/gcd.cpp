#include <map>

#include "ratrec/errors.hpp"
#include "ratrec/polynomial.hpp"

namespace ratrec {

namespace {

// univariate view in `var`: exponent -> coefficient polynomial (var-free)
using UniView = std::map<std::uint32_t, Polynomial>;

UniView uni_view(const Polynomial& p, std::uint32_t var) {
    UniView v;
    for (const auto& [m, c] : p.terms()) {
        std::uint32_t e = m.exponent(var);
        std::vector<Monomial::Entry> rest;
        for (const auto& en : m.entries())
            if (en.first != var) rest.push_back(en);
        auto [it, fresh] = v.try_emplace(e, Polynomial(p.field(), p.nvars()));
        (void)fresh;
        it->second.add_term(Monomial::from_entries(std::move(rest)), c);
    }
    return v;
}

Polynomial from_uni_view(const UniView& v, std::uint32_t var, FieldTag field,
                         std::uint32_t nvars) {
    Polynomial p(field, nvars);
    for (const auto& [e, cp] : v)
        for (const auto& [m, c] : cp.terms()) p.add_term(m * Monomial::variable(var, e), c);
    return p;
}

std::uint32_t uni_degree(const UniView& v) { return v.empty() ? 0 : v.rbegin()->first; }

const Polynomial& uni_lc(const UniView& v) { return v.rbegin()->second; }

UniView uni_scale(const UniView& v, const Polynomial& s) {
    UniView r;
    for (const auto& [e, cp] : v) {
        Polynomial p = cp * s;
        if (!p.is_zero()) r.emplace(e, std::move(p));
    }
    return r;
}

UniView uni_sub(UniView a, const UniView& b) {
    for (const auto& [e, cp] : b) {
        auto it = a.find(e);
        if (it == a.end()) {
            a.emplace(e, -cp);
        } else {
            it->second -= cp;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    return a;
}

UniView uni_shift(const UniView& v, std::uint32_t k) {
    UniView r;
    for (const auto& [e, cp] : v) r.emplace(e + k, cp);
    return r;
}

UniView uni_exact_div(const UniView& v, const Polynomial& d) {
    UniView r;
    for (const auto& [e, cp] : v) {
        auto q = cp.exact_div(d);
        if (!q) throw Error("inexact division in subresultant sequence");
        r.emplace(e, std::move(*q));
    }
    return r;
}

// pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B, in `var`
UniView uni_prem(UniView a, const UniView& b) {
    std::uint32_t db = uni_degree(b);
    const Polynomial& lb = uni_lc(b);
    std::uint32_t steps = uni_degree(a) >= db ? uni_degree(a) - db + 1 : 0;
    while (!a.empty() && uni_degree(a) >= db) {
        Polynomial la = uni_lc(a);
        std::uint32_t shift = uni_degree(a) - db;
        a = uni_sub(uni_scale(a, lb), uni_shift(uni_scale(b, la), shift));
        --steps;
    }
    // complete the lc(B)^(delta+1) normalization if fewer steps were needed
    Polynomial extra = Polynomial::constant(lb.field(), lb.nvars(), 1);
    for (std::uint32_t i = 0; i < steps; ++i) extra = extra * lb;
    return steps == 0 ? a : uni_scale(a, extra);
}

// content of p with respect to var: gcd of the coefficient polynomials
Polynomial content_in(const Polynomial& p, std::uint32_t var) {
    Polynomial c(p.field(), p.nvars());
    for (const auto& [e, cp] : uni_view(p, var)) {
        (void)e;
        c = poly_gcd(c, cp);
        if (c.is_one()) break;
    }
    return c;
}

Polynomial one_poly(const Polynomial& like) {
    return Polynomial::constant(like.field(), like.nvars(), 1);
}

// subresultant PRS on primitive inputs; returns the primitive gcd in var
Polynomial prs_gcd(Polynomial a, Polynomial b, std::uint32_t var) {
    UniView A = uni_view(a, var);
    UniView B = uni_view(b, var);
    if (uni_degree(A) < uni_degree(B)) std::swap(A, B);
    Polynomial g = one_poly(a);
    Polynomial h = one_poly(a);
    while (true) {
        std::uint32_t delta = uni_degree(A) - uni_degree(B);
        UniView R = uni_prem(A, B);
        if (R.empty()) break;
        if (uni_degree(R) == 0) {
            // a nonzero constant (in var) remainder: primitive parts are coprime
            return one_poly(a);
        }
        A = std::move(B);
        Polynomial divisor = g;
        for (std::uint32_t i = 0; i < delta; ++i) divisor = divisor * h;
        B = uni_exact_div(R, divisor);
        g = uni_lc(A);
        if (delta > 0) {
            Polynomial hn = g.pow(delta);
            for (std::uint32_t i = 0; i + 1 < delta; ++i) {
                auto q = hn.exact_div(h);
                if (!q) throw Error("inexact division in subresultant sequence");
                hn = std::move(*q);
            }
            h = std::move(hn);
        }
    }
    Polynomial result = from_uni_view(B, var, a.field(), a.nvars());
    auto cont = content_in(result, var);
    auto pp = result.exact_div(cont);
    if (!pp) throw Error("inexact primitive part");
    return *pp;
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    check_same_field(a.field(), b.field(), "gcd");
    if (a.is_zero()) return b.is_zero() ? b : b.unit_normalized();
    if (b.is_zero()) return a.unit_normalized();
    if (a.is_constant() || b.is_constant()) return one_poly(a);

    // main variable: the smallest index occurring in either operand
    std::uint32_t var = UINT32_MAX;
    for (const auto& [m, c] : a.terms()) {
        (void)c;
        if (!m.entries().empty()) var = std::min(var, m.entries().front().first);
    }
    for (const auto& [m, c] : b.terms()) {
        (void)c;
        if (!m.entries().empty()) var = std::min(var, m.entries().front().first);
    }

    UniView av = uni_view(a, var);
    UniView bv = uni_view(b, var);
    if (uni_degree(av) == 0) return poly_gcd(a, content_in(b, var)).unit_normalized();
    if (uni_degree(bv) == 0) return poly_gcd(content_in(a, var), b).unit_normalized();

    Polynomial ca = content_in(a, var);
    Polynomial cb = content_in(b, var);
    Polynomial ppa = *a.exact_div(ca);
    Polynomial ppb = *b.exact_div(cb);
    Polynomial g = prs_gcd(ppa, ppb, var) * poly_gcd(ca, cb);
    return g.unit_normalized();
}

}  // namespace ratrec
