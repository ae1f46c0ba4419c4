#ifndef RATREC_POLYNOMIAL_HPP
#define RATREC_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratrec/monomial.hpp"
#include "ratrec/scalar.hpp"

namespace ratrec {

/// Sparse multivariate polynomial over an exact coefficient field. Terms are
/// kept in descending graded-lex order (the canonical order used everywhere
/// for storage and printing); no zero coefficients are stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, ExactScalar, GrlexGreater>;

    Polynomial() = default;
    Polynomial(FieldTag field, std::uint32_t nvars) : field_(field), nvars_(nvars) {}

    static Polynomial constant(FieldTag field, std::uint32_t nvars, const ExactScalar& c);
    static Polynomial constant(FieldTag field, std::uint32_t nvars, long c);
    static Polynomial variable(FieldTag field, std::uint32_t nvars, std::uint32_t var);

    const FieldTag& field() const { return field_; }
    std::uint32_t nvars() const { return nvars_; }
    /// Widens the ambient variable count (never shrinks).
    void raise_nvars(std::uint32_t n) { nvars_ = std::max(nvars_, n); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    /// Combined degree; degree(0) = 0 by convention.
    std::uint64_t degree() const;

    ExactScalar coeff(const Monomial& m) const;
    ExactScalar constant_term() const { return coeff(Monomial()); }
    /// Accumulates c onto the coefficient of m, erasing on cancellation.
    void add_term(const Monomial& m, const ExactScalar& c);

    const Monomial& leading_monomial() const;   // under graded-lex; pre: nonzero
    const ExactScalar& leading_coeff() const;   // pre: nonzero

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    Polynomial scaled(const ExactScalar& c) const;
    Polynomial times_term(const Monomial& m, const ExactScalar& c) const;
    Polynomial pow(std::uint32_t e) const;

    Polynomial derivative(std::uint32_t var) const;
    ExactScalar eval(const std::vector<ExactScalar>& point) const;

    /// Exact quotient this/d, or nullopt when d does not divide this.
    std::optional<Polynomial> exact_div(const Polynomial& d) const;
    bool divisible_by(const Polynomial& d) const { return exact_div(d).has_value(); }

    /// Scalar s such that (*this)*s is unit-normalized: over Q, coprime
    /// integer coefficients with positive leading coefficient; over F_p,
    /// monic. Pre: nonzero.
    ExactScalar unit_factor() const;
    Polynomial unit_normalized() const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Canonical string under descending graded-lex, e.g. "4*x*y + 2*y".
    std::string to_string(const std::vector<std::string>& names) const;

private:
    FieldTag field_;
    std::uint32_t nvars_ = 0;
    TermMap terms_;
};

ExactScalar scalar_pow(const ExactScalar& base, std::uint64_t e);

/// Normalized multivariate GCD by recursive content / primitive part with a
/// subresultant polynomial remainder sequence. gcd(a, 0) = unit-normalized a.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

}  // namespace ratrec

#endif
