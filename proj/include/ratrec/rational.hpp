#ifndef RATREC_RATIONAL_HPP
#define RATREC_RATIONAL_HPP

#include <map>
#include <string>
#include <vector>

#include "ratrec/polynomial.hpp"

namespace ratrec {

/// A reduced fraction of two polynomials. Invariants: gcd(num, den) is a
/// unit; the denominator is unit-normalized (content-free with positive
/// leading coefficient over Q, monic over F_p); zero is 0/1. Equality is
/// representational equality of the canonical form.
class RationalFunction {
public:
    RationalFunction() : RationalFunction(FieldTag::rationals(), 0) {}
    RationalFunction(FieldTag field, std::uint32_t nvars);  // zero
    /// Reduces and normalizes; throws DivisionByZero when den is zero.
    RationalFunction(Polynomial num, Polynomial den);
    /// Polynomial as a fraction over 1.
    explicit RationalFunction(Polynomial num);

    static RationalFunction constant(FieldTag field, std::uint32_t nvars, const ExactScalar& c);
    static RationalFunction constant(FieldTag field, std::uint32_t nvars, long c);
    static RationalFunction variable(FieldTag field, std::uint32_t nvars, std::uint32_t var);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const FieldTag& field() const { return num_.field(); }
    std::uint32_t nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    /// max(deg num, deg den).
    std::uint64_t degree() const { return std::max(num_.degree(), den_.degree()); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction inverse() const;
    RationalFunction pow(std::uint32_t e) const;

    /// Quotient-rule derivative; only defined over Q.
    RationalFunction derivative(std::uint32_t var) const;

    /// Exact scalar evaluation; throws DivisionByZero when den vanishes.
    ExactScalar eval(const std::vector<ExactScalar>& point) const;

    /// Composition: substitutes assignment[i] for variable i. Missing keys
    /// keep the variable (identity). Throws DivisionByZero when the
    /// substituted denominator is the zero polynomial.
    RationalFunction substitute(const std::map<std::uint32_t, RationalFunction>& assignment) const;
    /// Substitutes values[i] for variable i; values.size() == nvars.
    RationalFunction substitute_all(const std::vector<RationalFunction>& values) const;

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }
    /// Cross-multiplication equality num(a)den(b) == num(b)den(a).
    bool equivalent_to(const RationalFunction& o) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void reduce_();

    Polynomial num_;
    Polynomial den_;
};

}  // namespace ratrec

#endif
