#ifndef RATREC_SCALAR_HPP
#define RATREC_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ratrec/errors.hpp"

namespace ratrec {

enum class FieldKind : std::uint8_t { rationals, prime };

bool is_prime_number(unsigned long n);

/// Coefficient field: the rationals Q, or F_p for a prime p.
struct FieldTag {
    FieldKind kind = FieldKind::rationals;
    unsigned long p = 0;

    static FieldTag rationals() { return FieldTag{}; }
    static FieldTag prime(unsigned long p);  // throws Error unless p is prime

    bool is_rationals() const { return kind == FieldKind::rationals; }
    bool is_prime() const { return kind == FieldKind::prime; }
    bool operator==(const FieldTag&) const = default;
    std::string to_string() const;
};

/// An exact field element: reduced fraction over Q, canonical residue in
/// [0, p) over F_p. Immutable value semantics; all operations are pure.
class ExactScalar {
public:
    ExactScalar() : field_(FieldTag::rationals()), v_(0) {}
    explicit ExactScalar(FieldTag field) : field_(field), v_(0) {}
    ExactScalar(FieldTag field, long value);
    ExactScalar(FieldTag field, const mpz_class& value);
    ExactScalar(FieldTag field, const mpq_class& value);

    static ExactScalar zero(FieldTag field) { return ExactScalar(field); }
    static ExactScalar one(FieldTag field) { return ExactScalar(field, 1L); }

    const FieldTag& field() const { return field_; }
    /// Canonical representation: reduced fraction (Q) or integer residue (F_p).
    const mpq_class& value() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);  // throws DivisionByZero

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    ExactScalar inverse() const;  // throws DivisionByZero on 0

    bool operator==(const ExactScalar& o) const { return field_ == o.field_ && v_ == o.v_; }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }

    /// Decimal string: "6", "-3/2"; residues print as "0".."p-1".
    std::string to_string() const;

private:
    void canonicalize_();

    FieldTag field_;
    mpq_class v_;
};

void check_same_field(const FieldTag& a, const FieldTag& b, const char* what);

}  // namespace ratrec

#endif
