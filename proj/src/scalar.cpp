#include "ratrec/scalar.hpp"

namespace ratrec {

bool is_prime_number(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldTag FieldTag::prime(unsigned long p) {
    if (!is_prime_number(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    return FieldTag{FieldKind::prime, p};
}

std::string FieldTag::to_string() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p);
}

void check_same_field(const FieldTag& a, const FieldTag& b, const char* what) {
    if (!(a == b))
        throw FieldMismatch(std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
}

ExactScalar::ExactScalar(FieldTag field, long value) : field_(field), v_(value) {
    canonicalize_();
}

ExactScalar::ExactScalar(FieldTag field, const mpz_class& value) : field_(field), v_(value) {
    canonicalize_();
}

ExactScalar::ExactScalar(FieldTag field, const mpq_class& value) : field_(field), v_(value) {
    v_.canonicalize();
    canonicalize_();
}

void ExactScalar::canonicalize_() {
    if (field_.is_rationals()) return;
    mpz_class p(field_.p);
    mpz_class num = v_.get_num();
    mpz_class den = v_.get_den();
    if (den != 1) {
        // value given as a fraction: residue is num * den^{-1} mod p
        mpz_class inv;
        mpz_mod(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw DivisionByZero("denominator is 0 mod " + std::to_string(field_.p));
        num *= inv;
    }
    mpz_mod(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());  // result in [0, p)
    v_ = mpq_class(num);
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r(*this);
    r.v_ = -r.v_;
    r.canonicalize_();
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    check_same_field(field_, o.field_, "add");
    v_ += o.v_;
    canonicalize_();
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    check_same_field(field_, o.field_, "sub");
    v_ -= o.v_;
    canonicalize_();
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    check_same_field(field_, o.field_, "mul");
    v_ *= o.v_;
    canonicalize_();
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    check_same_field(field_, o.field_, "div");
    return *this *= o.inverse();
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field_.to_string());
    ExactScalar r(*this);
    if (field_.is_rationals()) {
        r.v_ = 1 / v_;
    } else {
        mpz_class p(field_.p), inv, num = v_.get_num();
        mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        r.v_ = mpq_class(inv);
        r.canonicalize_();
    }
    return r;
}

std::string ExactScalar::to_string() const {
    return v_.get_str();
}

}  // namespace ratrec
