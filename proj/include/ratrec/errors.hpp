#ifndef RATREC_ERRORS_HPP
#define RATREC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratrec {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed text input (expression, formula, JSON field).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Operands live over different coefficient fields.
class FieldMismatch : public Error {
public:
    explicit FieldMismatch(const std::string& msg) : Error(msg) {}
};

// Division by a zero scalar, zero polynomial or zero rational function.
class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

// A denominator vanished while stepping a recursive system; carries where.
class StepDivisionByZero : public DivisionByZero {
public:
    StepDivisionByZero(std::size_t step_, std::size_t equation_)
        : DivisionByZero("division by zero at step " + std::to_string(step_) +
                         ", equation " + std::to_string(equation_)),
          step(step_), equation(equation_) {}
    std::size_t step;
    std::size_t equation;
};

// A denominator became the zero polynomial during a symbolic step.
class IllDefinedSymbolicStep : public Error {
public:
    IllDefinedSymbolicStep(std::size_t step_, std::size_t equation_)
        : Error("identically zero denominator at symbolic step " + std::to_string(step_) +
                ", equation " + std::to_string(equation_)),
          step(step_), equation(equation_) {}
    std::size_t step;
    std::size_t equation;
};

// A configured budget was exhausted (term count, pair queue, depth limit).
class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& msg) : Error(msg) {}
};

// A guaranteed bound was violated; indicates a bug, not bad input.
class BoundExceeded : public Error {
public:
    explicit BoundExceeded(const std::string& msg) : Error(msg) {}
};

// A result failed its mandatory post-hoc verification; indicates a bug.
class InternalInconsistency : public Error {
public:
    explicit InternalInconsistency(const std::string& msg) : Error(msg) {}
};

}  // namespace ratrec

#endif
