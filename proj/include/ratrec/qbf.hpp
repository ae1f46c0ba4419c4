#ifndef RATREC_QBF_HPP
#define RATREC_QBF_HPP

#include <optional>
#include <string>
#include <vector>

#include "ratrec/recsys.hpp"

namespace ratrec {

/// Quantifier-free Boolean AST over {var, not, and, or}.
struct BoolExpr {
    enum class Kind : std::uint8_t { var, negation, conjunction, disjunction };
    Kind kind = Kind::var;
    std::string name;             // var
    std::vector<BoolExpr> kids;   // 1 for not, 2 for and/or

    static BoolExpr variable(std::string n) { return BoolExpr{Kind::var, std::move(n), {}}; }
    static BoolExpr negate(BoolExpr e);
    static BoolExpr conj(BoolExpr a, BoolExpr b);
    static BoolExpr disj(BoolExpr a, BoolExpr b);
};

enum class Quantifier : std::uint8_t { exists, forall };

struct QbfFormula {
    std::vector<std::pair<Quantifier, std::string>> prefix;
    BoolExpr matrix;
    std::uint32_t k() const { return (std::uint32_t)prefix.size(); }
};

/// Parses the prenex text format ("exists x1; forall x2; (x1 | x2)") or
/// QDIMACS (detected by its "p cnf" header).
QbfFormula parse_qbf(const std::string& text);

/// Validity by full assignment recursion respecting the prefix.
bool brute_force_qbf(const QbfFormula& f, std::uint32_t limit = 16);

/// Encodes a Boolean AST as an arithmetic circuit via P_x = x,
/// P_{not a} = 1 - P_a, P_{a and b} = P_a * P_b, P_{a or b} derived. On
/// {0,1} inputs the circuit value equals the truth value over any field.
Circuit bool_to_circuit(const BoolExpr& matrix, FieldTag field);

/// The compiled reduction: an extended polyrec system whose main column is
/// zero on a full period iff the formula is invalid.
struct ReductionOutput {
    RecSystem system;
    InitialCondition init;  // all zeros
    std::uint32_t k = 0;
    std::size_t horizon = 0;  // 2^k + 1 rows decide validity
    std::vector<std::pair<std::string, std::string>> sequence_map;  // name -> role
};

/// Builds the c/d/f sequence system for an arbitrary prenex QBF; the
/// combiner of level i is OR for an existential x_i and AND for a universal
/// one. Works over any field using only the constants 0 and 1.
ReductionOutput compile_qbf(const QbfFormula& f, FieldTag field);

struct ValidityResult {
    bool valid = false;
    std::optional<bool> oracle_agrees;
};

/// Compiles, fuses to a standard system, evaluates 2^k + 1 steps and reads
/// validity off the main column; optionally cross-checks the brute-force
/// oracle.
ValidityResult check_validity_via_sequence(const QbfFormula& f, FieldTag field,
                                           bool with_oracle = false);

}  // namespace ratrec

#endif
