#ifndef RATREC_RECSYS_HPP
#define RATREC_RECSYS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ratrec/circuit.hpp"
#include "ratrec/rational.hpp"

namespace ratrec {

/// One update function: a rational function or a circuit. In a standard
/// system update i reads variables x1..xk (the previous values of all k
/// sequences, bound positionally); in an extended system equation i may
/// additionally read z1..z_{i-1}, the already-computed next values of the
/// preceding equations. Rational-function updates order their variables
/// x1..xk, z1..z_{i-1}; circuit updates use those same labels.
struct Update {
    std::optional<RationalFunction> rf;
    std::optional<Circuit> circuit;

    static Update rational(RationalFunction f) { return Update{std::move(f), std::nullopt}; }
    static Update from_circuit(Circuit c) { return Update{std::nullopt, std::move(c)}; }
};

/// A ratrec/polyrec system of dimension k (standard or extended).
class RecSystem {
public:
    RecSystem(FieldTag field, std::vector<std::string> names, std::vector<Update> updates,
              bool extended = false, std::uint32_t main_index = 0);

    const FieldTag& field() const { return field_; }
    std::uint32_t k() const { return (std::uint32_t)names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Update>& updates() const { return updates_; }
    bool extended() const { return extended_; }
    std::uint32_t main_index() const { return main_; }

    bool all_polynomial() const;
    /// D: the maximum degree of the updates. Circuit updates are expanded
    /// under a term budget; nullopt when any expansion exceeds it.
    std::optional<std::uint64_t> degree_bound(std::size_t circuit_term_budget = 1 << 14) const;

private:
    FieldTag field_;
    std::vector<std::string> names_;
    std::vector<Update> updates_;
    bool extended_;
    std::uint32_t main_;
};

struct InitialCondition {
    enum class Kind : std::uint8_t { numeric, symbolic, symbolic_custom };
    Kind kind = Kind::numeric;
    std::vector<ExactScalar> values;                 // numeric
    std::vector<RationalFunction> symbolic_values;   // symbolic_custom, over x1..xk

    static InitialCondition numeric(std::vector<ExactScalar> v) {
        return {Kind::numeric, std::move(v), {}};
    }
    static InitialCondition symbolic() { return {Kind::symbolic, {}, {}}; }
    static InitialCondition symbolic_custom(std::vector<RationalFunction> v) {
        return {Kind::symbolic_custom, {}, std::move(v)};
    }
};

/// Rows 0..steps of the joint trajectory, exact. Throws StepDivisionByZero
/// (with step and equation index) when a denominator vanishes.
std::vector<std::vector<ExactScalar>> evaluate(const RecSystem& sys,
                                               const InitialCondition& init,
                                               std::size_t steps);

/// One numeric step: row n+1 from row n (step_index = n, for diagnostics).
std::vector<ExactScalar> numeric_step(const RecSystem& sys,
                                      const std::vector<ExactScalar>& prev,
                                      std::size_t step_index);

/// The symbolic trajectory F_n^(i) in Q(x1..xk).
class SymbolicTrace {
public:
    SymbolicTrace(InitialCondition::Kind kind, std::vector<std::vector<RationalFunction>> rows)
        : kind_(kind), rows_(std::move(rows)) {}

    InitialCondition::Kind init_kind() const { return kind_; }
    bool canonical() const { return kind_ == InitialCondition::Kind::symbolic; }
    const std::vector<std::vector<RationalFunction>>& rows() const { return rows_; }
    std::uint32_t k() const { return rows_.empty() ? 0 : (std::uint32_t)rows_[0].size(); }

private:
    InitialCondition::Kind kind_;
    std::vector<std::vector<RationalFunction>> rows_;
};

SymbolicTrace symbolic_evaluate(const RecSystem& sys, const InitialCondition& init,
                                std::size_t steps);

/// One symbolic step: row n+1 from row n (step_index = n, for diagnostics).
std::vector<RationalFunction> symbolic_step(const RecSystem& sys,
                                            const std::vector<RationalFunction>& prev,
                                            std::size_t step_index);

/// First symbolic row F_1^(1..k): the updates applied to (x1, ..., xk).
std::vector<RationalFunction> first_symbolic_row(const RecSystem& sys);

/// The step homomorphism h: x_i -> F_1^(i); satisfies h(F_n) = F_{n+1}.
RationalFunction apply_step_homomorphism(const RecSystem& sys, const RationalFunction& f);

/// P-recursive definition: P_0(n) a_n + ... + P_d(n) a_{n+d} = 0, with
/// univariate coefficient polynomials in the index variable and initial
/// values a_0..a_d.
struct PRecurrence {
    std::uint32_t d = 0;
    std::vector<Polynomial> coeffs;    // P_0..P_d over Q, univariate
    std::vector<ExactScalar> initial;  // a_0..a_d
};

/// The (d+2)-dimensional ratrec system (u0..ud, v) whose main column u0
/// equals a_n, with v counting the index.
std::pair<RecSystem, InitialCondition> from_precursive(const PRecurrence& rec);

/// A single recursion of depth m+1: u_{n+m+1} = R(u_n, ..., u_{n+m}).
struct SimpleRecursion {
    std::uint32_t m = 0;
    RationalFunction r;                // in y0..ym
    std::vector<ExactScalar> initial;  // u_0..u_m
};

std::vector<ExactScalar> simple_evaluate(const SimpleRecursion& sr, std::size_t steps);

struct DegreeProfileRow {
    std::size_t n;
    std::uint64_t d_n;
    mpz_class bound;  // (k*D)^n
    bool ok;
};

/// Per-row maximum degree of a canonical symbolic trace against the
/// (k*D)^n growth bound.
std::vector<DegreeProfileRow> degree_profile(const SymbolicTrace& trace, std::uint32_t k,
                                             std::uint64_t D);

}  // namespace ratrec

#endif
