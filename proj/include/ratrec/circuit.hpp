#ifndef RATREC_CIRCUIT_HPP
#define RATREC_CIRCUIT_HPP

#include <map>
#include <string>
#include <vector>

#include "ratrec/polynomial.hpp"
#include "ratrec/rational.hpp"

namespace ratrec {

struct Gate {
    enum class Kind : std::uint8_t { input, constant, add, mul };
    Kind kind;
    std::string label;        // input gates
    ExactScalar value;        // constant gates
    std::uint32_t lhs = 0;    // add/mul operands; always reference earlier gates
    std::uint32_t rhs = 0;
};

struct CircuitStats {
    std::size_t size;   // gate count, every gate counts 1
    std::size_t depth;  // longest input-to-output path
};

/// Arithmetic-circuit IR: a DAG of input/constant/add/mul gates in topological
/// numbering with one or more designated outputs. Immutable once built;
/// evaluation is pure.
class Circuit {
public:
    explicit Circuit(FieldTag field) : field_(field) {}

    std::uint32_t add_input(const std::string& label);
    std::uint32_t add_constant(const ExactScalar& value);
    std::uint32_t add_add(std::uint32_t l, std::uint32_t r);
    std::uint32_t add_mul(std::uint32_t l, std::uint32_t r);
    /// a - b, desugared to a + (-1)*b.
    std::uint32_t add_sub(std::uint32_t l, std::uint32_t r);
    void set_outputs(std::vector<std::uint32_t> outputs);

    const FieldTag& field() const { return field_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<std::uint32_t>& outputs() const { return outputs_; }
    std::uint32_t single_output() const;
    /// Distinct input labels in first-appearance order.
    std::vector<std::string> input_labels() const;

    /// Value of the single output under the assignment.
    ExactScalar eval(const std::map<std::string, ExactScalar>& inputs) const;
    std::vector<ExactScalar> eval_all(const std::map<std::string, ExactScalar>& inputs) const;
    /// Symbolic evaluation with rational functions as input values.
    std::vector<RationalFunction> eval_symbolic(
        const std::map<std::string, RationalFunction>& inputs) const;

    /// Expands the single output to an explicit polynomial with the given
    /// variable binding; throws ResourceLimit once any intermediate exceeds
    /// max_terms terms.
    Polynomial to_polynomial(const std::vector<std::string>& var_names,
                             std::size_t max_terms) const;
    /// Same, binding variables to input labels in first-appearance order.
    Polynomial to_polynomial(std::size_t max_terms) const;

    CircuitStats stats() const;

private:
    void check_ref_(std::uint32_t id) const;

    FieldTag field_;
    std::vector<Gate> gates_;
    std::vector<std::uint32_t> outputs_;
};

/// Fuses the circuits of an extended polyrec system (circuit i computes
/// update i from inputs x1..xk and z1..z_{i-1}) into one k-output circuit:
/// duplicate x inputs are merged and every z_j input is replaced by the
/// output gate of circuit j. Throws Error on a z reference to a non-preceding
/// equation.
Circuit fuse_extended(const std::vector<Circuit>& circuits);

}  // namespace ratrec

#endif
