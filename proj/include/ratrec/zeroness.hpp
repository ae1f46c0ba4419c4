#ifndef RATREC_ZERONESS_HPP
#define RATREC_ZERONESS_HPP

#include <optional>

#include "ratrec/recsys.hpp"

namespace ratrec {

/// Outcome of a zeroness probe. Zero is a sound certificate and is emitted
/// only by the finite-field procedure; AllZeroUpTo carries no certificate.
struct ZeronessVerdict {
    enum class Kind : std::uint8_t { zero, nonzero, all_zero_up_to, division_by_zero };
    Kind kind;
    std::size_t n = 0;        // witness index (nonzero) or failing step
    ExactScalar value;        // witness value
    std::size_t bound = 0;    // number of entries checked (all_zero_up_to)
    std::size_t equation = 0; // failing equation (division_by_zero)

    bool is_zero() const { return kind == Kind::zero; }
};

/// Sound and complete zeroness over F_p: walk the k-tuple state until a state
/// repeats (at most p^k + 1 steps) and report Zero iff the main column is
/// zero on the explored prefix.
ZeronessVerdict zeroness_finite_field(const RecSystem& sys, const InitialCondition& init);

/// The naive prefix probe over Q: checks the first p+2 entries where
/// p = k + k^3*ceil(log2(kD)), or override_bound entries. Never returns Zero;
/// an all-zero prefix yields AllZeroUpTo (deliberately certificate-free).
ZeronessVerdict prefix_zero_check(const RecSystem& sys, const InitialCondition& init,
                                  std::optional<std::size_t> override_bound = std::nullopt);

/// Least n <= bound with main-column value 0, if any. Division-by-zero events
/// halt the search with StepDivisionByZero; they are not zeros.
std::optional<std::size_t> skolem_search(const RecSystem& sys, const InitialCondition& init,
                                         std::size_t bound);

/// The naive-probe counterexample: dimension-2, degree-d polyrec with main
/// column u_n = P(n) for P(x) = x(x-1)...(x-d+1); entries 0..d-1 vanish and
/// u_d = d!.
std::pair<RecSystem, InitialCondition> counterexample_system(std::uint32_t d);

}  // namespace ratrec

#endif
