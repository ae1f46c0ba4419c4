#ifndef RATREC_FLATTEN_HPP
#define RATREC_FLATTEN_HPP

#include <optional>

#include "ratrec/groebner.hpp"
#include "ratrec/recsys.hpp"

namespace ratrec {

/// k + k^3 * ceil(log2(k*D)): the guaranteed stabilization depth of the
/// canonical field chain (base-2 ceiling, the conservative choice).
unsigned long stabilization_bound(std::uint32_t k, std::uint64_t D);

/// The ascending field chain Q(F_0) <= Q(F_0, F_1) <= ... of main-sequence
/// values, with the transcendence degree of every prefix.
struct FieldChain {
    std::vector<RationalFunction> generators;
    std::vector<std::uint32_t> trdegs;
};

/// Transcendence degree of Q(gens) over Q, by the exact rank of the Jacobian
/// [dg_i/dx_j] over Q(x) (fraction-free elimination; characteristic 0 only).
/// A seeded random integer evaluation serves as a fast full-rank pre-check;
/// the exact path is authoritative.
std::uint32_t transcendence_degree(const std::vector<RationalFunction>& gens,
                                   std::uint64_t seed = 0);

/// Decides f in Q(gens). Tag ideal with denominator saturation, Groebner
/// basis under the block elimination order {x, w} >> {z} >> {y}, then the
/// reduced basis is searched for an element B(y)*z - A(y) with B(gens) != 0;
/// the answer A/B (in tag variables indexed 0..m-1) is verified by exact
/// substitution before being returned.
std::optional<RationalFunction> subfield_membership(const RationalFunction& f,
                                                    const std::vector<RationalFunction>& gens,
                                                    const GroebnerOptions& gopt = {},
                                                    std::uint64_t seed = 0);

/// Chain generators F_n^(main) and prefix transcendence degrees of a trace.
FieldChain chain_report(const SymbolicTrace& trace, std::uint32_t main_index = 0,
                        std::uint64_t seed = 0);

struct FlattenResult {
    std::uint32_t m = 0;         // least depth with F_{m+1} in Q(F_0..F_m)
    RationalFunction r;          // in y0..ym
    Polynomial cancelling;       // y_{m+1}*den(R) - num(R), in y0..y_{m+1}
    bool verified = false;       // identity checked exactly for n = 0 and 1
    unsigned long bound_used = 0;  // enforced guard (canonical mode), else 0
    std::vector<std::uint32_t> trdegs;  // trdeg of prefixes F_0..F_i, i <= m
};

struct FlattenOptions {
    std::size_t depth_limit = 64;  // search cap when the chain guard does not apply
    std::uint64_t seed = 0;
    GroebnerOptions groebner;
};

/// Builds the field chain of the system's main sequence and extracts the
/// simple recursion: the least m with F_{m+1} in Q(F_0, ..., F_m), the
/// rational function R with F_{n+m+1} = R(F_n..F_{n+m}), and the cancelling
/// polynomial. Canonical (Symbolic) mode enforces the stabilization bound;
/// SymbolicCustom mode searches up to the configured depth limit.
FlattenResult flatten(const RecSystem& sys, const InitialCondition& init,
                      const FlattenOptions& opt = {});

}  // namespace ratrec

#endif
