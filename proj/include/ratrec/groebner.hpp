#ifndef RATREC_GROEBNER_HPP
#define RATREC_GROEBNER_HPP

#include <atomic>
#include <cstddef>
#include <vector>

#include "ratrec/polynomial.hpp"

namespace ratrec {

struct GroebnerOptions {
    std::size_t max_pairs = 500000;           // processed S-pair budget
    std::size_t max_basis = 20000;            // intermediate basis size cap
    const std::atomic<bool>* cancel = nullptr;  // cooperative cancellation
};

/// Reduced Groebner basis of the ideal generated by `gens` under `order`:
/// pairwise non-divisible leading monomials, fully tail-reduced, monic,
/// sorted by ascending leading monomial. Buchberger with the sugar selection
/// strategy and the Gebauer-Moeller pair update.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens,
                                   const MonomialOrder& order,
                                   const GroebnerOptions& opt = {});

/// Full normal form (remainder) of f modulo `basis` under `order`. Unique
/// when `basis` is a Groebner basis; zero iff f lies in the ideal then.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);

}  // namespace ratrec

#endif
