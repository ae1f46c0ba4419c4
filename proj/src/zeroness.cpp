#include "ratrec/zeroness.hpp"

#include <set>

#include "ratrec/errors.hpp"
#include "ratrec/flatten.hpp"

namespace ratrec {

ZeronessVerdict zeroness_finite_field(const RecSystem& sys, const InitialCondition& init) {
    if (!sys.field().is_prime())
        throw Error("finite-field zeroness needs a prime coefficient field");
    if (init.kind != InitialCondition::Kind::numeric || init.values.size() != sys.k())
        throw Error("finite-field zeroness needs a numeric initial condition");

    mpz_class cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), sys.field().p, sys.k());
    ++cap;  // p^k + 1, the hard cap from the periodicity argument

    auto key_of = [&](const std::vector<ExactScalar>& row) {
        std::vector<unsigned long> key;
        key.reserve(row.size());
        for (const auto& v : row) key.push_back(v.value().get_num().get_ui());
        return key;
    };

    std::set<std::vector<unsigned long>> seen;
    std::vector<ExactScalar> row = init.values;
    mpz_class steps = 0;
    for (;;) {
        const ExactScalar& u = row[sys.main_index()];
        if (!u.is_zero())
            return ZeronessVerdict{ZeronessVerdict::Kind::nonzero,
                                   (std::size_t)steps.get_ui(), u, 0, 0};
        if (!seen.insert(key_of(row)).second)
            return ZeronessVerdict{ZeronessVerdict::Kind::zero, 0,
                                   ExactScalar::zero(sys.field()),
                                   (std::size_t)steps.get_ui(), 0};
        if (steps > cap)
            throw InternalInconsistency("state walk exceeded the p^k + 1 periodicity cap");
        try {
            row = numeric_step(sys, row, (std::size_t)steps.get_ui());
        } catch (const StepDivisionByZero& e) {
            return ZeronessVerdict{ZeronessVerdict::Kind::division_by_zero, e.step,
                                   ExactScalar::zero(sys.field()), 0, e.equation};
        }
        ++steps;
    }
}

ZeronessVerdict prefix_zero_check(const RecSystem& sys, const InitialCondition& init,
                                  std::optional<std::size_t> override_bound) {
    if (!sys.field().is_rationals()) throw Error("prefix probe is defined over Q");
    if (init.kind != InitialCondition::Kind::numeric || init.values.size() != sys.k())
        throw Error("prefix probe needs a numeric initial condition");

    std::size_t entries;
    if (override_bound) {
        entries = *override_bound;
    } else {
        auto D = sys.degree_bound();
        if (!D) throw Error("cannot determine the update degree; pass an explicit bound");
        entries = (std::size_t)stabilization_bound(sys.k(), std::max<std::uint64_t>(*D, 1)) + 2;
    }

    std::vector<ExactScalar> row = init.values;
    for (std::size_t n = 0; n < entries; ++n) {
        const ExactScalar& u = row[sys.main_index()];
        if (!u.is_zero())
            return ZeronessVerdict{ZeronessVerdict::Kind::nonzero, n, u, 0, 0};
        if (n + 1 < entries) {
            try {
                row = numeric_step(sys, row, n);
            } catch (const StepDivisionByZero& e) {
                return ZeronessVerdict{ZeronessVerdict::Kind::division_by_zero, e.step,
                                       ExactScalar::zero(sys.field()), 0, e.equation};
            }
        }
    }
    return ZeronessVerdict{ZeronessVerdict::Kind::all_zero_up_to, 0,
                           ExactScalar::zero(sys.field()), entries, 0};
}

std::optional<std::size_t> skolem_search(const RecSystem& sys, const InitialCondition& init,
                                         std::size_t bound) {
    if (init.kind != InitialCondition::Kind::numeric || init.values.size() != sys.k())
        throw Error("skolem search needs a numeric initial condition");
    std::vector<ExactScalar> row = init.values;
    for (std::size_t n = 0; n <= bound; ++n) {
        if (row[sys.main_index()].is_zero()) return n;
        if (n < bound) row = numeric_step(sys, row, n);
    }
    return std::nullopt;
}

std::pair<RecSystem, InitialCondition> counterexample_system(std::uint32_t d) {
    if (d < 1) throw Error("counterexample needs d >= 1");
    FieldTag field = FieldTag::rationals();
    // P(x) = x(x-1)...(x-d+1); the u update is P(v+1), the v update v+1
    Polynomial vp1 = Polynomial::variable(field, 2, 1) + Polynomial::constant(field, 2, 1);
    Polynomial update_u = Polynomial::constant(field, 2, 1);
    for (std::uint32_t j = 0; j < d; ++j)
        update_u = update_u * (vp1 - Polynomial::constant(field, 2, (long)j));
    std::vector<Update> updates;
    updates.push_back(Update::rational(RationalFunction(update_u)));
    updates.push_back(Update::rational(RationalFunction(vp1)));
    RecSystem sys(field, {"u", "v"}, std::move(updates), false, 0);
    std::vector<ExactScalar> init{ExactScalar::zero(field), ExactScalar::zero(field)};
    return {std::move(sys), InitialCondition::numeric(std::move(init))};
}

}  // namespace ratrec
