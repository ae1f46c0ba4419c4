#include "ratrec/recsys.hpp"

#include <algorithm>
#include <set>

#include "ratrec/errors.hpp"

namespace ratrec {

RecSystem::RecSystem(FieldTag field, std::vector<std::string> names,
                     std::vector<Update> updates, bool extended, std::uint32_t main_index)
    : field_(field),
      names_(std::move(names)),
      updates_(std::move(updates)),
      extended_(extended),
      main_(main_index) {
    if (names_.empty()) throw Error("system needs at least one sequence");
    if (names_.size() != updates_.size()) throw Error("one update per sequence required");
    if (main_ >= names_.size()) throw Error("main sequence index out of range");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw Error("duplicate sequence names");
    std::uint32_t k = (std::uint32_t)names_.size();
    for (std::uint32_t i = 0; i < k; ++i) {
        const Update& u = updates_[i];
        if (u.rf.has_value() == u.circuit.has_value())
            throw Error("update must be exactly one of expression or circuit");
        if (u.rf) {
            check_same_field(field_, u.rf->field(), "update");
            std::uint32_t want = extended_ ? k + i : k;
            if (u.rf->nvars() > want) throw Error("update reads undefined variables");
        } else {
            check_same_field(field_, u.circuit->field(), "update");
        }
    }
}

bool RecSystem::all_polynomial() const {
    for (const auto& u : updates_)
        if (u.rf && !u.rf->is_polynomial()) return false;
    return true;  // circuits always denote polynomials
}

std::optional<std::uint64_t> RecSystem::degree_bound(std::size_t circuit_term_budget) const {
    std::uint64_t d = 0;
    std::uint32_t k = (std::uint32_t)names_.size();
    for (std::uint32_t i = 0; i < updates_.size(); ++i) {
        const Update& u = updates_[i];
        if (u.rf) {
            d = std::max(d, u.rf->degree());
        } else {
            std::vector<std::string> labels;
            for (std::uint32_t j = 1; j <= k; ++j) labels.push_back("x" + std::to_string(j));
            for (std::uint32_t j = 1; j <= i; ++j) labels.push_back("z" + std::to_string(j));
            try {
                d = std::max(d, u.circuit->to_polynomial(labels, circuit_term_budget).degree());
            } catch (const ResourceLimit&) {
                return std::nullopt;
            }
        }
    }
    return d;
}

namespace {

// positional input map x1..xk (+ z1..z_{i-1}) for circuit updates
template <class V>
std::map<std::string, V> label_inputs(const std::vector<V>& prev, const std::vector<V>& next,
                                      std::uint32_t eq) {
    std::map<std::string, V> in;
    for (std::uint32_t j = 0; j < prev.size(); ++j)
        in.emplace("x" + std::to_string(j + 1), prev[j]);
    for (std::uint32_t j = 0; j < eq && j < next.size(); ++j)
        in.emplace("z" + std::to_string(j + 1), next[j]);
    return in;
}

}  // namespace

std::vector<std::vector<ExactScalar>> evaluate(const RecSystem& sys,
                                               const InitialCondition& init,
                                               std::size_t steps) {
    if (init.kind != InitialCondition::Kind::numeric)
        throw Error("numeric evaluation needs a numeric initial condition");
    if (init.values.size() != sys.k()) throw Error("initial condition arity mismatch");
    for (const auto& v : init.values) check_same_field(sys.field(), v.field(), "initial");

    std::vector<std::vector<ExactScalar>> rows;
    rows.reserve(steps + 1);
    rows.push_back(init.values);
    for (std::size_t n = 0; n < steps; ++n) rows.push_back(numeric_step(sys, rows.back(), n));
    return rows;
}

std::vector<ExactScalar> numeric_step(const RecSystem& sys,
                                      const std::vector<ExactScalar>& prev,
                                      std::size_t step_index) {
    std::vector<ExactScalar> next;
    next.reserve(sys.k());
    for (std::uint32_t i = 0; i < sys.k(); ++i) {
        const Update& u = sys.updates()[i];
        try {
            if (u.rf) {
                std::vector<ExactScalar> point = prev;
                if (sys.extended())
                    for (std::uint32_t j = 0; j < i; ++j) point.push_back(next[j]);
                next.push_back(u.rf->eval(point));
            } else {
                next.push_back(u.circuit->eval(label_inputs(prev, next, i)));
            }
        } catch (const DivisionByZero&) {
            throw StepDivisionByZero(step_index, i);
        }
    }
    return next;
}

SymbolicTrace symbolic_evaluate(const RecSystem& sys, const InitialCondition& init,
                                std::size_t steps) {
    if (!sys.field().is_rationals())
        throw Error("symbolic evaluation is only defined over Q");
    std::uint32_t k = sys.k();
    std::vector<RationalFunction> row0;
    if (init.kind == InitialCondition::Kind::symbolic) {
        for (std::uint32_t i = 0; i < k; ++i)
            row0.push_back(RationalFunction::variable(sys.field(), k, i));
    } else if (init.kind == InitialCondition::Kind::symbolic_custom) {
        if (init.symbolic_values.size() != k) throw Error("initial condition arity mismatch");
        row0 = init.symbolic_values;
        for (auto& f : row0) {
            check_same_field(sys.field(), f.field(), "initial");
            if (f.nvars() > k) throw Error("custom initial value reads undefined variables");
        }
    } else {
        throw Error("symbolic evaluation needs a symbolic initial condition");
    }

    std::vector<std::vector<RationalFunction>> rows;
    rows.reserve(steps + 1);
    rows.push_back(std::move(row0));
    for (std::size_t n = 0; n < steps; ++n)
        rows.push_back(symbolic_step(sys, rows.back(), n));
    return SymbolicTrace(init.kind, std::move(rows));
}

std::vector<RationalFunction> symbolic_step(const RecSystem& sys,
                                            const std::vector<RationalFunction>& prev,
                                            std::size_t step_index) {
    std::vector<RationalFunction> next;
    next.reserve(sys.k());
    for (std::uint32_t i = 0; i < sys.k(); ++i) {
        const Update& u = sys.updates()[i];
        try {
            if (u.rf) {
                std::vector<RationalFunction> point = prev;
                if (sys.extended())
                    for (std::uint32_t j = 0; j < i; ++j) point.push_back(next[j]);
                point.resize(u.rf->nvars());  // updates may read a prefix
                next.push_back(u.rf->substitute_all(point));
            } else {
                next.push_back(u.circuit->eval_symbolic(label_inputs(prev, next, i))[0]);
            }
        } catch (const DivisionByZero&) {
            throw IllDefinedSymbolicStep(step_index, i);
        }
    }
    return next;
}

std::vector<RationalFunction> first_symbolic_row(const RecSystem& sys) {
    return symbolic_evaluate(sys, InitialCondition::symbolic(), 1).rows()[1];
}

RationalFunction apply_step_homomorphism(const RecSystem& sys, const RationalFunction& f) {
    if (f.nvars() > sys.k()) throw Error("function reads undefined variables");
    std::vector<RationalFunction> row1 = first_symbolic_row(sys);
    row1.resize(f.nvars());
    return f.substitute_all(row1);
}

std::pair<RecSystem, InitialCondition> from_precursive(const PRecurrence& rec) {
    if (rec.coeffs.size() != rec.d + 1u) throw Error("need d+1 coefficient polynomials");
    if (rec.initial.size() != rec.d + 1u) throw Error("need d+1 initial values");
    if (rec.coeffs[rec.d].is_zero()) throw Error("leading coefficient P_d is identically zero");
    FieldTag field = FieldTag::rationals();
    std::uint32_t d = rec.d;
    std::uint32_t k = d + 2;  // u0..ud, v
    std::uint32_t vi = d + 1;

    // compose a univariate coefficient polynomial with (v+1)
    auto at_v_plus_1 = [&](const Polynomial& p) {
        RationalFunction vp1 =
            RationalFunction(Polynomial::variable(field, k, vi) + Polynomial::constant(field, k, 1));
        RationalFunction acc(field, k);
        for (const auto& [m, c] : p.terms())
            acc += RationalFunction::constant(field, k, c) * vp1.pow(m.degree());
        return acc;
    };

    std::vector<Update> updates;
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i <= d; ++i) names.push_back("u" + std::to_string(i));
    names.push_back("v");

    // u_i' = u_{i+1} for i < d; the top equation applies the recurrence at
    // index v+1, reading u_{i+1} = a_{n+1+i}
    for (std::uint32_t i = 0; i + 1 <= d; ++i)
        updates.push_back(Update::rational(RationalFunction::variable(field, k, i + 1)));
    RationalFunction top(field, k);
    RationalFunction pd = at_v_plus_1(rec.coeffs[d]);
    for (std::uint32_t i = 0; i < d; ++i)
        top -= at_v_plus_1(rec.coeffs[i]) * RationalFunction::variable(field, k, i + 1);
    if (d == 0) {
        // order-0 recurrence: P_0(n+1) * a_{n+1} = 0
        top = RationalFunction(field, k);
    }
    updates.push_back(Update::rational(top / pd));
    updates.push_back(
        Update::rational(RationalFunction(Polynomial::variable(field, k, vi) +
                                          Polynomial::constant(field, k, 1))));

    std::vector<ExactScalar> init = rec.initial;
    init.push_back(ExactScalar::zero(field));
    return {RecSystem(field, std::move(names), std::move(updates), false, 0),
            InitialCondition::numeric(std::move(init))};
}

std::vector<ExactScalar> simple_evaluate(const SimpleRecursion& sr, std::size_t steps) {
    if (sr.initial.size() != sr.m + 1u) throw Error("need m+1 initial values");
    std::vector<ExactScalar> u = sr.initial;
    for (std::size_t n = 0; u.size() <= steps; ++n) {
        std::vector<ExactScalar> window(u.end() - (sr.m + 1), u.end());
        try {
            u.push_back(sr.r.eval(window));
        } catch (const DivisionByZero&) {
            throw StepDivisionByZero(n, 0);
        }
    }
    u.resize(steps + 1);
    return u;
}

std::vector<DegreeProfileRow> degree_profile(const SymbolicTrace& trace, std::uint32_t k,
                                             std::uint64_t D) {
    if (!trace.canonical())
        throw Error("degree profile is defined for canonical symbolic traces");
    std::vector<DegreeProfileRow> out;
    mpz_class bound = 1;
    mpz_class base = mpz_class((unsigned long)k) * mpz_class((unsigned long)D);
    for (std::size_t n = 0; n < trace.rows().size(); ++n) {
        std::uint64_t dn = 0;
        for (const auto& f : trace.rows()[n]) dn = std::max(dn, f.degree());
        bool ok = mpz_class((unsigned long)dn) <= bound;
        out.push_back(DegreeProfileRow{n, dn, bound, ok});
        bound *= base;
    }
    return out;
}

}  // namespace ratrec
