#include "ratrec/groebner.hpp"

#include <algorithm>
#include <list>
#include <map>

#include "ratrec/errors.hpp"

namespace ratrec {

namespace {

// term map sorted descending under the active order
struct OrderGreater {
    const MonomialOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using OMap = std::map<Monomial, ExactScalar, OrderGreater >;

struct OPoly {
    OMap terms;

    bool is_zero() const { return terms.empty(); }
    const Monomial& lm() const { return terms.begin()->first; }
    const ExactScalar& lc() const { return terms.begin()->second; }

    void add(const Monomial& m, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    // *this -= c * m * g
    void sub_mul(const ExactScalar& c, const Monomial& m, const OPoly& g) {
        for (const auto& [gm, gc] : g.terms) add(gm * m, -(c * gc));
    }

    void make_monic() {
        if (is_zero()) return;
        ExactScalar inv = lc().inverse();
        for (auto& [m, c] : terms) c *= inv;
    }
};

OPoly to_opoly(const Polynomial& p, const OrderGreater& cmp) {
    OPoly r{OMap(cmp)};
    for (const auto& [m, c] : p.terms()) r.terms.emplace(m, c);
    return r;
}

Polynomial from_opoly(const OPoly& p, FieldTag field, std::uint32_t nvars) {
    Polynomial r(field, nvars);
    for (const auto& [m, c] : p.terms) r.add_term(m, c);
    return r;
}

// full reduction of f by the current basis
OPoly reduce_full(OPoly f, const std::vector<OPoly>& basis, const OrderGreater& cmp) {
    OPoly out{OMap(cmp)};
    while (!f.is_zero()) {
        bool reduced = false;
        const Monomial& lm = f.lm();
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (g.lm().divides(lm)) {
                ExactScalar c = f.lc() / g.lc();
                f.sub_mul(c, lm.divided_by(g.lm()), g);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.terms.emplace(lm, f.lc());
            f.terms.erase(f.terms.begin());
        }
    }
    return out;
}

std::uint64_t sugar_of(const OPoly& p) {
    std::uint64_t s = 0;
    for (const auto& [m, c] : p.terms) {
        (void)c;
        s = std::max(s, m.degree());
    }
    return s;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t sugar;
};

}  // namespace

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens,
                                   const MonomialOrder& order, const GroebnerOptions& opt) {
    if (gens.empty()) return {};
    FieldTag field = gens.front().field();
    std::uint32_t nvars = 0;
    for (const auto& g : gens) {
        check_same_field(field, g.field(), "buchberger");
        nvars = std::max(nvars, g.nvars());
    }
    OrderGreater cmp{&order};

    std::vector<OPoly> basis;
    std::vector<std::uint64_t> sugars;
    std::list<Pair> pairs;

    // Gebauer-Moeller pair-set update with the new element h appended
    auto update = [&](OPoly h) {
        h.make_monic();
        std::size_t t = basis.size();
        std::uint64_t hs = sugar_of(h);

        std::vector<Pair> cand;
        for (std::size_t i = 0; i < t; ++i) {
            if (basis[i].is_zero()) continue;
            Monomial l = Monomial::lcm(basis[i].lm(), h.lm());
            std::uint64_t sug =
                std::max(sugars[i] + l.divided_by(basis[i].lm()).degree(),
                         hs + l.divided_by(h.lm()).degree());
            cand.push_back(Pair{i, t, std::move(l), sug});
        }
        // drop candidates whose lcm is a proper multiple of another candidate's
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            bool drop = false;
            bool coprime = basis[cand[a].i].lm().coprime_with(h.lm());
            if (!coprime) {
                for (std::size_t b = 0; b < cand.size() && !drop; ++b) {
                    if (a == b) continue;
                    if (cand[b].lcm != cand[a].lcm && cand[b].lcm.divides(cand[a].lcm))
                        drop = true;
                    if (cand[b].lcm == cand[a].lcm && b < a) drop = true;  // keep one per lcm
                }
            }
            if (!drop) kept.push_back(cand[a]);
        }
        // chain criterion on the old pair set
        for (auto it = pairs.begin(); it != pairs.end();) {
            const Pair& p = *it;
            Monomial li = Monomial::lcm(basis[p.i].lm(), h.lm());
            Monomial lj = Monomial::lcm(basis[p.j].lm(), h.lm());
            if (h.lm().divides(p.lcm) && li != p.lcm && lj != p.lcm)
                it = pairs.erase(it);
            else
                ++it;
        }
        // product criterion on the new pairs
        for (auto& p : kept)
            if (!basis[p.i].lm().coprime_with(h.lm())) pairs.push_back(std::move(p));

        basis.push_back(std::move(h));
        sugars.push_back(hs);
    };

    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        OPoly h = reduce_full(to_opoly(g, cmp), basis, cmp);
        if (!h.is_zero()) update(std::move(h));
    }

    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > opt.max_pairs)
            throw ResourceLimit("buchberger: S-pair budget exhausted");
        if (basis.size() > opt.max_basis)
            throw ResourceLimit("buchberger: basis size cap exceeded");
        if (opt.cancel && opt.cancel->load(std::memory_order_relaxed))
            throw ResourceLimit("buchberger: cancelled");

        auto best = pairs.begin();
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            if (it->sugar != best->sugar) {
                if (it->sugar < best->sugar) best = it;
            } else {
                int c = order.compare(it->lcm, best->lcm);
                if (c < 0 || (c == 0 && (it->i < best->i || (it->i == best->i && it->j < best->j))))
                    best = it;
            }
        }
        Pair p = *best;
        pairs.erase(best);

        const OPoly& f = basis[p.i];
        const OPoly& g = basis[p.j];
        OPoly s{OMap(cmp)};
        s.sub_mul(-f.lc().inverse(), p.lcm.divided_by(f.lm()), f);
        s.sub_mul(g.lc().inverse(), p.lcm.divided_by(g.lm()), g);
        OPoly r = reduce_full(std::move(s), basis, cmp);
        if (!r.is_zero()) update(std::move(r));
    }

    // minimalize: drop elements whose LM is divisible by another kept LM
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].is_zero()) continue;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j || basis[j].is_zero()) continue;
            if (basis[j].lm().divides(basis[i].lm()) &&
                (basis[j].lm() != basis[i].lm() || j < i))
                redundant = true;
        }
        if (!redundant) keep.push_back(i);
    }
    // tail-reduce each survivor against the others
    std::vector<OPoly> minimal;
    for (std::size_t idx : keep) minimal.push_back(basis[idx]);
    std::vector<Polynomial> result;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<OPoly> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push_back(minimal[b]);
        OPoly red = reduce_full(minimal[a], others, cmp);
        red.make_monic();
        result.push_back(from_opoly(red, field, nvars));
    }
    std::sort(result.begin(), result.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.less(a.terms().begin()->first, b.terms().begin()->first);
    });
    return result;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
    OrderGreater cmp{&order};
    std::vector<OPoly> ob;
    for (const auto& g : basis)
        if (!g.is_zero()) ob.push_back(to_opoly(g, cmp));
    OPoly r = reduce_full(to_opoly(f, cmp), ob, cmp);
    return from_opoly(r, f.field(), f.nvars());
}

}  // namespace ratrec
