#include "ratrec/flatten.hpp"

#include <algorithm>
#include <random>

#include "ratrec/errors.hpp"

namespace ratrec {

unsigned long stabilization_bound(std::uint32_t k, std::uint64_t D) {
    if (k < 1 || D < 1) throw Error("stabilization bound needs k >= 1 and D >= 1");
    unsigned long kd = (unsigned long)k * D;
    unsigned long log2ceil = 0;
    while ((1ull << log2ceil) < kd) ++log2ceil;
    return (unsigned long)k + (unsigned long)k * k * k * log2ceil;
}

namespace {

const FieldTag kQ = FieldTag::rationals();

std::uint32_t ambient_nvars(const std::vector<RationalFunction>& gens) {
    std::uint32_t k = 0;
    for (const auto& g : gens) k = std::max(k, g.nvars());
    return k;
}

// exact rank of a polynomial matrix by fraction-free (Bareiss) elimination
std::uint32_t poly_matrix_rank(std::vector<std::vector<Polynomial>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    Polynomial prev;  // previous pivot; starts as 1
    bool have_prev = false;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Polynomial t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                if (have_prev && !t.is_zero()) {
                    auto q = t.exact_div(prev);
                    if (!q) throw InternalInconsistency("Bareiss division failed");
                    t = std::move(*q);
                }
                m[i][j] = std::move(t);
            }
            m[i][c] = Polynomial(m[i][c].field(), m[i][c].nvars());
        }
        prev = m[r][c];
        have_prev = true;
        ++r;
    }
    return (std::uint32_t)r;
}

std::uint32_t scalar_matrix_rank(std::vector<std::vector<mpq_class>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return (std::uint32_t)r;
}

}  // namespace

std::uint32_t transcendence_degree(const std::vector<RationalFunction>& gens,
                                   std::uint64_t seed) {
    if (gens.empty()) return 0;
    std::uint32_t k = ambient_nvars(gens);
    if (k == 0) return 0;  // all generators constant
    for (const auto& g : gens)
        if (!g.field().is_rationals())
            throw Error("transcendence degree requires characteristic 0");

    std::vector<std::vector<RationalFunction>> jac(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        RationalFunction g = gens[i];
        for (std::uint32_t j = 0; j < k; ++j) jac[i].push_back(g.derivative(j));
    }
    std::uint32_t maxrank = std::min<std::uint32_t>((std::uint32_t)gens.size(), k);

    // fast pre-check: rank at a random integer point never exceeds the
    // generic rank, so hitting the maximum settles the answer
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<long> coord(-1000, 1000);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<ExactScalar> pt;
        for (std::uint32_t j = 0; j < k; ++j) pt.push_back(ExactScalar(kQ, coord(rng)));
        std::vector<std::vector<mpq_class>> num(jac.size());
        bool usable = true;
        for (std::size_t i = 0; i < jac.size() && usable; ++i)
            for (std::uint32_t j = 0; j < k && usable; ++j) {
                try {
                    num[i].push_back(jac[i][j].eval(pt).value());
                } catch (const DivisionByZero&) {
                    usable = false;
                }
            }
        if (usable && scalar_matrix_rank(std::move(num)) == maxrank) return maxrank;
    }

    // exact path: clear row denominators (rank-preserving) and run Bareiss
    std::vector<std::vector<Polynomial>> mat(jac.size());
    for (std::size_t i = 0; i < jac.size(); ++i) {
        Polynomial common = Polynomial::constant(kQ, k, 1);
        for (std::uint32_t j = 0; j < k; ++j) {
            Polynomial d = jac[i][j].den();
            d.raise_nvars(k);
            Polynomial g = poly_gcd(common, d);
            common = common * *d.exact_div(g);
        }
        for (std::uint32_t j = 0; j < k; ++j) {
            Polynomial n = jac[i][j].num();
            Polynomial d = jac[i][j].den();
            n.raise_nvars(k);
            d.raise_nvars(k);
            mat[i].push_back(n * *common.exact_div(d));
        }
    }
    return poly_matrix_rank(std::move(mat));
}

std::optional<RationalFunction> subfield_membership(const RationalFunction& f,
                                                    const std::vector<RationalFunction>& gens,
                                                    const GroebnerOptions& gopt,
                                                    std::uint64_t seed) {
    (void)seed;
    if (!f.field().is_rationals()) throw Error("subfield membership over Q only");
    std::uint32_t m = (std::uint32_t)gens.size();
    if (m == 0) {
        if (f.is_constant())
            return RationalFunction::constant(kQ, 0, f.num().constant_term());
        return std::nullopt;
    }
    std::uint32_t k = std::max(ambient_nvars(gens), f.nvars());

    // ring Q[x1..xk, w, z, y1..ym]
    std::uint32_t wi = k, zi = k + 1, y0 = k + 2;
    std::uint32_t total = k + 2 + m;
    auto widen = [&](Polynomial p) {
        p.raise_nvars(total);
        return p;
    };

    std::vector<Polynomial> ideal;
    Polynomial delta = Polynomial::constant(kQ, total, 1);
    for (std::uint32_t i = 0; i < m; ++i) {
        Polynomial tag = Polynomial::variable(kQ, total, y0 + i);
        ideal.push_back(tag * widen(gens[i].den()) - widen(gens[i].num()));
        delta = delta * widen(gens[i].den());
    }
    ideal.push_back(Polynomial::variable(kQ, total, zi) * widen(f.den()) - widen(f.num()));
    delta = delta * widen(f.den());
    ideal.push_back(Polynomial::variable(kQ, total, wi) * delta -
                    Polynomial::constant(kQ, total, 1));

    // {x, w} >> {z} >> {y}: eliminate the base variables; keep the z-degree
    // dominant so membership witnesses stay linear in z in the reduced basis
    MonomialOrder::Block bx, bz, by;
    for (std::uint32_t v = 0; v <= k; ++v) bx.vars.push_back(v);
    bz.vars.push_back(zi);
    for (std::uint32_t i = 0; i < m; ++i) by.vars.push_back(y0 + i);
    MonomialOrder order = MonomialOrder::blocks({bx, bz, by});

    auto gb = buchberger(ideal, order, gopt);

    // candidates: elimination-ideal elements linear in z
    struct Candidate {
        Polynomial b, a;  // B(y)*z - A(y)
    };
    std::vector<Candidate> candidates;
    for (const auto& g : gb) {
        bool kept_only = true, linear_in_z = false, has_z_excess = false;
        for (const auto& [mon, c] : g.terms()) {
            (void)c;
            if (mon.exponent(wi) > 0) kept_only = false;
            for (std::uint32_t v = 0; v < k; ++v)
                if (mon.exponent(v) > 0) kept_only = false;
            std::uint32_t ez = mon.exponent(zi);
            if (ez == 1) linear_in_z = true;
            if (ez > 1) has_z_excess = true;
        }
        if (!kept_only || !linear_in_z || has_z_excess) continue;
        // split g = B*z - A and remap tags onto variables 0..m-1
        Polynomial b(kQ, m), a(kQ, m);
        for (const auto& [mon, c] : g.terms()) {
            std::vector<Monomial::Entry> es;
            for (const auto& [v, e] : mon.entries())
                if (v >= y0) es.emplace_back(v - y0, e);
            Monomial tag_mon = Monomial::from_entries(std::move(es));
            if (mon.exponent(zi) == 1)
                b.add_term(tag_mon, c);
            else
                a.add_term(tag_mon, -c);
        }
        candidates.push_back(Candidate{std::move(b), std::move(a)});
    }
    // prefer the candidate with the smallest denominator
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.b.degree() != y.b.degree()) return x.b.degree() < y.b.degree();
        if (x.b.is_zero() || y.b.is_zero()) return y.b.is_zero() && !x.b.is_zero();
        return cmp_grlex(x.b.leading_monomial(), y.b.leading_monomial()) < 0;
    });

    for (const auto& cand : candidates) {
        if (cand.b.is_zero()) continue;
        RationalFunction bval = RationalFunction(cand.b).substitute_all(gens);
        if (bval.is_zero()) continue;  // degenerate witness, try the next
        RationalFunction r(cand.a, cand.b);
        RationalFunction check = r.substitute_all(gens);
        if (!(check == f))
            throw InternalInconsistency("membership witness failed substitution check");
        return r;
    }
    return std::nullopt;
}

FieldChain chain_report(const SymbolicTrace& trace, std::uint32_t main_index,
                        std::uint64_t seed) {
    FieldChain chain;
    for (const auto& row : trace.rows()) {
        if (main_index >= row.size()) throw Error("main index out of range");
        chain.generators.push_back(row[main_index]);
        chain.trdegs.push_back(transcendence_degree(chain.generators, seed));
    }
    return chain;
}

FlattenResult flatten(const RecSystem& sys, const InitialCondition& init,
                      const FlattenOptions& opt) {
    if (!sys.field().is_rationals()) throw Error("flatten is restricted to characteristic 0");
    if (init.kind == InitialCondition::Kind::numeric)
        throw Error("flatten needs a symbolic initial condition");
    bool canonical = init.kind == InitialCondition::Kind::symbolic;

    unsigned long bound = 0;
    if (canonical) {
        auto D = sys.degree_bound();
        if (D && *D >= 1) bound = stabilization_bound(sys.k(), *D);
    }
    std::size_t limit = bound > 0 ? bound : opt.depth_limit;

    SymbolicTrace seedtrace = symbolic_evaluate(sys, init, 1);
    std::vector<std::vector<RationalFunction>> rows = seedtrace.rows();
    auto ensure_rows = [&](std::size_t n) {
        while (rows.size() <= n) rows.push_back(symbolic_step(sys, rows.back(), rows.size() - 1));
    };

    std::uint32_t main = sys.main_index();
    std::vector<RationalFunction> gens{rows[0][main]};
    std::vector<std::uint32_t> trdegs{transcendence_degree(gens, opt.seed)};

    for (std::uint32_t m = 0;; ++m) {
        if (m > limit) {
            if (canonical && bound > 0)
                throw BoundExceeded("flatten: no stabilization within k + k^3*ceil(log2(kD)) = " +
                                    std::to_string(bound) + " steps");
            throw ResourceLimit("flatten: depth limit " + std::to_string(limit) + " reached");
        }
        ensure_rows(m + 1);
        const RationalFunction& f = rows[m + 1][main];
        std::vector<RationalFunction> extended = gens;
        extended.push_back(f);
        std::uint32_t t_new = transcendence_degree(extended, opt.seed);
        if (t_new == trdegs.back()) {
            auto r = subfield_membership(f, gens, opt.groebner, opt.seed);
            if (r) {
                FlattenResult res;
                res.m = m;
                res.r = *r;
                res.bound_used = canonical ? bound : 0;
                res.trdegs = trdegs;
                // cancelling polynomial y_{m+1}*B - A in y0..y_{m+1}
                Polynomial b = r->den();
                Polynomial a = r->num();
                b.raise_nvars(m + 2);
                a.raise_nvars(m + 2);
                res.cancelling = Polynomial::variable(kQ, m + 2, m + 1) * b - a;
                // n = 0 holds by the membership verification; check n = 1
                res.verified = false;
                ensure_rows(m + 2);
                try {
                    std::vector<RationalFunction> shifted;
                    for (std::uint32_t j = 1; j <= m + 1; ++j) shifted.push_back(rows[j][main]);
                    res.verified = r->substitute_all(shifted) == rows[m + 2][main];
                } catch (const DivisionByZero&) {
                    res.verified = false;
                }
                return res;
            }
        }
        gens.push_back(f);
        trdegs.push_back(t_new);
    }
}

}  // namespace ratrec
