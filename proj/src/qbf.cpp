#include "ratrec/qbf.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "ratrec/errors.hpp"

namespace ratrec {

BoolExpr BoolExpr::negate(BoolExpr e) {
    BoolExpr r{Kind::negation, "", {}};
    r.kids.push_back(std::move(e));
    return r;
}

BoolExpr BoolExpr::conj(BoolExpr a, BoolExpr b) {
    BoolExpr r{Kind::conjunction, "", {}};
    r.kids.push_back(std::move(a));
    r.kids.push_back(std::move(b));
    return r;
}

BoolExpr BoolExpr::disj(BoolExpr a, BoolExpr b) {
    BoolExpr r{Kind::disjunction, "", {}};
    r.kids.push_back(std::move(a));
    r.kids.push_back(std::move(b));
    return r;
}

namespace {

void collect_vars(const BoolExpr& e, std::set<std::string>& out) {
    if (e.kind == BoolExpr::Kind::var)
        out.insert(e.name);
    else
        for (const auto& c : e.kids) collect_vars(c, out);
}

void validate(const QbfFormula& f) {
    std::set<std::string> bound;
    for (const auto& [q, name] : f.prefix) {
        (void)q;
        if (!bound.insert(name).second) throw Error("duplicate binding of '" + name + "'");
    }
    std::set<std::string> used;
    collect_vars(f.matrix, used);
    for (const auto& v : used)
        if (!bound.count(v)) throw Error("free variable '" + v + "'");
}

// matrix grammar: | lowest, & next, ! and parentheses highest
struct MatrixParser {
    const std::string& text;
    std::size_t pos;

    void skip() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    BoolExpr atom() {
        skip();
        if (pos >= text.size()) throw ParseError("unexpected end of formula", pos);
        if (eat('!')) return BoolExpr::negate(atom());
        if (eat('(')) {
            BoolExpr e = disjunction();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return e;
        }
        if (std::isalpha((unsigned char)text[pos]) || text[pos] == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
                ++pos;
            return BoolExpr::variable(text.substr(start, pos - start));
        }
        throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }

    BoolExpr conjunction() {
        BoolExpr e = atom();
        while (eat('&')) e = BoolExpr::conj(std::move(e), atom());
        return e;
    }

    BoolExpr disjunction() {
        BoolExpr e = conjunction();
        while (eat('|')) e = BoolExpr::disj(std::move(e), conjunction());
        return e;
    }
};

QbfFormula parse_prenex_text(const std::string& text) {
    QbfFormula f;
    std::size_t pos = 0;
    for (;;) {
        std::size_t semi = text.find(';', pos);
        std::string chunk = text.substr(pos, semi == std::string::npos ? semi : semi - pos);
        std::istringstream is(chunk);
        std::string word, name;
        is >> word;
        if ((word == "exists" || word == "forall") && semi != std::string::npos) {
            is >> name;
            std::string rest;
            if (name.empty() || (is >> rest))
                throw ParseError("malformed quantifier declaration", pos);
            f.prefix.emplace_back(word == "exists" ? Quantifier::exists : Quantifier::forall,
                                  name);
            pos = semi + 1;
        } else {
            break;
        }
    }
    MatrixParser mp{text.substr(pos), 0};
    f.matrix = mp.disjunction();
    mp.skip();
    if (mp.pos != mp.text.size()) throw ParseError("trailing input in matrix", pos + mp.pos);
    validate(f);
    return f;
}

QbfFormula parse_qdimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    QbfFormula f;
    long nvars = -1;
    std::vector<BoolExpr> clauses;
    bool in_clauses = false;
    auto var_name = [](long v) { return "x" + std::to_string(v); };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string fmt;
            long ncl;
            if (!(ls >> fmt >> nvars >> ncl) || fmt != "cnf")
                throw Error("malformed QDIMACS header");
            continue;
        }
        if (!in_clauses && (tok == "e" || tok == "a")) {
            long v;
            while (ls >> v && v != 0)
                f.prefix.emplace_back(tok == "e" ? Quantifier::exists : Quantifier::forall,
                                      var_name(v));
            continue;
        }
        in_clauses = true;
        std::optional<BoolExpr> clause;
        long lit = std::stol(tok);
        for (;;) {
            if (lit == 0) break;
            BoolExpr l = BoolExpr::variable(var_name(lit < 0 ? -lit : lit));
            if (lit < 0) l = BoolExpr::negate(std::move(l));
            clause = clause ? BoolExpr::disj(std::move(*clause), std::move(l)) : std::move(l);
            if (!(ls >> lit)) break;
        }
        if (clause) clauses.push_back(std::move(*clause));
    }
    if (clauses.empty()) throw Error("QDIMACS input has no clauses");
    std::optional<BoolExpr> matrix;
    for (auto& c : clauses)
        matrix = matrix ? BoolExpr::conj(std::move(*matrix), std::move(c)) : std::move(c);
    f.matrix = std::move(*matrix);
    validate(f);
    return f;
}

}  // namespace

QbfFormula parse_qbf(const std::string& text) {
    // QDIMACS starts with comment lines and a "p cnf" header
    for (std::size_t i = 0; i < text.size();) {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
        if (i < text.size() && text[i] == 'c') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (i + 1 < text.size() && text[i] == 'p' &&
            std::isspace((unsigned char)text[i + 1]))
            return parse_qdimacs(text);
        break;
    }
    return parse_prenex_text(text);
}

namespace {

bool eval_bool(const BoolExpr& e, const std::map<std::string, bool>& assignment) {
    switch (e.kind) {
        case BoolExpr::Kind::var:
            return assignment.at(e.name);
        case BoolExpr::Kind::negation:
            return !eval_bool(e.kids[0], assignment);
        case BoolExpr::Kind::conjunction:
            return eval_bool(e.kids[0], assignment) && eval_bool(e.kids[1], assignment);
        case BoolExpr::Kind::disjunction:
            return eval_bool(e.kids[0], assignment) || eval_bool(e.kids[1], assignment);
    }
    return false;
}

bool brute_force_rec(const QbfFormula& f, std::size_t level,
                     std::map<std::string, bool>& assignment) {
    if (level == f.prefix.size()) return eval_bool(f.matrix, assignment);
    const auto& [q, name] = f.prefix[level];
    assignment[name] = false;
    bool v0 = brute_force_rec(f, level + 1, assignment);
    assignment[name] = true;
    bool v1 = brute_force_rec(f, level + 1, assignment);
    assignment.erase(name);
    return q == Quantifier::exists ? (v0 || v1) : (v0 && v1);
}

// shared gate builder so every Boolean connective lowers the same way
struct CircuitBuilder {
    Circuit c;
    std::map<std::string, std::uint32_t> inputs;
    std::optional<std::uint32_t> one, minus_one;

    explicit CircuitBuilder(FieldTag field) : c(field) {}

    std::uint32_t input(const std::string& label) {
        auto it = inputs.find(label);
        if (it != inputs.end()) return it->second;
        return inputs[label] = c.add_input(label);
    }
    std::uint32_t constant_one() {
        if (!one) one = c.add_constant(ExactScalar::one(c.field()));
        return *one;
    }
    std::uint32_t constant_minus_one() {
        if (!minus_one) minus_one = c.add_constant(ExactScalar(c.field(), -1L));
        return *minus_one;
    }
    std::uint32_t lnot(std::uint32_t a) {  // 1 - a
        return c.add_add(constant_one(), c.add_mul(constant_minus_one(), a));
    }
    std::uint32_t land(std::uint32_t a, std::uint32_t b) { return c.add_mul(a, b); }
    std::uint32_t lor(std::uint32_t a, std::uint32_t b) { return lnot(land(lnot(a), lnot(b))); }

    std::uint32_t lower(const BoolExpr& e) {
        switch (e.kind) {
            case BoolExpr::Kind::var:
                return input(e.name);
            case BoolExpr::Kind::negation:
                return lnot(lower(e.kids[0]));
            case BoolExpr::Kind::conjunction:
                return land(lower(e.kids[0]), lower(e.kids[1]));
            case BoolExpr::Kind::disjunction:
                return lor(lower(e.kids[0]), lower(e.kids[1]));
        }
        throw Error("unreachable");
    }
};

}  // namespace

bool brute_force_qbf(const QbfFormula& f, std::uint32_t limit) {
    if (f.k() > limit)
        throw ResourceLimit("brute force limited to " + std::to_string(limit) + " quantifiers");
    std::map<std::string, bool> assignment;
    return brute_force_rec(f, 0, assignment);
}

Circuit bool_to_circuit(const BoolExpr& matrix, FieldTag field) {
    CircuitBuilder b(field);
    std::uint32_t out = b.lower(matrix);
    b.c.set_outputs({out});
    return std::move(b.c);
}

ReductionOutput compile_qbf(const QbfFormula& f, FieldTag field) {
    std::uint32_t k = f.k();
    if (k < 1) throw Error("reduction needs at least one quantifier");

    // sequence layout: c1..ck, d0..dk, f0..f(k-1)
    auto pos_c = [&](std::uint32_t i) { return i - 1; };          // i in 1..k
    auto pos_d = [&](std::uint32_t i) { return k + i; };          // i in 0..k
    auto pos_f = [&](std::uint32_t i) { return 2 * k + 1 + i; };  // i in 0..k-1
    auto xlab = [&](std::uint32_t pos) { return "x" + std::to_string(pos + 1); };
    auto zlab = [&](std::uint32_t pos) { return "z" + std::to_string(pos + 1); };
    auto v = [](std::string s) { return BoolExpr::variable(std::move(s)); };

    std::vector<Update> updates(3 * k + 1, Update{});
    std::vector<std::string> names(3 * k + 1);
    std::vector<std::pair<std::string, std::string>> seq_map;
    for (std::uint32_t i = 1; i <= k; ++i) {
        names[pos_c(i)] = "c" + std::to_string(i);
        seq_map.emplace_back(names[pos_c(i)], "c^" + std::to_string(i));
    }
    for (std::uint32_t i = 0; i <= k; ++i) {
        names[pos_d(i)] = "d" + std::to_string(i);
        seq_map.emplace_back(names[pos_d(i)], "d^" + std::to_string(i));
    }
    for (std::uint32_t i = 0; i < k; ++i) {
        names[pos_f(i)] = "f" + std::to_string(i);
        seq_map.emplace_back(names[pos_f(i)], "f^" + std::to_string(i));
    }

    // c1_n = not c1_{n-1}
    updates[pos_c(1)] =
        Update::from_circuit(bool_to_circuit(BoolExpr::negate(v(xlab(pos_c(1)))), field));
    // ci_n = Q(ci_{n-1}, c(i-1)_{n-1}, c(i-1)_n),
    // Q(x,y,z) = (!x & (y & !z)) | (x & (!y | z))
    for (std::uint32_t i = 2; i <= k; ++i) {
        BoolExpr x = v(xlab(pos_c(i)));
        BoolExpr y = v(xlab(pos_c(i - 1)));
        BoolExpr z = v(zlab(pos_c(i - 1)));
        BoolExpr q = BoolExpr::disj(
            BoolExpr::conj(BoolExpr::negate(x), BoolExpr::conj(y, BoolExpr::negate(z))),
            BoolExpr::conj(v(xlab(pos_c(i))), BoolExpr::disj(BoolExpr::negate(y), v(zlab(pos_c(i - 1))))));
        updates[pos_c(i)] = Update::from_circuit(bool_to_circuit(q, field));
    }

    // level i of the reduction handles the i-th innermost quantifier: the
    // d-recursion peels one quantifier per level from the inside out, so the
    // fastest-flipping bit c^1 drives the innermost variable. Peeling any
    // other end would commute a quantifier across the remaining prefix.
    auto quantifier_of_level = [&](std::uint32_t i) { return f.prefix[k - i].first; };

    // d0_n = P_phi(c1_{n-1}, ..., ck_{n-1}): the variable at prefix position
    // p is valued by c^{k-p}
    {
        std::map<std::string, std::string> rename;
        for (std::uint32_t p = 0; p < k; ++p)
            rename[f.prefix[p].second] = xlab(pos_c(k - p));
        auto relabel = [&](const BoolExpr& e, auto&& self) -> BoolExpr {
            if (e.kind == BoolExpr::Kind::var) return v(rename.at(e.name));
            BoolExpr r{e.kind, "", {}};
            for (const auto& c : e.kids) r.kids.push_back(self(c, self));
            return r;
        };
        updates[pos_d(0)] =
            Update::from_circuit(bool_to_circuit(relabel(f.matrix, relabel), field));
    }

    // di_n = S(d(i-1)_n, f(i-1)_{n-1}, ci_{n-1}, ci_n),
    // S(x,y,z,t) = (x *_i y) & (z & !t); the 1->0 flip of c^i detects 2^i | n
    for (std::uint32_t i = 1; i <= k; ++i) {
        bool existential = quantifier_of_level(i) == Quantifier::exists;
        BoolExpr x = v(zlab(pos_d(i - 1)));
        BoolExpr y = v(xlab(pos_f(i - 1)));
        BoolExpr comb = existential ? BoolExpr::disj(std::move(x), std::move(y))
                                    : BoolExpr::conj(std::move(x), std::move(y));
        BoolExpr gate = BoolExpr::conj(v(xlab(pos_c(i))), BoolExpr::negate(v(zlab(pos_c(i)))));
        updates[pos_d(i)] = Update::from_circuit(
            bool_to_circuit(BoolExpr::conj(std::move(comb), std::move(gate)), field));
    }

    // f(i-1)_n = R(ci_{n-1}, ci_n, d(i-1)_n, f(i-1)_{n-1}),
    // R(x,y,z,t) = (z & (!x & y)) | (t & ((x & y) | (!x & !y))):
    // load on the 0->1 flip, reset on the 1->0 flip, hold otherwise
    for (std::uint32_t i = 1; i <= k; ++i) {
        BoolExpr x = v(xlab(pos_c(i)));
        BoolExpr y = v(zlab(pos_c(i)));
        BoolExpr z = v(zlab(pos_d(i - 1)));
        BoolExpr t = v(xlab(pos_f(i - 1)));
        BoolExpr load = BoolExpr::conj(std::move(z),
                                       BoolExpr::conj(BoolExpr::negate(x), v(zlab(pos_c(i)))));
        BoolExpr hold = BoolExpr::conj(
            std::move(t),
            BoolExpr::disj(BoolExpr::conj(v(xlab(pos_c(i))), std::move(y)),
                           BoolExpr::conj(BoolExpr::negate(v(xlab(pos_c(i)))),
                                          BoolExpr::negate(v(zlab(pos_c(i)))))));
        updates[pos_f(i - 1)] = Update::from_circuit(
            bool_to_circuit(BoolExpr::disj(std::move(load), std::move(hold)), field));
    }

    RecSystem sys(field, names, std::move(updates), true, pos_d(k));
    std::vector<ExactScalar> zeros(3 * k + 1, ExactScalar::zero(field));
    ReductionOutput out{std::move(sys), InitialCondition::numeric(std::move(zeros)), k,
                        (std::size_t(1) << k) + 1, std::move(seq_map)};
    return out;
}

ValidityResult check_validity_via_sequence(const QbfFormula& f, FieldTag field,
                                           bool with_oracle) {
    ReductionOutput red = compile_qbf(f, field);

    // lower to a standard system by fusing the update circuits
    std::vector<Circuit> circuits;
    for (const auto& u : red.system.updates()) circuits.push_back(*u.circuit);
    Circuit fused = fuse_extended(circuits);
    std::vector<Update> fused_updates;
    for (std::uint32_t i = 0; i < red.system.k(); ++i) {
        Circuit single = fused;
        single.set_outputs({fused.outputs()[i]});
        fused_updates.push_back(Update::from_circuit(std::move(single)));
    }
    RecSystem standard(field, red.system.names(), std::move(fused_updates), false,
                       red.system.main_index());

    auto rows = evaluate(standard, red.init, red.horizon - 1);
    bool valid = false;
    for (const auto& row : rows)
        if (!row[standard.main_index()].is_zero()) valid = true;

    ValidityResult res{valid, std::nullopt};
    if (with_oracle) res.oracle_agrees = (brute_force_qbf(f) == valid);
    return res;
}

}  // namespace ratrec
