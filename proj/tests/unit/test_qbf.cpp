#include <doctest.h>

#include <functional>

#include "ratrec/json_io.hpp"
#include "ratrec/qbf.hpp"
#include "test_support.hpp"

using namespace ratrec;
using testsupport::Rng;

namespace {

const FieldTag Q = FieldTag::rationals();
const FieldTag F2 = FieldTag::prime(2);

// independent oracle for the d-sequence law: reduction level j handles the
// j-th innermost quantifier, so d^i quantifies the i innermost prefix
// variables while c^j (j > i) fixes the variable at prefix position k - j
bool restricted_validity(const QbfFormula& f, std::uint32_t i,
                         const std::vector<bool>& fixed_tail) {
    std::uint32_t k = f.k();
    std::map<std::string, bool> assignment;
    for (std::uint32_t j = i + 1; j <= k; ++j)
        assignment[f.prefix[k - j].second] = fixed_tail[j - i - 1];
    std::function<bool(const BoolExpr&)> eval = [&](const BoolExpr& e) -> bool {
        switch (e.kind) {
            case BoolExpr::Kind::var: return assignment.at(e.name);
            case BoolExpr::Kind::negation: return !eval(e.kids[0]);
            case BoolExpr::Kind::conjunction: return eval(e.kids[0]) && eval(e.kids[1]);
            case BoolExpr::Kind::disjunction: return eval(e.kids[0]) || eval(e.kids[1]);
        }
        return false;
    };
    std::function<bool(std::uint32_t)> go = [&](std::uint32_t pos) -> bool {
        if (pos == k) return eval(f.matrix);
        const auto& [q, name] = f.prefix[pos];
        assignment[name] = false;
        bool v0 = go(pos + 1);
        assignment[name] = true;
        bool v1 = go(pos + 1);
        assignment.erase(name);
        return q == Quantifier::exists ? (v0 || v1) : (v0 && v1);
    };
    return go(k - i);
}

// enumerate all depth-<=2 matrices over the first `nv` variable names
std::vector<BoolExpr> small_matrices(std::uint32_t nv) {
    std::vector<std::string> vars;
    for (std::uint32_t i = 1; i <= nv; ++i) vars.push_back("x" + std::to_string(i));
    std::vector<BoolExpr> depth1;
    for (const auto& v : vars) {
        depth1.push_back(BoolExpr::variable(v));
        depth1.push_back(BoolExpr::negate(BoolExpr::variable(v)));
    }
    std::vector<BoolExpr> out = depth1;
    for (const auto& a : depth1)
        for (const auto& b : depth1) {
            out.push_back(BoolExpr::conj(a, b));
            out.push_back(BoolExpr::disj(a, b));
        }
    return out;
}

long scalar_long(const ExactScalar& s) { return (long)s.value().get_num().get_si(); }

}  // namespace

TEST_CASE("parse_qbf examples") {
    auto f = parse_qbf("exists x1; forall x2; (x1 | x2)");
    REQUIRE(f.k() == 2);
    CHECK(f.prefix[0] == std::pair{Quantifier::exists, std::string("x1")});
    CHECK(f.prefix[1] == std::pair{Quantifier::forall, std::string("x2")});
    CHECK(f.matrix.kind == BoolExpr::Kind::disjunction);

    auto g = parse_qbf("p cnf 2 1\ne 1 0\na 2 0\n1 2 0\n");
    REQUIRE(g.k() == 2);
    CHECK(g.prefix[0] == std::pair{Quantifier::exists, std::string("x1")});
    CHECK(g.prefix[1] == std::pair{Quantifier::forall, std::string("x2")});
    CHECK(brute_force_qbf(f) == brute_force_qbf(g));

    auto t = parse_qbf("forall x1; (x1 | !x1)");
    CHECK(t.k() == 1);
    CHECK(brute_force_qbf(t));

    CHECK_THROWS_AS(parse_qbf("exists x1; (x1 | x2)"), Error);   // free variable
    CHECK_THROWS_AS(parse_qbf("exists x1; exists x1; (x1)"), Error);  // duplicate
}

TEST_CASE("brute force examples") {
    CHECK(brute_force_qbf(parse_qbf("exists x1; forall x2; (x1 | x2)")));
    CHECK(!brute_force_qbf(parse_qbf("exists x1; forall x2; (x1 & x2)")));
    CHECK(brute_force_qbf(parse_qbf("forall x1; (x1 | !x1)")));
}

TEST_CASE("bool_to_circuit truth tables") {
    // (x & y) | !y encodes to 1 - (1 - x*y)*y
    auto tau = BoolExpr::disj(BoolExpr::conj(BoolExpr::variable("x"), BoolExpr::variable("y")),
                              BoolExpr::negate(BoolExpr::variable("y")));
    for (FieldTag field : {Q, F2}) {
        Circuit c = bool_to_circuit(tau, field);
        for (long x = 0; x <= 1; ++x)
            for (long y = 0; y <= 1; ++y) {
                bool expect = (x && y) || !y;
                auto got = c.eval({{"x", ExactScalar(field, x)}, {"y", ExactScalar(field, y)}});
                CHECK(got == ExactScalar(field, expect ? 1L : 0L));
            }
    }
    Circuit single = bool_to_circuit(BoolExpr::variable("x"), Q);
    CHECK(single.eval({{"x", ExactScalar(Q, 1L)}}) == ExactScalar(Q, 1L));
    Circuit neg = bool_to_circuit(BoolExpr::negate(BoolExpr::variable("x")), Q);
    CHECK(neg.eval({{"x", ExactScalar(Q, 1L)}}) == ExactScalar(Q, 0L));
}

TEST_CASE("compiled c columns count in binary") {
    auto f = parse_qbf("exists x1; forall x2; exists x3; (x1 & x2 & x3)");
    auto red = compile_qbf(f, F2);
    auto rows = evaluate(red.system, red.init, 7);
    std::vector<std::string> expect{"01010101", "00110011", "00001111"};
    for (std::uint32_t i = 0; i < 3; ++i) {
        std::string got;
        for (std::size_t n = 0; n <= 7; ++n)
            got += char('0' + scalar_long(rows[n][i]));
        CHECK(got == expect[i]);
    }
}

TEST_CASE("compile_qbf validity readout examples") {
    {
        auto f = parse_qbf("exists x1; forall x2; (x1 & x2)");
        auto red = compile_qbf(f, F2);
        auto rows = evaluate(red.system, red.init, red.horizon - 1);
        for (const auto& row : rows) CHECK(row[red.system.main_index()].is_zero());
    }
    {
        auto f = parse_qbf("exists x1; forall x2; (x1 | x2)");
        auto red = compile_qbf(f, Q);
        auto rows = evaluate(red.system, red.init, red.horizon - 1);
        CHECK(scalar_long(rows[4][red.system.main_index()]) == 1);  // d^2 fires at n = 4
    }
    {
        auto f = parse_qbf("forall x1; (x1 | !x1)");
        auto red = compile_qbf(f, Q);
        auto rows = evaluate(red.system, red.init, red.horizon - 1);
        CHECK(scalar_long(rows[2][red.system.main_index()]) == 1);  // d^1 fires at n = 2
    }
}

TEST_CASE("c, d and f sequence laws on small formulas") {
    Rng rng(250814);
    std::vector<QbfFormula> corpus;
    corpus.push_back(parse_qbf("exists x1; forall x2; exists x3; ((x1 | x2) & x3)"));
    corpus.push_back(parse_qbf("forall x1; exists x2; forall x3; ((x1 & x2) | !x3)"));
    corpus.push_back(parse_qbf("forall x1; forall x2; (x1 | !x2)"));
    corpus.push_back(parse_qbf("exists x1; (x1)"));
    // quantifier-order-sensitive matrices (xor shapes)
    corpus.push_back(parse_qbf(
        "forall x1; exists x2; exists x3; !((x1 & x2) | !(x1 | x2))"));
    corpus.push_back(parse_qbf(
        "exists x1; exists x2; forall x3; ((x2 & x3) | !(x2 | x3))"));
    corpus.push_back(parse_qbf("forall x1; exists x2; !((x1 & x2) | !(x1 | x2))"));

    for (const auto& f : corpus) {
        std::uint32_t k = f.k();
        auto red = compile_qbf(f, Q);
        std::size_t horizon = (std::size_t(1) << k) + 8;
        auto rows = evaluate(red.system, red.init, horizon);

        auto pos_c = [&](std::uint32_t i) { return i - 1; };
        auto pos_d = [&](std::uint32_t i) { return k + i; };
        auto pos_f = [&](std::uint32_t i) { return 2 * k + 1 + i; };

        for (std::size_t n = 0; n <= horizon; ++n) {
            // c law: closed form of the bit pattern
            for (std::uint32_t i = 1; i <= k; ++i) {
                long expect = (n % (1ull << i)) < (1ull << (i - 1)) ? 0 : 1;
                CHECK(scalar_long(rows[n][pos_c(i)]) == expect);
            }
            // d law: zero off multiples of 2^i, restricted validity on them
            for (std::uint32_t i = 0; i <= k; ++i) {
                long got = scalar_long(rows[n][pos_d(i)]);
                if (n == 0 || n % (1ull << i) != 0) {
                    CHECK(got == 0);
                } else {
                    std::vector<bool> tail;
                    for (std::uint32_t j = i + 1; j <= k; ++j)
                        tail.push_back(scalar_long(rows[n - 1][pos_c(j)]) == 1);
                    CHECK(got == (restricted_validity(f, i, tail) ? 1 : 0));
                }
            }
            // f law: the memory property at multiples of 2^i
            for (std::uint32_t i = 1; i <= k; ++i) {
                if (n > 0 && n % (1ull << i) == 0) {
                    CHECK(rows[n - 1][pos_f(i - 1)] ==
                          rows[n - (1ull << (i - 1))][pos_d(i - 1)]);
                }
            }
        }
    }
    (void)rng;
}

TEST_CASE("check_validity_via_sequence agrees with the oracle") {
    struct Case {
        const char* text;
        FieldTag field;
        bool valid;
    };
    std::vector<Case> cases{
        {"exists x1; forall x2; (x1 | x2)", F2, true},
        {"exists x1; forall x2; (x1 & x2)", Q, false},
        {"forall x1; (x1 | !x1)", Q, true},
    };
    for (const auto& c : cases) {
        auto res = check_validity_via_sequence(parse_qbf(c.text), c.field, true);
        CHECK(res.valid == c.valid);
        REQUIRE(res.oracle_agrees.has_value());
        CHECK(*res.oracle_agrees);
    }
}

TEST_CASE("enumerated corpus equivalence and fusion transparency") {
    // all quantifier patterns over k = 2 with a spread of matrices
    std::vector<BoolExpr> mats = small_matrices(2);
    int checked = 0;
    for (int qpat = 0; qpat < 4; ++qpat) {
        for (std::size_t mi = 0; mi < mats.size(); mi += 3) {
            QbfFormula f;
            f.prefix = {{qpat & 1 ? Quantifier::forall : Quantifier::exists, "x1"},
                        {qpat & 2 ? Quantifier::forall : Quantifier::exists, "x2"}};
            f.matrix = mats[mi];
            bool oracle = brute_force_qbf(f);
            for (FieldTag field : {F2, Q}) {
                auto res = check_validity_via_sequence(f, field);
                CHECK(res.valid == oracle);

                // extended and fused trajectories are identical columnwise
                auto red = compile_qbf(f, field);
                auto ext_rows = evaluate(red.system, red.init, red.horizon - 1);
                std::vector<Circuit> cs;
                for (const auto& u : red.system.updates()) cs.push_back(*u.circuit);
                Circuit fused = fuse_extended(cs);
                std::vector<Update> ups;
                for (std::uint32_t i = 0; i < red.system.k(); ++i) {
                    Circuit single = fused;
                    single.set_outputs({fused.outputs()[i]});
                    ups.push_back(Update::from_circuit(std::move(single)));
                }
                RecSystem standard(field, red.system.names(), std::move(ups), false,
                                   red.system.main_index());
                CHECK(evaluate(standard, red.init, red.horizon - 1) == ext_rows);
            }
            ++checked;
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("compiled size grows linearly in the matrix") {
    // gate count of the compiled system stays within a linear envelope
    for (std::uint32_t k = 1; k <= 4; ++k) {
        std::string text;
        std::string matrix;
        for (std::uint32_t i = 1; i <= k; ++i) {
            text += (i % 2 ? "exists x" : "forall x") + std::to_string(i) + "; ";
            matrix += (i > 1 ? " & x" : "(x") + (i > 1 ? std::to_string(i) : std::to_string(i));
        }
        matrix += ")";
        auto f = parse_qbf(text + matrix);
        auto red = compile_qbf(f, F2);
        std::size_t gates = 0;
        std::size_t matrix_size = k;
        for (const auto& u : red.system.updates()) gates += u.circuit->stats().size;
        CHECK(gates <= 80 * k * matrix_size + 200);
    }
}

TEST_CASE("reduction JSON document loads back") {
    auto f = parse_qbf("exists x1; forall x2; (x1 | x2)");
    auto red = compile_qbf(f, F2);
    Json j = reduction_to_json(red);
    CHECK(j["meta"]["k"] == 2);
    CHECK(j["meta"]["horizon"] == 5);
    SystemFile file = system_from_json(j);
    CHECK(file.system.k() == red.system.k());
    CHECK(system_to_json(SystemFile{file.system, file.init, file.meta}) == j);
    auto rows = evaluate(file.system, file.init, red.horizon - 1);
    bool valid = false;
    for (const auto& row : rows)
        if (!row[file.system.main_index()].is_zero()) valid = true;
    CHECK(valid);
}
