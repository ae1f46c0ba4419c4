#include <doctest.h>

#include "ratrec/json_io.hpp"
#include "ratrec/parse.hpp"
#include "ratrec/recsys.hpp"
#include "test_support.hpp"

using namespace ratrec;
using testsupport::Rng;

namespace {

const FieldTag Q = FieldTag::rationals();

RecSystem make_system(const std::vector<std::string>& names,
                      const std::vector<std::string>& exprs, std::uint32_t main = 0) {
    std::vector<Update> updates;
    for (const auto& e : exprs) updates.push_back(Update::rational(parse_expr(e, names, Q)));
    return RecSystem(Q, names, std::move(updates), false, main);
}

InitialCondition num_init(const std::vector<long>& vals) {
    std::vector<ExactScalar> v;
    for (long x : vals) v.push_back(ExactScalar(Q, x));
    return InitialCondition::numeric(std::move(v));
}

mpz_class catalan(unsigned long n) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    return b / (n + 1);
}

mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

const RecSystem& sos_chain() {
    static RecSystem sys =
        make_system({"u1", "u2"}, {"u1^2+u2^2", "u1+u2"});
    return sys;
}

}  // namespace

TEST_CASE("numeric evaluation examples") {
    // Catalan numbers through the rational update 2(2v+1)/(v+2) * u
    auto cat = make_system({"u", "v"}, {"2*(2*v+1)/(v+2)*u", "v+1"});
    auto rows = evaluate(cat, num_init({1, 0}), 6);
    REQUIRE(rows.size() == 7);
    for (unsigned long n = 0; n <= 6; ++n) CHECK(rows[n][0].value() == catalan(n));

    auto fact = make_system({"b", "c"}, {"b+1", "c*(b+1)"}, 1);
    auto frows = evaluate(fact, num_init({0, 1}), 5);
    for (unsigned long n = 0; n <= 5; ++n) CHECK(frows[n][1].value() == factorial(n));

    auto inv = make_system({"u"}, {"1/u"});
    try {
        evaluate(inv, num_init({0}), 1);
        FAIL("expected division by zero");
    } catch (const StepDivisionByZero& e) {
        CHECK(e.step == 0);
        CHECK(e.equation == 0);
    }
}

TEST_CASE("symbolic evaluation examples") {
    auto trace = symbolic_evaluate(sos_chain(), InitialCondition::symbolic(), 2);
    std::vector<std::string> xs{"x1", "x2"};
    CHECK(trace.rows()[1][0] == parse_expr("x1^2+x2^2", xs, Q));
    CHECK(trace.rows()[2][0] == parse_expr("(x1^2+x2^2)^2+(x1+x2)^2", xs, Q));

    auto ident = make_system({"a", "b", "c"}, {"a", "b", "c"});
    auto itrace = symbolic_evaluate(ident, InitialCondition::symbolic(), 3);
    for (const auto& row : itrace.rows())
        for (std::uint32_t i = 0; i < 3; ++i)
            CHECK(row[i] == RationalFunction::variable(Q, 3, i));

    // the d = 3 counterexample with custom symbolic start: u_n = P(x+n)
    auto cx = make_system({"u", "v"}, {"(v+1)*v*(v-1)", "v+1"});
    std::vector<RationalFunction> custom{
        parse_expr("x1*(x1-1)*(x1-2)", {"x1", "x2"}, Q),
        parse_expr("x1", {"x1", "x2"}, Q)};
    auto ctrace =
        symbolic_evaluate(cx, InitialCondition::symbolic_custom(custom), 3);
    for (unsigned n = 0; n <= 3; ++n) {
        std::string expect = "(x1+" + std::to_string(n) + ")*(x1+" + std::to_string(n) +
                             "-1)*(x1+" + std::to_string(n) + "-2)";
        CHECK(ctrace.rows()[n][0] == parse_expr(expect, {"x1", "x2"}, Q));
    }
}

TEST_CASE("step homomorphism examples and commutation") {
    std::vector<std::string> xs{"x1", "x2"};
    CHECK(apply_step_homomorphism(sos_chain(), parse_expr("x1", xs, Q)) ==
          parse_expr("x1^2+x2^2", xs, Q));
    CHECK(apply_step_homomorphism(sos_chain(), parse_expr("7", xs, Q)) ==
          parse_expr("7", xs, Q));
    CHECK(apply_step_homomorphism(sos_chain(), parse_expr("x1+x2", xs, Q)) ==
          parse_expr("(x1^2+x2^2)+(x1+x2)", xs, Q));

    // h(F_n) = F_{n+1} on a random polyrec system
    Rng rng(11);
    for (int iter = 0; iter < 8; ++iter) {
        std::vector<Update> ups;
        std::vector<std::string> names{"a", "b"};
        for (int i = 0; i < 2; ++i)
            ups.push_back(Update::rational(
                RationalFunction(testsupport::random_poly(rng, Q, 2, 2, 2))));
        RecSystem sys(Q, names, std::move(ups));
        auto trace = symbolic_evaluate(sys, InitialCondition::symbolic(), 4);
        for (std::size_t n = 0; n + 1 <= 4; ++n)
            for (std::uint32_t i = 0; i < 2; ++i)
                CHECK(apply_step_homomorphism(sys, trace.rows()[n][i]) ==
                      trace.rows()[n + 1][i]);
    }
}

TEST_CASE("from_precursive examples") {
    // factorial: a_{n+1} = (n+1) a_n
    PRecurrence fac;
    fac.d = 1;
    fac.coeffs = {parse_expr("-(n+1)", {"n"}, Q).num(), parse_expr("1", {"n"}, Q).num()};
    fac.initial = {ExactScalar(Q, 1L), ExactScalar(Q, 1L)};
    auto [fsys, finit] = from_precursive(fac);
    CHECK(fsys.k() == 3);
    auto rows = evaluate(fsys, finit, 20);
    for (unsigned long n = 0; n <= 20; ++n) CHECK(rows[n][0].value() == factorial(n));

    PRecurrence fib;
    fib.d = 2;
    fib.coeffs = {parse_expr("-1", {"n"}, Q).num(), parse_expr("-1", {"n"}, Q).num(),
                  parse_expr("1", {"n"}, Q).num()};
    fib.initial = {ExactScalar(Q, 0L), ExactScalar(Q, 1L), ExactScalar(Q, 1L)};
    auto [bsys, binit] = from_precursive(fib);
    auto brows = evaluate(bsys, binit, 20);
    for (unsigned long n = 0; n <= 20; ++n) {
        mpz_class f;
        mpz_fib_ui(f.get_mpz_t(), n);
        CHECK(brows[n][0].value() == f);
    }

    // order 0 with P_0 = 1 forces the zero sequence
    PRecurrence zero;
    zero.d = 0;
    zero.coeffs = {parse_expr("1", {"n"}, Q).num()};
    zero.initial = {ExactScalar(Q, 0L)};
    auto [zsys, zinit] = from_precursive(zero);
    for (const auto& row : evaluate(zsys, zinit, 8)) CHECK(row[0].is_zero());
}

TEST_CASE("simple recursion examples") {
    SimpleRecursion fact;
    fact.m = 1;
    fact.r = parse_expr("y1^2/y0 + y1", {"y0", "y1"}, Q);
    fact.initial = {ExactScalar(Q, 1L), ExactScalar(Q, 1L)};
    auto vals = simple_evaluate(fact, 8);
    for (unsigned long n = 0; n <= 8; ++n) CHECK(vals[n].value() == factorial(n));

    SimpleRecursion constant;
    constant.m = 0;
    constant.r = parse_expr("y0", {"y0"}, Q);
    constant.initial = {ExactScalar(Q, 5L)};
    for (const auto& v : simple_evaluate(constant, 5)) CHECK(v == ExactScalar(Q, 5L));

    SimpleRecursion bad;
    bad.m = 1;
    bad.r = parse_expr("y1*(4*y1-y0)/(y1+2*y0)", {"y0", "y1"}, Q);
    bad.initial = {ExactScalar(Q, 0L), ExactScalar(Q, 0L)};
    try {
        simple_evaluate(bad, 3);
        FAIL("expected division by zero");
    } catch (const StepDivisionByZero& e) {
        CHECK(e.step == 0);
    }
}

TEST_CASE("degree profile examples") {
    auto trace = symbolic_evaluate(sos_chain(), InitialCondition::symbolic(), 2);
    auto prof = degree_profile(trace, 2, 2);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].d_n == 1);
    CHECK(prof[1].d_n == 2);
    CHECK(prof[2].d_n == 4);
    CHECK(prof[0].bound == 1);
    CHECK(prof[1].bound == 4);
    CHECK(prof[2].bound == 16);
    for (const auto& row : prof) CHECK(row.ok);

    auto ident = make_system({"a", "b"}, {"a", "b"});
    auto iprof =
        degree_profile(symbolic_evaluate(ident, InitialCondition::symbolic(), 4), 2, 1);
    for (const auto& row : iprof) {
        CHECK(row.d_n == 1);
        CHECK(row.ok);
    }
}

TEST_CASE("numeric/symbolic consistency") {
    Rng rng(2024);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<Update> ups;
        for (int i = 0; i < 2; ++i)
            ups.push_back(Update::rational(
                RationalFunction(testsupport::random_poly(rng, Q, 2, 2, 2))));
        RecSystem sys(Q, {"a", "b"}, std::move(ups));
        auto trace = symbolic_evaluate(sys, InitialCondition::symbolic(), 4);
        std::uniform_int_distribution<long> pt(-4, 4);
        std::vector<ExactScalar> init{ExactScalar(Q, pt(rng)), ExactScalar(Q, pt(rng))};
        auto rows = evaluate(sys, InitialCondition::numeric(init), 4);
        for (std::size_t n = 0; n <= 4; ++n)
            for (std::uint32_t i = 0; i < 2; ++i)
                CHECK(trace.rows()[n][i].eval(init) == rows[n][i]);
    }
}

TEST_CASE("extended systems match their fused standard form") {
    Rng rng(5150);
    for (int iter = 0; iter < 12; ++iter) {
        FieldTag field = iter % 2 ? FieldTag::prime(2) : Q;
        std::uint32_t k = 2 + (std::uint32_t)(rng() % 2);
        RecSystem ext = testsupport::random_extended_circuit_system(rng, field, k);
        std::vector<Circuit> cs;
        for (const auto& u : ext.updates()) cs.push_back(*u.circuit);
        Circuit fused = fuse_extended(cs);
        std::vector<Update> std_updates;
        for (std::uint32_t i = 0; i < k; ++i) {
            Circuit single = fused;
            single.set_outputs({fused.outputs()[i]});
            std_updates.push_back(Update::from_circuit(std::move(single)));
        }
        RecSystem standard(field, ext.names(), std::move(std_updates), false, 0);
        auto init = testsupport::random_numeric_init(rng, field, k, 1);
        auto a = evaluate(ext, init, 32);
        auto b = evaluate(standard, init, 32);
        CHECK(a == b);
    }
}

TEST_CASE("system JSON round-trip") {
    Json j = {
        {"field", "Q"},
        {"names", Json::array({"u", "v"})},
        {"main", "u"},
        {"extended", false},
        {"updates", Json::array({Json{{"name", "u"}, {"expr", "2*(2*v+1)/(v+2)*u"}},
                                 Json{{"name", "v"}, {"expr", "v+1"}}})},
        {"initial", Json{{"numeric", Json::array({"1", "0"})}}}};
    SystemFile f = system_from_json(j);
    CHECK(f.system.k() == 2);
    auto rows = evaluate(f.system, f.init, 4);
    CHECK(rows[4][0].value() == catalan(4));

    Json emitted = system_to_json(f);
    SystemFile again = system_from_json(emitted);
    CHECK(system_to_json(again) == emitted);  // canonical emit is a fixpoint

    // symbolic_custom with the "x" alias for x1
    Json j2 = j;
    j2["initial"] = Json{{"symbolic_custom", Json::array({"x*(x-1)*(x-2)", "x"})}};
    SystemFile f2 = system_from_json(j2);
    REQUIRE(f2.init.kind == InitialCondition::Kind::symbolic_custom);
    CHECK(f2.init.symbolic_values[0] ==
          parse_expr("x1*(x1-1)*(x1-2)", {"x1", "x2"}, Q));
}
