#include <doctest.h>

#include "ratrec/circuit.hpp"
#include "ratrec/json_io.hpp"
#include "ratrec/parse.hpp"
#include "test_support.hpp"

using namespace ratrec;
using testsupport::Rng;

namespace {

const FieldTag Q = FieldTag::rationals();

// 1 - (1 - x*y)*y, the encoding of (x and y) or not y
Circuit tau_circuit(FieldTag field) {
    Circuit c(field);
    auto x = c.add_input("x");
    auto y = c.add_input("y");
    auto xy = c.add_mul(x, y);
    auto one = c.add_constant(ExactScalar::one(field));
    auto inner = c.add_sub(one, xy);       // 1 - x*y
    auto prod = c.add_mul(inner, y);
    auto out = c.add_sub(one, prod);       // 1 - (1 - x*y)*y
    c.set_outputs({out});
    return c;
}

ExactScalar qs(long v) { return ExactScalar(Q, v); }

}  // namespace

TEST_CASE("circuit_eval examples") {
    Circuit c = tau_circuit(Q);
    CHECK(c.eval({{"x", qs(0)}, {"y", qs(0)}}) == qs(1));
    CHECK(c.eval({{"x", qs(1)}, {"y", qs(1)}}) == qs(1));
    CHECK(c.eval({{"x", qs(0)}, {"y", qs(1)}}) == qs(0));
    CHECK_THROWS_AS(c.eval({{"x", qs(0)}}), Error);  // missing input
    CHECK_THROWS_AS(c.eval({{"x", ExactScalar(FieldTag::prime(2), 1L)},
                            {"y", ExactScalar(FieldTag::prime(2), 1L)}}),
                    FieldMismatch);
}

TEST_CASE("circuit_to_polynomial examples") {
    {
        Circuit c(Q);
        auto x = c.add_input("x");
        auto one = c.add_constant(qs(1));
        c.set_outputs({c.add_add(x, one)});
        CHECK(c.to_polynomial(16) == parse_expr("x+1", {"x"}, Q).num());
    }
    {
        // (x+y)^2 through one Mul of a shared Add
        Circuit c(Q);
        auto x = c.add_input("x");
        auto y = c.add_input("y");
        auto s = c.add_add(x, y);
        c.set_outputs({c.add_mul(s, s)});
        CHECK(c.to_polynomial(16) == parse_expr("x^2+2*x*y+y^2", {"x", "y"}, Q).num());
    }
    {
        // (x1+x2+x3+x4)^4 has 35 monomials; a budget of 5 must trip
        Circuit c(Q);
        auto s = c.add_input("x1");
        for (int i = 2; i <= 4; ++i) s = c.add_add(s, c.add_input("x" + std::to_string(i)));
        auto sq = c.add_mul(s, s);
        c.set_outputs({c.add_mul(sq, sq)});
        CHECK_THROWS_AS(c.to_polynomial(5), ResourceLimit);
        CHECK(c.to_polynomial(64).term_count() == 35);
    }
}

TEST_CASE("fuse_extended examples") {
    // P1 = x1 + 1, P2 = z1 * x2
    Circuit p1(Q);
    p1.set_outputs({p1.add_add(p1.add_input("x1"), p1.add_constant(qs(1)))});
    Circuit p2(Q);
    p2.set_outputs({p2.add_mul(p2.add_input("z1"), p2.add_input("x2"))});

    Circuit fused = fuse_extended({p1, p2});
    REQUIRE(fused.outputs().size() == 2);
    auto vals = fused.eval_all({{"x1", qs(0)}, {"x2", qs(1)}});
    CHECK(vals[0] == qs(1));
    CHECK(vals[1] == qs(1));
    // fused second output expands to (x1+1)*x2
    Circuit second = fused;
    second.set_outputs({fused.outputs()[1]});
    CHECK(second.to_polynomial({"x1", "x2"}, 16) ==
          parse_expr("(x1+1)*x2", {"x1", "x2"}, Q).num());

    // identity fusion: no z labels anywhere
    Circuit q1(Q);
    q1.set_outputs({q1.add_mul(q1.add_input("x1"), q1.add_input("x1"))});
    Circuit fused1 = fuse_extended({q1});
    CHECK(fused1.eval_all({{"x1", qs(3)}})[0] == qs(9));

    // z2 inside equation 2 is a cyclic dependency
    Circuit bad(Q);
    bad.set_outputs({bad.add_input("z2")});
    CHECK_THROWS_AS(fuse_extended({p1, bad}), Error);
}

TEST_CASE("circuit_stats examples") {
    Circuit single(Q);
    single.set_outputs({single.add_input("x")});
    CHECK(single.stats().size == 1);
    CHECK(single.stats().depth == 0);

    Circuit xp1(Q);
    xp1.set_outputs({xp1.add_add(xp1.add_input("x"), xp1.add_constant(qs(1)))});
    CHECK(xp1.stats().size == 3);
    CHECK(xp1.stats().depth == 1);

    // iterated squaring to x^(2^5): one input and five muls
    Circuit sq(Q);
    auto g = sq.add_input("x");
    for (int i = 0; i < 5; ++i) g = sq.add_mul(g, g);
    sq.set_outputs({g});
    CHECK(sq.stats().size == 6);
    CHECK(sq.stats().depth == 5);
    CHECK(sq.to_polynomial(4) == parse_expr("x^32", {"x"}, Q).num());
}

TEST_CASE("expansion round-trip and eval agreement") {
    Rng rng(777);
    std::vector<std::string> names{"x1", "x2"};
    for (int iter = 0; iter < 20; ++iter) {
        auto p = testsupport::random_poly(rng, Q, 2, 3, 4);
        // lower the polynomial to a circuit term by term
        Circuit c(Q);
        std::uint32_t x1 = c.add_input("x1"), x2 = c.add_input("x2");
        std::optional<std::uint32_t> acc;
        for (const auto& [m, coeff] : p.terms()) {
            std::uint32_t t = c.add_constant(coeff);
            for (const auto& [var, exp] : m.entries())
                for (std::uint32_t e = 0; e < exp; ++e)
                    t = c.add_mul(t, var == 0 ? x1 : x2);
            acc = acc ? c.add_add(*acc, t) : t;
        }
        if (!acc) acc = c.add_constant(qs(0));
        c.set_outputs({*acc});
        CHECK(c.to_polynomial(names, 4096) == p);

        std::uniform_int_distribution<long> pt(-9, 9);
        std::vector<ExactScalar> at{qs(pt(rng)), qs(pt(rng))};
        CHECK(c.eval({{"x1", at[0]}, {"x2", at[1]}}) == p.eval(at));
    }
}

TEST_CASE("circuit JSON round-trip and forward-reference rejection") {
    Circuit c = tau_circuit(FieldTag::prime(2));
    Json j = circuit_to_json(c);
    Circuit back = circuit_from_json(j);
    CHECK(circuit_to_json(back) == j);
    for (long x = 0; x <= 1; ++x)
        for (long y = 0; y <= 1; ++y) {
            std::map<std::string, ExactScalar> in{
                {"x", ExactScalar(FieldTag::prime(2), x)},
                {"y", ExactScalar(FieldTag::prime(2), y)}};
            CHECK(back.eval(in) == c.eval(in));
        }

    Json bad = {{"field", "Q"},
                {"gates", Json::array({Json{{"op", "add"}, {"l", 0}, {"r", 1}},
                                       Json{{"op", "input"}, {"label", "x"}},
                                       Json{{"op", "input"}, {"label", "y"}}})},
                {"outputs", Json::array({0})}};
    CHECK_THROWS_AS(circuit_from_json(bad), Error);
}
