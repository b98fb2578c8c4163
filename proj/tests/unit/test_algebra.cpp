#include "vir/errors.hpp"
#include "vir/fraction.hpp"
#include "vir/homogeneous.hpp"
#include "vir/laurent.hpp"
#include "vir/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace vir;

namespace {

LaurentPoly P(const char* text)
{
    return LaurentPoly::parse(text);
}

LaurentPoly random_poly(std::mt19937& rng)
{
    std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), n(0, 4);
    LaurentPoly p;
    for (int i = n(rng); i > 0; --i)
        p.add_term({e(rng), e(rng)}, make_rat(c(rng), 1 + (i % 2)));
    return p;
}

} // namespace

TEST_CASE("laurent ring operations")
{
    const LaurentPoly s = LaurentPoly::s(), t = LaurentPoly::t();
    CHECK((s + t) * (s - t) == s * s - t * t);
    CHECK(P("1 + s^-1*t") + P("t + t^-1") == P("1 + s^-1*t + t + t^-1"));
    CHECK((P("s^-1*t + 2") * LaurentPoly()).is_zero());
    CHECK((s - s).terms().empty());
}

TEST_CASE("laurent ring axioms on random inputs")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("laurent parse and render agree in both modes")
{
    for (const char* text : {"s^-1*t + t^-1", "t^2 + s^-1", "-s*t + s + 2*t", "1", "3/2*s^2*t^-3 - 1"}) {
        const LaurentPoly p = P(text);
        CHECK(LaurentPoly::parse(p.render(false)) == p);
        CHECK(LaurentPoly::parse(p.render(true)) == p);
    }
    CHECK(P("s^{-1}t + t^{-1}").render(false) == "s^-1*t + t^-1");
    CHECK(P("st^2 + 1") == P("s*t^2 + 1"));
}

TEST_CASE("truncated exponential")
{
    CHECK(truncated_exp(LinForm(1, 0), 2) == P("1 + s + 1/2*s^2"));
    CHECK(truncated_exp(LinForm(-1, -1), 1) == P("1 - s - t"));
}

TEST_CASE("chern character of a character")
{
    CHECK(char_to_chern(P("s^-1 + t^-1"), 1) == P("2 - s - t"));
    CHECK(char_to_chern(LaurentPoly(3), 4) == LaurentPoly(3));
    // Hand expansion of exp(s - t) + exp(t - s) to order two.
    const LaurentPoly d = P("s - t");
    CHECK(char_to_chern(P("s*t^-1 + s^-1*t"), 2) == LaurentPoly(2) + d * d);
}

TEST_CASE("exact division by linear forms")
{
    CHECK(exact_div_linform(P("s^2 - t^2"), LinForm(1, 1)) == P("s - t"));
    CHECK(exact_div_linform(P("-s^2*t - s*t^2"), LinForm(1, 1)) == P("-s*t"));
    CHECK_THROWS_AS(exact_div_linform(P("s + t^2"), LinForm(1, 1)), NotDivisible);
    CHECK(exact_div_kfactor(P("1 - s^2"), {1, 0}) == P("1 + s"));
}

TEST_CASE("localized fractions")
{
    const LocalizedFraction a(P("1"), {LinForm(1, 0)}), b(P("-1"), {LinForm(1, 0)});
    CHECK(clear_and_evaluate(sum_fractions({a, b})).is_zero());
    const LocalizedFraction c(P("s*t"), {LinForm(-1, 0), LinForm(0, -1)});
    CHECK(clear_and_evaluate(sum_fractions({c})) == LaurentPoly(1));
    const LocalizedFraction d(P("s^2 - t^2"), {LinForm(1, 1)});
    CHECK(clear_and_evaluate(d) == P("s - t"));
    CHECK(evaluate_origin(clear_and_evaluate(d)) == 0);
    CHECK_THROWS_AS(clear_and_evaluate(LocalizedFraction(P("s"), {LinForm(0, 1)})), NotDivisible);
    CHECK(evaluate_origin(P("-49511/4096 + s*t - 3*s^2")) == make_rat(-49511, 4096));
}

TEST_CASE("homogeneous polynomials")
{
    const HomPoly f = HomPoly::linear(LinForm(1, 1)), g = HomPoly::linear(LinForm(1, -1));
    const HomPoly fg = f * g;
    CHECK(fg.to_laurent() == P("s^2 - t^2"));
    CHECK(fg.div_linform(LinForm(1, 1)) == g);
    CHECK_THROWS_AS((fg + HomPoly::from_laurent(P("s*t"), 2)).div_linform(LinForm(1, 1)), NotDivisible);
    CHECK(pow_linform(LinForm(2, -1), 3).to_laurent() == P("2*s - t").pow(3));
    CHECK_THROWS_AS(HomPoly::from_laurent(P("s + 1"), 1), InternalInconsistency);
}

TEST_CASE("subspaces")
{
    const Subspace a = Subspace::span_of(3, {{1, 0, 0}, {0, 1, 0}});
    const Subspace b = Subspace::span_of(3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(intersect(a, b) == Subspace::span_of(3, {{0, 2, 0}}));
    CHECK(span(a, b) == Subspace::full(3));
    CHECK(a.contains(Subspace::span_of(3, {{1, 1, 0}})));
    CHECK_FALSE(a.contains(b));
}
