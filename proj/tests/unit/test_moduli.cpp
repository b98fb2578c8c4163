#include "vir/driver.hpp"
#include "vir/errors.hpp"
#include "vir/moduli.hpp"

#include <doctest.h>

#include <set>

using namespace vir;

namespace {

ToricSurface S(const char* tag)
{
    return ToricSurface::build(SurfaceTag::parse(tag));
}

LaurentPoly P(const char* text)
{
    return LaurentPoly::parse(text);
}

std::size_t count_with_c2(const BundleSearch& s, long c2)
{
    std::size_t n = 0;
    for (const auto& b : s.bundles)
        n += (b.c2 == c2);
    return n;
}

std::size_t locally_free(const FixedLocus& locus)
{
    std::size_t n = 0;
    for (const auto& s : locus.sheaves)
        n += s.locally_free;
    return n;
}

// Wall slopes from xi = xF + yZ with r = 2 discriminant bound, by brute force.
std::set<Rat> brute_force_slopes_f0(const std::vector<long>& delta, long c2)
{
    const long d2 = 2 * delta[0] * delta[1];
    const long lower = d2 - 4 * c2;
    std::set<Rat> out;
    for (long x = -20; x <= 20; ++x)
        for (long y = -20; y <= 20; ++y) {
            const long sq = 2 * x * y;
            if (sq >= 0 || sq < lower)
                continue;
            // H = hF + kZ with xk + yh = 0 and h, k > 0.
            const Rat slope = make_rat(-x, 1) / y;
            if (slope > 0)
                out.insert(slope);
        }
    return out;
}

} // namespace

TEST_CASE("bundle counts on P2")
{
    const ToricSurface X = S("p2");
    const std::vector<std::size_t> want{1, 3, 3};
    for (long c2 = 1; c2 <= 3; ++c2) {
        const ModuliCase c{X.tag(), 2, {1}, c2, {1}};
        CHECK(count_with_c2(enumerate_stable_bundles(X, c), c2) == want[c2 - 1]);
    }
}

TEST_CASE("fixed loci on P2 rank two")
{
    const ToricSurface X = S("p2");
    const auto one = enumerate_fixed_locus(X, {X.tag(), 2, {1}, 1, {1}});
    CHECK(one.sheaves.size() == 1);
    CHECK(one.vdim == 0);
    const auto three = enumerate_fixed_locus(X, {X.tag(), 2, {1}, 3, {1}});
    CHECK(three.sheaves.size() == 48);
    CHECK(three.vdim == 8);
    for (const auto& s : three.sheaves) {
        CHECK(s.tangent.weights.size() == 8);
        CHECK(s.tangent.character.coeff({0, 0}) == 0);
        const auto ci = chern_invariants(X, s.sheaf);
        CHECK(ci.rank == 2);
        CHECK(ci.c2 - ci.c1_squared * Rat(1, 4) == Rat(3) - Rat(1, 4));
    }
}

TEST_CASE("F0 with determinant F + Z: rows, tangent spaces and Euler classes")
{
    const ToricSurface X = S("f0");
    const auto locus = enumerate_fixed_locus(X, {X.tag(), 2, {1, 1}, 2, {2, 5}});
    REQUIRE(locus.sheaves.size() == 4);
    CHECK(locus.vdim == 3);
    const std::vector<std::vector<const char*>> rows{{"1 + s^-1*t", "t^2 + s^-1", "t^2 + 1", "t + 1"},
                                                     {"t + t^-1", "t + 1", "s + t", "s*t + t^-1"},
                                                     {"t + 1", "t^2 + 1", "t^2 + s", "s*t + 1"},
                                                     {"s^-1*t + t^-1", "t + s^-1", "t + 1", "t + t^-1"}};
    const std::vector<const char*> tangent{"t^-1 + s^-1 + s^-1*t^-1", "s*t + s + t", "s + s*t^-1 + t^-1",
                                           "t + t*s^-1 + s^-1"};
    const std::vector<const char*> euler{"-s^2*t - s*t^2", "s^2*t + s*t^2", "-s^2*t + s*t^2", "s^2*t - s*t^2"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        FixedPointSheaf want;
        for (const char* cell : rows[i])
            want.classes.push_back(P(cell));
        int hits = 0;
        for (const auto& s : locus.sheaves) {
            if (!equal_up_to_twist(want, s.sheaf))
                continue;
            ++hits;
            CHECK(s.locally_free);
            CHECK(s.tangent.character == P(tangent[i]));
            LaurentPoly e(1);
            for (const auto& w : s.tangent.weights)
                e *= w.poly();
            CHECK(e == P(euler[i]));
            CHECK(s.tangent.chi == LaurentPoly(1) - s.tangent.character);
        }
        CHECK(hits == 1);
    }
}

TEST_CASE("F0 with determinant F at c2 = 2 in two chambers")
{
    const ToricSurface X = S("f0");
    const auto a = enumerate_fixed_locus(X, {X.tag(), 2, {1, 0}, 2, {2, 7}});
    const auto b = enumerate_fixed_locus(X, {X.tag(), 2, {1, 0}, 2, {3, 5}});
    CHECK(a.sheaves.size() == 6);
    CHECK(b.sheaves.size() == 22);
    CHECK(locally_free(a) == 6);
    // Two bundles exist in every chamber; the other 20 sheaves include four bundles.
    CHECK(locally_free(b) == 6);
}

TEST_CASE("walls on F0 against a brute-force oracle")
{
    const ToricSurface X = S("f0");
    for (const std::vector<long>& delta : {std::vector<long>{1, 0}, {0, 1}, {1, 1}})
        for (long c2 = 1; c2 <= 3; ++c2) {
            const auto slopes = wall_slopes(enumerate_walls(X, 2, delta, c2));
            CHECK(std::set<Rat>(slopes.begin(), slopes.end()) == brute_force_slopes_f0(delta, c2));
        }
    const auto s = wall_slopes(enumerate_walls(X, 2, {1, 0}, 2));
    CHECK(s == std::vector<Rat>{Rat(1, 4), Rat(1, 3), Rat(1, 2), 1, 2, 3, 4});
    CHECK(enumerate_walls(S("p2"), 2, {1}, 3).empty());
}

TEST_CASE("chamber representatives avoid walls and satisfy the coprimality condition")
{
    const ToricSurface X = S("f1");
    const auto reps = chamber_representatives(X, 2, {0, 1}, 2);
    CHECK(reps.size() == wall_slopes(enumerate_walls(X, 2, {0, 1}, 2)).size() + 1);
    for (const auto& H : reps)
        CHECK_NOTHROW(validate_case(X, {X.tag(), 2, {0, 1}, 2, H}));
    CHECK_THROWS_AS(validate_case(S("f0"), {SurfaceTag::parse("f0"), 2, {1, 0}, 2, {1, 1}}), ConfigError);
    CHECK_THROWS_AS(validate_case(S("f0"), {SurfaceTag::parse("f0"), 2, {1, 0}, 2, {2, 2}}), ConfigError);
}

TEST_CASE("wall survey for F0 with determinant F at c2 = 2")
{
    const auto survey = survey_walls(S("f0"), 2, {1, 0}, 2);
    CHECK(survey.slopes.size() == 7);
    CHECK(survey.chambers.size() == 8);
    CHECK(survey.variants == 2);
    CHECK(survey.empty_chambers == 1);
    const auto p2 = survey_walls(S("p2"), 2, {1}, 2);
    CHECK(p2.walls.empty());
    CHECK(p2.chambers.size() == 1);
}

TEST_CASE("twisting a sheaf is detected")
{
    FixedPointSheaf a{{P("1 + t"), P("s + t")}};
    FixedPointSheaf b{{P("s + s*t"), P("s^2 + s*t")}};
    FixedPointSheaf c{{P("s + s*t"), P("s^2 + t")}};
    CHECK(equal_up_to_twist(a, b));
    CHECK_FALSE(equal_up_to_twist(a, c));
}
