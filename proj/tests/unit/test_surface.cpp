#include "vir/fraction.hpp"
#include "vir/toric_surface.hpp"

#include <doctest.h>

#include <map>

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

LaurentPoly tangent_character(const FixedPoint& p)
{
    return LaurentPoly::monomial(p.tangent_chars[0]) + LaurentPoly::monomial(p.tangent_chars[1]);
}

// Full pairing matrix over the whole basis, from the cup product.
std::vector<std::vector<Rat>> pairing(const ToricSurface& X)
{
    const int n = X.basis_size();
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g[i][j] = X.cup(i, j)[X.point_index()];
    return g;
}

} // namespace

TEST_CASE("hirzebruch tangent weights")
{
    for (int a = 0; a <= 3; ++a) {
        const ToricSurface X = S(("f" + std::to_string(a)).c_str());
        const auto& pts = X.fixed_points();
        REQUIRE(pts.size() == 4);
        CHECK(tangent_character(pts[0]) == P("s^-1 + t^-1"));
        CHECK(tangent_character(pts[1]) == P("s^-1 + t"));
        CHECK(tangent_character(pts[2]) == P("s") + LaurentPoly::monomial(a, 1));
        CHECK(tangent_character(pts[3]) == P("s") + LaurentPoly::monomial(-a, -1));
    }
    const ToricSurface F2 = S("f2");
    CHECK(F2.euler_class_tangent(3) == P("-2*s^2 - s*t"));
    const ToricSurface F0 = S("f0");
    CHECK(F0.euler_class_tangent(0) == P("s*t"));
    CHECK(F0.euler_class_tangent(2) == P("s*t"));
}

TEST_CASE("divisor lifts on F0")
{
    const ToricSurface X = S("f0");
    const auto F = X.lift(X.basis_index("F")).restrictions;
    const auto Z = X.lift(X.basis_index("Z")).restrictions;
    CHECK(F == std::vector<LaurentPoly>{P("-s"), P("-s"), 0, 0});
    CHECK(Z == std::vector<LaurentPoly>{P("-t"), 0, 0, P("-t")});
    const auto p = X.point_lift().restrictions;
    CHECK(p[0] == P("s*t"));
    CHECK(p[2].is_zero());
}

TEST_CASE("point lift is a product of divisor coordinates")
{
    for (const char* tag : {"p2", "f0", "f1", "f3"}) {
        const ToricSurface X = S(tag);
        const auto p = X.point_lift().restrictions;
        int support = 0;
        for (std::size_t q = 0; q < p.size(); ++q) {
            if (p[q].is_zero())
                continue;
            ++support;
            CHECK(p[q] == X.euler_class_tangent(static_cast<int>(q)));
        }
        CHECK(support == 1);
        CHECK(X.lift(0).restrictions == std::vector<LaurentPoly>(X.num_fixed_points(), LaurentPoly(1)));
    }
}

TEST_CASE("localized degrees of the basis lifts")
{
    for (const char* tag : {"p2", "f0", "f1", "f2", "f5"}) {
        const ToricSurface X = S(tag);
        for (int i = 0; i < X.basis_size(); ++i) {
            const auto lift = X.lift(i);
            std::vector<LocalizedFraction> parts;
            for (std::size_t q = 0; q < X.num_fixed_points(); ++q) {
                const auto w = X.tangent_weights(static_cast<int>(q));
                parts.emplace_back(lift.restrictions[q], std::vector<LinForm>{w[0], w[1]});
            }
            const LaurentPoly value = clear_and_evaluate(sum_fractions(parts));
            CHECK(value == LaurentPoly(X.integrate_basis(i)));
        }
    }
}

TEST_CASE("equivariant products reproduce the intersection numbers")
{
    for (const char* tag : {"p2", "f0", "f1", "f2", "f4"}) {
        const ToricSurface X = S(tag);
        const auto g = pairing(X);
        for (int i = 1; i < X.point_index(); ++i)
            for (int j = 1; j < X.point_index(); ++j) {
                std::vector<LocalizedFraction> parts;
                for (std::size_t q = 0; q < X.num_fixed_points(); ++q) {
                    const auto w = X.tangent_weights(static_cast<int>(q));
                    parts.emplace_back(X.lift(i).restrictions[q] * X.lift(j).restrictions[q],
                                       std::vector<LinForm>{w[0], w[1]});
                }
                CHECK(clear_and_evaluate(sum_fractions(parts)) == LaurentPoly(g[i][j]));
                CHECK(g[i][j] == X.intersection_matrix()[i - 1][j - 1]);
            }
    }
    const ToricSurface F3 = S("f3");
    const int f = F3.basis_index("F"), z = F3.basis_index("Z");
    CHECK(pairing(F3)[f][f] == 0);
    CHECK(pairing(F3)[f][z] == 1);
    CHECK(pairing(F3)[z][z] == -3);
}

TEST_CASE("kunneth diagonal inverts the pairing")
{
    for (const char* tag : {"p2", "f0", "f1", "f2", "f5"}) {
        const ToricSurface X = S(tag);
        const int n = X.basis_size();
        std::vector<std::vector<Rat>> k(n, std::vector<Rat>(n));
        for (const auto& term : X.kunneth_diagonal())
            k[term.left][term.right] += term.coeff;
        const auto g = pairing(X);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat v;
                for (int m = 0; m < n; ++m)
                    v += k[i][m] * g[m][j];
                CHECK(v == Rat(i == j ? 1 : 0));
            }
    }
    // Explicit forms: p x 1 + F x (Z + aF) + Z x F + 1 x p on F_a.
    for (int a = 0; a <= 3; ++a) {
        const ToricSurface X = S(("f" + std::to_string(a)).c_str());
        const int f = X.basis_index("F"), z = X.basis_index("Z"), p = X.point_index();
        std::map<std::pair<int, int>, Rat> want{{{p, 0}, 1}, {{0, p}, 1}, {{f, z}, 1}, {{z, f}, 1}};
        if (a)
            want[{f, f}] = a;
        std::map<std::pair<int, int>, Rat> got;
        for (const auto& term : X.kunneth_diagonal())
            got[{term.left, term.right}] += term.coeff;
        std::erase_if(got, [](const auto& e) { return e.second == 0; });
        CHECK(got == want);
    }
}

TEST_CASE("canonical class and holomorphic euler characteristic")
{
    CHECK(S("f0").canonical_class() == std::vector<Rat>{-2, -2});
    CHECK(S("p2").canonical_class() == std::vector<Rat>{-3});
    CHECK(S("p2").chi_structure_sheaf() == 1);
    CHECK(S("f5").chi_structure_sheaf() == 1);
    const ToricSurface X = S("f2");
    const auto K = X.canonical_class();
    // Noether: K^2 + e = 12 chi, with e = 4 fixed points.
    CHECK(X.intersect(K, K) + Rat(X.num_fixed_points()) == 12 * X.chi_structure_sheaf());
}
