#pragma once

#include "vir/rational.hpp"
#include "vir/toric_surface.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vir {

// Formal symbol ch_i(gamma) for a basis class gamma of the surface.
struct DescSymbol {
    int i = 0;
    int gamma = 0; // index into ToricSurface::basis()
    auto operator<=>(const DescSymbol&) const = default;
};

// Sorted multiset of symbols; the empty monomial is 1.
using DescMonomial = std::vector<DescSymbol>;

long symbol_degree(const ToricSurface& X, const DescSymbol& s);
long monomial_degree(const ToricSurface& X, const DescMonomial& m);
DescMonomial canonical(DescMonomial m);

// Polynomial in the symbols with exact rational coefficients.
class DescPoly {
public:
    using Terms = std::map<DescMonomial, Rat>;

    DescPoly() = default;
    DescPoly(const Rat& c);
    static DescPoly monomial(DescMonomial m, const Rat& c = Rat(1));
    static DescPoly symbol(int i, int gamma, const Rat& c = Rat(1));
    // ch_i of a class given by basis coordinates, expanded by linearity.
    static DescPoly ch(int i, const std::vector<Rat>& gamma);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const DescMonomial& m, const Rat& c);

    DescPoly& operator+=(const DescPoly& o);
    DescPoly& operator-=(const DescPoly& o);
    DescPoly& operator*=(const Rat& c);
    friend DescPoly operator+(DescPoly x, const DescPoly& y) { return x += y; }
    friend DescPoly operator-(DescPoly x, const DescPoly& y) { return x -= y; }
    friend DescPoly operator*(DescPoly x, const Rat& c) { return x *= c; }
    friend DescPoly operator*(const Rat& c, DescPoly x) { return x *= c; }
    friend DescPoly operator*(const DescPoly& x, const DescPoly& y);
    bool operator==(const DescPoly& o) const { return terms_ == o.terms_; }

    // Degrees of the monomials present (empty for zero).
    std::vector<long> degrees(const ToricSurface& X) const;
    // Throws InternalInconsistency unless all monomials have degree d.
    void require_homogeneous(const ToricSurface& X, long d) const;

private:
    Terms terms_;
};

// h_i(gamma) = i! ch_{i+2-deg gamma}(gamma), of degree i.
DescPoly h_symbol(const ToricSurface& X, int i, int gamma);

// Operators on the full algebra.
DescPoly apply_R(const ToricSurface& X, int k, const DescPoly& D);
// The constant element T_k, from the two sums over the Kunneth components
// of the diagonal and of chi(O) p x p.
DescPoly T_element(const ToricSurface& X, int k);
DescPoly apply_T(const ToricSurface& X, int k, const DescPoly& D);
DescPoly apply_S(const ToricSurface& X, int k, const DescPoly& D, int r);
DescPoly apply_L(const ToricSurface& X, int k, const DescPoly& D, int r);

// Operators on the subalgebra generated by the h_i; inputs with a factor of
// negative degree throw NegativeDegreeInput.
void require_nonnegative(const ToricSurface& X, const DescPoly& D);
DescPoly apply_Rplus(const ToricSurface& X, int k, const DescPoly& D);
// T_k^+ from the Kunneth decomposition of the pushforward of the Todd class.
DescPoly Tplus_element(const ToricSurface& X, int k);
DescPoly apply_Tplus(const ToricSurface& X, int k, const DescPoly& D);
DescPoly apply_Splus(const ToricSurface& X, int k, const DescPoly& D, int r);
// L_k^+ = R_k^+ + T_k^+ (independent of the rank).
DescPoly apply_Lplus(const ToricSurface& X, int k, const DescPoly& D);

// [L_k^+, L_m^+] D == (m - k) L_{k+m}^+ D.
bool bracket_check(const ToricSurface& X, int k, int m, const DescPoly& D);
// [L_n^+, h_k(p)] D == k h_{n+k}(p) D.
bool bracket_point_check(const ToricSurface& X, int n, int k, const DescPoly& D);
// [L_{-1}^+, S_k^+] D == (k + 1) S_{k-1}^+ D, for k >= 0.
bool bracket_S_check(const ToricSurface& X, int k, const DescPoly& D, int r);

// Monomials of the given degree whose factors ch_i(gamma) have positive
// degree and i != 1, one per multiset.
std::vector<DescMonomial> monomial_basis(const ToricSurface& X, long degree);
// Number of factor tuples of the given total degree, ordered by nonincreasing
// factor degree, where factors of equal degree are also ordered. This counts
// ch_2(H)ch_3(1) and ch_3(1)ch_2(H) separately, as tabulated checks do.
long ordered_tuple_count(const ToricSurface& X, long degree);

// Rendering in the form ch_2(H)ch_3(1)^2; the empty monomial renders as 1.
std::string render(const ToricSurface& X, const DescMonomial& m, bool tex = false);
std::string render(const ToricSurface& X, const DescPoly& D);
// Accepts "1", "ch_2(H)ch_3(1)", "ch_3(1)^2", "\ch_2(\mathbf{p})", "*" separators.
DescMonomial parse_monomial(const ToricSurface& X, std::string_view text);

} // namespace vir
