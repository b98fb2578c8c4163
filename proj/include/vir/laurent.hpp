#pragma once

#include "vir/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace vir {

// Exponent pair (a, b) of the monomial s^a t^b.
struct Exponent {
    long a = 0;
    long b = 0;
    auto operator<=>(const Exponent&) const = default;
    Exponent operator+(const Exponent& o) const { return {a + o.a, b + o.b}; }
    Exponent operator-(const Exponent& o) const { return {a - o.a, b - o.b}; }
    Exponent operator-() const { return {-a, -b}; }
    Exponent operator*(long k) const { return {a * k, b * k}; }
};

class LaurentPoly;

// Integer linear form a*s + b*t, never identically zero.
struct LinForm {
    long a = 0;
    long b = 0;
    LinForm() = default;
    LinForm(long a_, long b_);
    static LinForm of(const Exponent& e) { return {e.a, e.b}; }
    LaurentPoly poly() const;
    auto operator<=>(const LinForm&) const = default;
};

// Bivariate Laurent polynomial in s, t with exact rational coefficients.
// Zero coefficients are never stored, so equal polynomials compare equal.
class LaurentPoly {
public:
    using Terms = std::map<Exponent, Rat>;

    LaurentPoly() = default;
    LaurentPoly(const Rat& c);
    LaurentPoly(long c) : LaurentPoly(Rat(c)) {}

    static LaurentPoly monomial(const Exponent& e, const Rat& c = Rat(1));
    static LaurentPoly monomial(long a, long b, const Rat& c = Rat(1))
    {
        return monomial(Exponent{a, b}, c);
    }
    static LaurentPoly s() { return monomial(1, 0); }
    static LaurentPoly t() { return monomial(0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rat coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const Rat& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rat& c);
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
    friend LaurentPoly operator*(LaurentPoly x, const Rat& c) { return x *= c; }
    friend LaurentPoly operator*(const Rat& c, LaurentPoly x) { return x *= c; }
    LaurentPoly operator-() const;
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

    // Part of total degree a+b == d.
    LaurentPoly degree_part(long d) const;
    // Drops all monomials of total degree > d.
    LaurentPoly truncate(long d) const;
    // Substitutes s -> 1/s, t -> 1/t (dual character).
    LaurentPoly dual() const;
    LaurentPoly shifted(const Exponent& e) const;
    LaurentPoly pow(unsigned n) const;
    // Sum of coefficients (virtual rank of a character).
    Rat value_at_one() const;
    Rat evaluate(const Rat& s, const Rat& t) const;
    bool has_integer_coefficients() const;
    bool is_polynomial() const;
    bool is_homogeneous(long d) const;
    Exponent min_exponents() const;
    // Coefficient of the constant monomial.
    Rat evaluate_origin() const { return coeff({0, 0}); }

    // Plain rendering "s^-1*t + 2*t^-1"; TeX rendering "s^{-1}t + 2t^{-1}".
    std::string render(bool tex = false) const;
    // Accepts both renderings above, plus juxtaposition and "**" powers.
    static LaurentPoly parse(std::string_view text);

private:
    Terms terms_;
};

// Sum_{k<=cap} x^k / k!, where x is a homogeneous linear polynomial.
LaurentPoly truncated_exp(const LaurentPoly& x, int cap);
LaurentPoly truncated_exp(const LinForm& w, int cap);
// Chern character of a character (virtual representation), truncated.
LaurentPoly char_to_chern(const LaurentPoly& k, int cap);
// Quotient p / f for a polynomial p exactly divisible by f.
LaurentPoly exact_div_linform(const LaurentPoly& p, const LinForm& f);
// Quotient p / (1 - s^a t^b) for a Laurent polynomial p exactly divisible by it.
LaurentPoly exact_div_kfactor(const LaurentPoly& p, const Exponent& m);

} // namespace vir
