#pragma once

#include "vir/laurent.hpp"
#include "vir/rational.hpp"

#include <vector>

namespace vir {

// Dense homogeneous polynomial in s, t of a fixed degree d; coefficient j
// multiplies s^j t^(d-j). A negative degree is allowed and always means zero.
class HomPoly {
public:
    HomPoly() = default;
    explicit HomPoly(int degree);

    static HomPoly constant(const Rat& c);
    static HomPoly linear(const LinForm& f);
    // Throws InternalInconsistency unless p is homogeneous of degree d.
    static HomPoly from_laurent(const LaurentPoly& p, int d);

    int degree() const { return deg_; }
    bool is_zero() const;
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat& operator[](int j) { return c_[j]; }
    const Rat& operator[](int j) const { return c_[j]; }
    LaurentPoly to_laurent() const;
    // Coefficient of the constant monomial (zero unless degree 0).
    Rat constant_term() const;
    Rat evaluate(const Rat& s, const Rat& t) const;

    HomPoly& operator+=(const HomPoly& o);
    HomPoly& operator-=(const HomPoly& o);
    HomPoly& operator*=(const Rat& c);
    friend HomPoly operator*(const HomPoly& x, const HomPoly& y);
    friend HomPoly operator+(HomPoly x, const HomPoly& y) { return x += y; }
    friend HomPoly operator*(HomPoly x, const Rat& c) { return x *= c; }
    bool operator==(const HomPoly& o) const;
    // Adds c * x * y into this polynomial without temporaries.
    void add_product(const HomPoly& x, const HomPoly& y, const Rat& c = Rat(1));

    // Exact quotient by a*s + b*t; throws NotDivisible on a nonzero remainder.
    HomPoly div_linform(const LinForm& f) const;

private:
    int deg_ = 0;
    std::vector<Rat> c_{Rat(0)};
};

HomPoly pow_linform(const LinForm& f, int n);

} // namespace vir
