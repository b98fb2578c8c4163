#include "vir/homogeneous.hpp"

#include "vir/errors.hpp"

namespace vir {

HomPoly::HomPoly(int degree) : deg_(degree), c_(degree >= 0 ? degree + 1 : 0) {}

HomPoly HomPoly::constant(const Rat& c)
{
    HomPoly p(0);
    p.c_[0] = c;
    return p;
}

HomPoly HomPoly::linear(const LinForm& f)
{
    HomPoly p(1);
    p.c_[0] = f.b;
    p.c_[1] = f.a;
    return p;
}

HomPoly HomPoly::from_laurent(const LaurentPoly& p, int d)
{
    HomPoly h(d);
    for (const auto& [e, c] : p.terms()) {
        if (e.a < 0 || e.b < 0 || e.a + e.b != d)
            throw InternalInconsistency("expected a homogeneous polynomial of degree " +
                                        std::to_string(d) + ", got " + p.render());
        h.c_[e.a] = c;
    }
    return h;
}

bool HomPoly::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0)
            return false;
    return true;
}

LaurentPoly HomPoly::to_laurent() const
{
    LaurentPoly p;
    for (int j = 0; j <= deg_; ++j)
        p.add_term({j, deg_ - j}, c_[j]);
    return p;
}

Rat HomPoly::constant_term() const
{
    return deg_ == 0 ? c_[0] : Rat(0);
}

Rat HomPoly::evaluate(const Rat& s, const Rat& t) const
{
    return to_laurent().evaluate(s, t);
}

HomPoly& HomPoly::operator+=(const HomPoly& o)
{
    if (o.deg_ != deg_) {
        if (o.is_zero())
            return *this;
        if (is_zero())
            return *this = o;
        throw InternalInconsistency("adding homogeneous polynomials of different degrees");
    }
    for (std::size_t j = 0; j < c_.size(); ++j)
        c_[j] += o.c_[j];
    return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o)
{
    HomPoly n = o;
    n *= Rat(-1);
    return *this += n;
}

HomPoly& HomPoly::operator*=(const Rat& c)
{
    for (auto& x : c_)
        x *= c;
    return *this;
}

HomPoly operator*(const HomPoly& x, const HomPoly& y)
{
    HomPoly out(x.deg_ + y.deg_);
    out.add_product(x, y);
    return out;
}

void HomPoly::add_product(const HomPoly& x, const HomPoly& y, const Rat& c)
{
    if (x.deg_ + y.deg_ != deg_) {
        if (is_zero()) {
            *this = HomPoly(x.deg_ + y.deg_);
        } else {
            if (x.is_zero() || y.is_zero())
                return;
            throw InternalInconsistency("degree mismatch in add_product");
        }
    }
    if (deg_ < 0)
        return;
    Rat tmp;
    for (int i = 0; i <= x.deg_; ++i) {
        if (x.c_[i] == 0)
            continue;
        for (int j = 0; j <= y.deg_; ++j) {
            if (y.c_[j] == 0)
                continue;
            tmp = x.c_[i] * y.c_[j];
            if (c != 1)
                tmp *= c;
            c_[i + j] += tmp;
        }
    }
}

bool HomPoly::operator==(const HomPoly& o) const
{
    if (deg_ != o.deg_)
        return is_zero() && o.is_zero();
    return c_ == o.c_;
}

HomPoly HomPoly::div_linform(const LinForm& f) const
{
    HomPoly q(deg_ - 1);
    if (is_zero())
        return q;
    if (deg_ == 0)
        throw NotDivisible("nonzero constant is not divisible by " + f.poly().render());
    const int n = deg_;
    if (f.b != 0) {
        q.c_[0] = c_[0] / f.b;
        for (int j = 1; j < n; ++j)
            q.c_[j] = (c_[j] - f.a * q.c_[j - 1]) / f.b;
        if (c_[n] != f.a * q.c_[n - 1])
            throw NotDivisible(to_laurent().render() + " is not divisible by " + f.poly().render());
    } else {
        if (c_[0] != 0)
            throw NotDivisible(to_laurent().render() + " is not divisible by " + f.poly().render());
        for (int j = 1; j <= n; ++j)
            q.c_[j - 1] = c_[j] / f.a;
    }
    return q;
}

HomPoly pow_linform(const LinForm& f, int n)
{
    HomPoly out = HomPoly::constant(1);
    HomPoly l = HomPoly::linear(f);
    for (int i = 0; i < n; ++i)
        out = out * l;
    return out;
}

} // namespace vir
