#include "vir/fraction.hpp"

#include "vir/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace vir {

LocalizedFraction::LocalizedFraction(LaurentPoly numerator, std::vector<LinForm> denominator)
    : mode_(FractionMode::Cohomological), num_(std::move(numerator)), lin_(std::move(denominator))
{
    normalize();
}

LocalizedFraction LocalizedFraction::k_theoretic(LaurentPoly numerator, std::vector<Exponent> denominator)
{
    LocalizedFraction f;
    f.mode_ = FractionMode::KTheoretic;
    f.num_ = std::move(numerator);
    f.kf_ = std::move(denominator);
    f.normalize();
    return f;
}

// Linear factors become primitive with positive leading coordinate; K factors
// get a positive leading exponent. The numerator absorbs the units.
void LocalizedFraction::normalize()
{
    for (auto& f : lin_) {
        long g = std::gcd(f.a, f.b);
        if (f.a < 0 || (f.a == 0 && f.b < 0))
            g = -g;
        f = LinForm(f.a / g, f.b / g);
        num_ *= make_rat(1, g);
    }
    for (auto& m : kf_) {
        if (m.a == 0 && m.b == 0)
            throw std::invalid_argument("zero K-theory factor");
        if (m.a < 0 || (m.a == 0 && m.b < 0)) {
            m = -m;
            num_ = -num_.shifted(m);
        }
    }
    std::sort(lin_.begin(), lin_.end());
    std::sort(kf_.begin(), kf_.end());
}

LaurentPoly LocalizedFraction::denominator_poly() const
{
    LaurentPoly d(1);
    for (const auto& f : lin_)
        d *= f.poly();
    for (const auto& m : kf_)
        d *= LaurentPoly(1) - LaurentPoly::monomial(m);
    return d;
}

bool LocalizedFraction::equals(const LocalizedFraction& o) const
{
    return num_ * o.denominator_poly() == o.num_ * denominator_poly();
}

namespace {

template <class T>
std::map<T, int> multiplicities(const std::vector<T>& v)
{
    std::map<T, int> m;
    for (const auto& x : v)
        ++m[x];
    return m;
}

} // namespace

LocalizedFraction sum_fractions(const std::vector<LocalizedFraction>& fs)
{
    if (fs.empty())
        return LocalizedFraction(LaurentPoly(), {});
    const FractionMode mode = fs.front().mode();
    std::map<LinForm, int> lin_lcm;
    std::map<Exponent, int> k_lcm;
    for (const auto& f : fs) {
        if (f.mode() != mode)
            throw std::invalid_argument("sum_fractions: mixed localization modes");
        for (const auto& [x, n] : multiplicities(f.denom_linear()))
            lin_lcm[x] = std::max(lin_lcm[x], n);
        for (const auto& [x, n] : multiplicities(f.denom_k()))
            k_lcm[x] = std::max(k_lcm[x], n);
    }
    LaurentPoly num;
    for (const auto& f : fs) {
        LaurentPoly term = f.numerator();
        auto own_lin = multiplicities(f.denom_linear());
        for (const auto& [x, n] : lin_lcm)
            for (int i = own_lin[x]; i < n; ++i)
                term *= x.poly();
        auto own_k = multiplicities(f.denom_k());
        for (const auto& [x, n] : k_lcm)
            for (int i = own_k[x]; i < n; ++i)
                term *= LaurentPoly(1) - LaurentPoly::monomial(x);
        num += term;
    }
    if (mode == FractionMode::Cohomological) {
        std::vector<LinForm> den;
        for (const auto& [x, n] : lin_lcm)
            den.insert(den.end(), n, x);
        return LocalizedFraction(num, den);
    }
    std::vector<Exponent> den;
    for (const auto& [x, n] : k_lcm)
        den.insert(den.end(), n, x);
    return LocalizedFraction::k_theoretic(num, den);
}

LaurentPoly clear_and_evaluate(const LocalizedFraction& f)
{
    LaurentPoly p = f.numerator();
    for (const auto& l : f.denom_linear())
        p = exact_div_linform(p, l);
    for (const auto& m : f.denom_k())
        p = exact_div_kfactor(p, m);
    return p;
}

Rat evaluate_origin(const LaurentPoly& p)
{
    return p.evaluate_origin();
}

} // namespace vir
