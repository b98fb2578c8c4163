#pragma once

#include "vir/laurent.hpp"

#include <vector>

namespace vir {

enum class FractionMode { Cohomological, KTheoretic };

// Laurent numerator over a factored denominator: a product of linear forms
// (cohomological mode) or of factors 1 - s^a t^b (K-theoretic mode).
class LocalizedFraction {
public:
    LocalizedFraction(LaurentPoly numerator, std::vector<LinForm> denominator);
    static LocalizedFraction k_theoretic(LaurentPoly numerator, std::vector<Exponent> denominator);

    FractionMode mode() const { return mode_; }
    const LaurentPoly& numerator() const { return num_; }
    const std::vector<LinForm>& denom_linear() const { return lin_; }
    const std::vector<Exponent>& denom_k() const { return kf_; }

    // Expanded denominator as a Laurent polynomial.
    LaurentPoly denominator_poly() const;
    // Cross-multiplied equality.
    bool equals(const LocalizedFraction& o) const;

private:
    LocalizedFraction() = default;
    void normalize();

    FractionMode mode_ = FractionMode::Cohomological;
    LaurentPoly num_;
    std::vector<LinForm> lin_;
    std::vector<Exponent> kf_;
};

// Sum over the least common multiple of the (normalized) factored denominators.
LocalizedFraction sum_fractions(const std::vector<LocalizedFraction>& fs);
// Divides out every denominator factor exactly; throws NotDivisible otherwise.
LaurentPoly clear_and_evaluate(const LocalizedFraction& f);
Rat evaluate_origin(const LaurentPoly& p);

} // namespace vir
