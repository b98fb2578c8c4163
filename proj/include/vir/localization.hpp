#pragma once

#include "vir/descendent.hpp"
#include "vir/homogeneous.hpp"
#include "vir/moduli.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace vir {

// A realized descendent class: one homogeneous polynomial per moduli fixed point.
struct RealizedClass {
    long degree = 0;
    std::vector<HomPoly> per_point;
};

// ch_i(gamma) at one moduli fixed point: the sum over surface fixed points of
// gamma_p * [-ch(E_p) exp(-c_1(E_p)/r)]_i / e(T_p), cleared exactly.
LaurentPoly realize_symbol(const ToricSurface& X, int i, const EquivariantLift& lift,
                           const FixedPointSheaf& f, int r);

// Moduli fixed points with their tangent weights, for Atiyah-Bott integration.
struct LocalizationInput {
    int r = 0;
    long vdim = 0;
    std::vector<FixedPointSheaf> sheaves;
    std::vector<std::vector<LinForm>> weights;
    static LocalizationInput from_locus(const FixedLocus& locus);
};

class LocalizationEngine {
public:
    LocalizationEngine(const ToricSurface& X, LocalizationInput input);

    const ToricSurface& surface() const { return X_; }
    int rank() const { return in_.r; }
    long vdim() const { return in_.vdim; }
    std::size_t num_points() const { return in_.sheaves.size(); }

    // Cached; safe to call concurrently.
    std::shared_ptr<const RealizedClass> realize(const DescSymbol& s) const;
    std::shared_ptr<const RealizedClass> realize(const DescMonomial& m) const;
    // Requires a homogeneous polynomial (zero counts as any degree).
    RealizedClass realize_poly(const DescPoly& D) const;

    // Cleared sum over q of P_q / e(T_q), as a homogeneous polynomial of degree
    // deg P - vdim. Throws NotDivisible when the sum is not polynomial.
    HomPoly localize(const RealizedClass& P) const;
    // Nonequivariant integral: each homogeneous part is localized and the
    // constant term kept.
    Rat integrate(const DescPoly& D) const;

private:
    ToricSurface X_;
    LocalizationInput in_;
    std::vector<EquivariantLift> lifts_;
    // Lowest common multiple of the tangent Euler classes as primitive forms
    // with multiplicity, and the cofactors L / e(T_q).
    std::vector<LinForm> lcm_;
    std::vector<HomPoly> cofactor_;

    mutable std::mutex mutex_;
    mutable std::map<DescSymbol, std::shared_ptr<const RealizedClass>> symbols_;
    mutable std::map<DescMonomial, std::shared_ptr<const RealizedClass>> monomials_;
};

struct CheckRow {
    int k = 0;
    DescMonomial D;
    Rat R, T, S;
    Rat sum() const { return R + T + S; }
};

struct VerifyReport {
    std::vector<CheckRow> rows; // sorted by decreasing k, then monomial
    bool pass = true;
    // Checks under the ordered-tuple counting convention for 1 <= k <= vdim.
    long ordered_checks = 0;
};

// Integrates R_k D, T_k D and S_k D for every k in [-1, vdim] and every D in
// monomial_basis(vdim - k). Rows are computed in parallel and merged by index.
VerifyReport verify_conjecture(const LocalizationEngine& engine, int threads = 0);
CheckRow check_one(const LocalizationEngine& engine, int k, const DescMonomial& D);

} // namespace vir
