#pragma once

#include "vir/localization.hpp"
#include "vir/moduli.hpp"

#include <memory>
#include <vector>

namespace vir {

// Everything computed for one case: fixed locus and an integration engine.
struct CaseRun {
    ToricSurface X;
    FixedLocus locus;
    std::unique_ptr<LocalizationEngine> engine;
};

CaseRun run_case(const ModuliCase& c, const EnumerationOptions& opt = {});

// Canonical form of a fixed locus: twist-normalized K-classes, sorted.
std::vector<std::vector<LaurentPoly>> locus_signature(const FixedLocus& locus);

struct ChamberReport {
    std::vector<long> H;
    std::size_t fixed_points = 0;
    std::size_t locally_free = 0;
    int variant = 0; // index of the distinct nonempty fixed locus, -1 when M is empty
};

struct WallSurvey {
    std::vector<Wall> walls;
    std::vector<Rat> slopes;
    std::vector<ChamberReport> chambers;
    int variants = 0; // distinct nonempty fixed loci
    int empty_chambers = 0;
};

// Walls, one polarization per chamber, and the fixed locus found in each.
WallSurvey survey_walls(const ToricSurface& X, int r, const std::vector<long>& delta, long c2,
                        const EnumerationOptions& opt = {});

struct BracketReport {
    std::size_t sample = 0;      // restricted monomials used as arguments
    std::size_t evaluations = 0;
    std::size_t failures = 0;
};

// [L_k, L_m] for -1 <= k, m <= max_k, [L_n, h_k(p)] for -1 <= n <= max_k and
// 0 <= k <= max_k, [L_-1, S_k] for 0 <= k <= max_k, each applied to every
// restricted monomial of degree <= max_degree.
BracketReport run_bracket_suite(const ToricSurface& X, int max_k, int max_degree, int r, int threads = 0);

} // namespace vir
