#pragma once

#include "vir/localization.hpp"
#include "vir/moduli.hpp"

#include <string>
#include <vector>

namespace vir {

struct GoldenIntegral {
    std::string D_text;
    DescMonomial D;
    int k = 0;
    Rat R, T, S;
};

struct GoldenWhitelist {
    std::string D_text;
    int k = 0;
    char part = 'R'; // R, T or S
    Rat printed;
    Rat suspected;
    std::string reason;
};

// Reference data for one bundled case.
struct GoldenTable {
    std::string id;
    ModuliCase mcase;
    long vdim = 0;
    std::vector<std::vector<std::string>> fixed_text;
    std::vector<FixedPointSheaf> fixed_points;
    std::vector<GoldenIntegral> integrals;       // tabulated rows
    std::vector<GoldenIntegral> extra_integrals; // values quoted outside the tables
    std::vector<GoldenWhitelist> whitelist;
};

std::string golden_dir();
GoldenTable load_golden(const std::string& path);
std::vector<GoldenTable> load_all_golden(const std::string& dir = golden_dir());
// Bundled table whose case matches, or nullptr.
const GoldenTable* find_golden(const std::vector<GoldenTable>& all, const ModuliCase& c);

// Twist-normalized form: every class shifted so that the smallest exponent of
// the first class is zero.
FixedPointSheaf twist_normalized(const FixedPointSheaf& f);

struct GoldenMismatch {
    std::string what;
    std::string expected;
    std::string computed;
};

struct GoldenDiff {
    std::size_t fixed_expected = 0;
    std::size_t fixed_computed = 0;
    std::size_t fixed_matched = 0;
    std::vector<std::string> fixed_missing; // golden rows with no computed partner
    std::vector<std::string> fixed_missing_defect; // why that row cannot belong to the case, if known
    std::vector<std::string> fixed_extra;   // computed rows with no golden partner
    std::size_t integrals_checked = 0;
    std::vector<GoldenMismatch> integral_mismatches;
    std::vector<GoldenMismatch> whitelisted;
    bool fixed_ok() const { return fixed_missing.empty() && fixed_extra.empty(); }
    bool integrals_ok() const { return integral_mismatches.empty(); }
    bool ok() const { return fixed_ok() && integrals_ok(); }
};

// Empty when the row has rank r at every fixed point and the case's c1 and
// c2; otherwise a description of the first inconsistency.
std::string row_defect(const ToricSurface& X, const ModuliCase& c, const FixedPointSheaf& f);

// Compares the fixed-point rows up to a global twist and row order, and every
// tabulated (R, T, S) triple exactly.
GoldenDiff diff_golden(const GoldenTable& g, const FixedLocus& locus, const LocalizationEngine& engine);

} // namespace vir
