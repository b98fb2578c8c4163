#pragma once

#include "vir/klyachko.hpp"
#include "vir/toric_surface.hpp"

#include <string>
#include <vector>

namespace vir {

struct ModuliCase {
    SurfaceTag surface;
    int r = 2;
    std::vector<long> delta; // divisor-basis coordinates of the determinant
    long c2 = 0;
    std::vector<long> H;     // divisor-basis coordinates of the polarization
    std::string describe() const;
};

std::vector<Rat> to_rats(const std::vector<long>& v);
// Checks ampleness, gcd(r, delta.H) = 1 and that H is on no wall.
void validate_case(const ToricSurface& X, const ModuliCase& c);

struct Wall {
    std::vector<long> xi; // divisor-basis coordinates
    Rat slope;            // F-coefficient over Z-coefficient of polarizations on the wall
};

// Walls xi^perp for classes xi with lower <= xi^2 < 0 meeting the ample cone;
// lower is the smaller of the two standard discriminant bounds.
std::vector<Wall> enumerate_walls(const ToricSurface& X, int r, const std::vector<long>& delta, long c2);
std::vector<Rat> wall_slopes(const std::vector<Wall>& walls);
// One integral ample polarization per chamber with gcd(r, delta.H) = 1.
std::vector<std::vector<long>> chamber_representatives(const ToricSurface& X, int r,
                                                       const std::vector<long>& delta, long c2);

struct EnumerationOptions {
    long search_bound = -1; // bound on the sum of all flag multiplicities; -1 = automatic
    int generic_seed = 1;   // seed of the generic flags used for rank four
};

struct StableBundle {
    KlyachkoData data;
    FixedPointSheaf sheaf;
    long c2 = 0;
    long delta_sum = 0;
};

struct BundleSearch {
    std::vector<StableBundle> bundles;
    long search_bound = 0;
    long max_delta_sum = 0;
    std::size_t configurations = 0;
};

// All mu-stable equivariant bundles with the given c1 and Bogomolov-admissible
// c2 <= target (ranks 2 to 4 on P2, rank 2 on F_a).
BundleSearch enumerate_stable_bundles(const ToricSurface& X, const ModuliCase& c,
                                      const EnumerationOptions& opt = {});

struct TangentData {
    LaurentPoly character;       // Ext^1(E, E)
    std::vector<LinForm> weights; // with multiplicity
    LaurentPoly chi;             // chi(E, E)
};

TangentData tangent_representation(const ToricSurface& X, const FixedPointSheaf& f);

struct FixedSheaf {
    KlyachkoData data;
    Deviations dev;
    FixedPointSheaf sheaf;
    long hull_c2 = 0;
    bool locally_free = true;
    TangentData tangent;
};

struct FixedLocus {
    ModuliCase mcase;
    long vdim = 0;
    std::vector<FixedSheaf> sheaves;
    BundleSearch search;
};

// Bundles in the Bogomolov window closed under all degenerations down to the
// target c2, with tangent representations checked for isolatedness.
FixedLocus enumerate_fixed_locus(const ToricSurface& X, const ModuliCase& c, const EnumerationOptions& opt = {});

// Monomial m with b = m * a at every fixed point, if one exists.
bool equal_up_to_twist(const FixedPointSheaf& a, const FixedPointSheaf& b);

} // namespace vir
