#pragma once

#include "vir/laurent.hpp"
#include "vir/linalg.hpp"
#include "vir/toric_surface.hpp"

#include <array>
#include <map>
#include <vector>

namespace vir {

// Proper part U_1 < ... < U_{r-1} of a full flag of Q^r, dim U_k = k.
using Flag = std::vector<Subspace>;

// Klyachko data of an equivariant reflexive sheaf: one filtration per ray.
// jumps[i][k-1] is the weight where the filtration of ray i reaches
// dimension >= k; the sequence is nondecreasing and ends at A^i.
struct KlyachkoData {
    int rank = 0;
    std::vector<Flag> flags;
    std::vector<std::vector<long>> jumps;

    // deltas[i][k-1] is the number of weights with dimension exactly k.
    static KlyachkoData from_multiplicities(int rank, std::vector<Flag> flags,
                                            const std::vector<std::vector<long>>& deltas,
                                            const std::vector<long>& tops);
    long delta(int ray, int k) const { return jumps[ray][k] - jumps[ray][k - 1]; }
    int level(int ray, long n) const;
    Subspace space(int ray, long n) const;
};

struct DevKey {
    int cone = 0;
    long x = 0;
    long y = 0;
    auto operator<=>(const DevKey&) const = default;
};

// Finitely many weight spaces replaced relative to the reflexive hull.
using Deviations = std::map<DevKey, Subspace>;

// K-class (character) of the sheaf at each surface fixed point.
struct FixedPointSheaf {
    std::vector<LaurentPoly> classes;
    bool operator==(const FixedPointSheaf&) const = default;
};

// Weight space at (x, y) of the chart of the given cone, in dual-basis coordinates.
Subspace weight_space(const ToricSurface& X, const KlyachkoData& d, const Deviations& dev, int cone,
                      long x, long y);
FixedPointSheaf restrict_to_fixed_points(const ToricSurface& X, const KlyachkoData& d,
                                         const Deviations& dev = {});

struct DegenerationSite {
    DevKey key;
    int codim = 0; // codimension of the predecessor span in the weight space
};

// All lattice points where the predecessor span is proper in the weight space.
std::vector<DegenerationSite> degeneration_sites(const ToricSurface& X, const KlyachkoData& d,
                                                 const Deviations& dev);
// Replaces the weight space at the site by the unique codimension-one subspace
// containing the predecessor span. Throws NoRoom when the span is already
// everything, and TrivialWeight when the choice is not unique.
Deviations degenerate(const ToricSurface& X, const KlyachkoData& d, const Deviations& dev,
                      const DevKey& site);

struct ChernInvariants {
    Rat rank;
    std::vector<Rat> c1; // divisor-basis coordinates
    Rat c1_squared;
    Rat ch2;
    Rat c2;
    Rat vdim;
};

ChernInvariants chern_invariants(const ToricSurface& X, const FixedPointSheaf& f);
Rat expected_dimension(const ToricSurface& X, long r, const Rat& c1_squared, const Rat& c2);

// Generators together with their pairwise spans and intersections (proper,
// nonzero ones). Each row is dim W followed by dim(W cap g) for every generator.
std::vector<std::vector<int>> one_step_rows(const std::vector<Subspace>& gens, int r);
// Rows for the generators closed twice under pairwise span and intersection,
// plus intersections and spans of all subsets of generators.
std::vector<std::vector<int>> closure_rows(const std::vector<Subspace>& gens, int r);
// Rows realized by some W for any three rank-four flags in general position,
// from the Schubert calculus of Gr(1,4), Gr(2,4) and Gr(3,4).
std::vector<std::vector<int>> schubert_rows(int r);
// Three flags of Q^4 whose pairwise and triple spans and intersections all
// have the dimensions forced by general position.
bool flags_in_general_position(const std::vector<Flag>& flags, int r);
// Rows as in one_step_rows over all flag subspaces (flag-major, k = 1..r-1),
// enough to decide slope stability for every choice of multiplicities.
// Exact in rank <= 3. In rank 4 these are the closure rows, together with the
// Schubert rows when the flags are in general position. Other ranks throw
// UnsupportedRankSurface.
std::vector<std::vector<int>> stability_test_rows(const std::vector<Flag>& flags, int r);
// Slope stability: for every proper nonzero subspace W,
// r * sum delta deg dim(W cap U) < dim W * sum delta deg k.
bool is_mu_stable(const KlyachkoData& d, const std::vector<Rat>& ray_degrees);
// Degrees H.D_i of the ray divisors.
std::vector<Rat> ray_degrees(const ToricSurface& X, const std::vector<Rat>& H);

// Closed-form ch2 of a rank-two bundle on F_a (four multiplicities, c1 = fF + zZ)
// with adjacency corrections; adjacent[i] means V^i = V^(i+1), cyclically.
Rat hirzebruch_ch2_check(long a, long f, long z, const std::array<long, 4>& delta,
                         const std::array<bool, 4>& adjacent);

} // namespace vir
