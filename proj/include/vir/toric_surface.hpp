#pragma once

#include "vir/laurent.hpp"
#include "vir/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace vir {

enum class SurfaceKind { P2, Hirzebruch };

struct SurfaceTag {
    SurfaceKind kind = SurfaceKind::P2;
    int a = 0;
    // "p2" or "f<a>".
    static SurfaceTag parse(const std::string& text);
    std::string name() const;
    bool operator==(const SurfaceTag&) const = default;
};

struct Ray {
    long x = 0;
    long y = 0;
};

struct FixedPoint {
    std::string name;
    int cone = 0;
    std::array<int, 2> rays{};
    // Dual basis of the cone: characters of the two chart coordinates.
    std::array<Exponent, 2> function_chars{};
    // Tangent weights, the inverses of the coordinate characters.
    std::array<Exponent, 2> tangent_chars{};
};

struct BasisClass {
    std::string name;
    int degree = 0;
};

struct EquivariantLift {
    int basis_index = 0;
    std::vector<LaurentPoly> restrictions; // one per fixed point
};

struct KunnethTerm {
    Rat coeff;
    int left = 0;
    int right = 0;
};

// A smooth projective toric surface with its cohomology basis
// 1, (divisor classes), p and equivariant lifts of each basis class.
class ToricSurface {
public:
    static ToricSurface build(const SurfaceTag& tag);

    const SurfaceTag& tag() const { return tag_; }
    const std::vector<Ray>& rays() const { return rays_; }
    const std::vector<std::array<int, 2>>& cones() const { return cones_; }
    const std::vector<FixedPoint>& fixed_points() const { return points_; }
    std::size_t num_fixed_points() const { return points_.size(); }

    const std::vector<BasisClass>& basis() const { return basis_; }
    int basis_size() const { return static_cast<int>(basis_.size()); }
    int basis_index(const std::string& name) const;
    int point_index() const { return basis_size() - 1; }
    int num_divisors() const { return basis_size() - 2; }
    int degree(int basis_idx) const { return basis_[basis_idx].degree; }
    // Intersection matrix on the divisor part of the basis.
    const std::vector<std::vector<Rat>>& intersection_matrix() const { return gram_; }
    // Class of the ray divisor D_i in divisor-basis coordinates.
    const std::vector<long>& ray_divisor_class(int ray) const { return ray_class_[ray]; }

    // Equivariant lift of a ray divisor: the dual-character linear form at
    // points whose cone contains the ray, zero elsewhere.
    EquivariantLift ray_divisor_lift(int ray) const;
    EquivariantLift divisor_lift(int basis_idx) const;
    EquivariantLift point_lift() const;
    EquivariantLift lift(int basis_idx) const;
    std::array<LinForm, 2> tangent_weights(int fp) const;
    LaurentPoly euler_class_tangent(int fp) const;

    // Coefficients (in the full basis) of the cup product of two basis classes.
    std::vector<Rat> cup(int i, int j) const;
    Rat integrate_basis(int i) const { return i == point_index() ? Rat(1) : Rat(0); }
    Rat intersect(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
    // Sum of left (x) right over the returned terms equals the diagonal class.
    std::vector<KunnethTerm> kunneth_diagonal() const;
    // Pushforward of a class along the diagonal, via the cup product.
    std::vector<KunnethTerm> diagonal_pushforward(const std::vector<Rat>& cls) const;
    Rat chi_structure_sheaf() const { return 1; }
    // Canonical class, minus the sum of ray divisors, in divisor-basis coordinates.
    std::vector<Rat> canonical_class() const;

private:
    SurfaceTag tag_;
    std::vector<Ray> rays_;
    std::vector<std::array<int, 2>> cones_;
    std::vector<FixedPoint> points_;
    std::vector<BasisClass> basis_;
    std::vector<std::vector<Rat>> gram_;
    std::vector<std::vector<long>> ray_class_;
    std::vector<int> divisor_ray_; // representative ray of each divisor basis class
};

} // namespace vir
