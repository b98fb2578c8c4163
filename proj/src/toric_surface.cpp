#include "vir/toric_surface.hpp"

#include "vir/errors.hpp"

#include <cstdlib>

namespace vir {

SurfaceTag SurfaceTag::parse(const std::string& text)
{
    if (text == "p2" || text == "P2")
        return {SurfaceKind::P2, 0};
    if (text.size() >= 2 && (text[0] == 'f' || text[0] == 'F')) {
        char* end = nullptr;
        long a = std::strtol(text.c_str() + 1, &end, 10);
        if (*end == '\0' && a >= 0 && a < 1000)
            return {SurfaceKind::Hirzebruch, static_cast<int>(a)};
    }
    throw ConfigError("unknown surface '" + text + "' (expected p2 or f<a>)");
}

std::string SurfaceTag::name() const
{
    return kind == SurfaceKind::P2 ? "p2" : "f" + std::to_string(a);
}

ToricSurface ToricSurface::build(const SurfaceTag& tag)
{
    ToricSurface X;
    X.tag_ = tag;
    if (tag.kind == SurfaceKind::P2) {
        X.rays_ = {{1, 0}, {0, 1}, {-1, -1}};
        X.cones_ = {{0, 1}, {1, 2}, {2, 0}};
        X.basis_ = {{"1", 0}, {"H", 1}, {"p", 2}};
        X.gram_ = {{Rat(1)}};
        X.ray_class_ = {{1}, {1}, {1}};
        X.divisor_ray_ = {0};
    } else {
        const long a = tag.a;
        X.rays_ = {{1, 0}, {0, -1}, {-1, a}, {0, 1}};
        X.cones_ = {{0, 3}, {0, 1}, {1, 2}, {2, 3}};
        X.basis_ = {{"1", 0}, {"F", 1}, {"Z", 1}, {"p", 2}};
        X.gram_ = {{Rat(0), Rat(1)}, {Rat(1), Rat(-a)}};
        X.ray_class_ = {{1, 0}, {a, 1}, {1, 0}, {0, 1}};
        X.divisor_ray_ = {0, 3};
    }
    for (std::size_t c = 0; c < X.cones_.size(); ++c) {
        const auto [i, j] = X.cones_[c];
        const Ray vi = X.rays_[i], vj = X.rays_[j];
        const long det = vi.x * vj.y - vi.y * vj.x;
        if (det != 1 && det != -1)
            throw InternalInconsistency("non-smooth cone in fan");
        FixedPoint p;
        p.name = "X" + std::to_string(c + 1);
        p.cone = static_cast<int>(c);
        p.rays = {i, j};
        p.function_chars = {Exponent{vj.y / det, -vj.x / det}, Exponent{-vi.y / det, vi.x / det}};
        p.tangent_chars = {-p.function_chars[0], -p.function_chars[1]};
        X.points_.push_back(p);
    }
    return X;
}

int ToricSurface::basis_index(const std::string& name) const
{
    for (int i = 0; i < basis_size(); ++i)
        if (basis_[i].name == name)
            return i;
    throw ConfigError("unknown cohomology class '" + name + "' on " + tag_.name());
}

EquivariantLift ToricSurface::ray_divisor_lift(int ray) const
{
    EquivariantLift L;
    L.basis_index = -1;
    for (const auto& p : points_) {
        LaurentPoly r;
        for (int k = 0; k < 2; ++k)
            if (p.rays[k] == ray)
                r = -LinForm::of(p.function_chars[k]).poly();
        L.restrictions.push_back(r);
    }
    return L;
}

EquivariantLift ToricSurface::divisor_lift(int basis_idx) const
{
    if (basis_idx <= 0 || basis_idx >= point_index())
        throw std::invalid_argument("divisor_lift expects a degree-one basis class");
    EquivariantLift L = ray_divisor_lift(divisor_ray_[basis_idx - 1]);
    L.basis_index = basis_idx;
    return L;
}

// Product of the lifts of the two ray divisors through the first fixed point.
EquivariantLift ToricSurface::point_lift() const
{
    EquivariantLift a = ray_divisor_lift(points_[0].rays[0]);
    EquivariantLift b = ray_divisor_lift(points_[0].rays[1]);
    EquivariantLift L;
    L.basis_index = point_index();
    for (std::size_t q = 0; q < points_.size(); ++q)
        L.restrictions.push_back(a.restrictions[q] * b.restrictions[q]);
    return L;
}

EquivariantLift ToricSurface::lift(int basis_idx) const
{
    if (basis_idx == 0) {
        EquivariantLift L;
        L.basis_index = 0;
        L.restrictions.assign(points_.size(), LaurentPoly(1));
        return L;
    }
    if (basis_idx == point_index())
        return point_lift();
    return divisor_lift(basis_idx);
}

std::array<LinForm, 2> ToricSurface::tangent_weights(int fp) const
{
    const auto& p = points_.at(fp);
    return {LinForm::of(p.tangent_chars[0]), LinForm::of(p.tangent_chars[1])};
}

LaurentPoly ToricSurface::euler_class_tangent(int fp) const
{
    auto w = tangent_weights(fp);
    return w[0].poly() * w[1].poly();
}

std::vector<Rat> ToricSurface::cup(int i, int j) const
{
    std::vector<Rat> out(basis_size(), Rat(0));
    if (i > j)
        std::swap(i, j);
    if (i == 0) {
        out[j] = 1;
    } else if (j < point_index()) {
        out[point_index()] = gram_[i - 1][j - 1];
    }
    return out;
}

Rat ToricSurface::intersect(const std::vector<Rat>& x, const std::vector<Rat>& y) const
{
    Rat v = 0;
    for (int i = 0; i < num_divisors(); ++i)
        for (int j = 0; j < num_divisors(); ++j)
            v += x[i] * gram_[i][j] * y[j];
    return v;
}

namespace {

std::vector<std::vector<Rat>> inverse(std::vector<std::vector<Rat>> m)
{
    const std::size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0)
            ++piv;
        if (piv == n)
            throw InternalInconsistency("singular intersection matrix");
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        Rat d = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= d;
            inv[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0)
                continue;
            Rat f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

} // namespace

std::vector<KunnethTerm> ToricSurface::kunneth_diagonal() const
{
    std::vector<KunnethTerm> out;
    out.push_back({Rat(1), point_index(), 0});
    auto inv = inverse(gram_);
    for (int i = 0; i < num_divisors(); ++i)
        for (int j = 0; j < num_divisors(); ++j)
            if (inv[i][j] != 0)
                out.push_back({inv[i][j], i + 1, j + 1});
    out.push_back({Rat(1), 0, point_index()});
    return out;
}

std::vector<KunnethTerm> ToricSurface::diagonal_pushforward(const std::vector<Rat>& cls) const
{
    std::vector<KunnethTerm> out;
    for (const auto& term : kunneth_diagonal()) {
        std::vector<Rat> left(basis_size(), Rat(0));
        for (int b = 0; b < basis_size(); ++b) {
            if (cls[b] == 0)
                continue;
            auto prod = cup(b, term.left);
            for (int k = 0; k < basis_size(); ++k)
                left[k] += cls[b] * prod[k];
        }
        for (int k = 0; k < basis_size(); ++k)
            if (left[k] != 0)
                out.push_back({term.coeff * left[k], k, term.right});
    }
    return out;
}

std::vector<Rat> ToricSurface::canonical_class() const
{
    std::vector<Rat> k(num_divisors(), Rat(0));
    for (const auto& cls : ray_class_)
        for (int i = 0; i < num_divisors(); ++i)
            k[i] -= cls[i];
    return k;
}

} // namespace vir
