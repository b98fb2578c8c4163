#include "vir/klyachko.hpp"

#include "vir/errors.hpp"
#include "vir/fraction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace vir {

KlyachkoData KlyachkoData::from_multiplicities(int rank, std::vector<Flag> flags,
                                               const std::vector<std::vector<long>>& deltas,
                                               const std::vector<long>& tops)
{
    KlyachkoData d;
    d.rank = rank;
    d.flags = std::move(flags);
    for (std::size_t i = 0; i < d.flags.size(); ++i) {
        std::vector<long> lam(rank);
        lam[rank - 1] = tops[i];
        for (int k = rank - 1; k >= 1; --k) {
            if (deltas[i][k - 1] < 0)
                throw InvalidFamily("negative flag multiplicity");
            lam[k - 1] = lam[k] - deltas[i][k - 1];
        }
        d.jumps.push_back(std::move(lam));
    }
    return d;
}

int KlyachkoData::level(int ray, long n) const
{
    int l = 0;
    for (long lam : jumps[ray])
        l += (lam <= n);
    return l;
}

Subspace KlyachkoData::space(int ray, long n) const
{
    const int l = level(ray, n);
    if (l == 0)
        return Subspace(rank);
    if (l == rank)
        return Subspace::full(rank);
    return flags[ray][l - 1];
}

Subspace weight_space(const ToricSurface& X, const KlyachkoData& d, const Deviations& dev, int cone,
                      long x, long y)
{
    auto it = dev.find(DevKey{cone, x, y});
    if (it != dev.end())
        return it->second;
    const auto& rays = X.cones()[cone];
    return intersect(d.space(rays[0], x), d.space(rays[1], y));
}

namespace {

std::set<long> distinct_jumps(const KlyachkoData& d, int ray)
{
    return {d.jumps[ray].begin(), d.jumps[ray].end()};
}

void check_family(const ToricSurface& X, const KlyachkoData& d, const Deviations& dev)
{
    for (const auto& [k, V] : dev) {
        Subspace lo = span(weight_space(X, d, dev, k.cone, k.x - 1, k.y),
                           weight_space(X, d, dev, k.cone, k.x, k.y - 1));
        Subspace hi = intersect(weight_space(X, d, dev, k.cone, k.x + 1, k.y),
                                weight_space(X, d, dev, k.cone, k.x, k.y + 1));
        if (!V.contains(lo) || !hi.contains(V))
            throw InvalidFamily("weight spaces are not monotone");
    }
}

} // namespace

FixedPointSheaf restrict_to_fixed_points(const ToricSurface& X, const KlyachkoData& d,
                                         const Deviations& dev)
{
    check_family(X, d, dev);
    FixedPointSheaf out;
    for (std::size_t c = 0; c < X.cones().size(); ++c) {
        const auto& fp = X.fixed_points()[c];
        const int ri = fp.rays[0], rj = fp.rays[1];
        std::set<std::pair<long, long>> pts;
        for (long x : distinct_jumps(d, ri))
            for (long y : distinct_jumps(d, rj))
                pts.insert({x, y});
        for (const auto& [k, V] : dev)
            if (k.cone == static_cast<int>(c))
                for (long dx = 0; dx <= 1; ++dx)
                    for (long dy = 0; dy <= 1; ++dy)
                        pts.insert({k.x + dx, k.y + dy});
        LaurentPoly E;
        const int ci = static_cast<int>(c);
        for (const auto& [x, y] : pts) {
            long dd = weight_space(X, d, dev, ci, x, y).dim() - weight_space(X, d, dev, ci, x - 1, y).dim() -
                      weight_space(X, d, dev, ci, x, y - 1).dim() +
                      weight_space(X, d, dev, ci, x - 1, y - 1).dim();
            if (dd != 0)
                E.add_term(fp.function_chars[0] * x + fp.function_chars[1] * y, Rat(dd));
        }
        out.classes.push_back(std::move(E));
    }
    return out;
}

std::vector<DegenerationSite> degeneration_sites(const ToricSurface& X, const KlyachkoData& d,
                                                 const Deviations& dev)
{
    std::vector<DegenerationSite> out;
    const long nd = static_cast<long>(dev.size());
    for (std::size_t c = 0; c < X.cones().size(); ++c) {
        const int ci = static_cast<int>(c);
        const auto& rays = X.cones()[c];
        const auto& li = d.jumps[rays[0]];
        const auto& lj = d.jumps[rays[1]];
        const long x0 = *std::min_element(li.begin(), li.end()) - 1;
        const long x1 = *std::max_element(li.begin(), li.end()) + nd + 1;
        const long y0 = *std::min_element(lj.begin(), lj.end()) - 1;
        const long y1 = *std::max_element(lj.begin(), lj.end()) + nd + 1;
        for (long x = x0; x <= x1; ++x)
            for (long y = y0; y <= y1; ++y) {
                Subspace F = weight_space(X, d, dev, ci, x, y);
                if (F.dim() == 0)
                    continue;
                Subspace P = span(weight_space(X, d, dev, ci, x - 1, y), weight_space(X, d, dev, ci, x, y - 1));
                const int q = F.dim() - P.dim();
                if (q > 0)
                    out.push_back({DevKey{ci, x, y}, q});
            }
    }
    return out;
}

Deviations degenerate(const ToricSurface& X, const KlyachkoData& d, const Deviations& dev, const DevKey& site)
{
    Subspace F = weight_space(X, d, dev, site.cone, site.x, site.y);
    Subspace P = span(weight_space(X, d, dev, site.cone, site.x - 1, site.y),
                      weight_space(X, d, dev, site.cone, site.x, site.y - 1));
    const int q = F.dim() - P.dim();
    if (q <= 0)
        throw NoRoom("predecessor span already fills the weight space");
    if (q >= 2)
        throw TrivialWeight("codimension-one choice is not unique: fixed locus is not isolated");
    Deviations out = dev;
    out[site] = P;
    return out;
}

Rat expected_dimension(const ToricSurface& X, long r, const Rat& c1_squared, const Rat& c2)
{
    return 2 * r * c2 - (r - 1) * c1_squared - (r * r - 1) * X.chi_structure_sheaf();
}

ChernInvariants chern_invariants(const ToricSurface& X, const FixedPointSheaf& f)
{
    const std::size_t n = X.num_fixed_points();
    std::vector<LaurentPoly> ch(n);
    for (std::size_t p = 0; p < n; ++p)
        ch[p] = char_to_chern(f.classes[p], 2);
    auto integral = [&](int basis_idx, int k) {
        EquivariantLift L = X.lift(basis_idx);
        std::vector<LocalizedFraction> parts;
        for (std::size_t p = 0; p < n; ++p) {
            auto w = X.tangent_weights(static_cast<int>(p));
            parts.emplace_back(L.restrictions[p] * ch[p].degree_part(k), std::vector<LinForm>{w[0], w[1]});
        }
        LaurentPoly v = clear_and_evaluate(sum_fractions(parts));
        if (!v.is_homogeneous(0))
            throw InternalInconsistency("localized Chern number is not a constant");
        return v.evaluate_origin();
    };
    ChernInvariants ci;
    ci.rank = integral(X.point_index(), 0);
    const int nd = X.num_divisors();
    std::vector<Rat> pair(nd);
    for (int j = 0; j < nd; ++j)
        pair[j] = integral(j + 1, 1);
    // Solve G c1 = pair for the divisor coordinates.
    const auto& G = X.intersection_matrix();
    if (nd == 1) {
        ci.c1 = {pair[0] / G[0][0]};
    } else {
        Rat det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
        ci.c1 = {(G[1][1] * pair[0] - G[0][1] * pair[1]) / det, (G[0][0] * pair[1] - G[1][0] * pair[0]) / det};
    }
    ci.c1_squared = X.intersect(ci.c1, ci.c1);
    ci.ch2 = integral(0, 2);
    ci.c2 = ci.c1_squared / 2 - ci.ch2;
    for (const auto& c : ci.c1)
        if (c.get_den() != 1)
            throw NonIntegral("non-integral first Chern class");
    if (ci.c2.get_den() != 1 || ci.rank.get_den() != 1)
        throw NonIntegral("non-integral Chern invariants");
    ci.vdim = expected_dimension(X, ci.rank.get_num().get_si(), ci.c1_squared, ci.c2);
    return ci;
}

std::vector<Rat> ray_degrees(const ToricSurface& X, const std::vector<Rat>& H)
{
    std::vector<Rat> out;
    for (std::size_t i = 0; i < X.rays().size(); ++i) {
        const auto& cls = X.ray_divisor_class(static_cast<int>(i));
        std::vector<Rat> D(cls.begin(), cls.end());
        out.push_back(X.intersect(D, H));
    }
    return out;
}

namespace {

std::vector<std::vector<int>> rows_of(const std::set<Subspace>& S, const std::vector<Subspace>& gens)
{
    std::vector<std::vector<int>> rows;
    for (const auto& W : S) {
        std::vector<int> row{W.dim()};
        for (const auto& g : gens)
            row.push_back(intersect(W, g).dim());
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

std::set<Subspace> one_step_set(const std::vector<Subspace>& gens, int r)
{
    std::set<Subspace> S;
    auto add = [&](const Subspace& W) {
        if (W.dim() > 0 && W.dim() < r)
            S.insert(W);
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
        add(gens[i]);
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            add(span(gens[i], gens[j]));
            add(intersect(gens[i], gens[j]));
        }
    }
    return S;
}

} // namespace

std::vector<std::vector<int>> one_step_rows(const std::vector<Subspace>& gens, int r)
{
    return rows_of(one_step_set(gens, r), gens);
}

std::vector<std::vector<int>> closure_rows(const std::vector<Subspace>& gens, int r)
{
    // Two rounds of pairwise spans and intersections.
    std::set<Subspace> S = one_step_set(gens, r);
    {
        const std::vector<Subspace> cur(S.begin(), S.end());
        auto next = one_step_set(cur, r);
        S.insert(next.begin(), next.end());
    }
    // Intersections and spans of arbitrary subsets of generators.
    std::vector<Subspace> proper;
    for (const auto& g : gens)
        if (g.dim() > 0 && g.dim() < r)
            proper.push_back(g);
    std::function<void(std::size_t, const Subspace&, bool)> walk = [&](std::size_t i, const Subspace& acc,
                                                                      bool meet) {
        if (acc.dim() > 0 && acc.dim() < r)
            S.insert(acc);
        if ((meet && acc.dim() == 0) || (!meet && acc.dim() == r))
            return;
        for (std::size_t j = i; j < proper.size(); ++j)
            walk(j + 1, meet ? intersect(acc, proper[j]) : span(acc, proper[j]), meet);
    };
    for (std::size_t i = 0; i < proper.size(); ++i) {
        walk(i + 1, proper[i], true);
        walk(i + 1, proper[i], false);
    }
    return rows_of(S, gens);
}

namespace {

Subspace flag_level(const Flag& f, int k, int r)
{
    if (k <= 0)
        return Subspace(r);
    if (k >= r)
        return Subspace::full(r);
    return f[k - 1];
}

// Schubert classes of Gr(2,4) indexed by partitions in a 2x2 box:
// 0:(0,0) 1:(1,0) 2:(2,0) 3:(1,1) 4:(2,1) 5:(2,2).
using Gr24 = std::array<long, 6>;

Gr24 gr24_mul(const Gr24& x, const Gr24& y)
{
    // prod[i][j] lists the classes (with multiplicity) of sigma_i * sigma_j.
    static const std::vector<int> prod[6][6] = {
        {{0}, {1}, {2}, {3}, {4}, {5}},
        {{1}, {2, 3}, {4}, {4}, {5}, {}},
        {{2}, {4}, {5}, {}, {}, {}},
        {{3}, {4}, {}, {5}, {}, {}},
        {{4}, {5}, {}, {}, {}, {}},
        {{5}, {}, {}, {}, {}, {}},
    };
    Gr24 out{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (x[i] && y[j])
                for (int k : prod[i][j])
                    out[k] += x[i] * y[j];
    return out;
}

} // namespace

bool flags_in_general_position(const std::vector<Flag>& flags, int r)
{
    const std::size_t n = flags.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            for (int a = 1; a < r; ++a)
                for (int b = 1; b < r; ++b) {
                    const Subspace A = flag_level(flags[i], a, r), B = flag_level(flags[j], b, r);
                    if (intersect(A, B).dim() != std::max(0, a + b - r))
                        return false;
                    for (std::size_t l = 0; l < n; ++l) {
                        if (l == i || l == j)
                            continue;
                        for (int c = 1; c < r; ++c) {
                            const Subspace C = flag_level(flags[l], c, r);
                            if (span(span(A, B), C).dim() != std::min(r, a + b + c))
                                return false;
                            if (intersect(intersect(A, B), C).dim() != std::max(0, a + b + c - 2 * r))
                                return false;
                            if (intersect(span(A, B), C).dim() != std::max(0, std::min(r, a + b) + c - r))
                                return false;
                            if (span(intersect(A, B), C).dim() != std::min(r, std::max(0, a + b - r) + c))
                                return false;
                        }
                    }
                }
        }
    return true;
}

std::vector<std::vector<int>> stability_test_rows(const std::vector<Flag>& flags, int r)
{
    std::vector<Subspace> gens;
    for (const auto& f : flags)
        for (const auto& U : f)
            gens.push_back(U);
    if (r <= 3)
        return one_step_rows(gens, r);
    if (r != 4 || flags.size() != 3)
        throw UnsupportedRankSurface("stability test rows need rank at most 4");
    std::vector<std::vector<int>> rows = closure_rows(gens, r);
    if (flags_in_general_position(flags, r)) {
        auto more = schubert_rows(r);
        rows.insert(rows.end(), more.begin(), more.end());
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

std::vector<std::vector<int>> schubert_rows(int r)
{
    if (r != 4)
        throw UnsupportedRankSurface("Schubert rows are tabulated for rank four only");
    // For each dimension d, every Schubert position triple whose class
    // product is nonzero is realized by some W when the three flags are in
    // general position; its generic intersection dimensions form one row.
    std::vector<std::vector<int>> rows;
    for (int d = 1; d < r; ++d) {
        std::vector<std::vector<int>> parts; // partitions in a d x (r-d) box
        std::vector<int> lam(d, 0);
        std::function<void(int, int)> gen = [&](int i, int cap) {
            if (i == d) {
                parts.push_back(lam);
                return;
            }
            for (int v = 0; v <= cap; ++v) {
                lam[i] = v;
                gen(i + 1, v);
            }
        };
        gen(0, r - d);
        auto dims = [&](const std::vector<int>& l) {
            std::vector<int> out;
            for (int k = 1; k < r; ++k) {
                int c = 0;
                for (int i = 1; i <= d; ++i)
                    if ((r - d) + i - l[i - 1] <= k)
                        ++c;
                out.push_back(c);
            }
            return out;
        };
        auto size = [](const std::vector<int>& l) { return std::accumulate(l.begin(), l.end(), 0); };
        auto index24 = [](const std::vector<int>& l) {
            static const std::map<std::vector<int>, int> idx{{{0, 0}, 0}, {{1, 0}, 1}, {{2, 0}, 2},
                                                             {{1, 1}, 3}, {{2, 1}, 4}, {{2, 2}, 5}};
            return idx.at(l);
        };
        for (const auto& l1 : parts)
            for (const auto& l2 : parts)
                for (const auto& l3 : parts) {
                    bool nonzero;
                    if (d == 2) {
                        Gr24 x{}, y{}, z{};
                        x[index24(l1)] = y[index24(l2)] = z[index24(l3)] = 1;
                        Gr24 p = gr24_mul(gr24_mul(x, y), z);
                        nonzero = std::any_of(p.begin(), p.end(), [](long v) { return v != 0; });
                    } else {
                        nonzero = size(l1) + size(l2) + size(l3) <= d * (r - d);
                    }
                    if (!nonzero)
                        continue;
                    std::vector<int> row{d};
                    for (const auto* l : {&l1, &l2, &l3}) {
                        auto v = dims(*l);
                        row.insert(row.end(), v.begin(), v.end());
                    }
                    rows.push_back(std::move(row));
                }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

bool is_mu_stable(const KlyachkoData& d, const std::vector<Rat>& deg)
{
    const int r = d.rank;
    if (r <= 1)
        return true;
    Rat total = 0;
    std::vector<Rat> coeff;
    for (std::size_t i = 0; i < d.flags.size(); ++i)
        for (int k = 1; k < r; ++k) {
            coeff.push_back(deg[i] * d.delta(static_cast<int>(i), k));
            total += coeff.back() * k;
        }
    for (const auto& row : stability_test_rows(d.flags, r)) {
        Rat lhs = 0;
        for (std::size_t l = 0; l < coeff.size(); ++l)
            lhs += coeff[l] * row[1 + l];
        if (!(r * lhs < row[0] * total))
            return false;
    }
    return true;
}

Rat hirzebruch_ch2_check(long a, long f, long z, const std::array<long, 4>& dl, const std::array<bool, 4>& adjacent)
{
    const long d1 = dl[0], d2 = dl[1], d3 = dl[2], d4 = dl[3];
    Rat v = make_rat(a * (d2 * d2 - d4 * d4 - z * z) - 2 * (d1 * d2 + d2 * d3 + d3 * d4 + d4 * d1) + 2 * f * z, 4);
    for (int i = 0; i < 4; ++i)
        if (adjacent[i])
            v += dl[i] * dl[(i + 1) % 4];
    return v;
}

} // namespace vir
