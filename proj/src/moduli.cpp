#include "vir/moduli.hpp"

#include "vir/errors.hpp"
#include "vir/fraction.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace vir {

std::string ModuliCase::describe() const
{
    std::ostringstream os;
    os << surface.name() << " r=" << r << " delta=";
    for (std::size_t i = 0; i < delta.size(); ++i)
        os << (i ? "," : "") << delta[i];
    os << " c2=" << c2 << " H=";
    for (std::size_t i = 0; i < H.size(); ++i)
        os << (i ? "," : "") << H[i];
    return os.str();
}

std::vector<Rat> to_rats(const std::vector<long>& v)
{
    return {v.begin(), v.end()};
}

namespace {

bool is_ample(const ToricSurface& X, const std::vector<long>& H)
{
    if (static_cast<int>(H.size()) != X.num_divisors())
        return false;
    for (const auto& d : ray_degrees(X, to_rats(H)))
        if (d <= 0)
            return false;
    return true;
}

long gcd_l(long a, long b)
{
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

} // namespace

void validate_case(const ToricSurface& X, const ModuliCase& c)
{
    if (c.r < 1)
        throw ConfigError("rank must be positive");
    if (static_cast<int>(c.delta.size()) != X.num_divisors())
        throw ConfigError("delta must have " + std::to_string(X.num_divisors()) + " coordinates on " +
                          X.tag().name());
    if (!is_ample(X, c.H))
        throw ConfigError("polarization H is not ample on " + X.tag().name());
    Rat dh = X.intersect(to_rats(c.delta), to_rats(c.H));
    if (gcd_l(c.r, dh.get_num().get_si()) != 1)
        throw ConfigError("gcd(r, delta.H) must be 1 (delta.H = " + dh.get_str() + ")");
    for (const auto& w : enumerate_walls(X, c.r, c.delta, c.c2))
        if (X.intersect(to_rats(w.xi), to_rats(c.H)) == 0)
            throw ConfigError("polarization lies on a wall");
}

std::vector<Wall> enumerate_walls(const ToricSurface& X, int r, const std::vector<long>& delta, long c2)
{
    std::vector<Wall> out;
    if (X.tag().kind == SurfaceKind::P2)
        return out;
    const Rat d2 = X.intersect(to_rats(delta), to_rats(delta));
    const Rat rr = r;
    const Rat quarter = rr * rr / 4;
    const Rat lower_a = ((rr * rr - 1) * d2 - 2 * rr * c2) * quarter;
    const Rat lower_b = ((rr - 1) * d2 - 2 * rr * c2) * quarter;
    const Rat lower = std::min(lower_a, lower_b);
    if (lower >= 0)
        return out;
    const long bound = Int(-floor_rat(lower)).get_si() + 1;
    const long a = X.tag().a;
    std::set<Rat> seen;
    for (long y = 1; y <= bound; ++y)
        for (long x = -bound; x <= -1; ++x) {
            // xi = xF + yZ meets the ample cone exactly when x < 0 < y (up to sign).
            Rat sq = X.intersect(to_rats({x, y}), to_rats({x, y}));
            if (sq >= 0 || sq < lower)
                continue;
            Rat slope = Rat(a) - make_rat(x, y);
            if (!seen.insert(slope).second)
                continue;
            out.push_back({{x, y}, slope});
        }
    std::sort(out.begin(), out.end(), [](const Wall& u, const Wall& v) { return u.slope < v.slope; });
    return out;
}

std::vector<Rat> wall_slopes(const std::vector<Wall>& walls)
{
    std::vector<Rat> s;
    for (const auto& w : walls)
        s.push_back(w.slope);
    return s;
}

std::vector<std::vector<long>> chamber_representatives(const ToricSurface& X, int r, const std::vector<long>& delta,
                                                       long c2)
{
    if (X.tag().kind == SurfaceKind::P2) {
        for (long h = 1;; ++h)
            if (gcd_l(r, delta[0] * h) == 1)
                return {{h}};
    }
    const auto slopes = wall_slopes(enumerate_walls(X, r, delta, c2));
    std::vector<Rat> cuts;
    cuts.push_back(Rat(X.tag().a));
    cuts.insert(cuts.end(), slopes.begin(), slopes.end());
    std::vector<std::vector<long>> reps;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const Rat lo = cuts[i];
        const bool unbounded = (i + 1 == cuts.size());
        const Rat hi = unbounded ? Rat(0) : cuts[i + 1];
        bool found = false;
        // Smallest Z-coefficient first, then smallest F-coefficient.
        for (long q = 1; !found && q < 100000; ++q) {
            Int fl = floor_rat(lo * q);
            for (long p = fl.get_si() + 1; !found; ++p) {
                Rat ratio = make_rat(p, q);
                if (!unbounded && ratio >= hi)
                    break;
                std::vector<long> H{p, q};
                Rat dh = X.intersect(to_rats(delta), to_rats(H));
                if (gcd_l(r, dh.get_num().get_si()) == 1 && std::gcd(p, q) == 1) {
                    reps.push_back(H);
                    found = true;
                }
                if (unbounded && p > fl.get_si() + 4 * r)
                    break;
            }
        }
        if (!found)
            throw InternalInconsistency("no chamber representative found");
    }
    return reps;
}

bool equal_up_to_twist(const FixedPointSheaf& a, const FixedPointSheaf& b)
{
    if (a.classes.size() != b.classes.size())
        return false;
    if (a.classes.empty())
        return true;
    if (a.classes[0].is_zero() || b.classes[0].is_zero())
        return a == b;
    Exponent m = b.classes[0].terms().begin()->first - a.classes[0].terms().begin()->first;
    for (std::size_t p = 0; p < a.classes.size(); ++p)
        if (a.classes[p].shifted(m) != b.classes[p])
            return false;
    return true;
}

namespace {

// ---------------------------------------------------------------------------
// Candidate flag configurations. A flag is stored as r-1 integer vectors;
// U_k is the span of the first k of them.

using IVec = std::vector<long>;
using RawFlag = std::vector<IVec>;

constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t to_modp(long x)
{
    long m = x % static_cast<long>(kPrime);
    return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long>(kPrime) : m);
}

std::uint64_t inv_modp(std::uint64_t a)
{
    std::uint64_t r = 1, e = kPrime - 2;
    while (e) {
        if (e & 1)
            r = r * a % kPrime;
        a = a * a % kPrime;
        e >>= 1;
    }
    return r;
}

// Rank modulo a large prime; used only to group configurations.
int rank_modp(const std::vector<const IVec*>& vs, int n)
{
    std::vector<std::vector<std::uint64_t>> m;
    for (const auto* v : vs) {
        std::vector<std::uint64_t> row;
        for (long x : *v)
            row.push_back(to_modp(x));
        m.push_back(std::move(row));
    }
    int rank = 0;
    for (int c = 0; c < n && rank < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int i = rank; i < static_cast<int>(m.size()); ++i)
            if (m[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(m[rank], m[piv]);
        const std::uint64_t iv = inv_modp(m[rank][c]);
        for (int i = 0; i < static_cast<int>(m.size()); ++i)
            if (i != rank && m[i][c]) {
                const std::uint64_t f = m[i][c] * iv % kPrime;
                for (int k = 0; k < n; ++k)
                    m[i][k] = (m[i][k] + kPrime - f * m[rank][k] % kPrime) % kPrime;
            }
        ++rank;
    }
    return rank;
}

Subspace span_ivecs(int r, const std::vector<IVec>& vs, std::size_t count)
{
    std::vector<std::vector<Rat>> v;
    for (std::size_t i = 0; i < count; ++i)
        v.emplace_back(vs[i].begin(), vs[i].end());
    return Subspace::span_of(r, v);
}

Flag to_flag(int r, const RawFlag& f)
{
    Flag out;
    for (int k = 1; k < r; ++k)
        out.push_back(span_ivecs(r, f, k));
    return out;
}

RawFlag standard_raw_flag(int r)
{
    RawFlag f;
    for (int k = 0; k < r - 1; ++k) {
        IVec e(r, 0);
        e[k] = 1;
        f.push_back(e);
    }
    return f;
}

std::vector<RawFlag> flag_pool(int r)
{
    std::vector<RawFlag> pool;
    if (r == 2) {
        for (auto v : std::vector<IVec>{{1, 0}, {0, 1}, {1, 1}, {1, 2}})
            pool.push_back({v});
        return pool;
    }
    // Rank three: point inside line, both spanned by 0/1 vectors.
    std::vector<IVec> pts;
    for (long a = 0; a <= 1; ++a)
        for (long b = 0; b <= 1; ++b)
            for (long c = 0; c <= 1; ++c)
                if (a || b || c)
                    pts.push_back({a, b, c});
    std::set<Flag> seen;
    for (const auto& P : pts)
        for (const auto& Q : pts) {
            RawFlag f{P, Q};
            if (span_ivecs(3, f, 2).dim() == 2 && seen.insert(to_flag(3, f)).second)
                pool.push_back(f);
        }
    return pool;
}

// Rank four: each vector of a new flag is a random integer vector inside the
// whole space or inside a subspace of an earlier flag, which realizes the
// generic configuration together with its incidence specializations.
std::vector<std::vector<RawFlag>> rank4_configs(int seed)
{
    const int r = 4;
    std::mt19937 gen(static_cast<unsigned>(seed));
    std::uniform_int_distribution<long> dist(-99, 99);
    auto random_in = [&](const std::vector<IVec>& basis) {
        IVec v(r, 0);
        for (const auto& b : basis) {
            long c = 0;
            while (c == 0)
                c = dist(gen);
            for (int k = 0; k < r; ++k)
                v[k] += c * b[k];
        }
        return v;
    };
    const RawFlag f0 = standard_raw_flag(r);
    const std::vector<IVec> full = [&] {
        std::vector<IVec> b;
        for (int k = 0; k < r; ++k) {
            IVec e(r, 0);
            e[k] = 1;
            b.push_back(e);
        }
        return b;
    }();
    auto prefix = [](const RawFlag& f, int k) { return std::vector<IVec>(f.begin(), f.begin() + k); };
    auto build = [&](const std::vector<std::vector<IVec>>& choices, int code, int base, RawFlag& out) {
        out.clear();
        for (int k = 0; k < r - 1; ++k) {
            out.push_back(random_in(choices[code % base]));
            code /= base;
            std::vector<const IVec*> ptrs;
            for (const auto& v : out)
                ptrs.push_back(&v);
            if (rank_modp(ptrs, r) != k + 1)
                return false;
        }
        return true;
    };
    std::vector<std::vector<RawFlag>> out;
    std::vector<std::vector<IVec>> s1{full, prefix(f0, 1), prefix(f0, 2), prefix(f0, 3)};
    for (int c1 = 0; c1 < 64; ++c1) {
        RawFlag f1;
        if (!build(s1, c1, 4, f1))
            continue;
        std::vector<std::vector<IVec>> s2 = s1;
        for (int k = 1; k < r; ++k)
            s2.push_back(prefix(f1, k));
        for (int c2 = 0; c2 < 343; ++c2) {
            RawFlag f2;
            if (build(s2, c2, 7, f2))
                out.push_back({f0, f1, f2});
        }
    }
    return out;
}

std::vector<std::vector<RawFlag>> candidate_configs(const ToricSurface& X, int r, int seed)
{
    if (r == 4)
        return rank4_configs(seed);
    const std::size_t d = X.rays().size();
    const auto pool = flag_pool(r);
    std::vector<std::vector<RawFlag>> out;
    std::vector<std::size_t> idx(d - 1, 0);
    while (true) {
        std::vector<RawFlag> cfg{r == 2 ? pool[0] : standard_raw_flag(r)};
        for (auto k : idx)
            cfg.push_back(pool[k]);
        out.push_back(cfg);
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == pool.size())
            idx[pos++] = 0;
        if (pos == idx.size())
            break;
    }
    return out;
}

// Span dimensions of U^0_{l_0} + ... + U^{d-1}_{l_{d-1}} for all level
// tuples, indexed by sum l_i r^i.
std::vector<int> span_signature(const std::vector<RawFlag>& flags, int r)
{
    const std::size_t d = flags.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i)
        total *= r;
    std::vector<int> sig(total);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<const IVec*> vs;
        std::size_t c = code;
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t l = c % r;
            c /= r;
            for (std::size_t k = 0; k < l; ++k)
                vs.push_back(&flags[i][k]);
        }
        sig[code] = rank_modp(vs, r);
    }
    return sig;
}

// dim(U^i_{l1} cap U^j_{l2}) for l1, l2 in 0..r, from the span signature.
std::vector<int> cone_table(const std::vector<int>& sig, int r, int i, int j)
{
    std::vector<int> dims((r + 1) * (r + 1));
    auto power = [&](int e) {
        int p = 1;
        while (e-- > 0)
            p *= r;
        return p;
    };
    for (int l1 = 0; l1 <= r; ++l1)
        for (int l2 = 0; l2 <= r; ++l2) {
            int v;
            if (l1 == r)
                v = l2;
            else if (l2 == r)
                v = l1;
            else
                v = l1 + l2 - sig[l1 * power(i) + l2 * power(j)];
            dims[l1 * (r + 1) + l2] = v;
        }
    return dims;
}

// Test rows readable from the span signature alone: W a single flag subspace
// or the span of two from different rays. A necessary condition only.
std::vector<std::vector<int>> signature_rows(const std::vector<int>& sig, int r, int d)
{
    auto power = [&](int e) {
        int p = 1;
        while (e-- > 0)
            p *= r;
        return p;
    };
    auto dim_of = [&](const std::vector<int>& lv) {
        int code = 0;
        for (int i = 0; i < d; ++i)
            code += lv[i] * power(i);
        return sig[code];
    };
    std::set<std::vector<int>> rows;
    auto add = [&](const std::vector<int>& lv) {
        const int w = dim_of(lv);
        if (w == 0 || w == r)
            return;
        std::vector<int> row{w};
        for (int k = 0; k < d; ++k)
            for (int c = 1; c < r; ++c) {
                std::vector<int> both = lv;
                both[k] = std::max(both[k], c);
                row.push_back(w + c - dim_of(both));
            }
        rows.insert(row);
    };
    for (int i = 0; i < d; ++i)
        for (int a = 1; a < r; ++a) {
            std::vector<int> lv(d, 0);
            lv[i] = a;
            add(lv);
            for (int j = i + 1; j < d; ++j)
                for (int b = 1; b < r; ++b) {
                    lv[j] = b;
                    add(lv);
                    lv[j] = 0;
                }
        }
    return {rows.begin(), rows.end()};
}

bool passes(const std::vector<std::vector<int>>& rows, const std::vector<long>& dl, const std::vector<long>& deg,
            int r, long tot)
{
    for (const auto& row : rows) {
        long lhs = 0;
        for (std::size_t l = 0; l < dl.size(); ++l)
            if (dl[l] != 0)
                lhs += dl[l] * deg[l / (r - 1)] * row[1 + l];
        if (!(r * lhs < row[0] * tot))
            return false;
    }
    return true;
}

struct Config {
    std::vector<RawFlag> raw;
    std::vector<std::vector<int>> quick_rows;
    std::vector<int> tables; // per fixed point: index of its cone table
    std::vector<Flag> flags; // built on demand
    std::vector<std::vector<int>> rows;
    bool ready = false;

    void prepare(int r)
    {
        if (ready)
            return;
        for (const auto& f : raw)
            flags.push_back(to_flag(r, f));
        rows = stability_test_rows(flags, r);
        ready = true;
    }
};

// Signature of the used subspaces: spans of all subsets, pairwise
// intersections and one step of their span/intersection closure.
std::vector<int> used_signature(const std::vector<Flag>& flags, const std::vector<std::pair<int, int>>& used, int r)
{
    std::vector<int> sig;
    std::vector<Subspace> gens;
    for (const auto& [i, k] : used) {
        gens.push_back(flags[i][k - 1]);
        sig.push_back(i * 16 + k);
    }
    sig.push_back(-1);
    const std::size_t n = gens.size();
    std::vector<Subspace> spans(std::size_t(1) << n, Subspace(r));
    for (std::size_t m = 1; m < spans.size(); ++m) {
        spans[m] = span(spans[m & (m - 1)], gens[__builtin_ctzll(m)]);
        sig.push_back(spans[m].dim());
    }
    for (const auto& row : one_step_rows(gens, r)) {
        sig.push_back(-1);
        sig.insert(sig.end(), row.begin(), row.end());
    }
    return sig;
}

// ---------------------------------------------------------------------------
// Fast exact Chern numbers by evaluation at (s, t) = (1, 3), where no surface
// tangent weight vanishes. The localized sums are constants, so evaluating
// them is exact. Per-point contributions are scaled by den = lcm |e_p|.

struct FastChern {
    long a = 0;
    bool p2 = true;
    std::vector<long> scale;              // den / e_p(1,3)
    std::vector<std::vector<long>> lifts; // divisor lifts at (1,3), per basis divisor and point
    long den = 1;

    explicit FastChern(const ToricSurface& X)
    {
        p2 = X.tag().kind == SurfaceKind::P2;
        a = X.tag().a;
        std::vector<long> euler;
        for (std::size_t p = 0; p < X.num_fixed_points(); ++p) {
            Rat e = X.euler_class_tangent(static_cast<int>(p)).evaluate(1, 3);
            euler.push_back(e.get_num().get_si());
            den = std::lcm(den, std::abs(euler.back()));
        }
        for (long e : euler)
            scale.push_back(den / e);
        for (int j = 1; j <= X.num_divisors(); ++j) {
            std::vector<long> v;
            for (const auto& r : X.divisor_lift(j).restrictions)
                v.push_back(r.evaluate(1, 3).get_num().get_si());
            lifts.push_back(v);
        }
    }

    // Scaled contributions of one fixed point: pairings with each divisor
    // lift, then 2 ch2.
    std::vector<long> contribution(std::size_t p, const std::map<Exponent, long>& cls) const
    {
        long s1 = 0, s2 = 0;
        for (const auto& [e, c] : cls) {
            const long w = e.a + 3 * e.b;
            s1 += c * w;
            s2 += c * w * w;
        }
        std::vector<long> out;
        for (const auto& l : lifts)
            out.push_back(scale[p] * l[p] * s1);
        out.push_back(scale[p] * s2);
        return out;
    }

    // Returns false on non-integral totals. c1 must have the basis size.
    bool finish(const std::vector<long>& sums, std::vector<long>& c1, long& c2) const
    {
        const long ch2x2 = sums.back();
        for (std::size_t j = 0; j + 1 < sums.size(); ++j)
            if (sums[j] % den != 0)
                return false;
        long c1sq;
        if (p2) {
            c1[0] = sums[0] / den;
            c1sq = c1[0] * c1[0];
        } else {
            const long z = sums[0] / den;
            const long fco = sums[1] / den + a * z;
            c1[0] = fco;
            c1[1] = z;
            c1sq = 2 * fco * z - a * z * z;
        }
        const long num = den * c1sq - ch2x2;
        if (num % (2 * den) != 0)
            return false;
        c2 = num / (2 * den);
        return true;
    }
};

std::map<Exponent, long> local_class(const FixedPoint& pt, const std::array<int, 2>& cone,
                                     const std::vector<std::vector<long>>& lam, const std::vector<int>& D, int r)
{
    std::map<Exponent, long> cls;
    const int w = r + 1;
    for (int l1 = 1; l1 <= r; ++l1)
        for (int l2 = 1; l2 <= r; ++l2) {
            const long dd = D[l1 * w + l2] - D[(l1 - 1) * w + l2] - D[l1 * w + l2 - 1] + D[(l1 - 1) * w + l2 - 1];
            if (dd == 0)
                continue;
            const Exponent e = pt.function_chars[0] * lam[cone[0]][l1 - 1] + pt.function_chars[1] * lam[cone[1]][l2 - 1];
            if ((cls[e] += dd) == 0)
                cls.erase(e);
        }
    return cls;
}

} // namespace

BundleSearch enumerate_stable_bundles(const ToricSurface& X, const ModuliCase& c, const EnumerationOptions& opt)
{
    const int r = c.r;
    const bool p2 = X.tag().kind == SurfaceKind::P2;
    if (r < 2 || (p2 && r > 4) || (!p2 && r != 2))
        throw UnsupportedRankSurface("rank " + std::to_string(r) + " is not supported on " + X.tag().name());
    validate_case(X, c);
    const int d = static_cast<int>(X.rays().size());
    const Rat c1sq = X.intersect(to_rats(c.delta), to_rats(c.delta));
    const Rat disc = 2 * Rat(r) * c.c2 - (r - 1) * c1sq;
    BundleSearch out;
    const Rat scaled = disc / (r - 1);
    const long auto_bound = std::max<long>(0, Int(-floor_rat(-scaled)).get_si()) + 4;
    out.search_bound = opt.search_bound >= 0 ? opt.search_bound : auto_bound;

    std::vector<long> deg;
    for (const auto& x : ray_degrees(X, to_rats(c.H)))
        deg.push_back(x.get_num().get_si());
    const auto& pts = X.fixed_points();
    const auto& cones = X.cones();

    // Distinct configurations, grouped by the spans of their flag subspaces.
    std::vector<Config> configs;
    std::vector<std::map<std::vector<int>, int>> table_index(pts.size());
    std::vector<std::vector<std::vector<int>>> tables(pts.size());
    {
        std::set<std::vector<int>> seen;
        for (auto& raw : candidate_configs(X, r, opt.generic_seed)) {
            auto sig = span_signature(raw, r);
            if (!seen.insert(sig).second)
                continue;
            Config cfg;
            cfg.raw = std::move(raw);
            cfg.quick_rows = signature_rows(sig, r, d);
            for (std::size_t p = 0; p < pts.size(); ++p) {
                auto D = cone_table(sig, r, cones[p][0], cones[p][1]);
                auto [it, fresh] = table_index[p].emplace(D, static_cast<int>(tables[p].size()));
                if (fresh)
                    tables[p].push_back(D);
                cfg.tables.push_back(it->second);
            }
            configs.push_back(std::move(cfg));
        }
    }
    out.configurations = configs.size();

    FastChern fc(X);
    std::set<std::tuple<std::vector<int>, std::vector<std::vector<std::pair<Exponent, long>>>>> seen;
    const int nl = d * (r - 1);
    std::vector<long> dl(nl, 0);
    std::vector<std::vector<long>> lam(d, std::vector<long>(r));
    std::vector<std::vector<std::vector<long>>> contrib(pts.size());

    std::vector<long> sums(fc.lifts.size() + 1, 0);
    std::vector<long> c1buf(c.delta.size(), 0);
    const long bogomolov_x2r = (r - 1) * c1sq.get_num().get_si();

    auto visit = [&]() {
        // Tops from the normalization; integrality.
        std::vector<long> K(d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 1; k < r; ++k)
                K[i] += k * dl[i * (r - 1) + k - 1];
        std::vector<long> A(d, 0);
        if (p2) {
            const long x = K[0] + K[1] + K[2] - c.delta[0];
            if (x % r != 0)
                return;
            A[2] = x / r;
        } else {
            const long a = X.tag().a;
            const long x1 = c.delta[0] - K[2] - a * K[1];
            const long x4 = c.delta[1] - K[1];
            if ((K[0] - x1) % r != 0 || (K[3] - x4) % r != 0)
                return;
            A[0] = (K[0] - x1) / r;
            A[3] = (K[3] - x4) / r;
        }
        for (int i = 0; i < d; ++i) {
            lam[i][r - 1] = A[i];
            for (int k = r - 1; k >= 1; --k)
                lam[i][k - 1] = lam[i][k] - dl[i * (r - 1) + k - 1];
        }
        long tot = 0;
        for (int i = 0; i < d; ++i)
            for (int k = 1; k < r; ++k)
                tot += dl[i * (r - 1) + k - 1] * deg[i] * k;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            contrib[p].clear();
            for (const auto& D : tables[p])
                contrib[p].push_back(fc.contribution(p, local_class(pts[p], cones[p], lam, D, r)));
        }
        for (auto& cfg : configs) {
            std::fill(sums.begin(), sums.end(), 0);
            for (std::size_t p = 0; p < pts.size(); ++p) {
                const auto& v = contrib[p][cfg.tables[p]];
                for (std::size_t j = 0; j < v.size(); ++j)
                    sums[j] += v[j];
            }
            long c2 = 0;
            if (!fc.finish(sums, c1buf, c2) || c1buf != c.delta)
                throw InternalInconsistency("bundle search produced inconsistent first Chern class");
            if (c2 > c.c2 || 2 * r * c2 < bogomolov_x2r)
                continue;
            if (!passes(cfg.quick_rows, dl, deg, r, tot))
                continue;
            cfg.prepare(r);
            if (!passes(cfg.rows, dl, deg, r, tot))
                continue;
            std::vector<std::map<Exponent, long>> cls;
            for (std::size_t p = 0; p < pts.size(); ++p)
                cls.push_back(local_class(pts[p], cones[p], lam, tables[p][cfg.tables[p]], r));
            std::vector<std::pair<int, int>> used;
            long sum = 0;
            for (int l = 0; l < nl; ++l)
                if (dl[l] > 0) {
                    used.push_back({l / (r - 1), l % (r - 1) + 1});
                    sum += dl[l];
                }
            std::vector<std::vector<std::pair<Exponent, long>>> kc;
            for (const auto& m : cls)
                kc.emplace_back(m.begin(), m.end());
            if (!seen.emplace(used_signature(cfg.flags, used, r), kc).second)
                continue;
            StableBundle b;
            b.data.rank = r;
            b.data.flags = cfg.flags;
            b.data.jumps = lam;
            for (const auto& m : cls) {
                LaurentPoly E;
                for (const auto& [e, v] : m)
                    E.add_term(e, Rat(v));
                b.sheaf.classes.push_back(E);
            }
            b.c2 = c2;
            b.delta_sum = sum;
            out.max_delta_sum = std::max(out.max_delta_sum, sum);
            out.bundles.push_back(std::move(b));
        }
    };

    // All multiplicity vectors with total at most the search bound.
    std::function<void(int, long)> rec = [&](int pos, long left) {
        if (pos == nl) {
            visit();
            return;
        }
        for (long v = 0; v <= left; ++v) {
            dl[pos] = v;
            rec(pos + 1, left - v);
        }
        dl[pos] = 0;
    };
    rec(0, out.search_bound);

    // Independent re-check of every accepted bundle through the slow paths.
    const auto hdeg = ray_degrees(X, to_rats(c.H));
    for (const auto& b : out.bundles) {
        if (!is_mu_stable(b.data, hdeg))
            throw InternalInconsistency("accepted bundle fails the stability re-check");
        if (!(restrict_to_fixed_points(X, b.data) == b.sheaf))
            throw InternalInconsistency("fast K-class disagrees with the weight-space computation");
        ChernInvariants ci = chern_invariants(X, b.sheaf);
        if (ci.rank != r || ci.c2 != b.c2 || ci.c1 != to_rats(c.delta))
            throw InternalInconsistency("fast Chern numbers disagree with exact localization");
    }
    std::stable_sort(out.bundles.begin(), out.bundles.end(), [](const StableBundle& x, const StableBundle& y) {
        if (x.c2 != y.c2)
            return x.c2 < y.c2;
        return x.sheaf.classes < y.sheaf.classes;
    });
    return out;
}

TangentData tangent_representation(const ToricSurface& X, const FixedPointSheaf& f)
{
    std::vector<LocalizedFraction> parts;
    for (std::size_t p = 0; p < X.num_fixed_points(); ++p) {
        const auto& E = f.classes[p];
        const auto& fc = X.fixed_points()[p].function_chars;
        parts.push_back(LocalizedFraction::k_theoretic(E * E.dual(), {fc[0], fc[1]}));
    }
    TangentData out;
    out.chi = clear_and_evaluate(sum_fractions(parts));
    out.character = LaurentPoly(1) - out.chi;
    for (const auto& [e, c] : out.character.terms()) {
        if (e == Exponent{0, 0})
            throw TrivialWeight("tangent space has a trivial weight");
        if (c < 0 || c.get_den() != 1)
            throw InternalInconsistency("tangent character is not an honest representation");
        for (long k = 0; k < c.get_num().get_si(); ++k)
            out.weights.push_back(LinForm::of(e));
    }
    return out;
}

FixedLocus enumerate_fixed_locus(const ToricSurface& X, const ModuliCase& c, const EnumerationOptions& opt)
{
    FixedLocus out;
    out.mcase = c;
    out.search = enumerate_stable_bundles(X, c, opt);
    const Rat c1sq = X.intersect(to_rats(c.delta), to_rats(c.delta));
    const Rat vd = expected_dimension(X, c.r, c1sq, Rat(c.c2));
    out.vdim = vd.get_num().get_si();

    for (const auto& b : out.search.bundles) {
        // Each degeneration raises c2 by one; walk all chains of length target - c2.
        std::set<Deviations> layer{Deviations{}};
        for (long step = b.c2; step < c.c2; ++step) {
            std::set<Deviations> next;
            for (const auto& dev : layer)
                for (const auto& site : degeneration_sites(X, b.data, dev))
                    next.insert(degenerate(X, b.data, dev, site.key));
            layer = std::move(next);
        }
        for (const auto& dev : layer) {
            FixedSheaf fs;
            fs.data = b.data;
            fs.dev = dev;
            fs.sheaf = dev.empty() ? b.sheaf : restrict_to_fixed_points(X, b.data, dev);
            fs.hull_c2 = b.c2;
            fs.locally_free = dev.empty();
            const ChernInvariants ci = chern_invariants(X, fs.sheaf);
            if (ci.c2 != c.c2 || ci.c1 != to_rats(c.delta))
                throw InternalInconsistency("degeneration changed the Chern classes unexpectedly");
            fs.tangent = tangent_representation(X, fs.sheaf);
            if (static_cast<long>(fs.tangent.weights.size()) != out.vdim)
                throw InternalInconsistency("tangent dimension differs from the expected dimension");
            out.sheaves.push_back(std::move(fs));
        }
    }
    std::stable_sort(out.sheaves.begin(), out.sheaves.end(), [](const FixedSheaf& x, const FixedSheaf& y) {
        if (x.locally_free != y.locally_free)
            return x.locally_free;
        if (x.hull_c2 != y.hull_c2)
            return x.hull_c2 < y.hull_c2;
        return x.sheaf.classes < y.sheaf.classes;
    });
    for (std::size_t i = 1; i < out.sheaves.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (out.sheaves[i].sheaf == out.sheaves[j].sheaf)
                throw InternalInconsistency("two fixed points share the same K-classes");
    return out;
}

} // namespace vir
