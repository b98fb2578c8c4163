#include "vir/localization.hpp"

#include "vir/errors.hpp"
#include "vir/fraction.hpp"
#include "vir/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace vir {

namespace {

// Exponent sum of a virtual character weighted by multiplicity: c_1 of det.
Exponent det_exponent(const LaurentPoly& E)
{
    Exponent d;
    for (const auto& [e, c] : E.terms()) {
        if (c.get_den() != 1)
            throw NonIntegral("character with fractional multiplicity: " + E.render());
        const long n = c.get_num().get_si();
        d = d + e * n;
    }
    return d;
}

// -ch(E) exp(-c_1(E)/r), truncated at total degree cap.
LaurentPoly local_kernel(const LaurentPoly& E, int r, int cap)
{
    const Exponent d = det_exponent(E);
    LaurentPoly x = LaurentPoly::monomial(1, 0, Rat(-d.a) / r) + LaurentPoly::monomial(0, 1, Rat(-d.b) / r);
    return (-char_to_chern(E, cap) * truncated_exp(x, cap)).truncate(cap);
}

LaurentPoly localize_over_surface(const ToricSurface& X, const EquivariantLift& lift,
                                  const std::vector<LaurentPoly>& parts)
{
    std::vector<LocalizedFraction> fs;
    for (std::size_t p = 0; p < X.num_fixed_points(); ++p) {
        const auto w = X.tangent_weights(static_cast<int>(p));
        fs.emplace_back(lift.restrictions[p] * parts[p], std::vector<LinForm>{w[0], w[1]});
    }
    return clear_and_evaluate(sum_fractions(fs));
}

// Primitive representative with positive leading coefficient, and the scalar
// relating it to the input form.
std::pair<LinForm, long> primitive(const LinForm& f)
{
    long g = std::gcd(f.a, f.b);
    if (f.a < 0 || (f.a == 0 && f.b < 0))
        g = -g;
    return {LinForm(f.a / g, f.b / g), g};
}

} // namespace

LaurentPoly realize_symbol(const ToricSurface& X, int i, const EquivariantLift& lift, const FixedPointSheaf& f,
                           int r)
{
    if (i < 0)
        return {};
    std::vector<LaurentPoly> parts;
    for (const auto& E : f.classes)
        parts.push_back(local_kernel(E, r, i).degree_part(i));
    return localize_over_surface(X, lift, parts);
}

LocalizationInput LocalizationInput::from_locus(const FixedLocus& locus)
{
    LocalizationInput in;
    in.r = locus.mcase.r;
    in.vdim = locus.vdim;
    for (const auto& s : locus.sheaves) {
        in.sheaves.push_back(s.sheaf);
        in.weights.push_back(s.tangent.weights);
    }
    return in;
}

LocalizationEngine::LocalizationEngine(const ToricSurface& X, LocalizationInput input)
    : X_(X), in_(std::move(input))
{
    if (in_.sheaves.size() != in_.weights.size())
        throw InternalInconsistency("fixed points and tangent weights do not match");
    for (int b = 0; b < X_.basis_size(); ++b)
        lifts_.push_back(X_.lift(b));

    std::vector<std::map<LinForm, int>> mult(num_points());
    std::vector<Rat> scale(num_points(), Rat(1));
    std::map<LinForm, int> top;
    for (std::size_t q = 0; q < num_points(); ++q) {
        if (static_cast<long>(in_.weights[q].size()) != in_.vdim)
            throw InternalInconsistency("tangent space dimension differs from the expected dimension");
        for (const auto& w : in_.weights[q]) {
            auto [f, g] = primitive(w);
            ++mult[q][f];
            scale[q] *= g;
        }
        for (const auto& [f, n] : mult[q])
            top[f] = std::max(top[f], n);
    }
    for (const auto& [f, n] : top)
        lcm_.insert(lcm_.end(), n, f);
    for (std::size_t q = 0; q < num_points(); ++q) {
        HomPoly c = HomPoly::constant(Rat(1) / scale[q]);
        for (const auto& [f, n] : top) {
            const auto it = mult[q].find(f);
            const int own = it == mult[q].end() ? 0 : it->second;
            for (int j = own; j < n; ++j)
                c = c * HomPoly::linear(f);
        }
        cofactor_.push_back(std::move(c));
    }
}

std::shared_ptr<const RealizedClass> LocalizationEngine::realize(const DescSymbol& s) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = symbols_.find(s); it != symbols_.end())
        return it->second;
    auto out = std::make_shared<RealizedClass>();
    out->degree = symbol_degree(X_, s);
    for (const auto& f : in_.sheaves) {
        const LaurentPoly v = realize_symbol(X_, s.i, lifts_[s.gamma], f, in_.r);
        if (out->degree < 0) {
            if (!v.is_zero())
                throw NotDivisible("realized class of negative degree is nonzero");
            out->per_point.emplace_back(static_cast<int>(out->degree));
        } else {
            out->per_point.push_back(HomPoly::from_laurent(v, static_cast<int>(out->degree)));
        }
    }
    symbols_.emplace(s, out);
    return out;
}

std::shared_ptr<const RealizedClass> LocalizationEngine::realize(const DescMonomial& m) const
{
    if (m.empty()) {
        auto one = std::make_shared<RealizedClass>();
        one->per_point.assign(num_points(), HomPoly::constant(1));
        return one;
    }
    if (m.size() == 1)
        return realize(m.front());
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = monomials_.find(m); it != monomials_.end())
            return it->second;
    }
    const DescMonomial head(m.begin(), m.end() - 1);
    const auto a = realize(head);
    const auto b = realize(m.back());
    auto out = std::make_shared<RealizedClass>();
    out->degree = a->degree + b->degree;
    out->per_point.reserve(num_points());
    for (std::size_t q = 0; q < num_points(); ++q)
        out->per_point.push_back(a->per_point[q] * b->per_point[q]);
    std::lock_guard<std::mutex> lock(mutex_);
    return monomials_.emplace(m, std::move(out)).first->second;
}

RealizedClass LocalizationEngine::realize_poly(const DescPoly& D) const
{
    RealizedClass out;
    const auto degs = D.degrees(X_);
    if (degs.size() > 1)
        throw InternalInconsistency("realize_poly needs a homogeneous polynomial");
    out.degree = degs.empty() ? 0 : degs.front();
    out.per_point.assign(num_points(), HomPoly(static_cast<int>(out.degree)));
    for (const auto& [m, c] : D.terms()) {
        const auto v = realize(m);
        for (std::size_t q = 0; q < num_points(); ++q) {
            HomPoly t = v->per_point[q];
            t *= c;
            out.per_point[q] += t;
        }
    }
    return out;
}

HomPoly LocalizationEngine::localize(const RealizedClass& P) const
{
    const int lcm_deg = static_cast<int>(lcm_.size());
    const int num_deg = static_cast<int>(P.degree - in_.vdim) + lcm_deg;
    HomPoly N(num_deg);
    if (num_deg >= 0)
        for (std::size_t q = 0; q < num_points(); ++q)
            N.add_product(P.per_point[q], cofactor_[q]);
    else
        for (const auto& v : P.per_point)
            if (!v.is_zero())
                throw NotDivisible("Atiyah-Bott sum of degree below -deg(L) is nonzero");
    for (const auto& f : lcm_)
        N = N.div_linform(f);
    return N;
}

Rat LocalizationEngine::integrate(const DescPoly& D) const
{
    std::map<long, DescPoly> parts;
    for (const auto& [m, c] : D.terms())
        parts[monomial_degree(X_, m)].add(m, c);
    Rat total = 0;
    for (const auto& [d, part] : parts)
        total += localize(realize_poly(part)).constant_term();
    return total;
}

CheckRow check_one(const LocalizationEngine& engine, int k, const DescMonomial& D)
{
    const ToricSurface& X = engine.surface();
    const DescPoly d = DescPoly::monomial(D);
    CheckRow row;
    row.k = k;
    row.D = D;
    row.R = engine.integrate(apply_R(X, k, d));
    row.T = engine.integrate(apply_T(X, k, d));
    row.S = engine.integrate(apply_S(X, k, d, engine.rank()));
    return row;
}

VerifyReport verify_conjecture(const LocalizationEngine& engine, int threads)
{
    const ToricSurface& X = engine.surface();
    const long vdim = engine.vdim();
    std::vector<std::pair<int, DescMonomial>> tasks;
    VerifyReport report;
    for (long k = vdim; k >= -1; --k) {
        for (auto& m : monomial_basis(X, vdim - k))
            tasks.emplace_back(static_cast<int>(k), std::move(m));
        if (k >= 1)
            report.ordered_checks += ordered_tuple_count(X, vdim - k);
    }
    report.rows.resize(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t j) {
        report.rows[j] = check_one(engine, tasks[j].first, tasks[j].second);
    }, threads);
    for (const auto& row : report.rows)
        if (row.sum() != 0)
            report.pass = false;
    return report;
}

} // namespace vir
