#include "vir/driver.hpp"

#include "vir/golden.hpp"
#include "vir/parallel.hpp"

#include <algorithm>

namespace vir {

CaseRun run_case(const ModuliCase& c, const EnumerationOptions& opt)
{
    CaseRun run{ToricSurface::build(c.surface), {}, nullptr};
    run.locus = enumerate_fixed_locus(run.X, c, opt);
    run.engine = std::make_unique<LocalizationEngine>(run.X, LocalizationInput::from_locus(run.locus));
    return run;
}

std::vector<std::vector<LaurentPoly>> locus_signature(const FixedLocus& locus)
{
    std::vector<std::vector<LaurentPoly>> out;
    for (const auto& s : locus.sheaves)
        out.push_back(twist_normalized(s.sheaf).classes);
    std::sort(out.begin(), out.end());
    return out;
}

WallSurvey survey_walls(const ToricSurface& X, int r, const std::vector<long>& delta, long c2,
                        const EnumerationOptions& opt)
{
    WallSurvey survey;
    if (X.tag().kind == SurfaceKind::P2) {
        ModuliCase c{X.tag(), r, delta, c2, {1}};
        const auto locus = enumerate_fixed_locus(X, c, opt);
        ChamberReport rep{c.H, locus.sheaves.size(), 0, 0};
        for (const auto& s : locus.sheaves)
            rep.locally_free += s.locally_free;
        survey.chambers.push_back(rep);
        survey.variants = 1;
        return survey;
    }
    survey.walls = enumerate_walls(X, r, delta, c2);
    survey.slopes = wall_slopes(survey.walls);
    std::vector<std::vector<std::vector<LaurentPoly>>> seen;
    for (const auto& H : chamber_representatives(X, r, delta, c2)) {
        ModuliCase c{X.tag(), r, delta, c2, H};
        const auto locus = enumerate_fixed_locus(X, c, opt);
        ChamberReport rep{H, locus.sheaves.size(), 0, 0};
        for (const auto& s : locus.sheaves)
            rep.locally_free += s.locally_free;
        if (locus.sheaves.empty()) {
            rep.variant = -1;
            ++survey.empty_chambers;
            survey.chambers.push_back(rep);
            continue;
        }
        const auto sig = locus_signature(locus);
        auto it = std::find(seen.begin(), seen.end(), sig);
        rep.variant = static_cast<int>(it - seen.begin());
        if (it == seen.end())
            seen.push_back(sig);
        survey.chambers.push_back(rep);
    }
    survey.variants = static_cast<int>(seen.size());
    return survey;
}

BracketReport run_bracket_suite(const ToricSurface& X, int max_k, int max_degree, int r, int threads)
{
    std::vector<DescPoly> sample;
    for (long d = 0; d <= max_degree; ++d)
        for (const auto& m : monomial_basis(X, d))
            sample.push_back(DescPoly::monomial(m));
    struct Task {
        int kind, a, b;
    };
    std::vector<Task> tasks;
    for (int k = -1; k <= max_k; ++k)
        for (int m = -1; m <= max_k; ++m)
            tasks.push_back({0, k, m});
    for (int n = -1; n <= max_k; ++n)
        for (int k = 0; k <= max_k; ++k)
            tasks.push_back({1, n, k});
    for (int k = 0; k <= max_k; ++k)
        tasks.push_back({2, k, 0});
    std::vector<std::size_t> failures(tasks.size(), 0);
    parallel_for(tasks.size(), [&](std::size_t t) {
        const auto& task = tasks[t];
        for (const auto& D : sample) {
            const bool ok = task.kind == 0   ? bracket_check(X, task.a, task.b, D)
                            : task.kind == 1 ? bracket_point_check(X, task.a, task.b, D)
                                             : bracket_S_check(X, task.a, D, r);
            failures[t] += !ok;
        }
    }, threads);
    BracketReport rep;
    rep.sample = sample.size();
    rep.evaluations = tasks.size() * sample.size();
    for (auto x : failures)
        rep.failures += x;
    return rep;
}

} // namespace vir
