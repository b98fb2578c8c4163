#include "vir/golden.hpp"

#include "vir/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

namespace vir {

namespace {

using nlohmann::json;

std::vector<long> long_vector(const json& j)
{
    std::vector<long> out;
    for (const auto& x : j)
        out.push_back(x.get<long>());
    return out;
}

GoldenIntegral read_integral(const ToricSurface& X, const json& j)
{
    GoldenIntegral g;
    g.D_text = j.at("D").get<std::string>();
    g.D = parse_monomial(X, g.D_text);
    g.k = j.at("k").get<int>();
    g.R = parse_rat(j.at("R").get<std::string>());
    g.T = parse_rat(j.at("T").get<std::string>());
    g.S = parse_rat(j.at("S").get<std::string>());
    return g;
}

std::string render_sheaf(const FixedPointSheaf& f)
{
    std::string out;
    for (std::size_t p = 0; p < f.classes.size(); ++p)
        out += (p ? " | " : "") + f.classes[p].render();
    return out;
}

const Rat& part_of(const CheckRow& row, char part)
{
    return part == 'R' ? row.R : part == 'T' ? row.T : row.S;
}

const Rat& part_of(const GoldenIntegral& g, char part)
{
    return part == 'R' ? g.R : part == 'T' ? g.T : g.S;
}

} // namespace

std::string golden_dir()
{
    if (const char* env = std::getenv("VIRASORO_GOLDEN_DIR"); env && *env)
        return env;
    return VIR_GOLDEN_DIR;
}

GoldenTable load_golden(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open golden file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed golden file " + path + ": " + e.what());
    }
    GoldenTable g;
    g.id = j.at("id").get<std::string>();
    g.mcase.surface = SurfaceTag::parse(j.at("surface").get<std::string>());
    g.mcase.r = j.at("r").get<int>();
    g.mcase.delta = long_vector(j.at("delta"));
    g.mcase.c2 = j.at("c2").get<long>();
    g.mcase.H = long_vector(j.at("H"));
    g.vdim = j.at("vdim").get<long>();
    const ToricSurface X = ToricSurface::build(g.mcase.surface);
    for (const auto& row : j.at("fixed_points")) {
        std::vector<std::string> texts;
        FixedPointSheaf f;
        for (const auto& cell : row) {
            texts.push_back(cell.get<std::string>());
            f.classes.push_back(LaurentPoly::parse(texts.back()));
        }
        if (f.classes.size() != X.num_fixed_points())
            throw ConfigError("golden row with wrong number of fixed points in " + path);
        g.fixed_text.push_back(std::move(texts));
        g.fixed_points.push_back(std::move(f));
    }
    for (const auto& row : j.at("integrals"))
        g.integrals.push_back(read_integral(X, row));
    if (j.contains("prose_integrals"))
        for (const auto& row : j.at("prose_integrals"))
            g.extra_integrals.push_back(read_integral(X, row));
    if (j.contains("whitelist"))
        for (const auto& w : j.at("whitelist")) {
            GoldenWhitelist e;
            e.D_text = w.at("D").get<std::string>();
            e.k = w.at("k").get<int>();
            e.part = w.at("part").get<std::string>().at(0);
            e.printed = parse_rat(w.at("printed").get<std::string>());
            e.suspected = parse_rat(w.at("suspected").get<std::string>());
            e.reason = w.value("reason", "");
            g.whitelist.push_back(std::move(e));
        }
    return g;
}

std::vector<GoldenTable> load_all_golden(const std::string& dir)
{
    std::vector<std::string> paths;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
        if (entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
    if (ec)
        throw ConfigError("cannot read golden directory " + dir);
    std::sort(paths.begin(), paths.end());
    std::vector<GoldenTable> out;
    for (const auto& p : paths)
        out.push_back(load_golden(p));
    return out;
}

const GoldenTable* find_golden(const std::vector<GoldenTable>& all, const ModuliCase& c)
{
    for (const auto& g : all)
        if (g.mcase.surface == c.surface && g.mcase.r == c.r && g.mcase.delta == c.delta &&
            g.mcase.c2 == c.c2 && g.mcase.H == c.H)
            return &g;
    return nullptr;
}

FixedPointSheaf twist_normalized(const FixedPointSheaf& f)
{
    if (f.classes.empty() || f.classes.front().is_zero())
        return f;
    const Exponent shift = -f.classes.front().terms().begin()->first;
    FixedPointSheaf out;
    for (const auto& c : f.classes)
        out.classes.push_back(c.shifted(shift));
    return out;
}

std::string row_defect(const ToricSurface& X, const ModuliCase& c, const FixedPointSheaf& f)
{
    for (std::size_t p = 0; p < f.classes.size(); ++p) {
        const Rat rk = f.classes[p].value_at_one();
        if (rk != c.r)
            return "rank " + to_string(rk) + " at " + X.fixed_points()[p].name + ", expected " + std::to_string(c.r);
    }
    ChernInvariants ci;
    try {
        ci = chern_invariants(X, f);
    } catch (const std::exception& e) {
        return std::string("no Chern classes: ") + e.what();
    }
    // c1 is only defined up to twist by line bundles: compare modulo r.
    for (std::size_t i = 0; i < c.delta.size(); ++i) {
        const Rat diff = ci.c1[i] - Rat(c.delta[i]);
        if (diff.get_den() != 1 || diff.get_num() % c.r != 0)
            return "c1 differs from the case determinant";
    }
    const Rat disc = Rat(2 * c.r) * ci.c2 - Rat(c.r - 1) * ci.c1_squared;
    std::vector<Rat> d = to_rats(c.delta);
    const Rat want = Rat(2 * c.r * c.c2) - Rat(c.r - 1) * X.intersect(d, d);
    if (disc != want)
        return "discriminant " + to_string(disc) + " (c2 = " + to_string(ci.c2) + "), expected " + to_string(want);
    return {};
}

GoldenDiff diff_golden(const GoldenTable& g, const FixedLocus& locus, const LocalizationEngine& engine)
{
    GoldenDiff d;
    d.fixed_expected = g.fixed_points.size();
    d.fixed_computed = locus.sheaves.size();

    std::map<std::vector<LaurentPoly>, std::vector<std::string>> pending;
    for (const auto& s : locus.sheaves)
        pending[twist_normalized(s.sheaf).classes].push_back(render_sheaf(s.sheaf));
    for (const auto& f : g.fixed_points) {
        auto it = pending.find(twist_normalized(f).classes);
        if (it == pending.end() || it->second.empty()) {
            d.fixed_missing.push_back(render_sheaf(f));
            d.fixed_missing_defect.push_back(row_defect(engine.surface(), g.mcase, f));
            continue;
        }
        it->second.pop_back();
        ++d.fixed_matched;
    }
    for (const auto& [key, rows] : pending)
        d.fixed_extra.insert(d.fixed_extra.end(), rows.begin(), rows.end());

    auto check = [&](const GoldenIntegral& gi) {
        ++d.integrals_checked;
        const CheckRow row = check_one(engine, gi.k, gi.D);
        for (char part : {'R', 'T', 'S'}) {
            const Rat& want = part_of(gi, part);
            const Rat& got = part_of(row, part);
            if (want == got)
                continue;
            GoldenMismatch m{std::string(1, part) + "_" + std::to_string(gi.k) + " " + gi.D_text,
                             to_string(want), to_string(got)};
            const bool listed = std::any_of(g.whitelist.begin(), g.whitelist.end(), [&](const GoldenWhitelist& w) {
                return w.k == gi.k && w.part == part && parse_monomial(engine.surface(), w.D_text) == gi.D &&
                       w.printed == want && w.suspected == got;
            });
            (listed ? d.whitelisted : d.integral_mismatches).push_back(std::move(m));
        }
    };
    for (const auto& gi : g.integrals)
        check(gi);
    for (const auto& gi : g.extra_integrals)
        check(gi);
    return d;
}

} // namespace vir
