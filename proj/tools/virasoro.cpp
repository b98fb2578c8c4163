// Command-line driver: enumerate fixed loci, verify the constraints, check
// brackets, survey walls and dump the bundled reference tables.

#include "vir/descendent.hpp"
#include "vir/driver.hpp"
#include "vir/errors.hpp"
#include "vir/golden.hpp"
#include "vir/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace vir;

namespace {

enum class Format { Text, Json, Markdown };

struct CaseOptions {
    std::string surface = "p2";
    int r = 2;
    std::string delta = "1";
    long c2 = 1;
    std::string H;
    long search_bound = -1;
    std::string config;
};

struct Global {
    std::string format = "text";
    int threads = 0;
};

// Exit codes.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;
constexpr int kInternal = 3;

std::vector<long> parse_list(const std::string& text)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("expected a comma-separated integer list, got '" + text + "'");
        }
    }
    if (out.empty())
        throw ConfigError("empty integer list");
    return out;
}

Format parse_format(const std::string& f)
{
    if (f == "text")
        return Format::Text;
    if (f == "json")
        return Format::Json;
    if (f == "markdown" || f == "md")
        return Format::Markdown;
    throw ConfigError("unknown format '" + f + "' (text, json, markdown)");
}

// Fields of a JSON config file override the defaults; explicit flags win.
void apply_config(CaseOptions& o, Global& g, const CLI::App& sub)
{
    if (o.config.empty())
        return;
    std::ifstream in(o.config);
    if (!in)
        throw ConfigError("cannot open config " + o.config);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    auto list = [](const json& v) {
        if (v.is_string())
            return v.get<std::string>();
        std::string s;
        for (const auto& x : v)
            s += (s.empty() ? "" : ",") + std::to_string(x.get<long>());
        return s;
    };
    auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
    try {
        if (j.contains("surface") && unset("--surface"))
            o.surface = j["surface"].get<std::string>();
        if (j.contains("r") && unset("--r"))
            o.r = j["r"].get<int>();
        if (j.contains("delta") && unset("--delta"))
            o.delta = list(j["delta"]);
        if (j.contains("c2") && unset("--c2"))
            o.c2 = j["c2"].get<long>();
        if (j.contains("H") && unset("--H"))
            o.H = list(j["H"]);
        if (j.contains("search_bound") && unset("--search-bound"))
            o.search_bound = j["search_bound"].get<long>();
        if (j.contains("threads") && g.threads == 0)
            g.threads = j["threads"].get<int>();
        if (j.contains("format") && g.format == "text")
            g.format = j["format"].get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
}

std::vector<std::vector<long>> polarizations(const ToricSurface& X, const CaseOptions& o, const std::vector<long>& delta)
{
    if (X.tag().kind == SurfaceKind::P2)
        return {{1}};
    if (o.H == "all")
        return chamber_representatives(X, o.r, delta, o.c2);
    if (o.H.empty())
        throw ConfigError("--H is required on " + X.tag().name() + " (coefficients of F,Z or 'all')");
    return {parse_list(o.H)};
}

void add_case_options(CLI::App* sub, CaseOptions& o, bool with_H)
{
    sub->add_option("--surface", o.surface, "p2 or f<a>");
    sub->add_option("--r", o.r, "rank");
    sub->add_option("--delta", o.delta, "determinant in divisor-basis coordinates, e.g. 1 or 1,0");
    sub->add_option("--c2", o.c2, "second Chern class");
    if (with_H)
        sub->add_option("--H", o.H, "polarization coefficients, e.g. 2,5, or 'all' for every chamber");
    sub->add_option("--search-bound", o.search_bound, "bound on the total flag multiplicity (default automatic)");
    sub->add_option("--config", o.config, "JSON file with surface, r, delta, c2, H, threads, format");
}

std::string join(const std::vector<long>& v)
{
    std::string s;
    for (auto x : v)
        s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

std::string render_weights(const std::vector<LinForm>& ws, bool tex)
{
    std::string s;
    for (const auto& w : ws)
        s += (s.empty() ? "" : tex ? " \\cdot " : " * ") + ("(" + w.poly().render(tex) + ")");
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- enumerate

json locus_json(const CaseRun& run)
{
    json rows = json::array();
    for (const auto& s : run.locus.sheaves) {
        json cls = json::array();
        for (const auto& c : s.sheaf.classes)
            cls.push_back(c.render());
        json w = json::array();
        for (const auto& x : s.tangent.weights)
            w.push_back(x.poly().render());
        rows.push_back({{"classes", cls}, {"locally_free", s.locally_free}, {"hull_c2", s.hull_c2},
                        {"tangent", s.tangent.character.render()}, {"weights", w}});
    }
    return {{"case", run.locus.mcase.describe()},
            {"surface", run.X.tag().name()},
            {"r", run.locus.mcase.r},
            {"delta", run.locus.mcase.delta},
            {"c2", run.locus.mcase.c2},
            {"H", run.locus.mcase.H},
            {"vdim", run.locus.vdim},
            {"bundles", run.locus.search.bundles.size()},
            {"search_bound", run.locus.search.search_bound},
            {"max_delta_sum", run.locus.search.max_delta_sum},
            {"fixed_points", rows}};
}

void print_locus(const CaseRun& run, Format f, std::ostream& os)
{
    const auto& L = run.locus;
    std::size_t lf = 0;
    for (const auto& s : L.sheaves)
        lf += s.locally_free;
    if (f == Format::Markdown) {
        os << "### " << L.mcase.describe() << "\n\n";
        os << "dim M = " << L.vdim << ", " << L.sheaves.size() << " fixed points, " << lf << " locally free\n\n|";
        for (const auto& p : run.X.fixed_points())
            os << " $F|_{" << p.name << "}$ |";
        os << " locally free | $e(T_M)$ |\n|";
        for (std::size_t p = 0; p <= run.X.num_fixed_points() + 1; ++p)
            os << "---|";
        os << "\n";
        for (const auto& s : L.sheaves) {
            os << "|";
            for (const auto& c : s.sheaf.classes)
                os << " $" << c.render(true) << "$ |";
            os << " " << (s.locally_free ? "yes" : "no") << " | $" << render_weights(s.tangent.weights, true)
               << "$ |\n";
        }
        os << "\n";
        return;
    }
    os << L.mcase.describe() << "\n";
    os << "dim M = " << L.vdim << ", fixed points = " << L.sheaves.size() << ", locally free = " << lf
       << ", bundles = " << L.search.bundles.size() << "\n";
    std::size_t i = 0;
    for (const auto& s : L.sheaves) {
        os << ++i << ".";
        for (const auto& c : s.sheaf.classes)
            os << "  " << c.render() << "  |";
        os << (s.locally_free ? "  bundle" : "  sheaf") << "  e(T) = " << render_weights(s.tangent.weights, false)
           << "\n";
    }
}

int cmd_enumerate(CaseOptions o, Global g)
{
    const Format f = parse_format(g.format);
    const auto X = ToricSurface::build(SurfaceTag::parse(o.surface));
    const auto delta = parse_list(o.delta);
    EnumerationOptions opt;
    opt.search_bound = o.search_bound;
    json all = json::array();
    for (const auto& H : polarizations(X, o, delta)) {
        const auto run = run_case({X.tag(), o.r, delta, o.c2, H}, opt);
        if (f == Format::Json)
            all.push_back(locus_json(run));
        else
            print_locus(run, f, std::cout);
    }
    if (f == Format::Json)
        std::cout << (all.size() == 1 ? all[0] : all).dump(1) << "\n";
    return kPass;
}

// ------------------------------------------------------------------- verify

struct VerifyOutcome {
    json j;
    bool pass = true;
    std::size_t checks = 0;
    long ordered_checks = 0;
};

VerifyOutcome verify_case(const ModuliCase& c, const EnumerationOptions& opt, const GoldenTable* golden, int threads,
                          bool all_rows, Format f, std::ostream& os)
{
    VerifyOutcome out;
    const auto run = run_case(c, opt);
    const auto report = verify_conjecture(*run.engine, threads);
    out.checks = report.rows.size();
    out.ordered_checks = report.ordered_checks;
    out.pass = report.pass;
    std::size_t failures = 0;
    json rows = json::array();
    for (const auto& row : report.rows) {
        const bool bad = row.sum() != 0;
        failures += bad;
        if (!(all_rows || bad))
            continue;
        rows.push_back({{"k", row.k}, {"D", render(run.X, row.D)}, {"R", to_string(row.R)},
                        {"T", to_string(row.T)}, {"S", to_string(row.S)}, {"sum", to_string(row.sum())}});
    }
    out.j = {{"case", c.describe()},   {"vdim", run.locus.vdim},          {"fixed_points", run.locus.sheaves.size()},
             {"checks", out.checks},   {"ordered_checks", out.ordered_checks}, {"failures", failures},
             {"rows", rows}};
    json gj = nullptr;
    if (golden) {
        const auto d = diff_golden(*golden, run.locus, *run.engine);
        auto mism = [](const std::vector<GoldenMismatch>& v) {
            json a = json::array();
            for (const auto& m : v)
                a.push_back({{"row", m.what}, {"expected", m.expected}, {"computed", m.computed}});
            return a;
        };
        gj = {{"id", golden->id},
              {"fixed_expected", d.fixed_expected},
              {"fixed_computed", d.fixed_computed},
              {"fixed_matched", d.fixed_matched},
              {"fixed_missing", d.fixed_missing},
              {"fixed_missing_defect", d.fixed_missing_defect},
              {"fixed_extra", d.fixed_extra},
              {"integrals_checked", d.integrals_checked},
              {"integral_mismatches", mism(d.integral_mismatches)},
              {"whitelisted", mism(d.whitelisted)},
              {"ok", d.ok()}};
        out.pass = out.pass && d.ok();
    }
    out.j["golden"] = gj;
    out.j["pass"] = out.pass;

    if (f == Format::Json)
        return out;
    const bool md = f == Format::Markdown;
    os << (md ? "### " : "") << c.describe() << (md ? "\n\n" : "\n");
    os << "dim M = " << run.locus.vdim << ", fixed points = " << run.locus.sheaves.size() << ", checks = " << out.checks
       << " (ordered-tuple count " << out.ordered_checks << "), nonzero sums = " << failures << "\n";
    if (!rows.empty()) {
        if (md)
            os << "\n| k | D | R | T | S | sum |\n|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            if (md)
                os << "| " << r["k"].get<int>() << " | " << r["D"].get<std::string>() << " | " << r["R"].get<std::string>()
                   << " | " << r["T"].get<std::string>() << " | " << r["S"].get<std::string>() << " | "
                   << r["sum"].get<std::string>() << " |\n";
            else
                os << "  k=" << r["k"].get<int>() << "  " << r["D"].get<std::string>() << "  R=" << r["R"].get<std::string>()
                   << "  T=" << r["T"].get<std::string>() << "  S=" << r["S"].get<std::string>()
                   << "  sum=" << r["sum"].get<std::string>() << "\n";
        }
        if (md)
            os << "\n";
    }
    if (golden) {
        os << "golden " << golden->id << ": fixed rows " << gj["fixed_matched"].get<std::size_t>() << "/"
           << gj["fixed_expected"].get<std::size_t>() << " matched (computed " << gj["fixed_computed"].get<std::size_t>()
           << "), integral rows " << gj["integrals_checked"].get<std::size_t>() << ", mismatches "
           << gj["integral_mismatches"].size() << ", whitelisted " << gj["whitelisted"].size() << "\n";
        for (std::size_t i = 0; i < gj["fixed_missing"].size(); ++i) {
            const auto why = gj["fixed_missing_defect"][i].get<std::string>();
            os << "  printed row not produced: " << gj["fixed_missing"][i].get<std::string>()
               << (why.empty() ? "" : "  [printed row is inconsistent: " + why + "]") << "\n";
        }
        for (const auto& m : gj["fixed_extra"])
            os << "  computed row not printed: " << m.get<std::string>() << "\n";
        for (const auto& m : gj["integral_mismatches"])
            os << "  mismatch " << m["row"].get<std::string>() << ": expected " << m["expected"].get<std::string>()
               << ", computed " << m["computed"].get<std::string>() << "\n";
        for (const auto& m : gj["whitelisted"])
            os << "  whitelisted " << m["row"].get<std::string>() << ": printed " << m["expected"].get<std::string>()
               << ", computed " << m["computed"].get<std::string>() << "\n";
    }
    os << (out.pass ? "PASS" : "FAIL") << "\n" << (md ? "\n" : "");
    return out;
}

int cmd_verify(CaseOptions o, Global g, bool all_cases, const std::string& case_id, bool all_rows)
{
    const Format f = parse_format(g.format);
    const auto goldens = load_all_golden();
    EnumerationOptions opt;
    opt.search_bound = o.search_bound;
    std::vector<ModuliCase> cases;
    if (all_cases) {
        for (const auto& gt : goldens)
            cases.push_back(gt.mcase);
    } else if (!case_id.empty()) {
        auto it = std::find_if(goldens.begin(), goldens.end(), [&](const GoldenTable& t) { return t.id == case_id; });
        if (it == goldens.end())
            throw ConfigError("no bundled case '" + case_id + "'");
        cases.push_back(it->mcase);
    } else {
        const auto X = ToricSurface::build(SurfaceTag::parse(o.surface));
        const auto delta = parse_list(o.delta);
        for (const auto& H : polarizations(X, o, delta))
            cases.push_back({X.tag(), o.r, delta, o.c2, H});
    }
    bool pass = true;
    std::size_t checks = 0;
    long ordered = 0;
    json all = json::array();
    for (const auto& c : cases) {
        const auto res = verify_case(c, opt, find_golden(goldens, c), g.threads, all_rows, f, std::cout);
        pass = pass && res.pass;
        checks += res.checks;
        ordered += res.ordered_checks;
        all.push_back(res.j);
    }
    if (f == Format::Json) {
        std::cout << json{{"cases", all}, {"checks", checks}, {"ordered_checks", ordered}, {"pass", pass}}.dump(1)
                  << "\n";
    } else if (cases.size() > 1) {
        std::cout << "total: " << cases.size() << " cases, " << checks << " checks (ordered-tuple count " << ordered
                  << "), " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kPass : kFail;
}

// ------------------------------------------------------------------ bracket

int cmd_bracket(Global g, int max_k, int max_degree, std::string surfaces, int r)
{
    const Format f = parse_format(g.format);
    bool pass = true;
    json out = json::array();
    std::stringstream ss(surfaces);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto X = ToricSurface::build(SurfaceTag::parse(name));
        const BracketReport rep = run_bracket_suite(X, max_k, max_degree, r, g.threads);
        const std::size_t bad = rep.failures, evaluations = rep.evaluations;
        pass = pass && bad == 0;
        out.push_back({{"surface", X.tag().name()}, {"sample", rep.sample}, {"evaluations", evaluations},
                       {"failures", bad}});
        if (f != Format::Json)
            std::cout << X.tag().name() << ": " << rep.sample << " monomials of degree <= " << max_degree << ", "
                      << evaluations << " bracket evaluations, " << bad << " failures\n";
    }
    if (f == Format::Json)
        std::cout << json{{"surfaces", out}, {"pass", pass}}.dump(1) << "\n";
    else
        std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kPass : kFail;
}

// -------------------------------------------------------------------- walls

int cmd_walls(CaseOptions o, Global g)
{
    const Format f = parse_format(g.format);
    const auto X = ToricSurface::build(SurfaceTag::parse(o.surface));
    const auto delta = parse_list(o.delta);
    EnumerationOptions opt;
    opt.search_bound = o.search_bound;
    const auto s = survey_walls(X, o.r, delta, o.c2, opt);
    json walls = json::array();
    for (const auto& w : s.walls)
        walls.push_back({{"xi", w.xi}, {"slope", to_string(w.slope)}});
    json slopes = json::array();
    for (const auto& q : s.slopes)
        slopes.push_back(to_string(q));
    json chambers = json::array();
    for (const auto& c : s.chambers)
        chambers.push_back({{"H", c.H}, {"fixed_points", c.fixed_points}, {"locally_free", c.locally_free},
                            {"variant", c.variant}});
    if (f == Format::Json) {
        std::cout << json{{"surface", X.tag().name()}, {"r", o.r}, {"delta", delta}, {"c2", o.c2}, {"walls", walls},
                          {"slopes", slopes}, {"chambers", chambers}, {"variants", s.variants}, {"empty_chambers", s.empty_chambers}}
                         .dump(1)
                  << "\n";
        return kPass;
    }
    std::cout << X.tag().name() << " r=" << o.r << " delta=" << join(delta) << " c2=" << o.c2 << "\n";
    if (s.slopes.empty())
        std::cout << "no walls\n";
    else {
        std::cout << s.slopes.size() << " wall slopes (F/Z coefficient ratio):";
        for (const auto& q : s.slopes)
            std::cout << " " << to_string(q);
        std::cout << "\n";
    }
    std::cout << s.chambers.size() << " chambers, " << s.variants << " distinct nonempty fixed loci, " << s.empty_chambers
              << " chambers with empty moduli space\n";
    for (const auto& c : s.chambers)
        std::cout << "  H = " << join(c.H) << ": " << c.fixed_points << " fixed points, " << c.locally_free
                  << " locally free, "
                  << (c.variant < 0 ? std::string("empty") : "variant " + std::to_string(c.variant)) << "\n";
    return kPass;
}

// -------------------------------------------------------------- dump-golden

int cmd_dump_golden(Global g, const std::string& case_id)
{
    const Format f = parse_format(g.format);
    bool roundtrip = true;
    json out = json::array();
    for (const auto& t : load_all_golden()) {
        if (!case_id.empty() && t.id != case_id)
            continue;
        const auto X = ToricSurface::build(t.mcase.surface);
        for (const auto& row : t.fixed_points)
            for (const auto& c : row.classes)
                roundtrip = roundtrip && LaurentPoly::parse(c.render()) == c && LaurentPoly::parse(c.render(true)) == c;
        for (const auto& gi : t.integrals)
            roundtrip = roundtrip && parse_monomial(X, render(X, gi.D)) == gi.D &&
                        parse_monomial(X, render(X, gi.D, true)) == gi.D;
        if (f == Format::Json) {
            json rows = json::array();
            for (const auto& row : t.fixed_points) {
                json r = json::array();
                for (const auto& c : row.classes)
                    r.push_back(c.render());
                rows.push_back(r);
            }
            json ints = json::array();
            for (const auto& gi : t.integrals)
                ints.push_back({{"D", render(X, gi.D)}, {"k", gi.k}, {"R", to_string(gi.R)}, {"T", to_string(gi.T)},
                                {"S", to_string(gi.S)}});
            out.push_back({{"id", t.id}, {"case", t.mcase.describe()}, {"vdim", t.vdim}, {"fixed_points", rows},
                           {"integrals", ints}});
            continue;
        }
        const bool md = f == Format::Markdown;
        std::cout << (md ? "### " : "") << t.id << ": " << t.mcase.describe() << ", dim M = " << t.vdim << "\n";
        if (md) {
            std::cout << "\n|";
            for (const auto& p : X.fixed_points())
                std::cout << " $F|_{" << p.name << "}$ |";
            std::cout << "\n|";
            for (std::size_t p = 0; p < X.num_fixed_points(); ++p)
                std::cout << "---|";
            std::cout << "\n";
        }
        for (const auto& row : t.fixed_points) {
            std::cout << (md ? "|" : " ");
            for (const auto& c : row.classes)
                std::cout << (md ? " $" + c.render(true) + "$ |" : " " + c.render() + "  |");
            std::cout << "\n";
        }
        if (md && !t.integrals.empty())
            std::cout << "\n| k | D | R | T | S |\n|---|---|---|---|---|\n";
        for (const auto& gi : t.integrals) {
            if (md)
                std::cout << "| " << gi.k << " | $" << render(X, gi.D, true) << "$ | " << to_string(gi.R) << " | "
                          << to_string(gi.T) << " | " << to_string(gi.S) << " |\n";
            else
                std::cout << "  k=" << gi.k << "  " << render(X, gi.D) << "  R=" << to_string(gi.R)
                          << "  T=" << to_string(gi.T) << "  S=" << to_string(gi.S) << "\n";
        }
        std::cout << "\n";
    }
    if (f == Format::Json)
        std::cout << json{{"tables", out}, {"roundtrip", roundtrip}}.dump(1) << "\n";
    else
        std::cout << "round trip " << (roundtrip ? "ok" : "FAILED") << "\n";
    return roundtrip ? kPass : kInternal;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Virasoro constraint checks for moduli of sheaves on toric surfaces"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "text, json or markdown");
    app.add_option("--threads", g.threads, "worker threads (default VIRASORO_THREADS or 1)");

    CaseOptions eo, vo, wo;
    auto* en = app.add_subcommand("enumerate", "list the torus-fixed stable sheaves");
    add_case_options(en, eo, true);

    auto* ve = app.add_subcommand("verify", "check the constraints by localization");
    add_case_options(ve, vo, true);
    bool all_cases = false, all_rows = false;
    std::string case_id;
    ve->add_flag("--all", all_cases, "run every bundled case");
    ve->add_option("--case", case_id, "run one bundled case by id");
    ve->add_flag("--rows", all_rows, "print every (k, D) row, not only failures");

    auto* br = app.add_subcommand("bracket", "symbolic bracket identities");
    int max_k = 4, max_degree = 6, br_r = 2;
    std::string surfaces = "p2,f0";
    br->add_option("--max-k", max_k, "largest operator index");
    br->add_option("--max-degree", max_degree, "largest monomial degree");
    br->add_option("--surfaces", surfaces, "comma-separated surfaces");
    br->add_option("--r", br_r, "rank used by the S bracket");

    auto* wa = app.add_subcommand("walls", "walls, chambers and fixed loci per chamber");
    add_case_options(wa, wo, false);

    auto* dg = app.add_subcommand("dump-golden", "print the bundled reference tables");
    std::string dump_id;
    dg->add_option("--case", dump_id, "only this case id");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfig;
    }

    try {
        if (g.threads < 0)
            throw ConfigError("--threads must be positive");
        if (g.threads == 0)
            g.threads = thread_count();
        if (*en) {
            apply_config(eo, g, *en);
            return cmd_enumerate(eo, g);
        }
        if (*ve) {
            apply_config(vo, g, *ve);
            return cmd_verify(vo, g, all_cases, case_id, all_rows);
        }
        if (*br) {
            if (max_k < -1 || max_degree < 0)
                throw ConfigError("--max-k must be >= -1 and --max-degree >= 0");
            return cmd_bracket(g, max_k, max_degree, surfaces, br_r);
        }
        if (*wa) {
            apply_config(wo, g, *wa);
            return cmd_walls(wo, g);
        }
        if (*dg)
            return cmd_dump_golden(g, dump_id);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kInternal;
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kPass;
}
