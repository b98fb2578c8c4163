#include "vir/descendent.hpp"

#include "vir/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace vir {

long symbol_degree(const ToricSurface& X, const DescSymbol& s)
{
    return s.i + X.degree(s.gamma) - 2;
}

long monomial_degree(const ToricSurface& X, const DescMonomial& m)
{
    long d = 0;
    for (const auto& s : m)
        d += symbol_degree(X, s);
    return d;
}

DescMonomial canonical(DescMonomial m)
{
    std::sort(m.begin(), m.end());
    return m;
}

DescPoly::DescPoly(const Rat& c)
{
    add({}, c);
}

DescPoly DescPoly::monomial(DescMonomial m, const Rat& c)
{
    DescPoly p;
    p.add(canonical(std::move(m)), c);
    return p;
}

DescPoly DescPoly::symbol(int i, int gamma, const Rat& c)
{
    if (i < 0)
        return {};
    return monomial({DescSymbol{i, gamma}}, c);
}

DescPoly DescPoly::ch(int i, const std::vector<Rat>& gamma)
{
    DescPoly p;
    for (std::size_t b = 0; b < gamma.size(); ++b)
        if (gamma[b] != 0)
            p += symbol(i, static_cast<int>(b), gamma[b]);
    return p;
}

void DescPoly::add(const DescMonomial& m, const Rat& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

DescPoly& DescPoly::operator+=(const DescPoly& o)
{
    for (const auto& [m, c] : o.terms_)
        add(m, c);
    return *this;
}

DescPoly& DescPoly::operator-=(const DescPoly& o)
{
    for (const auto& [m, c] : o.terms_)
        add(m, -c);
    return *this;
}

DescPoly& DescPoly::operator*=(const Rat& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

DescPoly operator*(const DescPoly& x, const DescPoly& y)
{
    DescPoly out;
    for (const auto& [m1, c1] : x.terms_)
        for (const auto& [m2, c2] : y.terms_) {
            DescMonomial m;
            m.reserve(m1.size() + m2.size());
            std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m));
            out.add(m, c1 * c2);
        }
    return out;
}

std::vector<long> DescPoly::degrees(const ToricSurface& X) const
{
    std::vector<long> out;
    for (const auto& [m, c] : terms_)
        out.push_back(monomial_degree(X, m));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void DescPoly::require_homogeneous(const ToricSurface& X, long d) const
{
    for (const auto& [m, c] : terms_)
        if (monomial_degree(X, m) != d)
            throw InternalInconsistency("descendent polynomial is not homogeneous of degree " +
                                        std::to_string(d));
}

DescPoly h_symbol(const ToricSurface& X, int i, int gamma)
{
    if (i < 0)
        return {};
    return DescPoly::symbol(i + 2 - X.degree(gamma), gamma, factorial(i));
}

namespace {

// Applies a derivation given by its action on single symbols.
DescPoly derivation(const DescPoly& D, const std::function<DescPoly(const DescSymbol&)>& on_symbol)
{
    DescPoly out;
    for (const auto& [m, c] : D.terms()) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j > 0 && m[j] == m[j - 1]) {
                continue; // equal factors are handled together below
            }
            std::size_t mult = 1;
            while (j + mult < m.size() && m[j + mult] == m[j])
                ++mult;
            DescPoly image = on_symbol(m[j]);
            if (image.is_zero())
                continue;
            DescMonomial rest(m.begin(), m.begin() + static_cast<long>(j));
            rest.insert(rest.end(), m.begin() + static_cast<long>(j + 1), m.end());
            out += DescPoly::monomial(rest, c * Rat(static_cast<long>(mult))) * image;
        }
    }
    return out;
}

} // namespace

DescPoly apply_R(const ToricSurface& X, int k, const DescPoly& D)
{
    if (k < -1)
        throw ConfigError("R_k requires k >= -1");
    return derivation(D, [&](const DescSymbol& s) {
        const long d = X.degree(s.gamma);
        Rat f = 1;
        for (long j = 0; j <= k; ++j)
            f *= Rat(s.i + j + d - 2);
        return DescPoly::symbol(s.i + k, s.gamma, f);
    });
}

DescPoly T_element(const ToricSurface& X, int k)
{
    DescPoly T;
    const int p = X.point_index();
    for (const auto& term : X.kunneth_diagonal()) {
        const long dl = X.degree(term.left), dr = X.degree(term.right);
        const Rat sign = ((dl + 1) * (dr + 1)) % 2 == 0 ? Rat(1) : Rat(-1);
        for (long a = 0; a <= k + 2; ++a) {
            const long b = k + 2 - a;
            const Rat f = factorial(a + dl - 2) * factorial(b + dr - 2);
            if (f == 0)
                continue;
            T -= DescPoly::symbol(static_cast<int>(a), term.left) *
                 DescPoly::symbol(static_cast<int>(b), term.right) * (term.coeff * sign * f);
        }
    }
    const Rat chi = X.chi_structure_sheaf();
    for (long a = 0; a <= k; ++a) {
        const long b = k - a;
        T += DescPoly::symbol(static_cast<int>(a), p) * DescPoly::symbol(static_cast<int>(b), p) *
             (chi * factorial(a) * factorial(b));
    }
    return T;
}

DescPoly apply_T(const ToricSurface& X, int k, const DescPoly& D)
{
    return T_element(X, k) * D;
}

DescPoly apply_S(const ToricSurface& X, int k, const DescPoly& D, int r)
{
    if (r < 1)
        throw ConfigError("S_k requires r >= 1");
    DescPoly inner = DescPoly::symbol(k + 1, X.point_index()) * D;
    return apply_R(X, -1, inner) * (factorial(k + 1) / Rat(r));
}

DescPoly apply_L(const ToricSurface& X, int k, const DescPoly& D, int r)
{
    return apply_R(X, k, D) + apply_T(X, k, D) + apply_S(X, k, D, r);
}

void require_nonnegative(const ToricSurface& X, const DescPoly& D)
{
    for (const auto& [m, c] : D.terms())
        for (const auto& s : m)
            if (symbol_degree(X, s) < 0)
                throw NegativeDegreeInput("factor of negative degree in " + render(X, m));
}

DescPoly apply_Rplus(const ToricSurface& X, int k, const DescPoly& D)
{
    if (k < -1)
        throw ConfigError("R_k^+ requires k >= -1");
    require_nonnegative(X, D);
    // h_e -> e h_{e+k}, written in the ch normalization.
    return derivation(D, [&](const DescSymbol& s) {
        const long e = symbol_degree(X, s);
        if (e == 0)
            return DescPoly();
        return DescPoly::symbol(s.i + k, s.gamma, Rat(e) * factorial(e + k) / factorial(e));
    });
}

DescPoly Tplus_element(const ToricSurface& X, int k)
{
    // td_X = 1 + c_1/2 + chi(O) p, with c_1 = -K.
    std::vector<Rat> td(X.basis_size(), Rat(0));
    td[0] = 1;
    const auto K = X.canonical_class();
    for (int i = 0; i < X.num_divisors(); ++i)
        td[i + 1] = -K[i] / 2;
    td[X.point_index()] = X.chi_structure_sheaf();

    DescPoly T;
    for (const auto& term : X.diagonal_pushforward(td)) {
        const Rat sign = (2 - X.degree(term.left)) % 2 == 0 ? Rat(1) : Rat(-1);
        for (int a = 0; a <= k; ++a)
            T += h_symbol(X, a, term.left) * h_symbol(X, k - a, term.right) * (term.coeff * sign);
    }
    return T;
}

DescPoly apply_Tplus(const ToricSurface& X, int k, const DescPoly& D)
{
    require_nonnegative(X, D);
    return Tplus_element(X, k) * D;
}

DescPoly apply_Splus(const ToricSurface& X, int k, const DescPoly& D, int r)
{
    if (r < 1)
        throw ConfigError("S_k^+ requires r >= 1");
    require_nonnegative(X, D);
    return apply_Rplus(X, -1, h_symbol(X, k + 1, X.point_index()) * D) * (Rat(1) / Rat(r));
}

DescPoly apply_Lplus(const ToricSurface& X, int k, const DescPoly& D)
{
    return apply_Rplus(X, k, D) + apply_Tplus(X, k, D);
}

bool bracket_check(const ToricSurface& X, int k, int m, const DescPoly& D)
{
    const DescPoly lhs = apply_Lplus(X, k, apply_Lplus(X, m, D)) - apply_Lplus(X, m, apply_Lplus(X, k, D));
    const DescPoly rhs = (k + m >= -1) ? apply_Lplus(X, k + m, D) * Rat(m - k) : DescPoly();
    return lhs == rhs;
}

bool bracket_point_check(const ToricSurface& X, int n, int k, const DescPoly& D)
{
    const int p = X.point_index();
    const DescPoly hk = h_symbol(X, k, p);
    const DescPoly lhs = apply_Lplus(X, n, hk * D) - hk * apply_Lplus(X, n, D);
    return lhs == h_symbol(X, n + k, p) * D * Rat(k);
}

bool bracket_S_check(const ToricSurface& X, int k, const DescPoly& D, int r)
{
    if (k < 0)
        throw ConfigError("the S bracket needs k >= 0");
    const DescPoly lhs = apply_Lplus(X, -1, apply_Splus(X, k, D, r)) - apply_Splus(X, k, apply_Lplus(X, -1, D), r);
    return lhs == apply_Splus(X, k - 1, D, r) * Rat(k + 1);
}

namespace {

// Admissible factors of the given degree: ch_i(gamma), i != 1.
std::vector<DescSymbol> factors_of_degree(const ToricSurface& X, long e)
{
    std::vector<DescSymbol> out;
    for (int g = 0; g < X.basis_size(); ++g) {
        const long i = e + 2 - X.degree(g);
        if (i >= 0 && i != 1)
            out.push_back({static_cast<int>(i), g});
    }
    return out;
}

} // namespace

std::vector<DescMonomial> monomial_basis(const ToricSurface& X, long degree)
{
    std::vector<DescMonomial> out;
    if (degree < 0)
        return out;
    std::vector<DescSymbol> pool;
    for (long e = 1; e <= degree; ++e)
        for (const auto& s : factors_of_degree(X, e))
            pool.push_back(s);
    std::sort(pool.begin(), pool.end());
    DescMonomial cur;
    std::function<void(std::size_t, long)> rec = [&](std::size_t from, long left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = from; j < pool.size(); ++j) {
            const long e = symbol_degree(X, pool[j]);
            if (e > left)
                continue;
            cur.push_back(pool[j]);
            rec(j, left - e);
            cur.pop_back();
        }
    };
    rec(0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

long ordered_tuple_count(const ToricSurface& X, long degree)
{
    if (degree < 0)
        return 0;
    // Sum over partitions of degree of the product of factor counts per part.
    std::function<long(long, long)> rec = [&](long left, long max_part) -> long {
        if (left == 0)
            return 1;
        long total = 0;
        for (long e = std::min(left, max_part); e >= 1; --e)
            total += static_cast<long>(factors_of_degree(X, e).size()) * rec(left - e, e);
        return total;
    };
    return rec(degree, degree);
}

std::string render(const ToricSurface& X, const DescMonomial& m, bool tex)
{
    if (m.empty())
        return "1";
    std::ostringstream os;
    for (std::size_t j = 0; j < m.size();) {
        std::size_t mult = 1;
        while (j + mult < m.size() && m[j + mult] == m[j])
            ++mult;
        const std::string& name = X.basis()[m[j].gamma].name;
        if (tex)
            os << "\\ch_{" << m[j].i << "}(" << (name == "p" ? "\\mathbf{p}" : name) << ")";
        else
            os << "ch_" << m[j].i << "(" << name << ")";
        if (mult > 1)
            os << (tex ? "^{" : "^") << mult << (tex ? "}" : "");
        j += mult;
    }
    return os.str();
}

std::string render(const ToricSurface& X, const DescPoly& D)
{
    if (D.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : D.terms()) {
        Rat a = c;
        if (!first)
            os << (a < 0 ? " - " : " + ");
        else if (a < 0)
            os << "-";
        if (a < 0)
            a = -a;
        first = false;
        if (m.empty()) {
            os << to_string(a);
            continue;
        }
        if (a != 1)
            os << to_string(a) << "*";
        os << render(X, m);
    }
    return os.str();
}

namespace {

class MonomialParser {
public:
    MonomialParser(const ToricSurface& X, std::string_view text) : X_(X), s_(text) {}

    DescMonomial parse()
    {
        DescMonomial m;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '1' && rest_is_blank(pos_ + 1))
            return m;
        while (skip(), pos_ < s_.size()) {
            if (s_[pos_] == '\\')
                expect("\\ch");
            else
                expect("ch");
            expect("_");
            const int i = static_cast<int>(number());
            expect("(");
            const int g = class_name();
            expect(")");
            long mult = 1;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                mult = number();
            }
            if (mult < 1)
                fail("bad exponent");
            for (long j = 0; j < mult; ++j)
                m.push_back({i, g});
        }
        if (m.empty())
            fail("empty monomial");
        return canonical(std::move(m));
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ConfigError("cannot parse monomial '" + std::string(s_) + "': " + why);
    }
    bool rest_is_blank(std::size_t from) const
    {
        for (std::size_t j = from; j < s_.size(); ++j)
            if (!std::isspace(static_cast<unsigned char>(s_[j])))
                return false;
        return true;
    }
    void skip()
    {
        for (;;) {
            while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*'))
                ++pos_;
            if (s_.substr(pos_).starts_with("\\cdot")) {
                pos_ += 5;
                continue;
            }
            break;
        }
    }
    void expect(std::string_view tok)
    {
        skip();
        if (!s_.substr(pos_).starts_with(tok))
            fail("expected '" + std::string(tok) + "'");
        pos_ += tok.size();
    }
    long number()
    {
        skip();
        const bool braced = pos_ < s_.size() && s_[pos_] == '{';
        if (braced)
            ++pos_;
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail("expected a number");
        const long v = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (braced)
            expect("}");
        return v;
    }
    int class_name()
    {
        skip();
        const std::size_t close = s_.find(')', pos_);
        if (close == std::string_view::npos)
            fail("unbalanced parenthesis");
        std::string name(s_.substr(pos_, close - pos_));
        name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }),
                   name.end());
        if (name == "\\mathbf{p}" || name == "\\mathbf{p}}" || name == "pt")
            name = "p";
        pos_ = close;
        return X_.basis_index(name);
    }

    const ToricSurface& X_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

DescMonomial parse_monomial(const ToricSurface& X, std::string_view text)
{
    return MonomialParser(X, text).parse();
}

} // namespace vir
