#include "vir/laurent.hpp"

#include "vir/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace vir {

LinForm::LinForm(long a_, long b_) : a(a_), b(b_)
{
    if (a == 0 && b == 0)
        throw std::invalid_argument("LinForm must be nonzero");
}

LaurentPoly LinForm::poly() const
{
    LaurentPoly p;
    p.add_term({1, 0}, Rat(a));
    p.add_term({0, 1}, Rat(b));
    return p;
}

LaurentPoly::LaurentPoly(const Rat& c)
{
    if (c != 0)
        terms_.emplace(Exponent{0, 0}, c);
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const Rat& c)
{
    LaurentPoly p;
    p.add_term(e, c);
    return p;
}

Rat LaurentPoly::coeff(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Rat& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y)
{
    LaurentPoly out;
    for (const auto& [ex, cx] : x.terms_)
        for (const auto& [ey, cy] : y.terms_)
            out.add_term(ex + ey, cx * cy);
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o)
{
    *this = *this * o;
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rat& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly p = *this;
    for (auto& [e, v] : p.terms_)
        v = -v;
    return p;
}

LaurentPoly LaurentPoly::degree_part(long d) const
{
    LaurentPoly p;
    for (const auto& [e, c] : terms_)
        if (e.a + e.b == d)
            p.terms_.emplace(e, c);
    return p;
}

LaurentPoly LaurentPoly::truncate(long d) const
{
    LaurentPoly p;
    for (const auto& [e, c] : terms_)
        if (e.a + e.b <= d)
            p.terms_.emplace(e, c);
    return p;
}

LaurentPoly LaurentPoly::dual() const
{
    LaurentPoly p;
    for (const auto& [e, c] : terms_)
        p.terms_.emplace(-e, c);
    return p;
}

LaurentPoly LaurentPoly::shifted(const Exponent& s) const
{
    LaurentPoly p;
    for (const auto& [e, c] : terms_)
        p.terms_.emplace(e + s, c);
    return p;
}

LaurentPoly LaurentPoly::pow(unsigned n) const
{
    LaurentPoly out(1);
    for (unsigned i = 0; i < n; ++i)
        out *= *this;
    return out;
}

Rat LaurentPoly::value_at_one() const
{
    Rat v = 0;
    for (const auto& [e, c] : terms_)
        v += c;
    return v;
}

namespace {
Rat rat_pow(const Rat& x, long n)
{
    Rat base = n >= 0 ? x : Rat(1) / x;
    Rat out = 1;
    for (long i = 0; i < (n >= 0 ? n : -n); ++i)
        out *= base;
    return out;
}
} // namespace

Rat LaurentPoly::evaluate(const Rat& s, const Rat& t) const
{
    Rat v = 0;
    for (const auto& [e, c] : terms_)
        v += c * rat_pow(s, e.a) * rat_pow(t, e.b);
    return v;
}

bool LaurentPoly::has_integer_coefficients() const
{
    for (const auto& [e, c] : terms_)
        if (c.get_den() != 1)
            return false;
    return true;
}

bool LaurentPoly::is_polynomial() const
{
    for (const auto& [e, c] : terms_)
        if (e.a < 0 || e.b < 0)
            return false;
    return true;
}

bool LaurentPoly::is_homogeneous(long d) const
{
    for (const auto& [e, c] : terms_)
        if (e.a + e.b != d)
            return false;
    return true;
}

Exponent LaurentPoly::min_exponents() const
{
    if (terms_.empty())
        return {0, 0};
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        m.a = std::min(m.a, e.a);
        m.b = std::min(m.b, e.b);
    }
    return m;
}

namespace {

void render_var(std::ostringstream& os, char v, long e, bool tex, bool& need_sep)
{
    if (e == 0)
        return;
    if (need_sep && !tex)
        os << '*';
    os << v;
    if (e != 1) {
        if (tex)
            os << "^{" << e << '}';
        else
            os << '^' << e;
    }
    need_sep = true;
}

} // namespace

std::string LaurentPoly::render(bool tex) const
{
    if (terms_.empty())
        return "0";
    // Order: by total degree descending, then by power of s descending.
    std::vector<std::pair<Exponent, Rat>> items(terms_.begin(), terms_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        long dx = x.first.a + x.first.b, dy = y.first.a + y.first.b;
        if (dx != dy)
            return dx > dy;
        return x.first.a > y.first.a;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : items) {
        Rat mag = abs(c);
        if (first) {
            if (c < 0)
                os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool constant = (e.a == 0 && e.b == 0);
        bool need_sep = false;
        if (mag != 1 || constant) {
            if (tex && mag.get_den() != 1)
                os << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << '}';
            else
                os << mag.get_str();
            need_sep = true;
        }
        render_var(os, 's', e.a, tex, need_sep);
        render_var(os, 't', e.b, tex, need_sep);
    }
    return os.str();
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text)
    {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)) && c != '$')
                s_.push_back(c);
    }

    LaurentPoly parse()
    {
        LaurentPoly out;
        if (s_.empty())
            fail("empty expression");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            out += term() * Rat(sign);
        }
        return out;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw ConfigError("cannot parse Laurent expression '" + s_ + "': " + why);
    }

    long integer()
    {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            v = v * 10 + (s_[pos_++] - '0');
        return neg ? -v : v;
    }

    long exponent()
    {
        if (peek() != '^')
            return 1;
        ++pos_;
        if (peek() == '*')
            fail("unexpected '*'");
        if (peek() == '{') {
            ++pos_;
            long e = integer();
            if (peek() != '}')
                fail("expected '}'");
            ++pos_;
            return e;
        }
        if (peek() == '(') {
            ++pos_;
            long e = integer();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return e;
        }
        return integer();
    }

    LaurentPoly term()
    {
        Rat c = 1;
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            long n = integer();
            long d = 1;
            if (peek() == '/') {
                ++pos_;
                d = integer();
            }
            c = make_rat(n, d);
            any = true;
        } else if (peek() == '\\' && s_.compare(pos_, 5, "\\frac") == 0) {
            pos_ += 5;
            auto braced = [&] {
                if (peek() != '{')
                    fail("expected '{'");
                ++pos_;
                long v = integer();
                if (peek() != '}')
                    fail("expected '}'");
                ++pos_;
                return v;
            };
            long n = braced();
            long d = braced();
            c = make_rat(n, d);
            any = true;
        }
        Exponent e{0, 0};
        while (true) {
            if (peek() == '*') {
                ++pos_;
                if (peek() == '*')
                    fail("use '^' for powers");
                continue;
            }
            if (peek() == 's' || peek() == 't') {
                char v = s_[pos_++];
                long k = exponent();
                (v == 's' ? e.a : e.b) += k;
                any = true;
                continue;
            }
            break;
        }
        if (!any)
            fail("empty term");
        return LaurentPoly::monomial(e, c);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentPoly LaurentPoly::parse(std::string_view text)
{
    return Parser(text).parse();
}

LaurentPoly truncated_exp(const LaurentPoly& x, int cap)
{
    if (cap < 0)
        throw std::invalid_argument("negative truncation cap");
    LaurentPoly out(1);
    LaurentPoly power(1);
    for (int k = 1; k <= cap; ++k) {
        power *= x;
        power *= make_rat(1, k);
        out += power;
    }
    return out;
}

LaurentPoly truncated_exp(const LinForm& w, int cap)
{
    return truncated_exp(w.poly(), cap);
}

LaurentPoly char_to_chern(const LaurentPoly& k, int cap)
{
    LaurentPoly out;
    for (const auto& [e, c] : k.terms()) {
        if (e.a == 0 && e.b == 0)
            out += LaurentPoly(c);
        else
            out += truncated_exp(LinForm::of(e), cap) * c;
    }
    return out;
}

namespace {

// Divides the homogeneous polynomial with coefficients c[j] of s^j t^(n-j)
// by a*s + b*t; returns false on a nonzero remainder.
bool div_homogeneous(const std::vector<Rat>& c, long a, long b, std::vector<Rat>& q)
{
    const std::size_t n = c.size() - 1;
    if (n == 0) {
        q.clear();
        return c[0] == 0;
    }
    q.assign(n, Rat(0));
    if (b != 0) {
        q[0] = c[0] / b;
        for (std::size_t j = 1; j < n; ++j)
            q[j] = (c[j] - a * q[j - 1]) / b;
        return c[n] == a * q[n - 1];
    }
    if (c[0] != 0)
        return false;
    for (std::size_t j = 1; j <= n; ++j)
        q[j - 1] = c[j] / a;
    return true;
}

} // namespace

LaurentPoly exact_div_linform(const LaurentPoly& p, const LinForm& f)
{
    if (p.is_zero())
        return p;
    if (!p.is_polynomial())
        throw NotDivisible("exact_div_linform expects a polynomial dividend");
    std::map<long, std::vector<Rat>> comps;
    for (const auto& [e, c] : p.terms()) {
        auto& v = comps[e.a + e.b];
        v.resize(e.a + e.b + 1);
        v[e.a] = c;
    }
    LaurentPoly out;
    std::vector<Rat> q;
    for (auto& [n, c] : comps) {
        if (!div_homogeneous(c, f.a, f.b, q))
            throw NotDivisible("polynomial " + p.render() + " is not divisible by " + f.poly().render());
        for (std::size_t j = 0; j < q.size(); ++j)
            out.add_term({static_cast<long>(j), static_cast<long>(n - 1 - j)}, q[j]);
    }
    return out;
}

LaurentPoly exact_div_kfactor(const LaurentPoly& p, const Exponent& m)
{
    if (m.a == 0 && m.b == 0)
        throw std::invalid_argument("K-theory factor 1 - 1 is zero");
    // Orient m so its first nonzero coordinate is positive; 1/(1 - x^-1) = -x/(1 - x).
    if (m.a < 0 || (m.a == 0 && m.b < 0))
        return -exact_div_kfactor(p.shifted(-m), -m);
    // q (1 - x) = p is solved along each coset e0 + Z m by a running sum.
    auto index = [&](const Exponent& e) {
        long num = m.a != 0 ? e.a : e.b;
        long den = m.a != 0 ? m.a : m.b;
        long k = num / den;
        if (num % den != 0 && num < 0)
            --k;
        return k;
    };
    std::map<Exponent, std::map<long, Rat>> cosets;
    for (const auto& [e, c] : p.terms()) {
        long k = index(e);
        cosets[e - m * k][k] = c;
    }
    LaurentPoly out;
    for (const auto& [rep, seq] : cosets) {
        Rat run = 0;
        long prev = seq.begin()->first;
        for (const auto& [k, c] : seq) {
            if (run != 0)
                for (long j = prev; j < k; ++j)
                    out.add_term(rep + m * j, run);
            run += c;
            prev = k;
        }
        if (run != 0)
            throw NotDivisible("Laurent polynomial " + p.render() + " is not divisible by 1 - " +
                               LaurentPoly::monomial(m).render());
    }
    return out;
}

} // namespace vir
