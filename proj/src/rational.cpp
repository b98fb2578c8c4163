#include "vir/rational.hpp"

#include "vir/errors.hpp"

#include <string>

namespace vir {

Rat make_rat(long num, long den)
{
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '+' && c != '$')
            s.push_back(c);
    if (s.empty())
        throw ConfigError("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw ConfigError("malformed rational literal: " + std::string(text));
    if (q.get_den() == 0)
        throw ConfigError("zero denominator in literal: " + std::string(text));
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q)
{
    return q.get_str();
}

Rat factorial(long n)
{
    if (n < 0)
        return Rat(0);
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

Int floor_rat(const Rat& q)
{
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

} // namespace vir
