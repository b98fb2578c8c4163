#include "vir/linalg.hpp"

#include <stdexcept>

namespace vir {

std::vector<std::vector<Rat>> rref(std::vector<std::vector<Rat>> m, int ncols)
{
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        Rat p = m[r][c];
        for (auto& x : m[r])
            x /= p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rat f = m[i][c];
            for (int k = 0; k < ncols; ++k)
                m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

Subspace Subspace::span_of(int ambient, const std::vector<std::vector<Rat>>& vectors)
{
    Subspace s(ambient);
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != ambient)
            throw std::invalid_argument("vector of wrong length");
    s.rows_ = rref(vectors, ambient);
    return s;
}

Subspace Subspace::full(int ambient)
{
    std::vector<std::vector<Rat>> id(ambient, std::vector<Rat>(ambient, Rat(0)));
    for (int i = 0; i < ambient; ++i)
        id[i][i] = 1;
    Subspace s(ambient);
    s.rows_ = std::move(id);
    return s;
}

Subspace span(const Subspace& a, const Subspace& b)
{
    if (a.dim() == 0)
        return b;
    if (b.dim() == 0)
        return a;
    auto rows = a.rows_;
    rows.insert(rows.end(), b.rows_.begin(), b.rows_.end());
    return Subspace::span_of(a.n_, rows);
}

// Kernel of [A; -B]^T gives the coefficient vectors of common elements.
Subspace intersect(const Subspace& a, const Subspace& b)
{
    const int n = a.n_;
    if (a.dim() == 0 || b.dim() == 0)
        return Subspace(n);
    if (a.dim() == n)
        return b;
    if (b.dim() == n)
        return a;
    const int ka = a.dim(), kb = b.dim(), m = ka + kb;
    std::vector<std::vector<Rat>> t(n, std::vector<Rat>(m));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < ka; ++i)
            t[j][i] = a.rows_[i][j];
        for (int i = 0; i < kb; ++i)
            t[j][ka + i] = -b.rows_[i][j];
    }
    auto red = rref(t, m);
    std::vector<int> pivots;
    for (const auto& row : red)
        for (int c = 0; c < m; ++c)
            if (row[c] != 0) {
                pivots.push_back(c);
                break;
            }
    std::vector<std::vector<Rat>> vecs;
    for (int f = 0; f < m; ++f) {
        bool is_pivot = false;
        for (int p : pivots)
            is_pivot |= (p == f);
        if (is_pivot)
            continue;
        std::vector<Rat> coef(m, Rat(0));
        coef[f] = 1;
        for (std::size_t r = 0; r < red.size(); ++r)
            coef[pivots[r]] = -red[r][f];
        std::vector<Rat> w(n, Rat(0));
        for (int i = 0; i < ka; ++i)
            if (coef[i] != 0)
                for (int j = 0; j < n; ++j)
                    w[j] += coef[i] * a.rows_[i][j];
        vecs.push_back(std::move(w));
    }
    return Subspace::span_of(n, vecs);
}

bool Subspace::contains(const Subspace& o) const
{
    return span(*this, o).dim() == dim();
}

bool Subspace::operator<(const Subspace& o) const
{
    if (n_ != o.n_)
        return n_ < o.n_;
    if (rows_.size() != o.rows_.size())
        return rows_.size() < o.rows_.size();
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (int j = 0; j < n_; ++j)
            if (rows_[i][j] != o.rows_[i][j])
                return rows_[i][j] < o.rows_[i][j];
    return false;
}

} // namespace vir
