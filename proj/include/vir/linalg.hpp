#pragma once

#include "vir/rational.hpp"

#include <compare>
#include <vector>

namespace vir {

// Subspace of Q^n stored as a reduced row echelon basis, so equal subspaces
// have identical representations.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : n_(ambient) {}
    static Subspace span_of(int ambient, const std::vector<std::vector<Rat>>& vectors);
    static Subspace full(int ambient);

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<Rat>>& basis() const { return rows_; }
    bool contains(const Subspace& o) const;

    friend Subspace span(const Subspace& a, const Subspace& b);
    friend Subspace intersect(const Subspace& a, const Subspace& b);

    bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator<(const Subspace& o) const;

private:
    int n_ = 0;
    std::vector<std::vector<Rat>> rows_;
};

// Reduced row echelon form; zero rows dropped.
std::vector<std::vector<Rat>> rref(std::vector<std::vector<Rat>> rows, int ncols);

} // namespace vir
