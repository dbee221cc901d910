#pragma once

#include <cstddef>
#include <vector>

namespace skg::bayes {

// Non-negative table over a set of variables (node indices). Row-major with
// the first scope variable most significant.
struct Factor {
    std::vector<std::size_t> scope;
    std::vector<std::size_t> cards;
    std::vector<double> table;

    static Factor constant(double value);

    std::size_t position(std::size_t var) const;  // npos when absent
    bool contains(std::size_t var) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Factor multiply(const Factor& a, const Factor& b);
Factor sum_out(const Factor& f, std::size_t var);
// Keeps only entries with var == state and drops var from the scope.
Factor restrict_to(const Factor& f, std::size_t var, std::size_t state);
// Reorders the scope; `order` must be a permutation of f.scope.
Factor reorder(const Factor& f, const std::vector<std::size_t>& order);

}  // namespace skg::bayes
