#pragma once

#include <vector>

#include "adist/rational.hpp"

namespace adist {

/// Dense matrix over exact rationals (all entries share one prime tag).
using RatMatrix = std::vector<std::vector<ValuedRational>>;

/// Reduced row echelon form in place; returns the pivot column indices.
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(RatMatrix m);

/// Basis of the right nullspace of m (cols unknowns), each vector scaled to
/// primitive integer entries.
std::vector<std::vector<ValuedRational>> nullspace(const RatMatrix& m, unsigned long p,
                                                   std::size_t cols);

/// span(rows of a) == span(rows of b), by three rank computations.
bool same_row_span(const RatMatrix& a, const RatMatrix& b);

}  // namespace adist
