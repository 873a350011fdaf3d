#pragma once

#include <span>
#include <vector>

namespace pcasim {

// Sum whose result depends only on the multiset of terms, never on their
// order: terms are sorted, then accumulated with Neumaier compensation.
// Row-permutation invariance of every statistic in the library rests on this.
double order_invariant_sum(std::span<const double> terms);

// Same, but sorts `scratch` in place (avoids a copy on hot paths).
double order_invariant_sum_inplace(std::vector<double>& scratch);

}  // namespace pcasim
