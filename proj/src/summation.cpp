#include "pcasim/summation.hpp"

#include <algorithm>
#include <cmath>

namespace pcasim {

double order_invariant_sum_inplace(std::vector<double>& scratch) {
  std::sort(scratch.begin(), scratch.end());
  double sum = 0.0;
  double compensation = 0.0;
  for (double term : scratch) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

double order_invariant_sum(std::span<const double> terms) {
  std::vector<double> scratch(terms.begin(), terms.end());
  return order_invariant_sum_inplace(scratch);
}

}  // namespace pcasim
