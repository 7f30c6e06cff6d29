#include <cmath>

#include "kernels_impl.hpp"

namespace sldp::kernels::scalar {

double log_abs_diff_sum(const double* v, std::size_t n, double x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += std::log(std::abs(x - v[k]));
  return sum;
}

double log_sum(const double* v, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += std::log(v[k]);
  return sum;
}

double negative_part_sum(const double* v, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (v[k] < 0.0) sum -= v[k];
  return sum;
}

}  // namespace sldp::kernels::scalar
