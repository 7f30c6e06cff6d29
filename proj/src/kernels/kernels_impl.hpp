#pragma once

#include <cstddef>

namespace sldp::kernels {

struct KernelTable {
  double (*log_abs_diff_sum)(const double* v, std::size_t n, double x);
  double (*log_sum)(const double* v, std::size_t n);
  double (*negative_part_sum)(const double* v, std::size_t n);
};

namespace scalar {
double log_abs_diff_sum(const double* v, std::size_t n, double x);
double log_sum(const double* v, std::size_t n);
double negative_part_sum(const double* v, std::size_t n);
}  // namespace scalar

namespace avx2 {
double log_abs_diff_sum(const double* v, std::size_t n, double x);
double log_sum(const double* v, std::size_t n);
double negative_part_sum(const double* v, std::size_t n);
}  // namespace avx2

}  // namespace sldp::kernels
