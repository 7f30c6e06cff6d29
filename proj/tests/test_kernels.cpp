#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sldp/kernels.hpp"
#include "sldp/rng.hpp"

using namespace sldp;
using namespace sldp::kernels;

namespace {

std::vector<double> random_values(std::size_t n, Rng& rng, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("scalar reference values") {
  const std::vector<double> v = {0.25, 0.75, 1.5};
  CHECK(log_abs_diff_sum(Isa::Scalar, v, 1.0) ==
        doctest::Approx(std::log(0.75) + std::log(0.25) + std::log(0.5)));
  CHECK(log_sum(Isa::Scalar, v) == doctest::Approx(std::log(0.25 * 0.75 * 1.5)));
  const std::vector<double> w = {-0.5, 0.2, -0.1, 1.4};
  CHECK(negative_part_sum(Isa::Scalar, w) == doctest::Approx(0.6));
  CHECK(log_abs_diff_sum(Isa::Scalar, v, 0.75) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  Rng rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 99u, 100u, 1000u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<double> v = random_values(n, rng, 1e-6, 0.05);
      const double x = rng.uniform(0.0, 0.05);
      CHECK(rel_diff(log_abs_diff_sum(Isa::Avx2, v, x), log_abs_diff_sum(Isa::Scalar, v, x)) < 1e-12);
      CHECK(rel_diff(log_sum(Isa::Avx2, v), log_sum(Isa::Scalar, v)) < 1e-12);
      const std::vector<double> w = random_values(n, rng, -1.0, 1.0);
      CHECK(rel_diff(negative_part_sum(Isa::Avx2, w), negative_part_sum(Isa::Scalar, w)) < 1e-13);
    }
  }
}

TEST_CASE("SIMD kernels handle extreme and degenerate inputs") {
  if (!isa_available(Isa::Avx2)) return;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> v(37, 0.5);
  v[20] = 0.25;
  CHECK(log_abs_diff_sum(Isa::Avx2, v, 0.25) == -inf);
  CHECK(log_abs_diff_sum(Isa::Scalar, v, 0.25) == -inf);

  std::vector<double> tiny(64);
  for (std::size_t i = 0; i < tiny.size(); ++i) tiny[i] = std::ldexp(1.0, -20 - static_cast<int>(i));
  CHECK(rel_diff(log_sum(Isa::Avx2, tiny), log_sum(Isa::Scalar, tiny)) < 1e-12);

  std::vector<double> huge(40, 1e200);
  huge[3] = 1e-250;
  CHECK(rel_diff(log_sum(Isa::Avx2, huge), log_sum(Isa::Scalar, huge)) < 1e-12);

  std::vector<double> with_zero(9, 0.3);
  with_zero[8] = 0.0;
  CHECK(log_sum(Isa::Avx2, with_zero) == -inf);
}

TEST_CASE("dispatch reports a usable instruction set") {
  CHECK(isa_available(active_isa()));
  CHECK((to_string(active_isa()) == "avx2" || to_string(active_isa()) == "scalar"));
}
