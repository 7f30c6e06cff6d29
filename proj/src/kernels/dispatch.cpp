#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"
#include "sldp/kernels.hpp"

namespace sldp::kernels {

namespace {

constexpr KernelTable kScalar = {scalar::log_abs_diff_sum, scalar::log_sum,
                                 scalar::negative_part_sum};
#ifdef SLDP_HAVE_AVX2_TU
constexpr KernelTable kAvx2 = {avx2::log_abs_diff_sum, avx2::log_sum, avx2::negative_part_sum};
#endif

const KernelTable& table_for(Isa isa) {
#ifdef SLDP_HAVE_AVX2_TU
  if (isa == Isa::Avx2) {
    if (!isa_available(Isa::Avx2)) throw std::runtime_error("AVX2 kernels unavailable on this CPU");
    return kAvx2;
  }
#endif
  if (isa != Isa::Scalar) throw std::runtime_error("requested kernels were not compiled in");
  return kScalar;
}

Isa choose_isa() {
  const char* forced = std::getenv("SCHMIDT_LDP_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0) return Isa::Scalar;
  return detected_isa();
}

const KernelTable& active_table() {
  static const KernelTable& table = table_for(active_isa());
  return table;
}

}  // namespace

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(SLDP_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return avx2;
#else
  return false;
#endif
}

Isa detected_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
  static const Isa isa = choose_isa();
  return isa;
}

double log_abs_diff_sum(std::span<const double> v, double x) {
  return active_table().log_abs_diff_sum(v.data(), v.size(), x);
}
double log_sum(std::span<const double> v) { return active_table().log_sum(v.data(), v.size()); }
double negative_part_sum(std::span<const double> v) {
  return active_table().negative_part_sum(v.data(), v.size());
}

double log_abs_diff_sum(Isa isa, std::span<const double> v, double x) {
  return table_for(isa).log_abs_diff_sum(v.data(), v.size(), x);
}
double log_sum(Isa isa, std::span<const double> v) {
  return table_for(isa).log_sum(v.data(), v.size());
}
double negative_part_sum(Isa isa, std::span<const double> v) {
  return table_for(isa).negative_part_sum(v.data(), v.size());
}

}  // namespace sldp::kernels
