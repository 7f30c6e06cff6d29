#pragma once

#include <span>
#include <string>

/// Data-parallel inner loops with a scalar reference and SIMD variants.
///
/// The active instruction set is chosen once at first use from CPUID; the
/// environment variable SCHMIDT_LDP_SIMD=scalar forces the reference path.
namespace sldp::kernels {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

/// Best instruction set supported by this binary and CPU.
Isa detected_isa();
/// Instruction set used by the dispatching entry points below.
Isa active_isa();
bool isa_available(Isa isa);

/// sum_k ln|x - v_k|; -infinity if some v_k == x.
double log_abs_diff_sum(std::span<const double> v, double x);
/// sum_k ln v_k for positive entries; -infinity if some v_k == 0.
double log_sum(std::span<const double> v);
/// sum_k max(-v_k, 0).
double negative_part_sum(std::span<const double> v);

/// Explicit-ISA entry points, used by the equivalence tests.
double log_abs_diff_sum(Isa isa, std::span<const double> v, double x);
double log_sum(Isa isa, std::span<const double> v);
double negative_part_sum(Isa isa, std::span<const double> v);

}  // namespace sldp::kernels
