#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace apb::kernels {

enum class Weight { inv, inv_square, inv_norm };

// Function table for the data-parallel inner loops. Every entry of a
// vector table must agree with the scalar table (sums to rounding).
struct Table {
  std::string_view name;
  // compensated sum of w(g[i]) for i < n
  double (*weight_sum)(const double* g, std::size_t n, Weight w);
  // number of zero bytes in flags[0..n)
  std::size_t (*count_zero)(const std::uint8_t* flags, std::size_t n);
  // writes the indices of zero bytes in ascending order; returns count
  std::size_t (*collect_zero)(const std::uint8_t* flags, std::size_t n, std::uint32_t* out);
};

const Table& scalar();
// nullptr when not compiled in or not supported by this CPU
const Table* avx2();

// Chosen once per process: AVX2 when available unless APBOUNDS_KERNELS=scalar.
const Table& active();

}  // namespace apb::kernels
