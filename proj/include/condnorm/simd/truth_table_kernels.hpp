#pragma once
// Bit-sliced truth-table kernels. Each 64-bit word holds the value of an
// expression under 64 consecutive assignments; bit j of the table is the
// value under the assignment that gives variable i the value of bit i of j.
//
// Every ISA variant must agree bit-for-bit with the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace condnorm::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  std::string_view name;
  // out[i] = (test[i] & thenW[i]) | (~test[i] & elseW[i]). All spans have equal length.
  void (*select)(std::span<std::uint64_t> out, std::span<const std::uint64_t> test,
                 std::span<const std::uint64_t> thenW, std::span<const std::uint64_t> elseW);
  // Index of the first word that is not all ones, or words.size().
  std::size_t (*firstNotAllOnes)(std::span<const std::uint64_t> words);
};

const KernelTable& scalarKernels();
// Null when the variant was not compiled for this target.
const KernelTable* avx2Kernels();
const KernelTable* neonKernels();

bool cpuSupports(Isa isa);

// Variants that are both compiled in and supported by the running CPU.
std::vector<const KernelTable*> availableKernels();

// Best available variant. CONDNORM_SIMD=scalar|avx2|neon forces a choice when
// that variant is available.
const KernelTable& activeKernels();

}  // namespace condnorm::simd
