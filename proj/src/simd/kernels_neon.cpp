#include <arm_neon.h>

#include "condnorm/simd/truth_table_kernels.hpp"

namespace condnorm::simd {

namespace {

constexpr std::size_t kLanes = 2;

void selectNeon(std::span<std::uint64_t> out, std::span<const std::uint64_t> test,
                std::span<const std::uint64_t> thenW, std::span<const std::uint64_t> elseW) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint64x2_t t = vld1q_u64(test.data() + i);
    const uint64x2_t a = vld1q_u64(thenW.data() + i);
    const uint64x2_t b = vld1q_u64(elseW.data() + i);
    // Bitwise select: bits of a where t is set, b elsewhere.
    vst1q_u64(out.data() + i, vbslq_u64(t, a, b));
  }
  for (; i < n; ++i) out[i] = (test[i] & thenW[i]) | (~test[i] & elseW[i]);
}

std::size_t firstNotAllOnesNeon(std::span<const std::uint64_t> words) {
  const std::size_t n = words.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint64x2_t v = vld1q_u64(words.data() + i);
    if ((vgetq_lane_u64(v, 0) & vgetq_lane_u64(v, 1)) != ~std::uint64_t{0}) break;
  }
  for (; i < n; ++i)
    if (words[i] != ~std::uint64_t{0}) return i;
  return n;
}

constexpr KernelTable kNeon{Isa::Neon, "neon", selectNeon, firstNotAllOnesNeon};

}  // namespace

const KernelTable* neonKernels() { return &kNeon; }

}  // namespace condnorm::simd
