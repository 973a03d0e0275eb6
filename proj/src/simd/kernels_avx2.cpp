// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "condnorm/simd/truth_table_kernels.hpp"

namespace condnorm::simd {

namespace {

constexpr std::size_t kLanes = 4;

void selectAvx2(std::span<std::uint64_t> out, std::span<const std::uint64_t> test,
                std::span<const std::uint64_t> thenW, std::span<const std::uint64_t> elseW) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i t = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(test.data() + i));
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(thenW.data() + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(elseW.data() + i));
    // andnot(t, b) = ~t & b
    const __m256i r = _mm256_or_si256(_mm256_and_si256(t, a), _mm256_andnot_si256(t, b));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), r);
  }
  for (; i < n; ++i) out[i] = (test[i] & thenW[i]) | (~test[i] & elseW[i]);
}

std::size_t firstNotAllOnesAvx2(std::span<const std::uint64_t> words) {
  const std::size_t n = words.size();
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
    // testc(v, ones) is 1 iff every bit of ones is set in v.
    if (!_mm256_testc_si256(v, ones)) break;
  }
  for (; i < n; ++i)
    if (words[i] != ~std::uint64_t{0}) return i;
  return n;
}

constexpr KernelTable kAvx2{Isa::Avx2, "avx2", selectAvx2, firstNotAllOnesAvx2};

}  // namespace

const KernelTable* avx2Kernels() { return &kAvx2; }

}  // namespace condnorm::simd
