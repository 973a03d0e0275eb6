#include "condnorm/simd/truth_table_kernels.hpp"

#include <cstdlib>
#include <string>

namespace condnorm::simd {

namespace {

void selectScalar(std::span<std::uint64_t> out, std::span<const std::uint64_t> test,
                  std::span<const std::uint64_t> thenW, std::span<const std::uint64_t> elseW) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (test[i] & thenW[i]) | (~test[i] & elseW[i]);
}

std::size_t firstNotAllOnesScalar(std::span<const std::uint64_t> words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i] != ~std::uint64_t{0}) return i;
  return words.size();
}

constexpr KernelTable kScalar{Isa::Scalar, "scalar", selectScalar, firstNotAllOnesScalar};

}  // namespace

const KernelTable& scalarKernels() { return kScalar; }

#if !defined(CONDNORM_HAVE_AVX2)
const KernelTable* avx2Kernels() { return nullptr; }
#endif
#if !defined(CONDNORM_HAVE_NEON)
const KernelTable* neonKernels() { return nullptr; }
#endif

bool cpuSupports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CONDNORM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(CONDNORM_HAVE_NEON)
      return true;  // Baseline on AArch64.
#else
      return false;
#endif
  }
  return false;
}

std::vector<const KernelTable*> availableKernels() {
  std::vector<const KernelTable*> out{&scalarKernels()};
  if (const KernelTable* k = avx2Kernels(); k != nullptr && cpuSupports(Isa::Avx2)) out.push_back(k);
  if (const KernelTable* k = neonKernels(); k != nullptr && cpuSupports(Isa::Neon)) out.push_back(k);
  return out;
}

const KernelTable& activeKernels() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const auto kernels = availableKernels();
    if (const char* forced = std::getenv("CONDNORM_SIMD")) {
      for (const KernelTable* k : kernels)
        if (k->name == forced) return *k;
    }
    return *kernels.back();
  }();
  return chosen;
}

}  // namespace condnorm::simd
