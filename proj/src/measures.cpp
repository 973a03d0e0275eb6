#include "condnorm/measures.hpp"

namespace condnorm {

Measure shostakMeasure(const Expr& e) {
  return foldExpr<Measure>(
      e, [](const Expr&) { return Measure(1); },
      [](const Expr&, Measure x, Measure y, Measure z) { return x + x * y + x * z; });
}

std::uint64_t testedIfCount(const Expr& e) {
  return foldExpr<std::uint64_t>(
      e, [](const Expr&) { return std::uint64_t{0}; },
      [](const Expr& node, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
        return (node.test().isIf() ? 1 : 0) + x + y + z;
      });
}

std::uint64_t ifDepth(const Expr& e) {
  std::uint64_t d = 0;
  for (const Expr* x = &e; x->isIf(); x = &x->test()) ++d;
  return d;
}

std::ostream& operator<<(std::ostream& os, const LexMeasure& lm) {
  return os << '(' << lm.testedIfs << ',' << lm.sizeVal << ')';
}

LexMeasure lexNorm2Measure(const Expr& e) { return {testedIfCount(e), e.size()}; }

std::uint64_t saturateToU64(const Measure& m) {
  if (m > Measure(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return m.convert_to<std::uint64_t>();
}

}  // namespace condnorm
