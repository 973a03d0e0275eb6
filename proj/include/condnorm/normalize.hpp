#pragma once
// The three normalizers (norm, norm1/normif, nested-recursive norm2) and the
// normal-form predicate.
//
// norm and norm2 run on an explicit frame stack with a fuel budget counted in
// invocations, and can record every recursive call as a CallEdge. norm1 and
// normif are structurally recursive and need no fuel.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condnorm/expr.hpp"

namespace condnorm {

enum class RuleTag {
  At,
  IfAtLeft,
  IfAtRight,
  IfIf,
  IfIfInnerV,
  IfIfInnerW,
  IfIfOuter,
};

// "AT", "IF_AT_LEFT", ... as used in serialized traces.
std::string_view ruleName(RuleTag rule);

struct CallEdge {
  Expr caller;
  Expr callee;
  RuleTag rule;
  // Invocation depth of the callee; the outermost call has depth 1.
  std::uint64_t depth;
  std::uint64_t seq;
};

struct NormOutcome {
  // Empty when the fuel ran out.
  std::optional<Expr> result;
  std::uint64_t callCount = 0;
  std::uint64_t maxDepth = 0;
  std::vector<CallEdge> trace;

  bool completed() const noexcept { return result.has_value(); }
};

struct NormOptions {
  // Invocation budget. Defaults: m(e) for norm, kDefaultNorm2Fuel for norm2.
  std::optional<std::uint64_t> fuel;
  bool trace = false;
};

inline constexpr std::uint64_t kDefaultNorm2Fuel = 1'000'000;

NormOutcome norm(const Expr& e, const NormOptions& opts = {});
NormOutcome norm2(const Expr& e, const NormOptions& opts = {});

Expr normif(const Expr& x, const Expr& y, const Expr& z);
Expr norm1(const Expr& e);

// No If node has an If node as its test.
bool isNormal(const Expr& e);

// JSON array of {"seq","depth","rule","caller","callee"} objects.
std::string traceToJson(const std::vector<CallEdge>& trace, int indent = -1);

}  // namespace condnorm
