#pragma once
// Exhaustive verification suites: each check runs one property of the
// normalizers over an expression universe and collects counterexamples.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condnorm/expr.hpp"

namespace condnorm {

enum class Suite {
  MeasureDecrease,
  Equivalence,
  Isn,
  Idempotence,
  FoldLemma,
  Semantics,
  RelationEdges,
  LexWitness,
  TautOracle,
};

std::string_view suiteName(Suite s);
std::optional<Suite> suiteFromName(std::string_view name);
const std::vector<Suite>& allSuites();

struct VerifySuiteConfig {
  unsigned maxIfNodes = 3;
  std::vector<Symbol> alphabet{Symbol("a"), Symbol("b")};
  std::vector<Suite> suites = allSuites();
  // Replaces the default fuel of norm2 runs and of traced norm runs.
  std::optional<std::uint64_t> fuelOverride;
  unsigned parallelism = 1;
  unsigned maxIfNodesCap = 4;
  // Extra random expressions checked alongside the universe. Seeds are tried
  // in order from `seed`; a sample is kept only if its normal form has at most
  // `randomMaxNormalSize` nodes.
  std::uint64_t randomSamples = 0;
  unsigned randomDepth = 6;
  std::uint64_t seed = 1985;
  std::size_t randomMaxNormalSize = 4096;
  std::size_t maxCounterexamples = 20;

  // Throws std::invalid_argument.
  void validate() const;
};

struct Counterexample {
  std::string expr;
  std::string detail;
};

struct CheckResult {
  std::string name;
  std::uint64_t expressionsChecked = 0;
  std::uint64_t edgesChecked = 0;
  std::uint64_t failures = 0;
  // Sorted by expr, capped at maxCounterexamples.
  std::vector<Counterexample> counterexamples;
  // Observed values such as maximal call counts.
  std::map<std::string, std::uint64_t> observations;

  bool passed() const noexcept { return failures == 0; }
};

struct SuiteResult {
  Suite suite;
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  std::uint64_t expressionsChecked() const noexcept;
  std::uint64_t edgesChecked() const noexcept;
};

struct VerifyReport {
  VerifySuiteConfig config;
  std::uint64_t universeSize = 0;
  std::vector<SuiteResult> suites;

  bool passed() const noexcept;
  std::string toJson(int indent = 2) const;
};

// Universe members followed by the configured random samples.
std::vector<Expr> verificationMembers(const VerifySuiteConfig& cfg);

// Individual checks. `members` is the expression list to check.
CheckResult checkMeasureDecrease(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkFuelBound(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkEquivalence(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkNormality(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkIsnPreservation(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkIdempotence(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
// Full triple product of `sub`.
CheckResult checkFoldLemma(const std::vector<Expr>& sub, const VerifySuiteConfig& cfg);
CheckResult checkSemanticPreservation(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkRelationSoundness(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
// Pairwise over `members`: precNorm(x, y) iff x is in predsNorm(y).
CheckResult checkRelationAgreement(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkTraceCoherence(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkNormWitness(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);
CheckResult checkNorm2Witness(const std::vector<Expr>& members, const std::vector<Expr>& pool,
                              const VerifySuiteConfig& cfg);
CheckResult checkTautologyOracle(const std::vector<Expr>& members, const VerifySuiteConfig& cfg);

VerifyReport runVerify(const VerifySuiteConfig& cfg);

}  // namespace condnorm
