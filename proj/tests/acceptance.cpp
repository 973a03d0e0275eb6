// Acceptance run: the universe of expressions with at most three If-nodes over
// {a, b}, plus 10,000 random expressions of depth at most six. Prints one line
// per criterion and exits nonzero if any fails. With an argument N, runs only
// criterion N.

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "condnorm/expr.hpp"
#include "condnorm/suites.hpp"

using namespace condnorm;

namespace {

struct Criterion {
  const char* name;
  std::function<std::vector<CheckResult>()> run;
};

CheckResult enumerationCounts() {
  CheckResult r;
  r.name = "enumeration-counts";
  const std::vector<Symbol> a = parseAlphabet("a");
  const std::pair<unsigned, std::size_t> expected[] = {{0, 1}, {1, 2}, {2, 5}};
  for (const auto& [k, n] : expected) {
    const std::size_t got = enumerate(ExprUniverse{k, a}).size();
    ++r.expressionsChecked;
    if (got != n || universeSize(ExprUniverse{k, a}) != n) {
      ++r.failures;
      r.counterexamples.push_back({"maxIfs=" + std::to_string(k), "count " + std::to_string(got)});
    }
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  VerifySuiteConfig cfg;
  cfg.maxIfNodes = 3;
  cfg.alphabet = parseAlphabet("a,b");
  cfg.randomSamples = 10000;
  cfg.randomDepth = 6;
  cfg.parallelism = std::max(1u, std::thread::hardware_concurrency());
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();
  const std::vector<Expr> members = verificationMembers(cfg);
  const std::vector<Expr> universe = enumerate(ExprUniverse{cfg.maxIfNodes, cfg.alphabet});
  const std::vector<Expr> foldSub = enumerate(ExprUniverse{2, cfg.alphabet});
  const std::vector<Expr> pool = enumerate(ExprUniverse{1, cfg.alphabet});

  const std::vector<Criterion> criteria = {
      {"measure decrease on every norm call edge", [&] { return std::vector{checkMeasureDecrease(members, cfg)}; }},
      {"fuel m(e) suffices and bounds the call count", [&] { return std::vector{checkFuelBound(members, cfg)}; }},
      {"norm, norm1 and norm2 agree", [&] { return std::vector{checkEquivalence(members, cfg)}; }},
      {"every result is normal", [&] { return std::vector{checkNormality(members, cfg)}; }},
      {"normalization is idempotent", [&] { return std::vector{checkIdempotence(members, cfg)}; }},
      {"fold lemma over the two-If triple product", [&] { return std::vector{checkFoldLemma(foldSub, cfg)}; }},
      {"norm2 preserves normal inputs", [&] { return std::vector{checkIsnPreservation(members, cfg)}; }},
      {"trace edges satisfy the recursion relations", [&] { return std::vector{checkRelationSoundness(members, cfg)}; }},
      {"measure witnesses for both relations",
       [&] { return std::vector{checkNormWitness(members, cfg), checkNorm2Witness(members, pool, cfg)}; }},
      {"normalization preserves meaning", [&] { return std::vector{checkSemanticPreservation(members, cfg)}; }},
      {"tautology walk agrees with truth tables", [&] { return std::vector{checkTautologyOracle(members, cfg)}; }},
      {"enumeration counts", [] { return std::vector{enumerationCounts()}; }},
  };

  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(n - 1);
    last = first + 1;
  }
  std::printf("universe=%zu random=%llu members=%zu threads=%u\n", universe.size(),
              static_cast<unsigned long long>(cfg.randomSamples), members.size(), cfg.parallelism);

  int failed = 0;
  for (std::size_t i = first; i < last; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CheckResult> results = criteria[i].run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = true;
    std::uint64_t exprs = 0, edges = 0;
    for (const auto& r : results) {
      ok = ok && r.passed();
      exprs = std::max(exprs, r.expressionsChecked);
      edges += r.edgesChecked;
    }
    if (!ok) ++failed;
    std::printf("%s %2zu %s (expressions=%llu edges=%llu, %.2fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                static_cast<unsigned long long>(exprs), static_cast<unsigned long long>(edges), secs);
    for (const auto& r : results)
      for (const auto& c : r.counterexamples) std::printf("     %s: %s: %s\n", r.name.c_str(), c.expr.c_str(), c.detail.c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.2fs\n", last - first - failed, last - first, total);
  return failed == 0 ? 0 : 1;
}
