#include "condnorm/suites.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "condnorm/measures.hpp"
#include "condnorm/normalize.hpp"
#include "condnorm/parallel.hpp"
#include "condnorm/recursion_relation.hpp"
#include "condnorm/semantics.hpp"

namespace condnorm {

namespace {

constexpr std::pair<Suite, std::string_view> kSuiteNames[] = {
    {Suite::MeasureDecrease, "measure-decrease"}, {Suite::Equivalence, "equivalence"},
    {Suite::Isn, "isn"},                          {Suite::Idempotence, "idempotence"},
    {Suite::FoldLemma, "fold-lemma"},             {Suite::Semantics, "semantics"},
    {Suite::RelationEdges, "relation-edges"},     {Suite::LexWitness, "lex-witness"},
    {Suite::TautOracle, "taut-oracle"},
};

bool byExpr(const Counterexample& a, const Counterexample& b) {
  return std::tie(a.expr, a.detail) < std::tie(b.expr, b.detail);
}

// Per-shard accumulator. Keeps only the smallest counterexamples so the merged
// report does not depend on how the work was sharded.
class Accumulator {
 public:
  explicit Accumulator(std::size_t cap) : cap_(cap) {}

  void fail(std::string expr, std::string detail) {
    ++failures;
    cex_.push_back({std::move(expr), std::move(detail)});
    if (cex_.size() > 2 * cap_ + 16) trim();
  }
  void fail(const Expr& e, std::string detail) { fail(print(e), std::move(detail)); }

  void observeMax(const std::string& key, std::uint64_t v) {
    auto [it, inserted] = observations.try_emplace(key, v);
    if (!inserted) it->second = std::max(it->second, v);
  }

  void trim() {
    std::sort(cex_.begin(), cex_.end(), byExpr);
    if (cex_.size() > cap_) cex_.resize(cap_);
  }

  std::uint64_t expressions = 0;
  std::uint64_t edges = 0;
  std::uint64_t failures = 0;
  std::map<std::string, std::uint64_t> observations;

  std::vector<Counterexample>& counterexamples() { return cex_; }

 private:
  std::size_t cap_;
  std::vector<Counterexample> cex_;
};

template <class Fn>
CheckResult runSharded(std::string name, std::size_t n, const VerifySuiteConfig& cfg, Fn fn) {
  const unsigned threads = std::max(1u, cfg.parallelism);
  std::vector<Accumulator> accs(threads, Accumulator(cfg.maxCounterexamples));
  forEachShard(n, threads, [&](std::size_t s, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i, accs[s]);
  });
  CheckResult out;
  out.name = std::move(name);
  for (auto& acc : accs) {
    out.expressionsChecked += acc.expressions;
    out.edgesChecked += acc.edges;
    out.failures += acc.failures;
    for (auto& [k, v] : acc.observations) {
      auto [it, inserted] = out.observations.try_emplace(k, v);
      if (!inserted) it->second = std::max(it->second, v);
    }
    for (auto& c : acc.counterexamples()) out.counterexamples.push_back(std::move(c));
  }
  std::sort(out.counterexamples.begin(), out.counterexamples.end(), byExpr);
  if (out.counterexamples.size() > cfg.maxCounterexamples)
    out.counterexamples.resize(cfg.maxCounterexamples);
  return out;
}

template <class Fn>
CheckResult perExpression(std::string name, const std::vector<Expr>& members,
                          const VerifySuiteConfig& cfg, Fn fn) {
  return runSharded(std::move(name), members.size(), cfg, [&](std::size_t i, Accumulator& acc) {
    ++acc.expressions;
    fn(members[i], acc);
  });
}

NormOptions norm2Options(const VerifySuiteConfig& cfg, bool trace = false) {
  NormOptions opts;
  opts.fuel = cfg.fuelOverride;
  opts.trace = trace;
  return opts;
}

}  // namespace

std::string_view suiteName(Suite s) {
  for (const auto& [suite, name] : kSuiteNames)
    if (suite == s) return name;
  return "?";
}

std::optional<Suite> suiteFromName(std::string_view name) {
  for (const auto& [suite, n] : kSuiteNames)
    if (n == name) return suite;
  return std::nullopt;
}

const std::vector<Suite>& allSuites() {
  static const std::vector<Suite> all = [] {
    std::vector<Suite> v;
    for (const auto& [suite, name] : kSuiteNames) v.push_back(suite);
    return v;
  }();
  return all;
}

void VerifySuiteConfig::validate() const {
  if (suites.empty()) throw std::invalid_argument("no suites selected");
  if (maxIfNodes > maxIfNodesCap)
    throw std::invalid_argument("max-ifs " + std::to_string(maxIfNodes) + " exceeds the cap of " +
                                std::to_string(maxIfNodesCap));
  if (parallelism == 0) throw std::invalid_argument("parallelism must be at least 1");
  if (fuelOverride && *fuelOverride == 0) throw std::invalid_argument("fuel must be at least 1");
  if (randomMaxNormalSize == 0) throw std::invalid_argument("random-max-size must be at least 1");
  ExprUniverse{maxIfNodes, alphabet}.validate();
}

bool SuiteResult::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

std::uint64_t SuiteResult::expressionsChecked() const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : checks) n = std::max(n, c.expressionsChecked);
  return n;
}

std::uint64_t SuiteResult::edgesChecked() const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : checks) n += c.edgesChecked;
  return n;
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

std::string VerifyReport::toJson(int indent) const {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json cfg;
  cfg["maxIfNodes"] = config.maxIfNodes;
  cfg["alphabet"] = ordered_json::array();
  for (const auto& s : config.alphabet) cfg["alphabet"].push_back(s.name());
  cfg["suites"] = ordered_json::array();
  for (Suite s : config.suites) cfg["suites"].push_back(std::string(suiteName(s)));
  cfg["fuelOverride"] = config.fuelOverride ? ordered_json(*config.fuelOverride) : ordered_json(nullptr);
  cfg["randomSamples"] = config.randomSamples;
  cfg["randomDepth"] = config.randomDepth;
  cfg["randomMaxNormalSize"] = config.randomMaxNormalSize;
  cfg["seed"] = config.seed;
  j["config"] = std::move(cfg);
  j["universeSize"] = universeSize;
  j["passed"] = passed();
  j["suites"] = ordered_json::array();
  for (const auto& s : suites) {
    ordered_json sj;
    sj["suite"] = std::string(suiteName(s.suite));
    sj["passed"] = s.passed();
    sj["expressionsChecked"] = s.expressionsChecked();
    sj["edgesChecked"] = s.edgesChecked();
    sj["checks"] = ordered_json::array();
    for (const auto& c : s.checks) {
      ordered_json cj;
      cj["name"] = c.name;
      cj["passed"] = c.passed();
      cj["expressionsChecked"] = c.expressionsChecked;
      cj["edgesChecked"] = c.edgesChecked;
      cj["failures"] = c.failures;
      cj["observations"] = ordered_json::object();
      for (const auto& [k, v] : c.observations) cj["observations"][k] = v;
      cj["counterexamples"] = ordered_json::array();
      for (const auto& cex : c.counterexamples) {
        ordered_json x;
        x["expr"] = cex.expr;
        x["detail"] = cex.detail;
        cj["counterexamples"].push_back(std::move(x));
      }
      sj["checks"].push_back(std::move(cj));
    }
    j["suites"].push_back(std::move(sj));
  }
  return j.dump(indent);
}

std::vector<Expr> verificationMembers(const VerifySuiteConfig& cfg) {
  std::vector<Expr> members = enumerate(ExprUniverse{cfg.maxIfNodes, cfg.alphabet});
  std::uint64_t seed = cfg.seed;
  for (std::uint64_t kept = 0; kept < cfg.randomSamples; ++seed) {
    Expr e = randomExpr(seed, cfg.randomDepth, cfg.alphabet);
    if (size(norm1(e)) > cfg.randomMaxNormalSize) continue;
    members.push_back(std::move(e));
    ++kept;
  }
  return members;
}

CheckResult checkMeasureDecrease(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("measure-decrease", members, cfg, [&](const Expr& e, Accumulator& acc) {
    NormOptions opts;
    opts.fuel = cfg.fuelOverride;
    opts.trace = true;
    const NormOutcome run = norm(e, opts);
    if (!run.completed()) acc.fail(e, "norm ran out of fuel");
    for (const auto& edge : run.trace) {
      ++acc.edges;
      const Measure before = shostakMeasure(edge.caller);
      const Measure after = shostakMeasure(edge.callee);
      if (!(after < before)) {
        acc.fail(edge.caller, "m does not decrease on " + std::string(ruleName(edge.rule)) +
                                  " edge to " + print(edge.callee));
        continue;
      }
      if (edge.rule == RuleTag::IfIf) {
        const Measure u = shostakMeasure(edge.caller.test().test());
        const Measure y = shostakMeasure(edge.caller.thenBranch());
        const Measure z = shostakMeasure(edge.caller.elseBranch());
        const Measure expected = u * y + u * z;
        if (before - after != expected)
          acc.fail(edge.caller, "IF_IF drop " + Measure(before - after).str() + " != UY + UZ = " +
                                    expected.str());
      }
    }
  });
}

CheckResult checkFuelBound(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("fuel-bound", members, cfg, [&](const Expr& e, Accumulator& acc) {
    const Measure m = shostakMeasure(e);
    NormOptions opts;
    opts.fuel = saturateToU64(m);
    const NormOutcome run = norm(e, opts);
    acc.observeMax("maxNormCallCount", run.callCount);
    if (!run.completed()) {
      acc.fail(e, "norm exhausted fuel m(e)=" + m.str());
    } else if (Measure(run.callCount) > m) {
      acc.fail(e, "callCount " + std::to_string(run.callCount) + " > m(e)=" + m.str());
    }
  });
}

CheckResult checkEquivalence(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("three-way-equivalence", members, cfg, [&](const Expr& e, Accumulator& acc) {
    const NormOutcome a = norm(e, norm2Options(cfg));
    const Expr b = norm1(e);
    const NormOutcome c = norm2(e, norm2Options(cfg));
    acc.observeMax("maxNorm2CallCount", c.callCount);
    acc.observeMax("maxNormCallCount", a.callCount);
    if (!a.completed() || !c.completed()) {
      acc.fail(e, !a.completed() ? "norm ran out of fuel" : "norm2 ran out of fuel");
      return;
    }
    if (!(*a.result == b)) acc.fail(e, "norm " + print(*a.result) + " != norm1 " + print(b));
    if (!(*a.result == *c.result)) acc.fail(e, "norm " + print(*a.result) + " != norm2 " + print(*c.result));
  });
}

CheckResult checkNormality(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("normality", members, cfg, [&](const Expr& e, Accumulator& acc) {
    const NormOutcome a = norm(e, norm2Options(cfg));
    const NormOutcome c = norm2(e, norm2Options(cfg));
    if (!a.completed() || !c.completed()) {
      acc.fail(e, "fuel exhausted");
      return;
    }
    const std::pair<const char*, Expr> results[] = {{"norm", *a.result}, {"norm1", norm1(e)}, {"norm2", *c.result}};
    for (const auto& [algo, r] : results) {
      if (!isNormal(r) || testedIfCount(r) != 0)
        acc.fail(e, std::string(algo) + " result not normal: " + print(r));
    }
  });
}

CheckResult checkIsnPreservation(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return runSharded("isn-preservation", members.size(), cfg, [&](std::size_t i, Accumulator& acc) {
    const Expr& e = members[i];
    if (!isNormal(e)) return;
    ++acc.expressions;
    const NormOutcome c = norm2(e, norm2Options(cfg));
    if (!c.completed()) {
      acc.fail(e, "norm2 ran out of fuel");
    } else if (!isNormal(*c.result)) {
      acc.fail(e, "norm2 of a normal expression is not normal: " + print(*c.result));
    }
  });
}

CheckResult checkIdempotence(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("idempotence", members, cfg, [&](const Expr& e, Accumulator& acc) {
    const NormOutcome once = norm(e);
    const NormOutcome twice = norm(*once.result);
    if (!(*twice.result == *once.result))
      acc.fail(e, "norm(norm(e)) = " + print(*twice.result) + " but norm(e) = " + print(*once.result));
  });
}

CheckResult checkFoldLemma(const std::vector<Expr>& sub, const VerifySuiteConfig& cfg) {
  std::vector<Expr> normed;
  normed.reserve(sub.size());
  for (const auto& e : sub) normed.push_back(*norm(e).result);
  const std::size_t n = sub.size();
  return runSharded("fold-lemma", n, cfg, [&](std::size_t xi, Accumulator& acc) {
    const Expr& x = sub[xi];
    for (std::size_t yi = 0; yi < n; ++yi) {
      for (std::size_t zi = 0; zi < n; ++zi) {
        ++acc.expressions;
        const Expr lhs = *norm(Expr::ifNode(x, normed[yi], normed[zi])).result;
        const Expr rhs = *norm(Expr::ifNode(x, sub[yi], sub[zi])).result;
        if (!(lhs == rhs))
          acc.fail(Expr::ifNode(x, sub[yi], sub[zi]), "norm(If(x, norm y, norm z)) = " + print(lhs));
      }
    }
  });
}

CheckResult checkSemanticPreservation(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("semantic-preservation", members, cfg, [&](const Expr& e, Accumulator& acc) {
    const NormOutcome a = norm(e, norm2Options(cfg));
    const NormOutcome c = norm2(e, norm2Options(cfg));
    if (!a.completed() || !c.completed()) {
      acc.fail(e, "fuel exhausted");
      return;
    }
    const std::pair<const char*, Expr> results[] = {{"norm", *a.result}, {"norm1", norm1(e)}, {"norm2", *c.result}};
    for (const auto& [algo, r] : results)
      if (!semanticallyEqual(e, r)) acc.fail(e, std::string(algo) + " changes the meaning: " + print(r));
  });
}

CheckResult checkRelationSoundness(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("relation-soundness", members, cfg, [&](const Expr& e, Accumulator& acc) {
    NormOptions opts = norm2Options(cfg, true);
    for (const auto& edge : norm(e, opts).trace) {
      ++acc.edges;
      if (!precNorm(edge.callee, edge.caller))
        acc.fail(edge.caller, "norm edge " + std::string(ruleName(edge.rule)) + " to " +
                                  print(edge.callee) + " violates precNorm");
    }
    for (const auto& edge : norm2(e, opts).trace) {
      ++acc.edges;
      if (!precNorm2(edge.callee, edge.caller)) {
        acc.fail(edge.caller, "norm2 edge " + std::string(ruleName(edge.rule)) + " to " +
                                  print(edge.callee) + " violates precNorm2");
      } else if (edge.rule == RuleTag::IfIfOuter) {
        // Must be the existential clause with the inner results as v', w'.
        const bool existential = edge.callee.isIf() && edge.callee.test() == edge.caller.test().test() &&
                                 isNormal(edge.callee.thenBranch()) && isNormal(edge.callee.elseBranch());
        if (!existential)
          acc.fail(edge.caller, "IF_IF_OUTER edge to " + print(edge.callee) +
                                    " does not match If(u, v', w') with normal v', w'");
      }
    }
  });
}

CheckResult checkRelationAgreement(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  const std::unordered_set<Expr> inUniverse(members.begin(), members.end());
  return runSharded("relation-agreement", members.size(), cfg, [&](std::size_t yi, Accumulator& acc) {
    const Expr& y = members[yi];
    ++acc.expressions;
    const std::vector<Expr> preds = predsNorm(y);
    const std::unordered_set<Expr> predSet(preds.begin(), preds.end());
    for (const auto& p : preds) {
      ++acc.edges;
      if (!precNorm(p, y)) acc.fail(y, "predecessor " + print(p) + " rejected by precNorm");
    }
    for (const auto& x : members) {
      const bool related = precNorm(x, y);
      if (related != predSet.contains(x))
        acc.fail(y, "precNorm(" + print(x) + ", y) = " + (related ? "true" : "false") +
                        " disagrees with predsNorm");
    }
  });
}

CheckResult checkTraceCoherence(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("trace-coherence", members, cfg, [&](const Expr& e, Accumulator& acc) {
    NormOptions opts = norm2Options(cfg, true);
    std::unordered_map<Expr, std::unordered_set<Expr>> callees;
    for (const auto& edge : norm(e, opts).trace) callees[edge.caller].insert(edge.callee);
    for (const auto& [caller, seen] : callees) {
      ++acc.edges;
      const std::vector<Expr> preds = predsNorm(caller);
      const std::unordered_set<Expr> expected(preds.begin(), preds.end());
      if (seen != expected) acc.fail(caller, "traced callees differ from predsNorm");
    }
  });
}

CheckResult checkNormWitness(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  WitnessOptions opts;
  opts.parallelism = cfg.parallelism;
  opts.maxCounterexamples = cfg.maxCounterexamples;
  const WitnessReport r = verifyMeasureWitness(RelationKind::PrecNorm, members, {}, opts);
  CheckResult out;
  out.name = "m-witness";
  out.expressionsChecked = members.size();
  out.edgesChecked = r.edgesChecked;
  out.failures = r.counterexamples.size();
  for (const auto& c : r.counterexamples) out.counterexamples.push_back({c.y, "x=" + c.x + " " + c.detail});
  return out;
}

CheckResult checkNorm2Witness(const std::vector<Expr>& members, const std::vector<Expr>& pool,
                              const VerifySuiteConfig& cfg) {
  WitnessOptions opts;
  opts.parallelism = cfg.parallelism;
  opts.maxCounterexamples = cfg.maxCounterexamples;
  const WitnessReport r = verifyMeasureWitness(RelationKind::PrecNorm2, members, pool, opts);
  CheckResult out;
  out.name = "lex-witness";
  out.expressionsChecked = members.size();
  out.edgesChecked = r.edgesChecked;
  out.failures = r.counterexamples.size();
  out.observations["existentialPoolSize"] =
      static_cast<std::uint64_t>(std::count_if(pool.begin(), pool.end(), isNormal));
  for (const auto& c : r.counterexamples) out.counterexamples.push_back({c.y, "x=" + c.x + " " + c.detail});
  return out;
}

CheckResult checkTautologyOracle(const std::vector<Expr>& members, const VerifySuiteConfig& cfg) {
  return perExpression("tautology-oracle", members, cfg, [&](const Expr& e, Accumulator& acc) {
    const TautologyVerdict walk = checkTautology(e);
    const std::optional<Assignment> oracle = truthTableCounterexample(e);
    if (walk.tautology != !oracle.has_value()) {
      acc.fail(e, std::string("walk says ") + (walk.tautology ? "tautology" : "falsifiable") +
                      ", truth table disagrees");
      return;
    }
    if (walk.counterexample && eval(e, *walk.counterexample))
      acc.fail(e, "walk counterexample " + formatAssignment(*walk.counterexample) + " satisfies e");
  });
}

VerifyReport runVerify(const VerifySuiteConfig& cfg) {
  cfg.validate();
  VerifyReport report;
  report.config = cfg;
  const std::vector<Expr> members = verificationMembers(cfg);
  const ExprUniverse universe{cfg.maxIfNodes, cfg.alphabet};
  const std::vector<Expr> universeOnly = enumerate(universe);
  report.universeSize = universeOnly.size();

  for (Suite s : cfg.suites) {
    SuiteResult r{s, {}};
    switch (s) {
      case Suite::MeasureDecrease:
        r.checks.push_back(checkMeasureDecrease(members, cfg));
        r.checks.push_back(checkFuelBound(members, cfg));
        break;
      case Suite::Equivalence:
        r.checks.push_back(checkEquivalence(members, cfg));
        break;
      case Suite::Isn:
        r.checks.push_back(checkNormality(members, cfg));
        r.checks.push_back(checkIsnPreservation(members, cfg));
        break;
      case Suite::Idempotence:
        r.checks.push_back(checkIdempotence(members, cfg));
        break;
      case Suite::FoldLemma:
        r.checks.push_back(checkFoldLemma(
            enumerate(ExprUniverse{std::min(cfg.maxIfNodes, 2u), cfg.alphabet}), cfg));
        break;
      case Suite::Semantics:
        r.checks.push_back(checkSemanticPreservation(members, cfg));
        break;
      case Suite::RelationEdges:
        r.checks.push_back(checkRelationSoundness(members, cfg));
        r.checks.push_back(checkRelationAgreement(universeOnly, cfg));
        r.checks.push_back(checkTraceCoherence(members, cfg));
        break;
      case Suite::LexWitness: {
        r.checks.push_back(checkNormWitness(members, cfg));
        const std::vector<Expr> pool = enumerate(ExprUniverse{std::min(cfg.maxIfNodes, 1u), cfg.alphabet});
        r.checks.push_back(checkNorm2Witness(members, pool, cfg));
        break;
      }
      case Suite::TautOracle:
        r.checks.push_back(checkTautologyOracle(members, cfg));
        break;
    }
    report.suites.push_back(std::move(r));
  }
  return report;
}

}  // namespace condnorm
