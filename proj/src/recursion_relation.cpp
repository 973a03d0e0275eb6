#include "condnorm/recursion_relation.hpp"

#include <algorithm>
#include <unordered_map>
#include <optional>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "condnorm/measures.hpp"
#include "condnorm/normalize.hpp"
#include "condnorm/parallel.hpp"

namespace condnorm {

std::string_view relationName(RelationKind kind) {
  return kind == RelationKind::PrecNorm ? "PREC_NORM" : "PREC_NORM2";
}

std::vector<Expr> predsNorm(const Expr& y) {
  if (y.isAtom()) return {};
  const Expr& test = y.test();
  if (test.isAtom()) {
    if (y.thenBranch() == y.elseBranch()) return {y.thenBranch()};
    return {y.thenBranch(), y.elseBranch()};
  }
  const Expr& thenB = y.thenBranch();
  const Expr& elseB = y.elseBranch();
  return {Expr::ifNode(test.test(), Expr::ifNode(test.thenBranch(), thenB, elseB),
                       Expr::ifNode(test.elseBranch(), thenB, elseB))};
}

bool precNorm(const Expr& x, const Expr& y) {
  if (y.isAtom()) return false;
  const Expr& test = y.test();
  if (test.isAtom()) return x == y.thenBranch() || x == y.elseBranch();
  // x = If(u, If(v, y', z'), If(w, y', z')), compared piecewise without building it.
  if (x.isAtom() || !(x.test() == test.test())) return false;
  const Expr& xv = x.thenBranch();
  const Expr& xw = x.elseBranch();
  return xv.isIf() && xw.isIf() && xv.test() == test.thenBranch() && xw.test() == test.elseBranch() &&
         xv.thenBranch() == y.thenBranch() && xv.elseBranch() == y.elseBranch() &&
         xw.thenBranch() == y.thenBranch() && xw.elseBranch() == y.elseBranch();
}

bool precNorm2(const Expr& x, const Expr& y) {
  if (y.isAtom()) return false;
  const Expr& test = y.test();
  if (test.isAtom()) return x == y.thenBranch() || x == y.elseBranch();
  if (x.isAtom()) return false;
  // x = If(v, y', z') or If(w, y', z')
  if (x.thenBranch() == y.thenBranch() && x.elseBranch() == y.elseBranch() &&
      (x.test() == test.thenBranch() || x.test() == test.elseBranch()))
    return true;
  // x = If(u, v', w') with v', w' normal
  return x.test() == test.test() && isNormal(x.thenBranch()) && isNormal(x.elseBranch());
}

std::vector<Expr> predsNorm2(const Expr& y, const std::vector<Expr>& pool) {
  if (y.isAtom() || y.test().isAtom()) return predsNorm(y);
  const Expr& test = y.test();
  std::vector<Expr> out{Expr::ifNode(test.thenBranch(), y.thenBranch(), y.elseBranch()),
                        Expr::ifNode(test.elseBranch(), y.thenBranch(), y.elseBranch())};
  std::vector<const Expr*> normal;
  for (const auto& p : pool)
    if (isNormal(p)) normal.push_back(&p);
  for (const Expr* v : normal)
    for (const Expr* w : normal) out.push_back(Expr::ifNode(test.test(), *v, *w));
  // Distinct elements only, first occurrence kept.
  std::unordered_set<Expr> seen;
  std::vector<Expr> unique;
  for (auto& e : out)
    if (seen.insert(e).second) unique.push_back(std::move(e));
  return unique;
}

ChainReport longestChain(RelationKind kind, const Expr& start, std::uint64_t budget,
                         const std::vector<Expr>& pool) {
  ChainReport report{start, 0, false, false, 0, {}};
  if (kind == RelationKind::PrecNorm2)
    report.poolSize = static_cast<std::size_t>(std::count_if(pool.begin(), pool.end(), isNormal));

  struct Best {
    std::uint64_t length;
    std::optional<Expr> next;
  };
  std::unordered_map<Expr, Best> memo;
  std::unordered_set<Expr> onPath;

  struct Frame {
    Expr node;
    std::vector<Expr> preds;
    std::size_t i = 0;
    Best best{0, std::nullopt};
  };
  auto predecessors = [&](const Expr& y) {
    return kind == RelationKind::PrecNorm ? predsNorm(y) : predsNorm2(y, pool);
  };

  // Longest chain seen so far, kept in case the budget runs out.
  std::vector<Expr> bestChain{start};
  auto chainThrough = [&](const std::vector<Frame>& frames, const Expr& tail) {
    std::vector<Expr> chain;
    for (const auto& f : frames) chain.push_back(f.node);
    chain.push_back(tail);
    for (std::optional<Expr> cur = memo.at(tail).next; cur; cur = memo.at(*cur).next)
      chain.push_back(*cur);
    return chain;
  };

  std::uint64_t expanded = 1;
  std::vector<Frame> frames;
  frames.push_back({start, predecessors(start)});
  onPath.insert(start);
  while (!frames.empty()) {
    Frame& top = frames.back();
    if (top.i < top.preds.size()) {
      Expr p = top.preds[top.i++];
      if (onPath.contains(p)) {
        report.cycleDetected = true;
        continue;
      }
      if (auto it = memo.find(p); it != memo.end()) {
        if (it->second.length + 1 > top.best.length) top.best = {it->second.length + 1, p};
        continue;
      }
      if (expanded >= budget) {
        report.budgetHit = true;
        break;
      }
      ++expanded;
      onPath.insert(p);
      std::vector<Expr> preds = predecessors(p);
      frames.push_back({std::move(p), std::move(preds)});
      continue;
    }
    Frame done = std::move(frames.back());
    frames.pop_back();
    onPath.erase(done.node);
    memo[done.node] = done.best;
    if (frames.size() + done.best.length + 1 > bestChain.size()) {
      bestChain = chainThrough(frames, done.node);
    }
    if (!frames.empty() && done.best.length + 1 > frames.back().best.length)
      frames.back().best = {done.best.length + 1, done.node};
  }
  if (report.budgetHit && frames.size() > bestChain.size()) {
    bestChain.clear();
    for (const auto& f : frames) bestChain.push_back(f.node);
  }
  report.witnessChain = std::move(bestChain);
  report.longest = report.witnessChain.size() - 1;
  return report;
}

std::string WitnessReport::toJson(int indent) const {
  nlohmann::ordered_json j;
  j["kind"] = std::string(relationName(kind));
  j["edgesChecked"] = edgesChecked;
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& c : counterexamples) {
    nlohmann::ordered_json cj;
    cj["x"] = c.x;
    cj["y"] = c.y;
    j["counterexamples"].push_back(std::move(cj));
  }
  return j.dump(indent);
}

namespace {

struct ShardResult {
  std::uint64_t edges = 0;
  std::vector<WitnessCounterexample> bad;
};

void checkNormMember(const Expr& root, ShardResult& out) {
  // All predecessor pairs reachable from root; m strictly decreases along each.
  std::unordered_set<Expr> seen{root};
  std::vector<std::pair<Expr, Measure>> work{{root, shostakMeasure(root)}};
  while (!work.empty()) {
    auto [y, my] = std::move(work.back());
    work.pop_back();
    for (auto& x : predsNorm(y)) {
      ++out.edges;
      Measure mx = shostakMeasure(x);
      if (!(mx < my)) {
        out.bad.push_back({print(x), print(y), "m(x)=" + mx.str() + " m(y)=" + my.str()});
      }
      if (seen.insert(x).second) work.emplace_back(std::move(x), std::move(mx));
    }
  }
}

void checkNorm2Member(const Expr& root, const std::vector<Expr>& pool, ShardResult& out) {
  auto check = [&](const Expr& x, const Expr& y) {
    if (!precNorm2(x, y)) return;
    ++out.edges;
    const LexMeasure lx = lexNorm2Measure(x);
    const LexMeasure ly = lexNorm2Measure(y);
    if (!(lx < ly)) {
      out.bad.push_back({print(x), print(y),
                         "lex(x)=(" + std::to_string(lx.testedIfs) + "," + std::to_string(lx.sizeVal) +
                             ") lex(y)=(" + std::to_string(ly.testedIfs) + "," +
                             std::to_string(ly.sizeVal) + ")"});
    }
  };
  for (const auto& x : predsNorm2(root, pool)) check(x, root);
  NormOptions opts;
  opts.trace = true;
  const NormOutcome run = norm2(root, opts);
  for (const auto& edge : run.trace) check(edge.callee, edge.caller);
}

}  // namespace

WitnessReport verifyMeasureWitness(RelationKind kind, const std::vector<Expr>& members,
                                   const std::vector<Expr>& existentialPool,
                                   const WitnessOptions& opts) {
  std::vector<Expr> pool;
  for (const auto& p : existentialPool)
    if (isNormal(p)) pool.push_back(p);

  std::vector<ShardResult> shards(std::max(1u, opts.parallelism));
  forEachShard(members.size(), opts.parallelism, [&](std::size_t s, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (kind == RelationKind::PrecNorm) {
        checkNormMember(members[i], shards[s]);
      } else {
        checkNorm2Member(members[i], pool, shards[s]);
      }
    }
  });

  WitnessReport report{kind, 0, {}};
  for (auto& s : shards) {
    report.edgesChecked += s.edges;
    for (auto& c : s.bad) report.counterexamples.push_back(std::move(c));
  }
  std::sort(report.counterexamples.begin(), report.counterexamples.end(),
            [](const auto& a, const auto& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  report.counterexamples.erase(
      std::unique(report.counterexamples.begin(), report.counterexamples.end(),
                  [](const auto& a, const auto& b) { return a.x == b.x && a.y == b.y; }),
      report.counterexamples.end());
  if (report.counterexamples.size() > opts.maxCounterexamples)
    report.counterexamples.resize(opts.maxCounterexamples);
  return report;
}

WitnessReport verifyMeasureWitness(RelationKind kind, const ExprUniverse& universe,
                                   const WitnessOptions& opts) {
  const std::vector<Expr> members = enumerate(universe);
  std::vector<Expr> pool;
  if (kind == RelationKind::PrecNorm2) {
    ExprUniverse sub = universe;
    sub.maxIfNodes = std::min(universe.maxIfNodes, opts.existentialPoolMaxIfs);
    pool = enumerate(sub);
  }
  return verifyMeasureWitness(kind, members, pool, opts);
}

}  // namespace condnorm
