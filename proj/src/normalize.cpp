#include "condnorm/normalize.hpp"

#include <json.hpp>

#include "condnorm/measures.hpp"

namespace condnorm {

std::string_view ruleName(RuleTag rule) {
  switch (rule) {
    case RuleTag::At: return "AT";
    case RuleTag::IfAtLeft: return "IF_AT_LEFT";
    case RuleTag::IfAtRight: return "IF_AT_RIGHT";
    case RuleTag::IfIf: return "IF_IF";
    case RuleTag::IfIfInnerV: return "IF_IF_INNER_V";
    case RuleTag::IfIfInnerW: return "IF_IF_INNER_W";
    case RuleTag::IfIfOuter: return "IF_IF_OUTER";
  }
  return "?";
}

namespace {

enum class Algorithm { Norm, Norm2 };

// Runs the recursion equations of norm or norm2 literally, one frame per
// invocation. Each frame resumes at `stage` after a callee returns into `ret`.
class Evaluator {
 public:
  Evaluator(Algorithm algo, std::uint64_t fuel, bool trace)
      : algo_(algo), fuel_(fuel), tracing_(trace) {}

  NormOutcome run(const Expr& input) {
    std::optional<Expr> ret;
    if (call(input, nullptr, RuleTag::At)) {
      while (!frames_.empty()) {
        const std::size_t top = frames_.size() - 1;
        const Expr arg = frames_[top].arg;
        if (arg.isAtom()) {
          ret = arg;
          frames_.pop_back();
          continue;
        }
        const Expr& test = arg.test();
        const Expr& y = arg.thenBranch();
        const Expr& z = arg.elseBranch();
        const unsigned stage = frames_[top].stage++;
        bool ok = true;
        if (test.isAtom()) {
          if (stage == 0) {
            ok = call(y, &arg, RuleTag::IfAtLeft);
          } else if (stage == 1) {
            frames_[top].first = std::move(ret);
            ok = call(z, &arg, RuleTag::IfAtRight);
          } else {
            ret = Expr::ifNode(test, std::move(*frames_[top].first), std::move(*ret));
            frames_.pop_back();
          }
        } else if (algo_ == Algorithm::Norm) {
          if (stage == 0) {
            const Expr& u = test.test();
            ok = call(Expr::ifNode(u, Expr::ifNode(test.thenBranch(), y, z),
                                   Expr::ifNode(test.elseBranch(), y, z)),
                      &arg, RuleTag::IfIf);
          } else {
            frames_.pop_back();
          }
        } else {
          if (stage == 0) {
            ok = call(Expr::ifNode(test.thenBranch(), y, z), &arg, RuleTag::IfIfInnerV);
          } else if (stage == 1) {
            frames_[top].first = std::move(ret);
            ok = call(Expr::ifNode(test.elseBranch(), y, z), &arg, RuleTag::IfIfInnerW);
          } else if (stage == 2) {
            Expr outer = Expr::ifNode(test.test(), std::move(*frames_[top].first), std::move(*ret));
            ok = call(outer, &arg, RuleTag::IfIfOuter);
          } else {
            frames_.pop_back();
          }
        }
        if (!ok) break;
      }
    }
    NormOutcome out;
    if (!exhausted_) out.result = std::move(ret);
    out.callCount = calls_;
    out.maxDepth = maxDepth_;
    out.trace = std::move(trace_);
    return out;
  }

 private:
  struct Frame {
    Expr arg;
    unsigned stage = 0;
    std::optional<Expr> first;
  };

  bool call(const Expr& arg, const Expr* caller, RuleTag rule) {
    if (calls_ == fuel_) {
      exhausted_ = true;
      return false;
    }
    ++calls_;
    const std::uint64_t depth = frames_.size() + 1;
    maxDepth_ = std::max(maxDepth_, depth);
    if (tracing_ && caller != nullptr)
      trace_.push_back(CallEdge{*caller, arg, rule, depth, trace_.size()});
    frames_.push_back(Frame{arg, 0, std::nullopt});
    return true;
  }

  Algorithm algo_;
  std::uint64_t fuel_;
  bool tracing_;
  bool exhausted_ = false;
  std::uint64_t calls_ = 0;
  std::uint64_t maxDepth_ = 0;
  std::vector<Frame> frames_;
  std::vector<CallEdge> trace_;
};

}  // namespace

NormOutcome norm(const Expr& e, const NormOptions& opts) {
  const std::uint64_t fuel = opts.fuel ? *opts.fuel : saturateToU64(shostakMeasure(e));
  return Evaluator(Algorithm::Norm, fuel, opts.trace).run(e);
}

NormOutcome norm2(const Expr& e, const NormOptions& opts) {
  return Evaluator(Algorithm::Norm2, opts.fuel.value_or(kDefaultNorm2Fuel), opts.trace).run(e);
}

Expr normif(const Expr& x, const Expr& y, const Expr& z) {
  struct Frame {
    Expr x, y, z;
    unsigned stage = 0;
    std::optional<Expr> inner{};
  };
  std::vector<Frame> frames{{x, y, z}};
  std::optional<Expr> ret;
  while (!frames.empty()) {
    const std::size_t top = frames.size() - 1;
    if (frames[top].x.isAtom()) {
      ret = Expr::ifNode(frames[top].x, frames[top].y, frames[top].z);
      frames.pop_back();
      continue;
    }
    const Expr u = frames[top].x.test();
    const Expr v = frames[top].x.thenBranch();
    const Expr w = frames[top].x.elseBranch();
    switch (frames[top].stage++) {
      case 0:
        frames.push_back({v, frames[top].y, frames[top].z});
        break;
      case 1:
        frames[top].inner = std::move(ret);
        frames.push_back({w, frames[top].y, frames[top].z});
        break;
      default:
        // Tail position: normif(u, normif(v, y, z), normif(w, y, z)).
        frames[top] = Frame{u, std::move(*frames[top].inner), std::move(*ret)};
        break;
    }
  }
  return std::move(*ret);
}

Expr norm1(const Expr& e) {
  struct Frame {
    const Expr* e;
    unsigned stage = 0;
    std::optional<Expr> normThen{};
  };
  std::vector<Frame> frames{{&e}};
  std::optional<Expr> ret;
  while (!frames.empty()) {
    const std::size_t top = frames.size() - 1;
    const Expr* cur = frames[top].e;
    if (cur->isAtom()) {
      ret = *cur;
      frames.pop_back();
      continue;
    }
    switch (frames[top].stage++) {
      case 0:
        frames.push_back({&cur->thenBranch()});
        break;
      case 1:
        frames[top].normThen = std::move(ret);
        frames.push_back({&cur->elseBranch()});
        break;
      default:
        ret = normif(cur->test(), *frames[top].normThen, *ret);
        frames.pop_back();
        break;
    }
  }
  return std::move(*ret);
}

bool isNormal(const Expr& e) {
  std::vector<const Expr*> work{&e};
  while (!work.empty()) {
    const Expr* x = work.back();
    work.pop_back();
    if (x->isAtom()) continue;
    if (x->test().isIf()) return false;
    work.push_back(&x->thenBranch());
    work.push_back(&x->elseBranch());
  }
  return true;
}

std::string traceToJson(const std::vector<CallEdge>& trace, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& edge : trace) {
    nlohmann::ordered_json obj;
    obj["seq"] = edge.seq;
    obj["depth"] = edge.depth;
    obj["rule"] = std::string(ruleName(edge.rule));
    obj["caller"] = print(edge.caller);
    obj["callee"] = print(edge.callee);
    arr.push_back(std::move(obj));
  }
  return arr.dump(indent);
}

}  // namespace condnorm
