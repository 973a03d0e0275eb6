// condnorm: normalize, measure, enumerate and verify conditional expressions.
//
// Exit codes: 0 success, 1 usage or parse error, 2 fuel exhausted,
// 3 counterexample found.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "condnorm/expr.hpp"
#include "condnorm/measures.hpp"
#include "condnorm/normalize.hpp"
#include "condnorm/semantics.hpp"
#include "condnorm/suites.hpp"

namespace {

using namespace condnorm;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFuel = 2;
constexpr int kExitCounterexample = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool quiet = false;
  std::string jsonPath;
};

struct ExprSource {
  std::string inline_;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("expr", inline_, "Expression, or - to read stdin");
    cmd->add_option("--file", file, "Read the expression from a file (- for stdin)");
  }

  Expr load() const {
    std::string text;
    if (!file.empty()) {
      text = slurp(file);
    } else if (inline_ == "-") {
      text = slurp("-");
    } else if (!inline_.empty()) {
      text = inline_;
    } else {
      throw UsageError("no expression given");
    }
    return parse(text);
  }

  static std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
  }
};

void writeFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << contents << '\n';
}

void writeJson(const Globals& g, const ordered_json& j) {
  if (!g.jsonPath.empty()) writeFile(g.jsonPath, j.dump(2));
}

std::vector<Symbol> alphabetFrom(const std::string& text) {
  try {
    return parseAlphabet(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad alphabet: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

struct NormCmd {
  ExprSource src;
  std::string algo = "norm";
  std::string tracePath;
  bool stats = false;
  std::optional<std::uint64_t> fuel;

  int run(const Globals& g) const {
    const Expr e = src.load();
    std::optional<Expr> result;
    std::optional<NormOutcome> outcome;
    if (algo == "norm1") {
      result = norm1(e);
    } else {
      NormOptions opts;
      opts.fuel = fuel;
      opts.trace = !tracePath.empty();
      outcome = algo == "norm" ? norm(e, opts) : norm2(e, opts);
      result = outcome->result;
      if (!tracePath.empty()) writeFile(tracePath, traceToJson(outcome->trace, 2));
    }

    ordered_json j;
    j["algo"] = algo;
    j["input"] = print(e);
    j["status"] = result ? "completed" : "fuel-exhausted";
    j["result"] = result ? ordered_json(print(*result)) : ordered_json(nullptr);
    if (outcome) {
      j["callCount"] = outcome->callCount;
      j["maxDepth"] = outcome->maxDepth;
    }
    j["mInput"] = shostakMeasure(e).str();
    if (result) j["mResult"] = shostakMeasure(*result).str();
    writeJson(g, j);

    if (!g.quiet) {
      if (result) {
        std::cout << print(*result) << '\n';
      } else {
        std::cerr << "fuel exhausted after " << outcome->callCount << " calls\n";
      }
      if (stats) {
        if (outcome) {
          std::cout << "callCount=" << outcome->callCount << '\n';
          std::cout << "maxDepth=" << outcome->maxDepth << '\n';
        }
        std::cout << "m(input)=" << shostakMeasure(e) << '\n';
        if (result) std::cout << "m(result)=" << shostakMeasure(*result) << '\n';
        std::cout << "testedIfs(input)=" << testedIfCount(e) << '\n';
      }
    }
    return result ? kExitOk : kExitFuel;
  }
};

struct MeasureCmd {
  ExprSource src;
  std::string which = "m";

  int run(const Globals& g) const {
    const Expr e = src.load();
    std::string value;
    if (which == "m") {
      value = shostakMeasure(e).str();
    } else if (which == "tested-ifs") {
      value = std::to_string(testedIfCount(e));
    } else if (which == "if-depth") {
      value = std::to_string(ifDepth(e));
    } else if (which == "size") {
      value = std::to_string(size(e));
    } else {
      const LexMeasure lm = lexNorm2Measure(e);
      value = "(" + std::to_string(lm.testedIfs) + "," + std::to_string(lm.sizeVal) + ")";
    }
    writeJson(g, ordered_json{{"expr", print(e)}, {"which", which}, {"value", value}});
    if (!g.quiet) std::cout << value << '\n';
    return kExitOk;
  }
};

struct EnumCmd {
  unsigned maxIfs = 0;
  std::string alphabet = "a";
  bool count = false;

  int run(const Globals& g) const {
    const ExprUniverse u{maxIfs, alphabetFrom(alphabet)};
    try {
      u.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (maxIfs > 4) throw UsageError("max-ifs above 4 is not supported");
    const std::vector<Expr> all = enumerate(u);
    ordered_json j;
    j["count"] = all.size();
    if (!count) {
      j["expressions"] = ordered_json::array();
      for (const auto& e : all) j["expressions"].push_back(print(e));
    }
    writeJson(g, j);
    if (!g.quiet) {
      if (count) {
        std::cout << all.size() << '\n';
      } else {
        for (const auto& e : all) std::cout << print(e) << '\n';
      }
    }
    return kExitOk;
  }
};

struct TautCmd {
  ExprSource src;

  int run(const Globals& g) const {
    const Expr e = src.load();
    const TautologyVerdict v = checkTautology(e);
    const std::vector<Symbol> order = atomsOf(e);
    ordered_json j;
    j["expr"] = print(e);
    j["tautology"] = v.tautology;
    j["counterexample"] = v.counterexample ? ordered_json(formatAssignment(*v.counterexample, order))
                                           : ordered_json(nullptr);
    writeJson(g, j);
    if (!g.quiet) {
      if (v.tautology) {
        std::cout << "tautology\n";
      } else {
        std::cout << "falsifiable " << formatAssignment(*v.counterexample, order) << '\n';
      }
    }
    return kExitOk;
  }
};

struct VerifyCmd {
  unsigned maxIfs = 3;
  std::string alphabet = "a,b";
  std::vector<std::string> suites{"all"};
  std::optional<std::uint64_t> fuel;
  unsigned parallelism = 1;
  std::uint64_t random = 0;
  unsigned randomDepth = 6;
  std::size_t randomMaxSize = 4096;
  std::uint64_t seed = 1985;
  unsigned cap = 4;

  VerifySuiteConfig config() const {
    VerifySuiteConfig cfg;
    cfg.maxIfNodes = maxIfs;
    cfg.alphabet = alphabetFrom(alphabet);
    cfg.suites.clear();
    for (const auto& name : suites) {
      if (name == "all") {
        cfg.suites = allSuites();
        break;
      }
      auto s = suiteFromName(name);
      if (!s) throw UsageError("unknown suite '" + name + "'");
      cfg.suites.push_back(*s);
    }
    cfg.fuelOverride = fuel;
    cfg.parallelism = parallelism;
    cfg.randomSamples = random;
    cfg.randomDepth = randomDepth;
    cfg.randomMaxNormalSize = randomMaxSize;
    cfg.seed = seed;
    cfg.maxIfNodesCap = cap;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }

  int run(const Globals& g) const {
    const VerifyReport report = runVerify(config());
    if (!g.jsonPath.empty()) writeFile(g.jsonPath, report.toJson(2));
    for (const auto& s : report.suites) {
      if (g.quiet && s.passed()) continue;
      std::cout << (s.passed() ? "PASS " : "FAIL ") << suiteName(s.suite)
                << " expressions=" << s.expressionsChecked() << " edges=" << s.edgesChecked() << '\n';
      for (const auto& c : s.checks) {
        if (g.quiet && c.passed()) continue;
        std::cout << "  " << (c.passed() ? "pass " : "FAIL ") << c.name
                  << " expressions=" << c.expressionsChecked << " edges=" << c.edgesChecked;
        for (const auto& [k, v] : c.observations) std::cout << ' ' << k << '=' << v;
        std::cout << '\n';
        for (const auto& cex : c.counterexamples)
          std::cout << "    counterexample " << cex.expr << ": " << cex.detail << '\n';
      }
    }
    return report.passed() ? kExitOk : kExitCounterexample;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalize and verify conditional expressions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--quiet", g.quiet, "Suppress normal output");
  app.add_option("--json", g.jsonPath, "Write a machine-readable result to FILE");

  NormCmd normCmd;
  auto* normApp = app.add_subcommand("norm", "Normalize an expression");
  normCmd.src.attach(normApp);
  normApp->add_option("--algo", normCmd.algo, "norm | norm1 | norm2")
      ->check(CLI::IsMember({"norm", "norm1", "norm2"}));
  normApp->add_option("--trace", normCmd.tracePath, "Write the call trace as JSON");
  normApp->add_flag("--stats", normCmd.stats, "Print call counts and measures");
  normApp->add_option("--fuel", normCmd.fuel, "Invocation budget")->check(CLI::PositiveNumber);

  MeasureCmd measureCmd;
  auto* measureApp = app.add_subcommand("measure", "Evaluate a measure function");
  measureCmd.src.attach(measureApp);
  measureApp->add_option("--which", measureCmd.which, "m | tested-ifs | if-depth | size | lex")
      ->check(CLI::IsMember({"m", "tested-ifs", "if-depth", "size", "lex"}));

  VerifyCmd verifyCmd;
  auto* verifyApp = app.add_subcommand("verify", "Run verification suites over an expression universe");
  verifyApp->add_option("--max-ifs", verifyCmd.maxIfs, "Largest If-node count in the universe");
  verifyApp->add_option("--alphabet", verifyCmd.alphabet, "Comma-separated atom names");
  verifyApp->add_option("--suite", verifyCmd.suites, "Suite name or `all` (repeatable)")->delimiter(',');
  verifyApp->add_option("--fuel", verifyCmd.fuel, "Fuel override for norm2 and traced norm runs")
      ->check(CLI::PositiveNumber);
  verifyApp->add_option("--parallelism", verifyCmd.parallelism, "Worker threads")->check(CLI::PositiveNumber);
  verifyApp->add_option("--random", verifyCmd.random, "Extra random expressions");
  verifyApp->add_option("--random-depth", verifyCmd.randomDepth, "Depth bound for random expressions");
  verifyApp->add_option("--random-max-size", verifyCmd.randomMaxSize,
                        "Skip random expressions whose normal form exceeds this many nodes");
  verifyApp->add_option("--seed", verifyCmd.seed, "Seed of the first random expression");
  verifyApp->add_option("--cap", verifyCmd.cap, "Hard cap on --max-ifs");

  EnumCmd enumCmd;
  auto* enumApp = app.add_subcommand("enum", "List an expression universe");
  enumApp->add_option("--max-ifs", enumCmd.maxIfs, "Largest If-node count")->required();
  enumApp->add_option("--alphabet", enumCmd.alphabet, "Comma-separated atom names");
  enumApp->add_flag("--count", enumCmd.count, "Print only the number of expressions");

  TautCmd tautCmd;
  auto* tautApp = app.add_subcommand("taut", "Decide whether an expression is a tautology");
  tautCmd.src.attach(tautApp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*normApp) return normCmd.run(g);
    if (*measureApp) return measureCmd.run(g);
    if (*verifyApp) return verifyCmd.run(g);
    if (*enumApp) return enumCmd.run(g);
    if (*tautApp) return tautCmd.run(g);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
