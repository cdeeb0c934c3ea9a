#ifndef RELMONAD_CLI_REPORT_HPP
#define RELMONAD_CLI_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relmonad/eval.hpp"
#include "relmonad/hoare.hpp"

namespace relmonad::cli {

// Evaluation request: a named target plus parameters and bounds. Parsed
// from command-line flags or a JSON manifest file.
struct RunManifest {
  std::string target;
  std::map<std::string, std::string> params;
  std::int64_t fuel = kDefaultFuel;
  std::uint64_t state_cap = kDefaultStateCap;
  std::string format = "text";  // text | json
  std::string out_path;         // empty: stdout
  bool discharge = false;       // vcgen: also discharge by enumeration
  bool serial = false;          // force the serial reference path

  Exec exec() const { return serial ? Exec::serial() : Exec::par(); }
  EvalCtx make_ctx() const {
    EvalCtx ctx;
    ctx.with_fuel(fuel).with_state_cap(state_cap);
    return ctx;
  }
};

struct ReportLeaf {
  std::string label;
  std::string group;
  Verdict verdict = Verdict::Holds;
  std::optional<std::string> witness;
};

// Machine-readable result with stable field ordering; wall_ms is excluded
// from golden comparisons.
struct Report {
  std::string target;
  Verdict verdict = Verdict::Holds;
  std::vector<ReportLeaf> leaves;
  std::uint64_t stat_states = 0;
  std::uint64_t stat_iterations = 0;
  double wall_ms = 0.0;

  void add(std::string group, std::string label, Verdict v,
           const std::optional<Witness>& w = std::nullopt,
           const std::string& note = "");
  void absorb_worst(Verdict v);
  void take_stats(const EvalStats& stats);

  // Exit status: 0 all holds, 1 counterexample, 2 inconclusive.
  int exit_code() const;
  std::string to_text() const;
  std::string to_json() const;  // serialized, 2-space indent
  std::string render(const std::string& format) const;
};

}  // namespace relmonad::cli

#endif  // RELMONAD_CLI_REPORT_HPP
