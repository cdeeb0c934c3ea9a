#ifndef RELMONAD_CLI_COMMANDS_HPP
#define RELMONAD_CLI_COMMANDS_HPP

#include "relmonad/cli/report.hpp"

namespace relmonad::cli {

struct TargetInfo {
  std::string name;
  std::string kind;  // run | check | prove | vcgen
  std::string doc;
  std::string params;  // "name=default ..." summary
};

const std::vector<TargetInfo>& targets();

Report cmd_run(const RunManifest& m);
Report cmd_check(const RunManifest& m);
Report cmd_prove(const RunManifest& m);
Report cmd_vcgen(const RunManifest& m);
Report cmd_list(const RunManifest& m);

// Dispatch by subcommand name; throws UsageError for unknown commands.
Report dispatch(const std::string& cmd, const RunManifest& m);

}  // namespace relmonad::cli

#endif  // RELMONAD_CLI_COMMANDS_HPP
