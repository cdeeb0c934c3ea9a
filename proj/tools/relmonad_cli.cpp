#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "relmonad/cli/commands.hpp"

using relmonad::cli::Report;
using relmonad::cli::RunManifest;

namespace {

std::int64_t default_fuel_from_env() {
  if (const char* s = std::getenv("RELMONAD_DEFAULT_FUEL")) {
    try {
      return std::stoll(s);
    } catch (const std::exception&) {
      throw relmonad::UsageError("RELMONAD_DEFAULT_FUEL is not an integer");
    }
  }
  return relmonad::kDefaultFuel;
}

void load_manifest_file(const std::string& path, RunManifest& m) {
  std::ifstream in(path);
  if (!in) throw relmonad::UsageError("cannot open manifest " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw relmonad::UsageError("manifest parse error: " + std::string(e.what()));
  }
  if (j.contains("target")) m.target = j["target"].get<std::string>();
  if (j.contains("params"))
    for (auto& [k, v] : j["params"].items())
      m.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
  if (j.contains("fuel")) m.fuel = j["fuel"].get<std::int64_t>();
  if (j.contains("state_cap")) m.state_cap = j["state_cap"].get<std::uint64_t>();
  if (j.contains("format")) m.format = j["format"].get<std::string>();
  if (j.contains("out")) m.out_path = j["out"].get<std::string>();
  if (j.contains("discharge")) m.discharge = j["discharge"].get<bool>();
  if (j.contains("serial")) m.serial = j["serial"].get<bool>();
}

int emit(const Report& rep, const RunManifest& m) {
  const std::string text = rep.render(m.format);
  if (m.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(m.out_path);
    if (!out) throw relmonad::UsageError("cannot write " + m.out_path);
    out << text;
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relmonad: relational-semantics runner, Hoare checker, proof "
               "engine and VC generator"};
  app.require_subcommand(1);

  RunManifest m;
  m.fuel = -1;  // sentinel: resolve from env after parsing
  std::string manifest_path;
  std::vector<std::string> params;

  // --target may also come from a manifest file; presence is checked
  // after parsing.
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--target", m.target, "target name (see `list`)");
    sub->add_option("--param", params, "parameter k=v (repeatable)");
    sub->add_option("--fuel", m.fuel, "fixpoint iteration bound");
    sub->add_option("--state-cap", m.state_cap, "state space cap");
    sub->add_option("--format", m.format, "text | json");
    sub->add_option("--out", m.out_path, "write the report to a file");
    sub->add_option("--manifest", manifest_path, "JSON manifest file");
    sub->add_flag("--serial", m.serial, "force the serial reference path");
  };

  CLI::App* run = app.add_subcommand("run", "evaluate a program target");
  add_common(run);
  CLI::App* check = app.add_subcommand("check", "check a registered triple");
  add_common(check);
  CLI::App* prove =
      app.add_subcommand("prove", "run a proof script (kmp, dfs, rules)");
  add_common(prove);
  CLI::App* vcgen = app.add_subcommand("vcgen", "emit verification conditions");
  add_common(vcgen);
  vcgen->add_flag("--discharge", m.discharge,
                  "also discharge each goal by enumeration");
  CLI::App* list = app.add_subcommand("list", "list available targets");
  add_common(list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (!manifest_path.empty()) load_manifest_file(manifest_path, m);
    for (const auto& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw relmonad::UsageError("--param expects k=v, got " + kv);
      m.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (m.fuel < 0) m.fuel = default_fuel_from_env();

    std::string cmd;
    for (auto* sub : {run, check, prove, vcgen, list})
      if (sub->parsed()) cmd = sub->get_name();
    if (cmd != "list" && m.target.empty())
      throw relmonad::UsageError("--target (or --manifest) is required");

    return emit(relmonad::cli::dispatch(cmd, m), m);
  } catch (const relmonad::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const relmonad::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
