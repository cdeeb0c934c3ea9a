#include "relmonad/cli/report.hpp"

#include <sstream>

#include "json.hpp"

namespace relmonad::cli {

void Report::add(std::string group, std::string label, Verdict v,
                 const std::optional<Witness>& w, const std::string& note) {
  ReportLeaf leaf;
  leaf.group = std::move(group);
  leaf.label = std::move(label);
  leaf.verdict = v;
  if (w) {
    leaf.witness = w->str();
    if (!note.empty()) *leaf.witness += " (" + note + ")";
  } else if (!note.empty() && v != Verdict::Holds) {
    leaf.witness = note;
  }
  absorb_worst(v);
  leaves.push_back(std::move(leaf));
}

void Report::absorb_worst(Verdict v) {
  if (v == Verdict::Counterexample)
    verdict = Verdict::Counterexample;
  else if (v == Verdict::Inconclusive && verdict == Verdict::Holds)
    verdict = Verdict::Inconclusive;
}

void Report::take_stats(const EvalStats& stats) {
  stat_states += stats.states_visited.load();
  stat_iterations += stats.fix_rounds.load();
}

int Report::exit_code() const {
  switch (verdict) {
    case Verdict::Holds:
      return 0;
    case Verdict::Counterexample:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 2;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "target: " << target << "\n";
  os << "verdict: " << verdict_name(verdict) << "\n";
  std::string group;
  for (const auto& l : leaves) {
    if (l.group != group) {
      group = l.group;
      os << "[" << group << "]\n";
    }
    os << "  " << verdict_name(l.verdict) << "  " << l.label;
    if (l.witness) os << "\n          witness: " << *l.witness;
    os << "\n";
  }
  os << "stats: states=" << stat_states << " iterations=" << stat_iterations
     << "\n";
  os << "wall_ms: " << wall_ms << "\n";
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["target"] = target;
  j["verdict"] = verdict_name(verdict);
  j["leaves"] = nlohmann::ordered_json::array();
  for (const auto& l : leaves) {
    nlohmann::ordered_json jl;
    jl["label"] = l.label;
    jl["group"] = l.group;
    jl["verdict"] = verdict_name(l.verdict);
    if (l.witness) jl["witness"] = *l.witness;
    j["leaves"].push_back(std::move(jl));
  }
  j["stats"] = {{"states", stat_states}, {"iterations", stat_iterations}};
  j["wall_ms"] = wall_ms;
  return j.dump(2);
}

std::string Report::render(const std::string& format) const {
  return format == "json" ? to_json() + "\n" : to_text();
}

}  // namespace relmonad::cli
