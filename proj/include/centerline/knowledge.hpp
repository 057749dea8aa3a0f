#pragma once

// Concept knowledge base: an isa-hierarchy for nominal anaphora and labeled
// bridging relations (part-of, attribute-of, ...) for textual ellipsis.
//
// File format, one fact per line:
//
//   concept(DELL-316LT)
//   isa(DELL-316LT, COMPUTER)
//   bridge(ACCU, part-of, DELL-316LT)
//
// `#` starts a comment; blank lines are ignored. Facts may appear in any
// order, but every edge endpoint must be declared somewhere in the file.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace centerline {

class KnowledgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IsaEdge {
  std::string child;
  std::string parent;
  friend auto operator<=>(const IsaEdge&, const IsaEdge&) = default;
};

struct BridgingEdge {
  std::string source;
  std::string label;
  std::string target;
  friend auto operator<=>(const BridgingEdge&, const BridgingEdge&) = default;
};

class KnowledgeBase {
 public:
  void add_concept(const std::string& id) { concepts_.insert(id); }

  void add_isa(const std::string& child, const std::string& parent) {
    require_declared(child);
    require_declared(parent);
    if (child == parent || reaches(parent, child)) {
      throw KnowledgeError("isa cycle through " + child + " and " + parent);
    }
    if (isa_.insert({child, parent}).second) parents_[child].push_back(parent);
  }

  void add_bridge(const std::string& source, const std::string& label, const std::string& target) {
    require_declared(source);
    require_declared(target);
    if (label.empty()) throw KnowledgeError("bridging edge without label");
    bridges_.insert({source, label, target});
  }

  bool has_concept(const std::string& id) const { return concepts_.count(id) != 0; }

  void require_declared(const std::string& id) const {
    if (!has_concept(id)) throw KnowledgeError("unknown concept " + id);
  }

  const std::set<std::string>& concepts() const { return concepts_; }
  const std::set<IsaEdge>& isa_edges() const { return isa_; }
  const std::set<BridgingEdge>& bridging_edges() const { return bridges_; }
  std::size_t edge_count() const { return isa_.size() + bridges_.size(); }

  // Reflexive-transitive reachability along isa edges.
  bool reaches(const std::string& from, const std::string& to) const {
    if (from == to) return true;
    std::vector<std::string> stack{from};
    std::set<std::string> visited{from};
    while (!stack.empty()) {
      std::string cur = std::move(stack.back());
      stack.pop_back();
      auto it = parents_.find(cur);
      if (it == parents_.end()) continue;
      for (const auto& p : it->second) {
        if (p == to) return true;
        if (visited.insert(p).second) stack.push_back(p);
      }
    }
    return false;
  }

  // Label of the direct bridging edge source -> target. With several labels on
  // the same pair, the lexicographically smallest wins.
  std::optional<std::string> direct_bridge(const std::string& source,
                                           const std::string& target) const {
    for (auto it = bridges_.lower_bound({source, "", ""});
         it != bridges_.end() && it->source == source; ++it) {
      if (it->target == target) return it->label;
    }
    return std::nullopt;
  }

  // Intermediate concept of a two-edge bridging path source -> mid -> target;
  // the smallest mid when several exist.
  std::optional<std::string> bridge_midpoint(const std::string& source,
                                             const std::string& target) const {
    std::optional<std::string> best;
    for (auto it = bridges_.lower_bound({source, "", ""});
         it != bridges_.end() && it->source == source; ++it) {
      const std::string& mid = it->target;
      if (mid == target || mid == source) continue;
      if (direct_bridge(mid, target) && (!best || mid < *best)) best = mid;
    }
    return best;
  }

 private:
  std::set<std::string> concepts_;
  std::set<IsaEdge> isa_;
  std::set<BridgingEdge> bridges_;
  std::map<std::string, std::vector<std::string>> parents_;
};

// True iff `general` is reachable from `specific` via zero or more isa edges.
inline bool is_generalization_of(const KnowledgeBase& kb, const std::string& general,
                                 const std::string& specific) {
  kb.require_declared(general);
  kb.require_declared(specific);
  return kb.reaches(specific, general);
}

// Direct bridging label if one exists, else "via:<mid>" for a two-step path,
// else nothing.
inline std::optional<std::string> bridging_relation(const KnowledgeBase& kb,
                                                    const std::string& source,
                                                    const std::string& target) {
  kb.require_declared(source);
  kb.require_declared(target);
  if (auto label = kb.direct_bridge(source, target)) return label;
  if (auto mid = kb.bridge_midpoint(source, target)) return "via:" + *mid;
  return std::nullopt;
}

inline KnowledgeBase parse_kb(std::string_view content) {
  struct Fact {
    std::string kind;
    std::vector<std::string> args;
    std::size_t line;
  };
  static const std::regex fact_re(R"(^\s*(concept|isa|bridge)\s*\((.*)\)\s*$)");

  auto trim = [](std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
  };

  std::vector<Fact> facts;
  std::istringstream in{std::string(content)};
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line = trim(line);
    if (line.empty()) continue;
    std::smatch m;
    if (!std::regex_match(line, m, fact_re)) {
      throw KnowledgeError("line " + std::to_string(lineno) + ": malformed fact '" + line + "'");
    }
    Fact f{m[1].str(), {}, lineno};
    std::istringstream args(m[2].str());
    for (std::string arg; std::getline(args, arg, ',');) f.args.push_back(trim(arg));
    std::size_t expected = f.kind == "concept" ? 1 : f.kind == "isa" ? 2 : 3;
    bool empty_arg = std::any_of(f.args.begin(), f.args.end(), [](auto& a) { return a.empty(); });
    if (f.args.size() != expected || empty_arg) {
      throw KnowledgeError("line " + std::to_string(lineno) + ": " + f.kind + " takes " +
                           std::to_string(expected) + " argument(s)");
    }
    facts.push_back(std::move(f));
  }

  KnowledgeBase kb;
  for (const auto& f : facts) {
    if (f.kind == "concept") kb.add_concept(f.args[0]);
  }
  for (const auto& f : facts) {
    try {
      if (f.kind == "isa") kb.add_isa(f.args[0], f.args[1]);
      if (f.kind == "bridge") kb.add_bridge(f.args[0], f.args[1], f.args[2]);
    } catch (const KnowledgeError& e) {
      throw KnowledgeError("line " + std::to_string(f.line) + ": " + e.what());
    }
  }
  return kb;
}

}  // namespace centerline
