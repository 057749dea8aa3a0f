#pragma once

// Corpus evaluation: runs every (discourse, strategy) pair and aggregates
// transition counts, transition-pair costs and resolver outcomes per corpus
// section, with a total row across sections.

#include <algorithm>
#include <array>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "centerline/centering.hpp"

namespace centerline {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class CostRule { Definitional, Table };

template <>
struct EnumNames<CostRule> {
  static constexpr std::array<std::pair<CostRule, std::string_view>, 2> table{{
      {CostRule::Definitional, "definitional"},
      {CostRule::Table, "table"},
  }};
};

enum class ReportFormat { Text, Structured, Csv };

template <>
struct EnumNames<ReportFormat> {
  static constexpr std::array<std::pair<ReportFormat, std::string_view>, 3> table{{
      {ReportFormat::Text, "text"},
      {ReportFormat::Structured, "json-like"},
      {ReportFormat::Csv, "csv"},
  }};
};

inline constexpr std::array<TransitionType, 5> kAllTransitions{
    TransitionType::Continue, TransitionType::Retain, TransitionType::SmoothShift,
    TransitionType::RoughShift, TransitionType::None};

inline constexpr std::array<UnsupportedCategory, 5> kAllUnsupported{
    UnsupportedCategory::PrepositionalAnaphor, UnsupportedCategory::PluralAnaphor,
    UnsupportedCategory::SetMemberAnaphor, UnsupportedCategory::SentenceAnaphor,
    UnsupportedCategory::GlobalFocusAnaphor};

// Transitions of every utterance with a defined Cb, discourse-initial ones
// included (they count as CONTINUE); `initial` says how many of those there
// are. `errors` counts every resolver decision that is not correct.
struct TransitionCounts {
  std::array<std::size_t, 5> by_type{};
  std::size_t initial = 0;
  std::size_t errors = 0;
  std::size_t specific_errors = 0;

  std::size_t& operator[](TransitionType t) { return by_type[static_cast<std::size_t>(t)]; }
  std::size_t operator[](TransitionType t) const { return by_type[static_cast<std::size_t>(t)]; }
  std::size_t none() const { return (*this)[TransitionType::None]; }

  TransitionCounts& operator+=(const TransitionCounts& o) {
    for (std::size_t i = 0; i < by_type.size(); ++i) by_type[i] += o.by_type[i];
    initial += o.initial;
    errors += o.errors;
    specific_errors += o.specific_errors;
    return *this;
  }
  friend bool operator==(const TransitionCounts&, const TransitionCounts&) = default;
};

// Over non-initial utterances, under the selected cost rule.
struct CostCounts {
  std::size_t cheap = 0;
  std::size_t expensive = 0;
  std::size_t undefined = 0;
  std::size_t disagreements = 0;  // definitional and table rule differ

  CostCounts& operator+=(const CostCounts& o) {
    cheap += o.cheap;
    expensive += o.expensive;
    undefined += o.undefined;
    disagreements += o.disagreements;
    return *this;
  }
  friend bool operator==(const CostCounts&, const CostCounts&) = default;
};

struct OutcomeCounts {
  std::array<std::size_t, 5> by_outcome{};
  std::map<UnsupportedCategory, std::size_t> unsupported;

  std::size_t& operator[](Outcome o) { return by_outcome[static_cast<std::size_t>(o)]; }
  std::size_t operator[](Outcome o) const { return by_outcome[static_cast<std::size_t>(o)]; }

  OutcomeCounts& operator+=(const OutcomeCounts& o) {
    for (std::size_t i = 0; i < by_outcome.size(); ++i) by_outcome[i] += o.by_outcome[i];
    for (const auto& [k, v] : o.unsupported) unsupported[k] += v;
    return *this;
  }
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

struct StrategyResult {
  std::size_t discourses = 0;
  std::size_t utterances = 0;
  TransitionCounts transitions;
  CostCounts costs;
  OutcomeCounts outcomes;

  StrategyResult& operator+=(const StrategyResult& o) {
    discourses += o.discourses;
    utterances += o.utterances;
    transitions += o.transitions;
    costs += o.costs;
    outcomes += o.outcomes;
    return *this;
  }
  friend bool operator==(const StrategyResult&, const StrategyResult&) = default;
};

struct SectionResult {
  std::string section;
  std::map<Strategy, StrategyResult> results;

  friend bool operator==(const SectionResult&, const SectionResult&) = default;
};

inline constexpr std::string_view kTotalSection = "total";

struct EvaluationReport {
  ResolutionMode mode = ResolutionMode::Gold;
  CostRule cost_rule = CostRule::Definitional;
  std::vector<Strategy> strategies;   // column order
  std::vector<SectionResult> sections;  // sorted by section name
  SectionResult total;
  std::vector<Diagnostic> failures;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

inline StrategyResult tally(const CenteringTrace& trace, CostRule rule) {
  StrategyResult r;
  r.discourses = 1;
  r.utterances = trace.states.size();
  for (const auto& s : trace.states) {
    r.transitions[s.transition] += 1;
    if (s.is_discourse_initial && s.transition != TransitionType::None) r.transitions.initial += 1;
    for (const auto& d : s.decisions) {
      r.outcomes[d.outcome] += 1;
      if (d.category) r.outcomes.unsupported[*d.category] += 1;
      if (d.outcome != Outcome::Correct) r.transitions.errors += 1;
      if (d.ordering_error) r.transitions.specific_errors += 1;
    }
    if (s.is_discourse_initial) continue;
    PairCost c = rule == CostRule::Definitional ? s.cost_definitional : s.cost_table;
    switch (c) {
      case PairCost::Cheap:
        r.costs.cheap += 1;
        break;
      case PairCost::Expensive:
        r.costs.expensive += 1;
        break;
      case PairCost::Undefined:
        r.costs.undefined += 1;
        break;
    }
    if (s.cost_definitional != s.cost_table) r.costs.disagreements += 1;
  }
  return r;
}

inline std::vector<Strategy> canonical_strategy_order(std::vector<Strategy> strategies) {
  std::sort(strategies.begin(), strategies.end());
  strategies.erase(std::unique(strategies.begin(), strategies.end()), strategies.end());
  return strategies;
}

inline EvaluationReport evaluate(const std::vector<Discourse>& corpus, const KnowledgeBase& kb,
                                 const std::vector<Strategy>& strategies, ResolutionMode mode,
                                 CostRule rule, const ResolverOptions& options = {}) {
  if (strategies.empty()) throw UsageError("at least one strategy is required");
  EvaluationReport report;
  report.mode = mode;
  report.cost_rule = rule;
  report.strategies = canonical_strategy_order(strategies);
  report.total.section = std::string(kTotalSection);

  std::map<std::string, SectionResult> sections;
  for (const auto& d : corpus) {
    auto diagnostics = validate_discourse(d);
    if (has_errors(diagnostics)) {
      for (auto& diag : diagnostics) {
        if (diag.severity == Severity::Error) report.failures.push_back(std::move(diag));
      }
      continue;
    }
    std::map<Strategy, StrategyResult> per_strategy;
    bool failed = false;
    for (Strategy s : report.strategies) {
      try {
        per_strategy[s] = tally(run_discourse(d, kb, s, mode, options), rule);
      } catch (const std::exception& e) {
        report.failures.push_back(Diagnostic{Severity::Error, d.id, std::nullopt, std::nullopt,
                                             std::string(name_of(s)) + ": " + e.what()});
        failed = true;
        break;
      }
    }
    if (failed) continue;
    SectionResult& section = sections[d.section];
    section.section = d.section;
    for (const auto& [s, r] : per_strategy) {
      section.results[s] += r;
      report.total.results[s] += r;
    }
  }
  for (Strategy s : report.strategies) report.total.results[s];
  for (auto& [name, section] : sections) report.sections.push_back(std::move(section));
  std::sort(report.failures.begin(), report.failures.end(),
            [](const Diagnostic& a, const Diagnostic& b) {
              return std::tie(a.discourse, a.message) < std::tie(b.discourse, b.message);
            });
  return report;
}

namespace detail {

// (metric name, getter) rows shared by the csv and text renderers.
struct MetricRow {
  std::string name;
  std::size_t (*get)(const StrategyResult&, std::size_t);
  std::size_t arg;
};

inline std::vector<MetricRow> transition_rows() {
  std::vector<MetricRow> rows;
  for (auto t : kAllTransitions) {
    rows.push_back({std::string(name_of(t)),
                    [](const StrategyResult& r, std::size_t i) { return r.transitions.by_type[i]; },
                    static_cast<std::size_t>(t)});
  }
  rows.push_back({"initial", [](const StrategyResult& r, std::size_t) { return r.transitions.initial; }, 0});
  rows.push_back({"errors", [](const StrategyResult& r, std::size_t) { return r.transitions.errors; }, 0});
  rows.push_back({"specific_errors",
                  [](const StrategyResult& r, std::size_t) { return r.transitions.specific_errors; }, 0});
  return rows;
}

inline std::vector<MetricRow> cost_rows() {
  return {
      {"cheap", [](const StrategyResult& r, std::size_t) { return r.costs.cheap; }, 0},
      {"expensive", [](const StrategyResult& r, std::size_t) { return r.costs.expensive; }, 0},
      {"undefined", [](const StrategyResult& r, std::size_t) { return r.costs.undefined; }, 0},
      {"disagreements", [](const StrategyResult& r, std::size_t) { return r.costs.disagreements; }, 0},
  };
}

inline std::vector<MetricRow> outcome_rows() {
  std::vector<MetricRow> rows;
  for (const auto& [o, name] : EnumNames<Outcome>::table) {
    rows.push_back({std::string(name),
                    [](const StrategyResult& r, std::size_t i) { return r.outcomes.by_outcome[i]; },
                    static_cast<std::size_t>(o)});
  }
  for (auto c : kAllUnsupported) {
    rows.push_back({"unsupported:" + std::string(name_of(c)),
                    [](const StrategyResult& r, std::size_t i) {
                      auto it = r.outcomes.unsupported.find(static_cast<UnsupportedCategory>(i));
                      return it == r.outcomes.unsupported.end() ? std::size_t{0} : it->second;
                    },
                    static_cast<std::size_t>(c)});
  }
  return rows;
}

inline nlohmann::ordered_json result_to_json(const StrategyResult& r) {
  nlohmann::ordered_json j;
  j["discourses"] = r.discourses;
  j["utterances"] = r.utterances;
  for (auto t : kAllTransitions) j["transitions"][std::string(name_of(t))] = r.transitions[t];
  j["initial"] = r.transitions.initial;
  j["errors"] = r.transitions.errors;
  j["specific_errors"] = r.transitions.specific_errors;
  j["costs"]["cheap"] = r.costs.cheap;
  j["costs"]["expensive"] = r.costs.expensive;
  j["costs"]["undefined"] = r.costs.undefined;
  j["costs"]["disagreements"] = r.costs.disagreements;
  for (const auto& [o, name] : EnumNames<Outcome>::table) {
    j["outcomes"][std::string(name)] = r.outcomes[o];
  }
  j["outcomes"]["unsupported"] = nlohmann::ordered_json::object();
  for (const auto& [c, n] : r.outcomes.unsupported) {
    j["outcomes"]["unsupported"][std::string(name_of(c))] = n;
  }
  return j;
}

inline StrategyResult result_from_json(const nlohmann::json& j) {
  StrategyResult r;
  r.discourses = j.at("discourses").get<std::size_t>();
  r.utterances = j.at("utterances").get<std::size_t>();
  for (auto t : kAllTransitions) r.transitions[t] = j.at("transitions").at(std::string(name_of(t)));
  r.transitions.initial = j.at("initial").get<std::size_t>();
  r.transitions.errors = j.at("errors").get<std::size_t>();
  r.transitions.specific_errors = j.at("specific_errors").get<std::size_t>();
  r.costs.cheap = j.at("costs").at("cheap").get<std::size_t>();
  r.costs.expensive = j.at("costs").at("expensive").get<std::size_t>();
  r.costs.undefined = j.at("costs").at("undefined").get<std::size_t>();
  r.costs.disagreements = j.at("costs").at("disagreements").get<std::size_t>();
  for (const auto& [o, name] : EnumNames<Outcome>::table) {
    r.outcomes[o] = j.at("outcomes").at(std::string(name)).get<std::size_t>();
  }
  for (const auto& [key, n] : j.at("outcomes").at("unsupported").items()) {
    auto c = parse_enum<UnsupportedCategory>(key);
    if (!c) throw std::runtime_error("unknown unsupported category " + key);
    r.outcomes.unsupported[*c] = n.get<std::size_t>();
  }
  return r;
}

inline nlohmann::ordered_json section_to_json(const SectionResult& s,
                                              const std::vector<Strategy>& strategies) {
  nlohmann::ordered_json j;
  j["section"] = s.section;
  j["results"] = nlohmann::ordered_json::object();
  for (Strategy st : strategies) {
    auto it = s.results.find(st);
    if (it != s.results.end()) j["results"][std::string(name_of(st))] = result_to_json(it->second);
  }
  return j;
}

inline SectionResult section_from_json(const nlohmann::json& j) {
  SectionResult s;
  s.section = j.at("section").get<std::string>();
  for (const auto& [key, value] : j.at("results").items()) {
    auto st = parse_enum<Strategy>(key);
    if (!st) throw std::runtime_error("unknown strategy " + key);
    s.results[*st] = result_from_json(value);
  }
  return s;
}

inline std::string pad(const std::string& s, std::size_t width, bool left = true) {
  // Widths count code points so that "Σ" and "—" align.
  std::size_t len = 0;
  for (unsigned char c : s) len += (c & 0xC0) != 0x80;
  if (len >= width) return s;
  std::string fill(width - len, ' ');
  return left ? s + fill : fill + s;
}

}  // namespace detail

inline std::string render_structured(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = name_of(r.mode);
  j["cost_rule"] = name_of(r.cost_rule);
  j["strategies"] = nlohmann::ordered_json::array();
  for (Strategy s : r.strategies) j["strategies"].push_back(name_of(s));
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : r.sections) j["sections"].push_back(detail::section_to_json(s, r.strategies));
  j["total"] = detail::section_to_json(r.total, r.strategies);
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) {
    nlohmann::ordered_json fj;
    fj["severity"] = name_of(f.severity);
    fj["discourse"] = f.discourse;
    fj["utterance"] = f.utterance ? nlohmann::ordered_json(*f.utterance) : nullptr;
    fj["expression"] = f.expression ? nlohmann::ordered_json(*f.expression) : nullptr;
    fj["message"] = f.message;
    j["failures"].push_back(std::move(fj));
  }
  return j.dump(2) + "\n";
}

inline EvaluationReport parse_report(std::string_view content) {
  auto j = nlohmann::json::parse(content);
  EvaluationReport r;
  auto need = [](auto v, const std::string& what) {
    if (!v) throw std::runtime_error("bad report field " + what);
    return *v;
  };
  r.mode = need(parse_enum<ResolutionMode>(j.at("mode").get<std::string>()), "mode");
  r.cost_rule = need(parse_enum<CostRule>(j.at("cost_rule").get<std::string>()), "cost_rule");
  for (const auto& s : j.at("strategies")) {
    r.strategies.push_back(need(parse_enum<Strategy>(s.get<std::string>()), "strategies"));
  }
  for (const auto& s : j.at("sections")) r.sections.push_back(detail::section_from_json(s));
  r.total = detail::section_from_json(j.at("total"));
  for (const auto& fj : j.at("failures")) {
    Diagnostic d;
    d.severity = need(parse_enum<Severity>(fj.at("severity").get<std::string>()), "severity");
    d.discourse = fj.at("discourse").get<std::string>();
    if (!fj.at("utterance").is_null()) d.utterance = fj.at("utterance").get<std::size_t>();
    if (!fj.at("expression").is_null()) d.expression = fj.at("expression").get<std::string>();
    d.message = fj.at("message").get<std::string>();
    r.failures.push_back(std::move(d));
  }
  return r;
}

inline std::string render_csv(const EvaluationReport& r) {
  std::ostringstream out;
  out << "section,strategy,metric,value\n";
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  auto emit = [&](const SectionResult& section) {
    for (Strategy s : r.strategies) {
      auto it = section.results.find(s);
      if (it == section.results.end()) continue;
      auto line = [&](const std::string& prefix, const std::vector<detail::MetricRow>& rows) {
        for (const auto& row : rows) {
          out << quote(section.section) << ',' << name_of(s) << ',' << prefix << row.name << ','
              << row.get(it->second, row.arg) << '\n';
        }
      };
      line("transition.", detail::transition_rows());
      line("cost.", detail::cost_rows());
      line("outcome.", detail::outcome_rows());
    }
  };
  for (const auto& section : r.sections) emit(section);
  emit(r.total);
  return out.str();
}

// Section-by-metric rows, one column per strategy, with a Σ block of totals.
inline std::string render_text(const EvaluationReport& r, bool styled = false) {
  const std::string bold = styled ? "\033[1m" : "";
  const std::string reset = styled ? "\033[0m" : "";
  constexpr std::size_t section_w = 12, metric_w = 36;
  std::ostringstream out;

  std::size_t section_width = section_w;
  for (const auto& s : r.sections) section_width = std::max(section_width, s.section.size() + 2);

  auto header = [&](const std::string& title, const std::string& metric) {
    out << bold << title << reset << "\n";
    out << detail::pad("", section_width) << detail::pad(metric, metric_w);
    for (Strategy s : r.strategies) out << detail::pad(std::string(name_of(s)), 14, false);
    out << "\n";
  };
  auto cell = [](const SectionResult& sec, Strategy s, auto&& fn) -> std::string {
    auto it = sec.results.find(s);
    return it == sec.results.end() ? "-" : fn(it->second);
  };
  auto block = [&](const std::vector<detail::MetricRow>& rows, auto&& extra) {
    std::vector<const SectionResult*> all;
    for (const auto& s : r.sections) all.push_back(&s);
    all.push_back(&r.total);
    for (const SectionResult* sec : all) {
      bool first = true;
      std::string label = sec == &r.total ? "Σ" : sec->section;
      for (const auto& row : rows) {
        out << detail::pad(first ? label : "", section_width) << detail::pad(row.name, metric_w);
        for (Strategy s : r.strategies) {
          out << detail::pad(cell(*sec, s, [&](const StrategyResult& res) {
                               return std::to_string(row.get(res, row.arg));
                             }),
                             14, false);
        }
        out << "\n";
        first = false;
      }
      extra(*sec);
    }
    out << "\n";
  };

  out << bold << "centerline evaluation" << reset << "  mode: " << name_of(r.mode)
      << "  cost rule: " << name_of(r.cost_rule) << "\n\n";

  header("Centering transitions", "transition");
  std::vector<detail::MetricRow> transitions;
  for (auto t : kAllTransitions) {
    transitions.push_back({std::string(name_of(t)),
                           [](const StrategyResult& res, std::size_t i) { return res.transitions.by_type[i]; },
                           static_cast<std::size_t>(t)});
  }
  transitions.push_back({"(discourse-initial)",
                         [](const StrategyResult& res, std::size_t) { return res.transitions.initial; }, 0});
  block(transitions, [&](const SectionResult& sec) {
    out << detail::pad("", section_width) << detail::pad("Errors (specific errors)", metric_w);
    for (Strategy s : r.strategies) {
      out << detail::pad(cell(sec, s,
                              [](const StrategyResult& res) {
                                return std::to_string(res.transitions.errors) + " (" +
                                       std::to_string(res.transitions.specific_errors) + ")";
                              }),
                         14, false);
    }
    out << "\n";
  });

  header("Transition pair costs", "cost type");
  block(detail::cost_rows(), [](const SectionResult&) {});

  header("Resolution outcomes", "outcome");
  block(detail::outcome_rows(), [](const SectionResult&) {});

  if (!r.failures.empty()) {
    out << bold << "Excluded discourses" << reset << "\n";
    for (const auto& f : r.failures) out << "  " << f.to_string() << "\n";
  }
  return out.str();
}

inline std::string render_report(const EvaluationReport& r, ReportFormat format, bool styled = false) {
  switch (format) {
    case ReportFormat::Text:
      return render_text(r, styled);
    case ReportFormat::Structured:
      return render_structured(r);
    case ReportFormat::Csv:
      return render_csv(r);
  }
  return {};
}

}  // namespace centerline
