#pragma once

// Trace and decision export, as JSON and as Cb/Cf tables for reading.

#include <sstream>
#include <string>

#include <json.hpp>

#include "centerline/centering.hpp"

namespace centerline {

inline constexpr std::string_view kImplicitSurface = "—";

inline std::string element_label(const CenterElement& e) {
  return e.concept_name + ": " + (e.is_implicit() ? std::string(kImplicitSurface) : e.surface);
}

inline nlohmann::ordered_json decision_to_json(const ResolutionDecision& d) {
  nlohmann::ordered_json j;
  j["id"] = d.expression;
  j["predicted"] = d.predicted ? nlohmann::ordered_json(*d.predicted) : nullptr;
  j["gold"] = d.gold ? nlohmann::ordered_json(*d.gold) : nullptr;
  j["link_type"] = name_of(d.link_type);
  j["outcome"] = name_of(d.outcome);
  if (d.category) j["category"] = name_of(*d.category);
  if (d.ordering_error) j["ordering_error"] = true;
  return j;
}

inline nlohmann::ordered_json trace_to_json(const CenteringTrace& trace) {
  using J = nlohmann::ordered_json;
  auto element = [](const CenterElement& e) {
    J j;
    j["entity"] = e.concept_name;
    j["entity_id"] = e.entity;
    j["surface"] = e.is_implicit() ? J(nullptr) : J(e.surface);
    return j;
  };
  J root;
  root["discourse"] = trace.discourse_id;
  root["strategy"] = name_of(trace.strategy);
  root["mode"] = name_of(trace.mode);
  root["utterances"] = J::array();
  for (const auto& s : trace.states) {
    J u;
    u["index"] = s.utterance_index;
    u["cb"] = s.cb ? element(*s.cb) : J(nullptr);
    u["cf"] = J::array();
    for (const auto& e : s.cf) {
      J j = element(e);
      j["status"] = e.status.to_string();
      u["cf"].push_back(std::move(j));
    }
    u["transition"] = name_of(s.transition);
    u["cost_definitional"] = name_of(s.cost_definitional);
    u["cost_table"] = name_of(s.cost_table);
    if (s.is_discourse_initial) u["initial"] = true;
    u["decisions"] = J::array();
    for (const auto& d : s.decisions) u["decisions"].push_back(decision_to_json(d));
    root["utterances"].push_back(std::move(u));
  }
  return root;
}

// One line per utterance in the layout of a Cb/Cf table:
//   U1  Cb: DELL-316LT: —  Cf: [DELL-316LT: —, ACCU: Akku]  CONTINUE  cheap/cheap
inline std::string render_trace_text(const CenteringTrace& trace) {
  std::ostringstream out;
  out << "discourse " << trace.discourse_id << "  strategy " << name_of(trace.strategy) << "  mode "
      << name_of(trace.mode) << "\n";
  for (const auto& s : trace.states) {
    out << "U" << s.utterance_index << "  Cb: " << (s.cb ? element_label(*s.cb) : "undefined")
        << "  Cf: [";
    for (std::size_t i = 0; i < s.cf.size(); ++i) {
      if (i) out << ", ";
      out << element_label(s.cf.elements[i]);
    }
    out << "]  " << name_of(s.transition);
    if (s.is_discourse_initial) {
      out << "  (initial)";
    } else {
      out << "  " << name_of(s.cost_definitional) << "/" << name_of(s.cost_table);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace centerline
