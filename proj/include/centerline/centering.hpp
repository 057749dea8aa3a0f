#pragma once

// Per-utterance centering data: backward-looking center (Cb), preferred center
// (Cp), ranked forward-looking centers (Cf), the transition type, and the
// cost of the transition pair it closes.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "centerline/corpus.hpp"
#include "centerline/knowledge.hpp"
#include "centerline/ranking.hpp"
#include "centerline/resolution.hpp"

namespace centerline {

enum class TransitionType { Continue, Retain, SmoothShift, RoughShift, None };

template <>
struct EnumNames<TransitionType> {
  static constexpr std::array<std::pair<TransitionType, std::string_view>, 5> table{{
      {TransitionType::Continue, "CONTINUE"},
      {TransitionType::Retain, "RETAIN"},
      {TransitionType::SmoothShift, "SMOOTH-SHIFT"},
      {TransitionType::RoughShift, "ROUGH-SHIFT"},
      {TransitionType::None, "NONE"},
  }};
};

enum class PairCost { Cheap, Expensive, Undefined };

template <>
struct EnumNames<PairCost> {
  static constexpr std::array<std::pair<PairCost, std::string_view>, 3> table{{
      {PairCost::Cheap, "cheap"},
      {PairCost::Expensive, "expensive"},
      {PairCost::Undefined, "undefined"},
  }};
};

enum class ResolutionMode { Gold, System };

template <>
struct EnumNames<ResolutionMode> {
  static constexpr std::array<std::pair<ResolutionMode, std::string_view>, 2> table{{
      {ResolutionMode::Gold, "gold"},
      {ResolutionMode::System, "system"},
  }};
};

struct CenteringState {
  std::size_t utterance_index = 0;
  std::optional<CenterElement> cb;
  std::optional<CenterElement> cp;
  CfList cf;
  TransitionType transition = TransitionType::None;
  PairCost cost_definitional = PairCost::Undefined;
  PairCost cost_table = PairCost::Undefined;
  bool is_discourse_initial = false;
  // Resolver output scored against gold for this utterance.
  std::vector<ResolutionDecision> decisions;
};

struct CenteringTrace {
  std::string discourse_id;
  Strategy strategy = Strategy::Functional;
  ResolutionMode mode = ResolutionMode::Gold;
  std::vector<CenteringState> states;
};

// Entities realized in `u`, directly or (for antecedents of textual
// ellipses) implicitly. Excluded expressions realize nothing.
inline std::set<std::string> realized_entities(const Utterance& u, const LinkDecisions& links) {
  std::set<std::string> out;
  for (const auto& e : u.expressions) {
    if (e.exclude_from_cf) continue;
    out.insert(entity_of(e, links).first);
    const ResolvedLink* link = decision_for(e, links);
    if (link && link->type == LinkType::TextualEllipsis) out.insert(link->antecedent_entity);
  }
  return out;
}

inline std::optional<CenterElement> compute_cb(const CfList& cf_prev,
                                               const std::set<std::string>& realized) {
  for (const auto& e : cf_prev) {
    if (realized.count(e.entity)) return e;
  }
  return std::nullopt;
}

inline TransitionType classify_transition(const std::optional<std::string>& cb_prev,
                                          const std::optional<std::string>& cb_cur,
                                          const std::optional<std::string>& cp_cur) {
  if (!cb_cur) return TransitionType::None;
  bool kept = !cb_prev || *cb_prev == *cb_cur;
  bool preferred = cp_cur && *cp_cur == *cb_cur;
  if (kept) return preferred ? TransitionType::Continue : TransitionType::Retain;
  return preferred ? TransitionType::SmoothShift : TransitionType::RoughShift;
}

// Cheap iff the current Cb was predicted by the previous Cp.
inline PairCost pair_cost_definitional(const std::optional<std::string>& cb_cur,
                                       const std::optional<std::string>& cp_prev) {
  if (!cb_cur || !cp_prev) return PairCost::Undefined;
  return *cb_cur == *cp_prev ? PairCost::Cheap : PairCost::Expensive;
}

// Row of the transition-pair cost table: a previous transition, or nullopt for
// the discourse-initial row.
using PreviousTransition = std::optional<TransitionType>;

inline PairCost pair_cost_table(PreviousTransition prev, TransitionType cur) {
  using T = TransitionType;
  constexpr PairCost C = PairCost::Cheap, E = PairCost::Expensive, U = PairCost::Undefined;
  // columns: CONTINUE, RETAIN, SMOOTH-SHIFT, ROUGH-SHIFT
  constexpr PairCost initial[4] = {C, E, U, U};
  constexpr PairCost rows[4][4] = {
      {C, C, E, E},  // CONTINUE
      {E, E, C, E},  // RETAIN
      {C, E, E, E},  // SMOOTH-SHIFT
      {E, E, C, E},  // ROUGH-SHIFT
  };
  if (cur == T::None || prev == T::None) return U;
  int col = static_cast<int>(cur);
  return prev ? rows[static_cast<int>(*prev)][col] : initial[col];
}

inline std::optional<std::string> entity_id(const std::optional<CenterElement>& e) {
  if (!e) return std::nullopt;
  return e->entity;
}

// Runs the centering model over a whole discourse. Links come from the gold
// annotation or from the resolver; the resolver is scored against gold in both
// modes.
inline CenteringTrace run_discourse(const Discourse& d, const KnowledgeBase& kb, Strategy strategy,
                                    ResolutionMode mode, const ResolverOptions& options = {}) {
  DiscourseIndex index(d);
  CenteringTrace trace{d.id, strategy, mode, {}};
  CfList cf_prev;
  for (std::size_t n = 0; n < d.utterances.size(); ++n) {
    const Utterance& u = d.utterances[n];
    CenteringState state;
    state.utterance_index = n;
    try {
      auto resolved = resolve_utterance(u, cf_prev, kb, &index, options);
      state.decisions = std::move(resolved.decisions);
      LinkDecisions links = mode == ResolutionMode::Gold ? gold_decisions(u, index) : resolved.links;
      state.cf = rank_cf(build_center_candidates(u, links), strategy);
      if (!state.cf.empty()) state.cp = state.cf.front();

      if (n == 0) {
        state.is_discourse_initial = true;
        state.cb = state.cp;
        state.transition = state.cb ? TransitionType::Continue : TransitionType::None;
      } else {
        const CenteringState& prev = trace.states.back();
        state.cb = compute_cb(prev.cf, realized_entities(u, links));
        // shown through its realization in the current utterance
        if (state.cb) {
          if (const CenterElement* here = state.cf.find(state.cb->entity)) state.cb = *here;
        }
        state.transition =
            classify_transition(entity_id(prev.cb), entity_id(state.cb), entity_id(state.cp));
        state.cost_definitional = pair_cost_definitional(entity_id(state.cb), entity_id(prev.cp));
        PreviousTransition row = prev.is_discourse_initial ? std::nullopt : PreviousTransition(prev.transition);
        state.cost_table = pair_cost_table(row, state.transition);
      }
    } catch (const std::exception& e) {
      throw CorpusError("discourse " + d.id + ", utterance " + std::to_string(n) + ": " + e.what());
    }
    cf_prev = state.cf;
    trace.states.push_back(std::move(state));
  }
  return trace;
}

}  // namespace centerline
