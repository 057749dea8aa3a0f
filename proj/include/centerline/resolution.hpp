#pragma once

// Antecedent prediction for pronouns, nominal anaphors and textual ellipses.
// The only candidates are the elements of the previous utterance's Cf, tried
// in rank order; the first acceptable candidate wins.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "centerline/corpus.hpp"
#include "centerline/knowledge.hpp"
#include "centerline/ranking.hpp"

namespace centerline {

inline bool agreement_compatible(const AgreementFeatures& a, const AgreementFeatures& b) {
  bool gender = a.gender == Gender::Unknown || b.gender == Gender::Unknown || a.gender == b.gender;
  bool number = a.number == Number::Unknown || b.number == Number::Unknown || a.number == b.number;
  return gender && number;
}

inline std::optional<CenterElement> resolve_pronoun(const Expression& p, const CfList& cf_prev) {
  if (!is_pronoun(p.form)) throw std::invalid_argument(p.id + " is not a pronoun");
  for (const auto& candidate : cf_prev) {
    if (agreement_compatible(p.agreement, candidate.agreement)) return candidate;
  }
  return std::nullopt;
}

inline std::optional<CenterElement> resolve_nominal_anaphor(const Expression& n, const CfList& cf_prev,
                                                            const KnowledgeBase& kb) {
  if (n.form != ExpressionForm::DefiniteNp && n.form != ExpressionForm::ProperName &&
      n.form != ExpressionForm::OtherNp) {
    throw std::invalid_argument(n.id + " is not a nominal expression");
  }
  kb.require_declared(n.concept_name);
  for (const auto& candidate : cf_prev) {
    if (is_generalization_of(kb, n.concept_name, candidate.concept_name) ||
        is_generalization_of(kb, candidate.concept_name, n.concept_name)) {
      return candidate;
    }
  }
  return std::nullopt;
}

struct ResolverOptions {
  // Allow two-edge bridging paths. Direct edges to any candidate are always
  // tried before composed paths.
  bool composed_bridging = true;
};

inline std::optional<std::pair<CenterElement, std::string>> resolve_ellipsis(
    const Expression& e, const CfList& cf_prev, const KnowledgeBase& kb,
    const ResolverOptions& options = {}) {
  kb.require_declared(e.concept_name);
  for (const auto& candidate : cf_prev) {
    kb.require_declared(candidate.concept_name);
    if (auto label = kb.direct_bridge(e.concept_name, candidate.concept_name)) return {{candidate, *label}};
  }
  if (!options.composed_bridging) return std::nullopt;
  for (const auto& candidate : cf_prev) {
    if (auto mid = kb.bridge_midpoint(e.concept_name, candidate.concept_name)) {
      return {{candidate, "via:" + *mid}};
    }
  }
  return std::nullopt;
}

struct Prediction {
  CenterElement antecedent;
  LinkType type = LinkType::Coreference;
  std::string label;
};

// Pronouns resolve by agreement; definite NPs try nominal anaphora first and
// textual ellipsis second; every other form stays unlinked.
inline std::optional<Prediction> predict_antecedent(const Expression& e, const CfList& cf_prev,
                                                    const KnowledgeBase& kb,
                                                    const ResolverOptions& options = {}) {
  if (is_pronoun(e.form)) {
    if (auto c = resolve_pronoun(e, cf_prev)) return Prediction{*c, LinkType::Coreference, ""};
    return std::nullopt;
  }
  if (e.form == ExpressionForm::DefiniteNp) {
    if (auto c = resolve_nominal_anaphor(e, cf_prev, kb)) return Prediction{*c, LinkType::Coreference, ""};
    if (auto c = resolve_ellipsis(e, cf_prev, kb, options)) {
      return Prediction{c->first, LinkType::TextualEllipsis, c->second};
    }
  }
  return std::nullopt;
}

enum class Outcome { Correct, WrongAntecedent, Spurious, Missed, UnsupportedCategory };

template <>
struct EnumNames<Outcome> {
  static constexpr std::array<std::pair<Outcome, std::string_view>, 5> table{{
      {Outcome::Correct, "correct"},
      {Outcome::WrongAntecedent, "wrong-antecedent"},
      {Outcome::Spurious, "spurious"},
      {Outcome::Missed, "missed"},
      {Outcome::UnsupportedCategory, "unsupported-category"},
  }};
};

struct ResolutionDecision {
  std::string expression;
  std::optional<std::string> predicted;  // entity id of the predicted antecedent
  std::optional<std::string> gold;       // chain root of the gold antecedent
  LinkType link_type = LinkType::Coreference;
  Outcome outcome = Outcome::Correct;
  std::optional<UnsupportedCategory> category;
  // Wrong, but some reordering of the previous Cf would have made it correct.
  bool ordering_error = false;

  friend bool operator==(const ResolutionDecision&, const ResolutionDecision&) = default;
};

// Outcome of a prediction against the gold annotation; nullopt when neither
// side links the expression.
inline std::optional<Outcome> score_prediction(const Expression& e, const std::optional<Prediction>& p,
                                               const DiscourseIndex& gold) {
  const auto& g = e.gold_link;
  if (g && g->unsupported_category) return Outcome::UnsupportedCategory;
  if (!g && !p) return std::nullopt;
  if (!g) return Outcome::Spurious;
  if (!p) return Outcome::Missed;
  bool same_entity = gold.root_of(p->antecedent.entity) == gold.root_of(g->target);
  return same_entity && p->type == g->type ? Outcome::Correct : Outcome::WrongAntecedent;
}

// Whether some permutation of cf_prev makes the resolver correct on `e`.
// Prediction depends only on which acceptable candidate comes first, so
// trying every element at the front covers all permutations.
inline bool ordering_could_fix(const Expression& e, const CfList& cf_prev, const KnowledgeBase& kb,
                               const DiscourseIndex& gold, const ResolverOptions& options = {}) {
  for (std::size_t i = 0; i < cf_prev.size(); ++i) {
    CfList moved = cf_prev;
    std::rotate(moved.elements.begin(), moved.elements.begin() + static_cast<std::ptrdiff_t>(i),
                moved.elements.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    auto p = predict_antecedent(e, moved, kb, options);
    if (score_prediction(e, p, gold) == Outcome::Correct) return true;
  }
  return false;
}

struct UtteranceResolution {
  LinkDecisions links;
  std::vector<ResolutionDecision> decisions;
};

inline ResolvedLink to_link(const Prediction& p) {
  return ResolvedLink{p.type, p.antecedent.entity, p.antecedent.concept_name, p.antecedent.surface,
                      p.antecedent.agreement, p.label};
}

// Resolves every expression of `u` left to right against cf_prev. With a
// gold index, each linked or gold-annotated expression is also scored.
inline UtteranceResolution resolve_utterance(const Utterance& u, const CfList& cf_prev,
                                             const KnowledgeBase& kb,
                                             const DiscourseIndex* gold = nullptr,
                                             const ResolverOptions& options = {}) {
  UtteranceResolution out;
  for (const auto& e : u.expressions) {
    auto p = predict_antecedent(e, cf_prev, kb, options);
    out.links[e.id] = p ? std::optional<ResolvedLink>(to_link(*p)) : std::nullopt;
    if (!gold) continue;
    auto outcome = score_prediction(e, p, *gold);
    if (!outcome) continue;
    ResolutionDecision d;
    d.expression = e.id;
    if (p) d.predicted = p->antecedent.entity;
    if (e.gold_link) d.gold = gold->root_of(e.gold_link->target);
    d.link_type = e.gold_link ? e.gold_link->type : p->type;
    d.outcome = *outcome;
    if (e.gold_link) d.category = e.gold_link->unsupported_category;
    if (d.outcome == Outcome::WrongAntecedent || d.outcome == Outcome::Missed) {
      d.ordering_error = ordering_could_fix(e, cf_prev, kb, *gold, options);
    }
    out.decisions.push_back(std::move(d));
  }
  return out;
}

// Decisions taken straight from the gold annotation of `u`.
inline LinkDecisions gold_decisions(const Utterance& u, const DiscourseIndex& index) {
  LinkDecisions out;
  for (const auto& e : u.expressions) {
    if (!e.gold_link) {
      out[e.id] = std::nullopt;
      continue;
    }
    const Expression& target = index.at(e.gold_link->target);
    const Expression& root = index.at(index.root_of(target.id));
    out[e.id] = ResolvedLink{e.gold_link->type, root.id, root.concept_name, target.surface,
                             target.agreement, e.gold_link->relation.value_or("")};
  }
  return out;
}

// Every expression concept must be declared in the knowledge base.
inline std::vector<Diagnostic> validate_concepts(const Discourse& d, const KnowledgeBase& kb) {
  std::vector<Diagnostic> out;
  for (const auto& u : d.utterances) {
    for (const auto& e : u.expressions) {
      if (!kb.has_concept(e.concept_name)) {
        out.push_back(Diagnostic{Severity::Error, d.id, u.index, e.id, "unknown concept " + e.concept_name});
      }
    }
  }
  return out;
}

}  // namespace centerline
