#pragma once

// Center candidates of an utterance and their ordering into a strict Cf list.
//
// Five orderings are supported. The functional one ranks by information
// structure: context-bound elements before unbound ones, bound elements by
// tier (anaphor; possessive pronoun or elliptical antecedent; elliptical
// expression or anaphoric attribute head), and linear precedence among
// elements of the same kind. The naive and canonical baselines rank by text
// position and by grammatical role; their "-ae" variants place an implicitly
// realized elliptical antecedent directly above its elliptical expression
// instead of directly below it.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "centerline/corpus.hpp"

namespace centerline {

enum class BoundForm {
  Anaphor,
  PossessivePronoun,
  EllipticalAntecedent,
  EllipticalExpression,
  AnaphoricAttributeHead,
};

template <>
struct EnumNames<BoundForm> {
  static constexpr std::array<std::pair<BoundForm, std::string_view>, 5> table{{
      {BoundForm::Anaphor, "anaphor"},
      {BoundForm::PossessivePronoun, "possessive-pronoun"},
      {BoundForm::EllipticalAntecedent, "elliptical-antecedent"},
      {BoundForm::EllipticalExpression, "elliptical-expression"},
      {BoundForm::AnaphoricAttributeHead, "anaphoric-attribute-head"},
  }};
};

inline int tier(BoundForm f) {
  switch (f) {
    case BoundForm::Anaphor:
      return 1;
    case BoundForm::PossessivePronoun:
    case BoundForm::EllipticalAntecedent:
      return 2;
    case BoundForm::EllipticalExpression:
    case BoundForm::AnaphoricAttributeHead:
      return 3;
  }
  return 3;
}

class ISStatus {
 public:
  static ISStatus unbound() { return ISStatus{}; }
  static ISStatus bound(BoundForm f) { return ISStatus{f}; }

  bool is_bound() const { return form_.has_value(); }
  const std::optional<BoundForm>& form() const { return form_; }

  // 1..3 for bound forms, 4 for unbound.
  int tier() const { return form_ ? centerline::tier(*form_) : 4; }

  std::string to_string() const {
    return form_ ? "bound(" + std::string(name_of(*form_)) + ")" : "unbound";
  }

  friend bool operator==(const ISStatus&, const ISStatus&) = default;

 private:
  ISStatus() = default;
  explicit ISStatus(BoundForm f) : form_(f) {}
  std::optional<BoundForm> form_;
};

// Discourse entities are named by the id of the expression opening their
// coreference chain; `concept_name` is the concept of that first mention.
struct CenterElement {
  std::string entity;
  std::string concept_name;
  std::optional<std::string> expression;  // absent: implicitly realized
  std::string surface;
  ISStatus status = ISStatus::unbound();
  std::size_t position = 0;  // implicit elements: position of the licensing expression
  GrammaticalRole role = GrammaticalRole::None;
  AgreementFeatures agreement;

  bool is_implicit() const { return !expression.has_value(); }

  friend bool operator==(const CenterElement&, const CenterElement&) = default;
};

struct CfList {
  std::vector<CenterElement> elements;

  bool empty() const { return elements.empty(); }
  std::size_t size() const { return elements.size(); }
  const CenterElement& front() const { return elements.front(); }
  auto begin() const { return elements.begin(); }
  auto end() const { return elements.end(); }

  const CenterElement* find(const std::string& entity) const {
    for (const auto& e : elements) {
      if (e.entity == entity) return &e;
    }
    return nullptr;
  }
  bool contains(const std::string& entity) const { return find(entity) != nullptr; }

  std::vector<std::string> entities() const {
    std::vector<std::string> out;
    for (const auto& e : elements) out.push_back(e.entity);
    return out;
  }

  friend bool operator==(const CfList&, const CfList&) = default;
};

enum class Strategy { Naive, NaiveAnteExpress, Canonical, CanonicalAnteExpress, Functional };

template <>
struct EnumNames<Strategy> {
  static constexpr std::array<std::pair<Strategy, std::string_view>, 5> table{{
      {Strategy::Naive, "naive"},
      {Strategy::NaiveAnteExpress, "naive-ae"},
      {Strategy::Canonical, "canonical"},
      {Strategy::CanonicalAnteExpress, "canonical-ae"},
      {Strategy::Functional, "functional"},
  }};
};

inline constexpr std::array<Strategy, 5> kAllStrategies{
    Strategy::Naive, Strategy::NaiveAnteExpress, Strategy::Canonical,
    Strategy::CanonicalAnteExpress, Strategy::Functional};

// A fixed resolution decision for one anaphoric or elliptical expression.
struct ResolvedLink {
  LinkType type = LinkType::Coreference;
  std::string antecedent_entity;
  std::string antecedent_concept;
  std::string antecedent_surface;
  AgreementFeatures antecedent_agreement;
  std::string label;  // bridging relation of ellipsis links

  friend bool operator==(const ResolvedLink&, const ResolvedLink&) = default;
};

// Expression id -> decision; nullopt records a decision that the expression
// is unlinked.
using LinkDecisions = std::map<std::string, std::optional<ResolvedLink>>;

class UnresolvedLinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const ResolvedLink* decision_for(const Expression& e, const LinkDecisions& links) {
  auto it = links.find(e.id);
  if (it == links.end() || !it->second) return nullptr;
  return &*it->second;
}

inline ISStatus classify_is_status(const Expression& e, const LinkDecisions& links) {
  const ResolvedLink* link = decision_for(e, links);
  if (link && link->type == LinkType::TextualEllipsis) {
    return ISStatus::bound(BoundForm::EllipticalExpression);
  }
  if (link) {
    if (e.form == ExpressionForm::PossessivePronoun) return ISStatus::bound(BoundForm::PossessivePronoun);
    if (e.is_attribute_head) return ISStatus::bound(BoundForm::AnaphoricAttributeHead);
    if (e.form == ExpressionForm::IndefiniteNp) return ISStatus::unbound();
    return ISStatus::bound(BoundForm::Anaphor);
  }
  if (e.context_bound) return ISStatus::bound(BoundForm::Anaphor);
  return ISStatus::unbound();
}

// Entity realized by an expression: its coreference antecedent's entity, or a
// fresh entity named after the expression itself.
inline std::pair<std::string, std::string> entity_of(const Expression& e, const LinkDecisions& links) {
  const ResolvedLink* link = decision_for(e, links);
  if (link && link->type == LinkType::Coreference) {
    return {link->antecedent_entity, link->antecedent_concept};
  }
  return {e.id, e.concept_name};
}

inline std::vector<CenterElement> build_center_candidates(const Utterance& u,
                                                          const LinkDecisions& links) {
  for (const auto& e : u.expressions) {
    if (is_pronoun(e.form) && !links.count(e.id)) {
      throw UnresolvedLinkError("utterance " + std::to_string(u.index) + ": pronoun " + e.id +
                                " has no resolution decision");
    }
  }

  auto better = [](const CenterElement& a, const CenterElement& b) {
    if (a.status.tier() != b.status.tier()) return a.status.tier() < b.status.tier();
    return a.position < b.position;
  };

  std::vector<CenterElement> out;
  std::map<std::string, std::size_t> slot;  // entity -> index in out
  for (const auto& e : u.expressions) {
    if (e.exclude_from_cf) continue;
    auto [entity, concept_name] = entity_of(e, links);
    CenterElement el{entity,  concept_name, e.id,   e.surface, classify_is_status(e, links),
                     e.position, e.role, e.agreement};
    auto [it, fresh] = slot.emplace(entity, out.size());
    if (fresh) {
      out.push_back(std::move(el));
    } else if (better(el, out[it->second])) {
      out[it->second] = std::move(el);
    }
  }

  std::set<std::string> explicit_entities;
  for (const auto& el : out) explicit_entities.insert(el.entity);
  for (const auto& e : u.expressions) {
    if (e.exclude_from_cf) continue;
    const ResolvedLink* link = decision_for(e, links);
    if (!link || link->type != LinkType::TextualEllipsis) continue;
    if (explicit_entities.count(link->antecedent_entity)) continue;
    auto [it, fresh] = slot.emplace(link->antecedent_entity, out.size());
    if (!fresh) continue;
    out.push_back(CenterElement{link->antecedent_entity, link->antecedent_concept, std::nullopt, "",
                                ISStatus::bound(BoundForm::EllipticalAntecedent), e.position,
                                e.role, link->antecedent_agreement});
  }
  return out;
}

namespace detail {

struct RankKey {
  int major = 0;
  std::size_t position = 0;
  int minor = 0;
  std::string_view entity;

  friend auto operator<=>(const RankKey&, const RankKey&) = default;
};

inline RankKey rank_key(const CenterElement& e, Strategy s) {
  bool ante_first = s == Strategy::NaiveAnteExpress || s == Strategy::CanonicalAnteExpress;
  // Implicit antecedents sit right after (or, for -ae, right before) the
  // expression licensing them, which shares their position key.
  int minor = e.is_implicit() ? (ante_first ? 0 : 2) : 1;
  switch (s) {
    case Strategy::Naive:
    case Strategy::NaiveAnteExpress:
      return {0, e.position, minor, e.entity};
    case Strategy::Canonical:
    case Strategy::CanonicalAnteExpress:
      return {static_cast<int>(e.role), e.position, minor, e.entity};
    case Strategy::Functional:
      return {e.status.tier(), e.position, minor, e.entity};
  }
  return {};
}

}  // namespace detail

enum class Order { Before, After };

// Strict total order on distinct entities: `Before` iff a ranks above b.
inline Order compare(const CenterElement& a, const CenterElement& b, Strategy s) {
  return detail::rank_key(a, s) < detail::rank_key(b, s) ? Order::Before : Order::After;
}

inline CfList rank_cf(std::vector<CenterElement> candidates, Strategy s) {
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (!seen.insert(c.entity).second) {
      throw std::invalid_argument("duplicate entity in center candidates: " + c.entity);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [s](const CenterElement& a, const CenterElement& b) {
    return compare(a, b, s) == Order::Before;
  });
  return CfList{std::move(candidates)};
}

}  // namespace centerline
