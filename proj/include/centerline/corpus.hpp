#pragma once

// Annotated discourse data model and the corpus file format.
//
// A corpus file is a JSON document with a top-level `discourses` array. Every
// feature the centering algorithms consume is annotated; nothing is inferred
// from the raw utterance text.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "centerline/enum_names.hpp"

namespace centerline {

enum class Gender { Masculine, Feminine, Neuter, Unknown };
enum class Number { Singular, Plural, Unknown };
enum class Person { First, Second, Third };

struct AgreementFeatures {
  Gender gender = Gender::Unknown;
  Number number = Number::Unknown;
  Person person = Person::Third;

  friend bool operator==(const AgreementFeatures&, const AgreementFeatures&) = default;
};

enum class ExpressionForm {
  PersonalPronoun,
  PossessivePronoun,
  DefiniteNp,
  IndefiniteNp,
  ProperName,
  OtherNp,
};

inline bool is_pronoun(ExpressionForm f) {
  return f == ExpressionForm::PersonalPronoun || f == ExpressionForm::PossessivePronoun;
}

// Declaration order is the grammatical-role ranking used by the canonical strategy.
enum class GrammaticalRole { Subject, DirObject, IndirObject, Complement, Adjunct, None };

enum class LinkType { Coreference, TextualEllipsis };

enum class UnsupportedCategory {
  PrepositionalAnaphor,
  PluralAnaphor,
  SetMemberAnaphor,
  SentenceAnaphor,
  GlobalFocusAnaphor,
};

template <>
struct EnumNames<Gender> {
  static constexpr std::array<std::pair<Gender, std::string_view>, 4> table{{
      {Gender::Masculine, "masculine"},
      {Gender::Feminine, "feminine"},
      {Gender::Neuter, "neuter"},
      {Gender::Unknown, "unknown"},
  }};
};

template <>
struct EnumNames<Number> {
  static constexpr std::array<std::pair<Number, std::string_view>, 3> table{{
      {Number::Singular, "singular"},
      {Number::Plural, "plural"},
      {Number::Unknown, "unknown"},
  }};
};

template <>
struct EnumNames<Person> {
  static constexpr std::array<std::pair<Person, std::string_view>, 3> table{{
      {Person::First, "first"},
      {Person::Second, "second"},
      {Person::Third, "third"},
  }};
};

template <>
struct EnumNames<ExpressionForm> {
  static constexpr std::array<std::pair<ExpressionForm, std::string_view>, 6> table{{
      {ExpressionForm::PersonalPronoun, "personal-pronoun"},
      {ExpressionForm::PossessivePronoun, "possessive-pronoun"},
      {ExpressionForm::DefiniteNp, "definite-np"},
      {ExpressionForm::IndefiniteNp, "indefinite-np"},
      {ExpressionForm::ProperName, "proper-name"},
      {ExpressionForm::OtherNp, "other-np"},
  }};
};

template <>
struct EnumNames<GrammaticalRole> {
  static constexpr std::array<std::pair<GrammaticalRole, std::string_view>, 6> table{{
      {GrammaticalRole::Subject, "subject"},
      {GrammaticalRole::DirObject, "dir-object"},
      {GrammaticalRole::IndirObject, "indir-object"},
      {GrammaticalRole::Complement, "complement"},
      {GrammaticalRole::Adjunct, "adjunct"},
      {GrammaticalRole::None, "none"},
  }};
};

template <>
struct EnumNames<LinkType> {
  static constexpr std::array<std::pair<LinkType, std::string_view>, 2> table{{
      {LinkType::Coreference, "coreference"},
      {LinkType::TextualEllipsis, "textual-ellipsis"},
  }};
};

template <>
struct EnumNames<UnsupportedCategory> {
  static constexpr std::array<std::pair<UnsupportedCategory, std::string_view>, 5> table{{
      {UnsupportedCategory::PrepositionalAnaphor, "prepositional-anaphor"},
      {UnsupportedCategory::PluralAnaphor, "plural-anaphor"},
      {UnsupportedCategory::SetMemberAnaphor, "set-member-anaphor"},
      {UnsupportedCategory::SentenceAnaphor, "sentence-anaphor"},
      {UnsupportedCategory::GlobalFocusAnaphor, "global-focus-anaphor"},
  }};
};

struct GoldLink {
  std::string target;
  LinkType type = LinkType::Coreference;
  std::optional<std::string> relation;
  std::optional<UnsupportedCategory> unsupported_category;

  friend bool operator==(const GoldLink&, const GoldLink&) = default;
};

struct Expression {
  std::string id;
  std::size_t utterance_index = 0;
  std::size_t position = 0;
  std::string surface;
  std::string head;
  std::string concept_name;
  ExpressionForm form = ExpressionForm::OtherNp;
  GrammaticalRole role = GrammaticalRole::None;
  AgreementFeatures agreement;
  std::optional<GoldLink> gold_link;
  bool is_attribute_head = false;
  bool exclude_from_cf = false;
  // Referent is given by context preceding the encoded text (e.g. the product
  // a review is about). Ranked as a bound anaphor although it has no link.
  bool context_bound = false;

  friend bool operator==(const Expression&, const Expression&) = default;
};

struct Utterance {
  std::size_t index = 0;
  std::string text;
  std::vector<Expression> expressions;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct Discourse {
  std::string id;
  std::string language;
  std::string section = "default";
  std::vector<Utterance> utterances;

  friend bool operator==(const Discourse&, const Discourse&) = default;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Severity { Error, Warning };

template <>
struct EnumNames<Severity> {
  static constexpr std::array<std::pair<Severity, std::string_view>, 2> table{{
      {Severity::Error, "error"},
      {Severity::Warning, "warning"},
  }};
};

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string discourse;
  std::optional<std::size_t> utterance;
  std::optional<std::string> expression;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;

  std::string to_string() const {
    std::ostringstream out;
    out << name_of(severity) << ": discourse " << discourse;
    if (utterance) out << ", utterance " << *utterance;
    if (expression) out << ", expression " << *expression;
    out << ": " << message;
    return out.str();
  }
};

inline bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

// Checks every data-model invariant. Returns an empty list iff all hold.
inline std::vector<Diagnostic> validate_discourse(const Discourse& d) {
  std::vector<Diagnostic> out;
  auto report = [&](Severity sev, std::optional<std::size_t> utt, std::optional<std::string> expr,
                    std::string msg) {
    out.push_back(Diagnostic{sev, d.id, utt, std::move(expr), std::move(msg)});
  };

  if (d.utterances.empty()) {
    report(Severity::Error, std::nullopt, std::nullopt, "discourse must contain ≥1 utterance");
    return out;
  }

  // id -> (utterance, position) of its first occurrence
  std::map<std::string, std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t u = 0; u < d.utterances.size(); ++u) {
    const Utterance& utt = d.utterances[u];
    if (utt.index != u) {
      report(Severity::Error, u, std::nullopt,
             "utterance index " + std::to_string(utt.index) + " is not contiguous (expected " +
                 std::to_string(u) + ")");
    }
    int subjects = 0;
    std::optional<std::size_t> last_position;
    for (const Expression& e : utt.expressions) {
      if (last_position && e.position <= *last_position) {
        report(Severity::Error, u, e.id, "non-monotone positions");
      }
      last_position = e.position;
      if (e.utterance_index != u) {
        report(Severity::Error, u, e.id, "expression carries utterance index " +
                                              std::to_string(e.utterance_index));
      }
      if (e.role == GrammaticalRole::Subject) ++subjects;
      if (!is_pronoun(e.form) && e.agreement.person != Person::Third) {
        report(Severity::Warning, u, e.id, "non-pronoun with person other than third");
      }
      if (!seen.emplace(e.id, std::make_pair(u, e.position)).second) {
        report(Severity::Error, u, e.id, "duplicate expression id");
      }
    }
    if (subjects > 1) {
      report(Severity::Warning, u, std::nullopt,
             std::to_string(subjects) + " subjects in one utterance");
    }
  }

  for (std::size_t u = 0; u < d.utterances.size(); ++u) {
    for (const Expression& e : d.utterances[u].expressions) {
      if (!e.gold_link) continue;
      auto it = seen.find(e.gold_link->target);
      if (it == seen.end()) {
        report(Severity::Error, u, e.id, "dangling gold link target " + e.gold_link->target);
        continue;
      }
      auto [tu, tpos] = it->second;
      if (tu > u || (tu == u && tpos >= e.position)) {
        report(Severity::Error, u, e.id, "forward gold link");
      }
    }
  }
  return out;
}

namespace detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct Location {
  std::string discourse = "?";
  std::optional<std::size_t> utterance;

  [[noreturn]] void fail(const std::string& message) const {
    std::string where = "discourse " + discourse;
    if (utterance) where += ", utterance " + std::to_string(*utterance);
    throw CorpusError(where + ": " + message);
  }
};

inline const Json& require(const Json& obj, const char* key, const Location& at) {
  auto it = obj.find(key);
  if (it == obj.end()) at.fail(std::string("missing field '") + key + "'");
  return *it;
}

inline std::string require_string(const Json& obj, const char* key, const Location& at) {
  const Json& v = require(obj, key, at);
  if (!v.is_string()) at.fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::size_t require_ordinal(const Json& obj, const char* key, const Location& at) {
  const Json& v = require(obj, key, at);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    at.fail(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline std::string optional_string(const Json& obj, const char* key, std::string fallback,
                                   const Location& at) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) at.fail(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

inline bool optional_bool(const Json& obj, const char* key, const Location& at) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return false;
  if (!it->is_boolean()) at.fail(std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

template <typename E>
E enum_field(const std::string& text, const char* key, const Location& at) {
  auto v = parse_enum<E>(text);
  if (!v) {
    at.fail(std::string("field '") + key + "' has unknown value '" + text + "' (expected one of " +
            enum_choices<E>() + ")");
  }
  return *v;
}

inline GoldLink parse_gold_link(const Json& j, const Location& at) {
  if (!j.is_object()) at.fail("field 'gold_link' must be an object");
  GoldLink link;
  link.target = require_string(j, "target", at);
  link.type = enum_field<LinkType>(require_string(j, "type", at), "type", at);
  if (auto it = j.find("relation"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) at.fail("field 'relation' must be a string");
    link.relation = it->get<std::string>();
  }
  if (auto it = j.find("unsupported_category"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) at.fail("field 'unsupported_category' must be a string");
    link.unsupported_category =
        enum_field<UnsupportedCategory>(it->get<std::string>(), "unsupported_category", at);
  }
  return link;
}

inline Expression parse_expression(const Json& j, std::size_t utterance, const Location& at) {
  if (!j.is_object()) at.fail("expression must be an object");
  Expression e;
  e.id = require_string(j, "id", at);
  e.utterance_index = utterance;
  e.position = require_ordinal(j, "position", at);
  e.surface = require_string(j, "surface", at);
  e.head = require_string(j, "head", at);
  e.concept_name = require_string(j, "concept", at);
  e.form = enum_field<ExpressionForm>(require_string(j, "form", at), "form", at);
  e.role = enum_field<GrammaticalRole>(optional_string(j, "role", "none", at), "role", at);
  e.agreement.gender = enum_field<Gender>(optional_string(j, "gender", "unknown", at), "gender", at);
  e.agreement.number = enum_field<Number>(optional_string(j, "number", "unknown", at), "number", at);
  e.agreement.person = enum_field<Person>(optional_string(j, "person", "third", at), "person", at);
  e.is_attribute_head = optional_bool(j, "is_attribute_head", at);
  e.exclude_from_cf = optional_bool(j, "exclude_from_cf", at);
  e.context_bound = optional_bool(j, "context_bound", at);
  if (auto it = j.find("gold_link"); it != j.end() && !it->is_null()) {
    e.gold_link = parse_gold_link(*it, at);
  }
  return e;
}

inline Discourse parse_discourse(const Json& j) {
  Location at;
  if (!j.is_object()) at.fail("discourse must be an object");
  Discourse d;
  d.id = require_string(j, "id", at);
  at.discourse = d.id;
  d.language = optional_string(j, "language", "", at);
  d.section = optional_string(j, "section", "default", at);
  const Json& utts = require(j, "utterances", at);
  if (!utts.is_array()) at.fail("field 'utterances' must be an array");
  for (std::size_t u = 0; u < utts.size(); ++u) {
    at.utterance = u;
    const Json& uj = utts[u];
    if (!uj.is_object()) at.fail("utterance must be an object");
    Utterance utt;
    utt.index = require_ordinal(uj, "index", at);
    utt.text = optional_string(uj, "text", "", at);
    const Json& exprs = require(uj, "expressions", at);
    if (!exprs.is_array()) at.fail("field 'expressions' must be an array");
    for (const Json& ej : exprs) utt.expressions.push_back(parse_expression(ej, u, at));
    d.utterances.push_back(std::move(utt));
  }
  return d;
}

inline OrderedJson expression_to_json(const Expression& e) {
  OrderedJson j;
  j["id"] = e.id;
  j["position"] = e.position;
  j["surface"] = e.surface;
  j["head"] = e.head;
  j["concept"] = e.concept_name;
  j["form"] = name_of(e.form);
  j["role"] = name_of(e.role);
  j["gender"] = name_of(e.agreement.gender);
  j["number"] = name_of(e.agreement.number);
  j["person"] = name_of(e.agreement.person);
  j["is_attribute_head"] = e.is_attribute_head;
  j["exclude_from_cf"] = e.exclude_from_cf;
  if (e.context_bound) j["context_bound"] = true;
  if (e.gold_link) {
    OrderedJson link;
    link["target"] = e.gold_link->target;
    link["type"] = name_of(e.gold_link->type);
    if (e.gold_link->relation) link["relation"] = *e.gold_link->relation;
    if (e.gold_link->unsupported_category) {
      link["unsupported_category"] = name_of(*e.gold_link->unsupported_category);
    }
    j["gold_link"] = std::move(link);
  }
  return j;
}

}  // namespace detail

// Schema-level parse only: types and required fields are checked, data-model
// invariants are not. Use validate_discourse on the result.
inline std::vector<Discourse> parse_corpus_unchecked(std::string_view content) {
  detail::Json root;
  try {
    root = detail::Json::parse(content);
  } catch (const detail::Json::parse_error& e) {
    throw CorpusError(std::string("malformed corpus file: ") + e.what());
  }
  if (!root.is_object() || !root.contains("discourses") || !root["discourses"].is_array()) {
    throw CorpusError("corpus file must be an object with a 'discourses' array");
  }
  std::vector<Discourse> out;
  for (const auto& dj : root["discourses"]) out.push_back(detail::parse_discourse(dj));
  return out;
}

// Parses and enforces every error-severity invariant; the first violation is
// thrown as a CorpusError naming the discourse and utterance.
inline std::vector<Discourse> parse_corpus(std::string_view content) {
  auto discourses = parse_corpus_unchecked(content);
  for (const auto& d : discourses) {
    for (const auto& diag : validate_discourse(d)) {
      if (diag.severity == Severity::Error) throw CorpusError(diag.to_string());
    }
  }
  return discourses;
}

inline std::string serialize_corpus(const std::vector<Discourse>& discourses) {
  detail::OrderedJson root;
  root["discourses"] = detail::OrderedJson::array();
  for (const auto& d : discourses) {
    detail::OrderedJson dj;
    dj["id"] = d.id;
    dj["language"] = d.language;
    dj["section"] = d.section;
    dj["utterances"] = detail::OrderedJson::array();
    for (const auto& u : d.utterances) {
      detail::OrderedJson uj;
      uj["index"] = u.index;
      uj["text"] = u.text;
      uj["expressions"] = detail::OrderedJson::array();
      for (const auto& e : u.expressions) uj["expressions"].push_back(detail::expression_to_json(e));
      dj["utterances"].push_back(std::move(uj));
    }
    root["discourses"].push_back(std::move(dj));
  }
  return root.dump(2) + "\n";
}

// Expression lookup plus gold coreference chains: every expression maps to
// the id of the first expression of its chain. Textual-ellipsis links do not
// merge chains.
class DiscourseIndex {
 public:
  explicit DiscourseIndex(const Discourse& d) {
    for (const auto& u : d.utterances) {
      for (const auto& e : u.expressions) {
        by_id_.emplace(e.id, &e);
        std::string root = e.id;
        if (e.gold_link && e.gold_link->type == LinkType::Coreference) {
          auto it = roots_.find(e.gold_link->target);
          if (it != roots_.end()) root = it->second;
        }
        roots_.emplace(e.id, std::move(root));
      }
    }
  }

  const Expression* find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
  }

  const Expression& at(const std::string& id) const {
    const Expression* e = find(id);
    if (!e) throw CorpusError("unknown expression id " + id);
    return *e;
  }

  // Chain root of an expression id; ids unknown to the index are their own root.
  std::string root_of(const std::string& id) const {
    auto it = roots_.find(id);
    return it == roots_.end() ? id : it->second;
  }

 private:
  std::map<std::string, const Expression*> by_id_;
  std::map<std::string, std::string> roots_;
};

}  // namespace centerline
