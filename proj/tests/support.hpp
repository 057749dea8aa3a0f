#pragma once

// Shared fixture loading and random generators for the test suites.

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "centerline/centerline.hpp"

namespace centerline::testing {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string data_path(const std::string& name) { return std::string(CENTERLINE_DATA_DIR) + "/" + name; }

inline std::vector<Discourse> fragments() { return parse_corpus(slurp(data_path("fragments.json"))); }
inline Discourse fragment1() { return fragments().at(0); }
inline Discourse fragment2() { return fragments().at(1); }
inline KnowledgeBase domain_kb() { return parse_kb(slurp(data_path("domain.kb"))); }

// "CONCEPT: surface" labels in Cf order, "—" for implicit elements.
inline std::vector<std::string> cf_labels(const CfList& cf) {
  std::vector<std::string> out;
  for (const auto& e : cf) out.push_back(element_label(e));
  return out;
}

inline std::vector<TransitionType> transitions(const CenteringTrace& t) {
  std::vector<TransitionType> out;
  for (const auto& s : t.states) out.push_back(s.transition);
  return out;
}

inline const Expression& expr(const Discourse& d, const std::string& id) {
  for (const auto& u : d.utterances) {
    for (const auto& e : u.expressions) {
      if (e.id == id) return e;
    }
  }
  throw std::runtime_error("no expression " + id);
}

template <typename E, std::size_t N>
E pick(std::mt19937& rng, const std::array<std::pair<E, std::string_view>, N>& table) {
  std::uniform_int_distribution<std::size_t> dist(0, N - 1);
  return table[dist(rng)].first;
}

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::string random_token(std::mt19937& rng) {
  static const std::vector<std::string> alphabet = {"a", "e", "n", "r", "t", "Ä", "Ö", "ü", "ß",
                                                    "-", ",", " ", "\"", "\\", "—", "Σ"};
  std::string s;
  std::size_t n = uniform(rng, 0, 8);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[uniform(rng, 0, alphabet.size() - 1)];
  return s;
}

// Random element sets shaped like real candidate lists: distinct entities,
// distinct explicit positions, implicit elements sharing the position of a
// distinct explicit licensing expression.
inline std::vector<CenterElement> random_candidates(std::mt19937& rng, std::size_t max_size = 8) {
  std::size_t n = uniform(rng, 1, max_size);
  std::vector<std::size_t> positions;
  for (std::size_t p = 0; positions.size() < n; ++p) {
    if (coin(rng, 0.6)) positions.push_back(p);
  }
  std::vector<CenterElement> out;
  std::vector<std::size_t> licensing;
  for (std::size_t i = 0; i < n; ++i) {
    CenterElement e;
    e.entity = "E" + std::to_string(i);
    e.concept_name = "C" + std::to_string(uniform(rng, 0, 3));
    e.expression = "x" + std::to_string(i);
    e.surface = "s" + std::to_string(i);
    e.position = positions[i];
    e.role = pick(rng, EnumNames<GrammaticalRole>::table);
    e.agreement = {pick(rng, EnumNames<Gender>::table), pick(rng, EnumNames<Number>::table), Person::Third};
    switch (uniform(rng, 0, 5)) {
      case 0:
        e.status = ISStatus::bound(BoundForm::Anaphor);
        break;
      case 1:
        e.status = ISStatus::bound(BoundForm::PossessivePronoun);
        break;
      case 2:
        e.status = ISStatus::bound(BoundForm::EllipticalExpression);
        licensing.push_back(i);
        break;
      case 3:
        e.status = ISStatus::bound(BoundForm::AnaphoricAttributeHead);
        break;
      default:
        e.status = ISStatus::unbound();
    }
    out.push_back(std::move(e));
  }
  std::size_t next = n;
  for (std::size_t li : licensing) {
    if (!coin(rng, 0.7)) continue;
    CenterElement a;
    a.entity = "E" + std::to_string(next++);
    a.concept_name = "C" + std::to_string(uniform(rng, 0, 3));
    a.status = ISStatus::bound(BoundForm::EllipticalAntecedent);
    a.position = out[li].position;
    a.role = out[li].role;
    a.agreement = {pick(rng, EnumNames<Gender>::table), pick(rng, EnumNames<Number>::table), Person::Third};
    out.push_back(std::move(a));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// Small valid discourse with random annotation; gold links always point
// backwards.
inline Discourse random_discourse(std::mt19937& rng, const std::string& id) {
  Discourse d;
  d.id = id;
  d.language = coin(rng) ? "de" : "";
  d.section = coin(rng) ? "default" : random_token(rng);
  std::size_t n_utt = uniform(rng, 1, 4);
  std::vector<std::string> earlier;
  std::size_t counter = 0;
  for (std::size_t u = 0; u < n_utt; ++u) {
    Utterance utt;
    utt.index = u;
    utt.text = random_token(rng);
    std::size_t n_expr = uniform(rng, 0, 4);
    std::size_t pos = uniform(rng, 0, 2);
    std::vector<std::string> here;
    for (std::size_t i = 0; i < n_expr; ++i) {
      Expression e;
      e.id = id + "-e" + std::to_string(counter++);
      e.utterance_index = u;
      e.position = pos;
      pos += uniform(rng, 1, 3);
      e.surface = random_token(rng);
      e.head = random_token(rng);
      e.concept_name = "C" + std::to_string(uniform(rng, 0, 5));
      e.form = pick(rng, EnumNames<ExpressionForm>::table);
      e.role = coin(rng) ? GrammaticalRole::Adjunct : pick(rng, EnumNames<GrammaticalRole>::table);
      e.agreement = {pick(rng, EnumNames<Gender>::table), pick(rng, EnumNames<Number>::table),
                     is_pronoun(e.form) ? pick(rng, EnumNames<Person>::table) : Person::Third};
      e.is_attribute_head = coin(rng, 0.2);
      e.exclude_from_cf = coin(rng, 0.1);
      e.context_bound = coin(rng, 0.1);
      std::vector<std::string> targets = earlier;
      targets.insert(targets.end(), here.begin(), here.end());
      if (!targets.empty() && coin(rng, 0.4)) {
        GoldLink link;
        link.target = targets[uniform(rng, 0, targets.size() - 1)];
        link.type = coin(rng) ? LinkType::Coreference : LinkType::TextualEllipsis;
        if (coin(rng)) link.relation = random_token(rng);
        if (coin(rng, 0.2)) link.unsupported_category = pick(rng, EnumNames<UnsupportedCategory>::table);
        e.gold_link = link;
      }
      here.push_back(e.id);
      utt.expressions.push_back(std::move(e));
    }
    earlier.insert(earlier.end(), here.begin(), here.end());
    d.utterances.push_back(std::move(utt));
  }
  return d;
}

// Discourse over a pool of four entities, each mention linked by gold
// coreference to the previous mention of the same entity. Running it yields
// traces with every transition type.
inline Discourse random_entity_discourse(std::mt19937& rng, const std::string& id, std::size_t max_len = 8) {
  Discourse d;
  d.id = id;
  std::map<int, std::string> last_mention;
  std::size_t counter = 0;
  std::size_t n_utt = uniform(rng, 2, max_len);
  for (std::size_t u = 0; u < n_utt; ++u) {
    Utterance utt;
    utt.index = u;
    std::vector<int> pool{0, 1, 2, 3};
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(uniform(rng, 1, 3));
    std::size_t subject = uniform(rng, 0, pool.size() - 1);
    std::map<int, std::string> here;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      Expression e;
      e.id = id + "-m" + std::to_string(counter++);
      e.utterance_index = u;
      e.position = i;
      e.surface = e.head = "n" + std::to_string(pool[i]);
      e.concept_name = "C" + std::to_string(pool[i]);
      e.form = ExpressionForm::ProperName;
      e.role = i == subject ? GrammaticalRole::Subject
                            : (coin(rng) ? GrammaticalRole::DirObject : GrammaticalRole::Adjunct);
      if (last_mention.count(pool[i])) e.gold_link = GoldLink{last_mention[pool[i]], LinkType::Coreference, {}, {}};
      here[pool[i]] = e.id;
      utt.expressions.push_back(std::move(e));
    }
    for (const auto& [k, v] : here) last_mention[k] = v;
    d.utterances.push_back(std::move(utt));
  }
  return d;
}

inline KnowledgeBase entity_pool_kb() { return parse_kb("concept(C0)\nconcept(C1)\nconcept(C2)\nconcept(C3)\n"); }

// Independent gold-mode trace for the position/role baselines, written from
// the definitions: chain roots as entities, explicit mentions sorted by
// (role,) position, implicit antecedents spliced next to their licensing
// expression, Cb as the first previous-Cf entity realized, costs from Cb=Cp.
struct OracleState {
  std::vector<std::string> cf;
  std::optional<std::string> cb;
  std::string transition;
  std::string cost;
};

inline std::vector<OracleState> oracle_trace(const Discourse& d, Strategy s) {
  std::map<std::string, const Expression*> by_id;
  for (const auto& u : d.utterances) {
    for (const auto& e : u.expressions) by_id[e.id] = &e;
  }
  auto root = [&](std::string id) {
    while (by_id[id]->gold_link && by_id[id]->gold_link->type == LinkType::Coreference) {
      id = by_id[id]->gold_link->target;
    }
    return id;
  };
  bool canonical = s == Strategy::Canonical || s == Strategy::CanonicalAnteExpress;
  bool ae = s == Strategy::NaiveAnteExpress || s == Strategy::CanonicalAnteExpress;

  std::vector<OracleState> out;
  for (const auto& u : d.utterances) {
    std::vector<const Expression*> mentions;
    for (const auto& e : u.expressions) {
      if (!e.exclude_from_cf) mentions.push_back(&e);
    }
    std::stable_sort(mentions.begin(), mentions.end(), [&](auto* a, auto* b) {
      if (canonical && a->role != b->role) return a->role < b->role;
      return a->position < b->position;
    });
    std::set<std::string> explicit_entities;
    for (auto* e : mentions) explicit_entities.insert(root(e->id));
    OracleState st;
    std::set<std::string> realized = explicit_entities;
    for (auto* e : mentions) {
      std::optional<std::string> implicit;
      if (e->gold_link && e->gold_link->type == LinkType::TextualEllipsis) {
        auto a = root(e->gold_link->target);
        realized.insert(a);
        if (!explicit_entities.count(a)) implicit = a;
      }
      if (implicit && ae) st.cf.push_back(*implicit);
      st.cf.push_back(root(e->id));
      if (implicit && !ae) st.cf.push_back(*implicit);
    }
    if (out.empty()) {
      st.cb = st.cf.front();
      st.transition = "CONTINUE";
      st.cost = "undefined";
    } else {
      const auto& prev = out.back();
      for (const auto& x : prev.cf) {
        if (realized.count(x)) {
          st.cb = x;
          break;
        }
      }
      bool same = st.cb == prev.cb, preferred = st.cb == st.cf.front();
      st.transition = !st.cb ? "NONE"
                      : same ? (preferred ? "CONTINUE" : "RETAIN")
                             : (preferred ? "SMOOTH-SHIFT" : "ROUGH-SHIFT");
      st.cost = !st.cb ? "undefined" : (*st.cb == prev.cf.front() ? "cheap" : "expensive");
    }
    out.push_back(st);
  }
  return out;
}

}  // namespace centerline::testing
