#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

namespace cl = centerline;
using namespace centerline::testing;
using cl::PairCost;
using cl::Strategy;
using cl::TransitionType;
using T = cl::TransitionType;

namespace {

cl::LinkDecisions gold_links(const cl::Discourse& d, std::size_t u) {
  cl::DiscourseIndex index(d);
  return cl::gold_decisions(d.utterances.at(u), index);
}

cl::CenteringTrace run(const cl::Discourse& d, Strategy s, cl::ResolutionMode m = cl::ResolutionMode::Gold) {
  return cl::run_discourse(d, domain_kb(), s, m);
}

}  // namespace

TEST(RealizedEntities, Examples) {
  auto d1 = fragment1();
  EXPECT_EQ(cl::realized_entities(d1.utterances[1], gold_links(d1, 1)),
            (std::set<std::string>{"f1-316lt", "f1-akkus", "f1-anwender", "f1-status"}));
  auto d2 = fragment2();
  EXPECT_EQ(cl::realized_entities(d2.utterances[2], gold_links(d2, 2)),
            (std::set<std::string>{"f2-1-5-stunden", "f2-ladezeit", "f2-nimh-akku"}));
  EXPECT_TRUE(cl::realized_entities(cl::Utterance{}, {}).empty());
  // excluded "5 Minuten" realizes nothing
  EXPECT_EQ(cl::realized_entities(d1.utterances[3], gold_links(d1, 3)),
            (std::set<std::string>{"f1-316lt", "f1-led"}));
}

TEST(ComputeCb, Examples) {
  auto d1 = fragment1();
  auto t1 = run(d1, Strategy::Functional);
  auto cb = cl::compute_cb(t1.states[2].cf, cl::realized_entities(d1.utterances[3], gold_links(d1, 3)));
  ASSERT_TRUE(cb);
  EXPECT_EQ(cb->entity, "f1-316lt");

  auto d2 = fragment2();
  auto t2 = run(d2, Strategy::Functional);
  cb = cl::compute_cb(t2.states[1].cf, cl::realized_entities(d2.utterances[2], gold_links(d2, 2)));
  ASSERT_TRUE(cb);
  EXPECT_EQ(cb->concept_name, "NiMH-ACCU");

  EXPECT_FALSE(cl::compute_cb(t2.states[1].cf, {"nothing"}));
}

TEST(ClassifyTransition, Examples) {
  EXPECT_EQ(cl::classify_transition("dell", "dell", "nimh"), T::Retain);
  EXPECT_EQ(cl::classify_transition("dell", "nimh", "nimh"), T::SmoothShift);
  EXPECT_EQ(cl::classify_transition("dell", std::nullopt, "nimh"), T::None);
  EXPECT_EQ(cl::classify_transition(std::nullopt, "a", "a"), T::Continue);
  EXPECT_EQ(cl::classify_transition(std::nullopt, "a", "b"), T::Retain);
  EXPECT_EQ(cl::classify_transition("a", "b", "c"), T::RoughShift);
}

TEST(PairCostDefinitional, Examples) {
  EXPECT_EQ(cl::pair_cost_definitional("nimh", "nimh"), PairCost::Cheap);
  EXPECT_EQ(cl::pair_cost_definitional("dell", "dell"), PairCost::Cheap);
  EXPECT_EQ(cl::pair_cost_definitional("nimh", "dell"), PairCost::Expensive);
  EXPECT_EQ(cl::pair_cost_definitional(std::nullopt, "dell"), PairCost::Undefined);
  EXPECT_EQ(cl::pair_cost_definitional("dell", std::nullopt), PairCost::Undefined);
}

TEST(PairCostTable, AllTwentyCells) {
  // Rows and columns in the order of the published cost table.
  const std::vector<cl::PreviousTransition> rows{std::nullopt, T::Continue, T::Retain, T::SmoothShift,
                                                 T::RoughShift};
  const std::vector<T> cols{T::Continue, T::Retain, T::SmoothShift, T::RoughShift};
  const char* table[5][4] = {
      {"cheap", "expensive", "–", "–"},
      {"cheap", "cheap", "expensive", "expensive"},
      {"expensive", "expensive", "cheap", "expensive"},
      {"cheap", "expensive", "expensive", "expensive"},
      {"expensive", "expensive", "cheap", "expensive"},
  };
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string cell = table[r][c];
      std::string want = cell == "–" ? "undefined" : cell;
      EXPECT_EQ(cl::name_of(cl::pair_cost_table(rows[r], cols[c])), want) << r << "," << c;
    }
  }
  EXPECT_EQ(cl::pair_cost_table(T::Continue, T::None), PairCost::Undefined);
  EXPECT_EQ(cl::pair_cost_table(T::None, T::Continue), PairCost::Undefined);
}

TEST(RunDiscourse, FunctionalFragmentOne) {
  auto t = run(fragment1(), Strategy::Functional);
  EXPECT_EQ(transitions(t), (std::vector<T>{T::Continue, T::Continue, T::Continue, T::Continue}));
  EXPECT_TRUE(t.states[0].is_discourse_initial);
  EXPECT_EQ(t.states[0].cost_definitional, PairCost::Undefined);
  EXPECT_EQ(t.states[0].cost_table, PairCost::Undefined);
  EXPECT_EQ(cl::entity_id(t.states[0].cb), cl::entity_id(t.states[0].cp));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(t.states[i].cost_definitional, PairCost::Cheap);
  EXPECT_EQ(t.states[3].cb->surface, "er");
}

TEST(RunDiscourse, FunctionalFragmentTwo) {
  auto t = run(fragment2(), Strategy::Functional);
  EXPECT_EQ(transitions(t), (std::vector<T>{T::Continue, T::Retain, T::SmoothShift}));
  EXPECT_EQ(t.states[1].cost_definitional, PairCost::Cheap);
  EXPECT_EQ(t.states[2].cost_definitional, PairCost::Cheap);
  // first pair is read from the discourse-initial row of the table
  EXPECT_EQ(t.states[1].cost_table, PairCost::Expensive);
  EXPECT_EQ(t.states[2].cost_table, PairCost::Cheap);
}

TEST(RunDiscourse, BaselinesMatchOracle) {
  for (const auto& d : fragments()) {
    for (Strategy s : {Strategy::Naive, Strategy::NaiveAnteExpress, Strategy::Canonical,
                       Strategy::CanonicalAnteExpress}) {
      auto t = run(d, s);
      auto o = oracle_trace(d, s);
      ASSERT_EQ(t.states.size(), o.size());
      for (std::size_t i = 0; i < o.size(); ++i) {
        EXPECT_EQ(t.states[i].cf.entities(), o[i].cf) << d.id << " " << cl::name_of(s) << " U" << i;
        EXPECT_EQ(cl::entity_id(t.states[i].cb), o[i].cb) << d.id << " " << cl::name_of(s) << " U" << i;
        EXPECT_EQ(cl::name_of(t.states[i].transition), o[i].transition) << d.id << " " << cl::name_of(s) << " U" << i;
        EXPECT_EQ(cl::name_of(t.states[i].cost_definitional), o[i].cost) << d.id << " " << cl::name_of(s);
      }
    }
  }
}

TEST(RunDiscourse, CanonicalContrastOnFragmentTwo) {
  auto t = run(fragment2(), Strategy::Canonical);
  EXPECT_EQ(t.states[1].cp->entity, "f2-316lt");
  EXPECT_EQ(t.states[1].cp->surface, "Rechner");
  EXPECT_EQ(t.states[1].transition, T::Continue);
  EXPECT_EQ(t.states[2].cb->entity, "f2-nimh-akku");
  EXPECT_EQ(t.states[2].cost_definitional, PairCost::Expensive);
  EXPECT_EQ(t.states[2].transition, cl::parse_enum<T>(oracle_trace(fragment2(), Strategy::Canonical)[2].transition));
}

TEST(RunDiscourse, UndefinedCbMidDiscourse) {
  auto d = fragment2();
  d.utterances[2].expressions[0].gold_link.reset();
  auto t = run(d, Strategy::Functional);
  EXPECT_EQ(t.states[2].transition, T::None);
  EXPECT_FALSE(t.states[2].cb);
  EXPECT_EQ(t.states[2].cost_definitional, PairCost::Undefined);
  EXPECT_EQ(t.states[2].cost_table, PairCost::Undefined);
}

TEST(RunDiscourse, ErrorsCarryLocation) {
  auto kb = cl::parse_kb("concept(DELL-316LT)\nconcept(NiMH-ACCU)\n");
  try {
    cl::run_discourse(fragment2(), kb, Strategy::Functional, cl::ResolutionMode::System);
    FAIL();
  } catch (const cl::CorpusError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("discourse fragment-2, utterance 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("unknown concept"), std::string::npos) << msg;
  }
}

TEST(ClassifyTransitionProperty, ExhaustiveAndExclusive) {
  std::vector<std::optional<std::string>> values{std::nullopt, "a", "b", "c"};
  auto check = [](const auto& prev, const auto& cur, const auto& cp) {
    bool kept = cur && (!prev || prev == cur);
    bool conditions[5] = {
        !cur.has_value(),
        kept && cur == cp,
        kept && cur != cp,
        cur && prev && prev != cur && cur == cp,
        cur && prev && prev != cur && cur != cp,
    };
    int hits = 0;
    for (bool c : conditions) hits += c;
    ASSERT_EQ(hits, 1);
    T expected = conditions[0]   ? T::None
                 : conditions[1] ? T::Continue
                 : conditions[2] ? T::Retain
                 : conditions[3] ? T::SmoothShift
                                 : T::RoughShift;
    ASSERT_EQ(cl::classify_transition(prev, cur, cp), expected);
  };
  for (const auto& a : values) {
    for (const auto& b : values) {
      for (const auto& c : values) check(a, b, c);
    }
  }
  std::mt19937 rng(808);
  for (int i = 0; i < 1000; ++i) {
    check(values[uniform(rng, 0, 3)], values[uniform(rng, 0, 3)], values[uniform(rng, 0, 3)]);
  }
}

TEST(RunDiscourseProperty, TraceInvariants) {
  std::mt19937 rng(909);
  auto kb = entity_pool_kb();
  for (int i = 0; i < 1000; ++i) {
    auto d = random_entity_discourse(rng, "r");
    for (Strategy s : cl::kAllStrategies) {
      auto t = cl::run_discourse(d, kb, s, cl::ResolutionMode::Gold);
      for (std::size_t n = 0; n < t.states.size(); ++n) {
        const auto& st = t.states[n];
        ASSERT_EQ(cl::entity_id(st.cp), st.cf.empty() ? std::nullopt : std::optional(st.cf.front().entity));
        if (n == 0) continue;
        const auto& prev = t.states[n - 1];
        if (st.cb) {
          ASSERT_TRUE(prev.cf.contains(st.cb->entity));
          ASSERT_TRUE(st.cf.contains(st.cb->entity));
        }
        auto realized = cl::realized_entities(d.utterances[n], gold_links(d, n));
        if (!prev.cf.empty() && realized.count(prev.cf.front().entity)) {
          ASSERT_EQ(st.cost_definitional, PairCost::Cheap);
        }
      }
    }
  }
}

TEST(RunDiscourseProperty, TableAndDefinitionDisagreeOnlyAfterSmoothShiftRetain) {
  std::mt19937 rng(1010);
  auto kb = entity_pool_kb();
  std::set<std::pair<T, T>> disagreements;
  std::set<std::pair<T, T>> seen;
  for (int i = 0; i < 1000; ++i) {
    auto d = random_entity_discourse(rng, "r");
    for (Strategy s : cl::kAllStrategies) {
      auto t = cl::run_discourse(d, kb, s, cl::ResolutionMode::Gold);
      for (std::size_t n = 2; n < t.states.size(); ++n) {
        T prev = t.states[n - 1].transition, cur = t.states[n].transition;
        if (prev != T::Continue && prev != T::SmoothShift) continue;
        seen.insert({prev, cur});
        if (t.states[n].cost_definitional != t.states[n].cost_table) {
          disagreements.insert({prev, cur});
          ASSERT_EQ(t.states[n].cost_definitional, PairCost::Cheap);
          ASSERT_EQ(t.states[n].cost_table, PairCost::Expensive);
        }
      }
    }
  }
  EXPECT_EQ(seen.size(), 10u);  // both rows against all five current transitions
  EXPECT_EQ(disagreements, (std::set<std::pair<T, T>>{{T::SmoothShift, T::Retain}}));
}
