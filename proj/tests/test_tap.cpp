#include <gtest/gtest.h>

#include "phic/errors.hpp"
#include "phic/gen.hpp"
#include "phic/reduction.hpp"
#include "phic/surface.hpp"
#include "phic/tap.hpp"

using namespace phic;

namespace {

Term P(const char* s) { return parse_term(s); }

}  // namespace

TEST(Inject, ClosedTermsOnly) {
  Configuration c = inject(P("[]"));
  EXPECT_EQ(to_string(c), "<[], ε, ε>");
  EXPECT_EQ(to_string(inject(P("[x -> []].x"))), "<[x -> []].x, ε, ε>");
  try {
    inject(P("^0"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OpenTerm);
    EXPECT_NE(std::string(e.what()).find("^0"), std::string::npos);
  }
}

TEST(MachineStep, HandTrace) {
  Configuration c = inject(P("[x -> []].x"));
  const std::vector<std::pair<int, std::string>> expected = {
      {3, "<[x -> []], .x, ε>"},
      {5, "<ε, .x, ([x -> []], {})>"},
      {6, "<[], ε, ([x -> []], {})>"},
      {5, "<ε, ε, ([], {}) : ([x -> []], {})>"},
  };
  for (const auto& [rule, text] : expected) {
    auto s = machine_step(c);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->rule, rule);
    EXPECT_EQ(to_string(s->next), text);
    c = s->next;
  }
  EXPECT_FALSE(machine_step(c).has_value());
  EXPECT_EQ(decode(c), P("[]"));
}

TEST(MachineStep, LocatorWalksUpParents) {
  ParentStack e = ParentStack().push(Parent{P("[c -> []]"), {}});
  ParentStack e2 = e.push(Parent{P("[d -> []]"), {}});
  ActionStack p = ActionStack().push(Action::access(Label("q")));
  auto s = machine_step({Term::locator(1), p, e2});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->rule, 2);
  EXPECT_EQ(*s->next.focus, Term::locator(0));
  EXPECT_TRUE(s->next.parents.same(e));
  EXPECT_TRUE(s->next.actions.same(p));
}

TEST(MachineStep, NoRuleForMissingLabel) {
  Configuration c{std::nullopt, ActionStack().push(Action::access(Label("a"))),
                  ParentStack().push(Parent{P("[b -> []]"), {}})};
  EXPECT_FALSE(machine_step(c).has_value());
}

TEST(MachineStep, DecoratorAndApplicationRules) {
  ParentStack parents = ParentStack().push(Parent{P("[@ -> [], b -> ?]"), {}});
  auto fall = machine_step({std::nullopt, ActionStack().push(Action::access(Label("a"))), parents});
  ASSERT_TRUE(fall.has_value());
  EXPECT_EQ(fall->rule, 8);
  EXPECT_EQ(fall->next.actions.top().label, Label::phi());
  EXPECT_EQ(fall->next.actions.size(), 2u);

  ObjectClosure arg{P("[]"), {}};
  auto inst = machine_step({std::nullopt, ActionStack().push(Action::apply(Label("b"), arg)), parents});
  ASSERT_TRUE(inst.has_value());
  EXPECT_EQ(inst->rule, 9);
  EXPECT_EQ(inst->next.parents.top().applications.count(Label("b")), 1u);

  // A second application of the same label matches nothing.
  auto again = machine_step({std::nullopt, ActionStack().push(Action::apply(Label("b"), arg)),
                             inst->next.parents});
  EXPECT_FALSE(again.has_value());

  auto read = machine_step({std::nullopt, ActionStack().push(Action::access(Label("b"))), inst->next.parents});
  ASSERT_TRUE(read.has_value());
  EXPECT_EQ(read->rule, 7);
  EXPECT_EQ(*read->next.focus, P("[]"));
}

TEST(Run, Examples) {
  MachineRun a = run(P("[x -> ?, y -> ^0.x](x -> []).y"), 100);
  EXPECT_EQ(a.status, MachineStatus::Terminal);
  EXPECT_EQ(decode(a.final), P("[]"));
  EvalOutcome head = Reducer().evaluate(P("[x -> ?, y -> ^0.x](x -> []).y"), Strategy::HeadOnly, 100);
  EXPECT_EQ(decode(a.final), head.term);

  MachineRun b = run(P("[x -> ^0.y, y -> ^0.x].x"), 100);
  EXPECT_EQ(b.status, MachineStatus::FuelExhausted);
  EXPECT_EQ(b.steps, 100u);

  MachineRun c = run(P("[]"), 1);
  EXPECT_EQ(c.status, MachineStatus::Terminal);
  EXPECT_EQ(c.steps, 1u);
}

TEST(Run, TraceAndErrors) {
  MachineRun a = run(P("[x -> []].x"), 10, true);
  ASSERT_TRUE(a.trace.has_value());
  ASSERT_EQ(a.trace->size(), 4u);
  EXPECT_EQ(a.trace->front().rule, 3);
  EXPECT_EQ(a.trace->back().step, 4u);

  EXPECT_THROW(run(P("[]"), 0), Error);
  try {
    run(P("[]"), 10, false, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedVariant);
  }
  EXPECT_THROW(run(P("^0"), 10), Error);
}

TEST(Decode, Examples) {
  TermGenerator g(41);
  for (int i = 0; i < 200; ++i) {
    Term t = g.closed_term(10);
    EXPECT_EQ(decode(inject(t)), t);
  }
  Configuration c{P("[]"), ActionStack().push(Action::apply(Label("a"), ObjectClosure{P("[]"), {}})), {}};
  EXPECT_EQ(decode(c), P("[](a -> [])"));
}

TEST(Decode, ApplicationMappingsAndEnvironments) {
  // The pending argument refers to the outer object; it is decoded against
  // its own saved stack, not the current one.
  Term t = P("[k -> [v -> ?, r -> ^0.v], out -> ^0.k(v -> ^0)].out.r");
  MachineRun m = run(t, 200);
  ASSERT_EQ(m.status, MachineStatus::Terminal);
  Reducer r;
  EvalOutcome head = r.evaluate(t, Strategy::HeadOnly, 200);
  EXPECT_EQ(joinable(r, decode(m.final), head.term, 100), JoinResult::Joined);
}

TEST(Properties, DecodedSnapshotsStayOnTheReductionPath) {
  TermGenerator g(42);
  Reducer r;
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Term t = g.closed_term(9);
    MachineRun m = run(t, 60, true);
    for (const auto& entry : *m.trace) {
      Term d = decode(entry.config);
      ASSERT_NE(joinable(r, d, t, 300), JoinResult::Disjoint) << pretty(t) << " step " << entry.step;
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}
