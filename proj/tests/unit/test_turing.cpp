#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "tmred/turing.hpp"

using namespace tmred;
using tmred::support::tiny_machine;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Turing, SuccessorQ0IsRejected) {
  Machine m = tiny_machine(2, {{"q1", "|", "q0", "|", 'S'}});
  EXPECT_TRUE(has_violation(validate_machine(m), "successor state is q0"));
}

TEST(Turing, LeftOnMarkerIsRejected) {
  Machine m = tiny_machine(3, {{"q1", "#", "q2", "#", 'L'}});
  EXPECT_TRUE(has_violation(validate_machine(m), "moves left on #"));
}

TEST(Turing, SelfLoopingHaltersAreValid) {
  EXPECT_TRUE(validate_machine(tiny_machine(1, {})).empty());
  EXPECT_TRUE(validate_machine(support::load_machine("M_A")).empty());
}

TEST(Turing, InitialConfig) {
  Machine m = tiny_machine(1, {});
  Config c0 = initial_config(m, 0);
  EXPECT_EQ(c0.state, "q0");
  EXPECT_EQ(c0.head, 0u);
  EXPECT_EQ(join_word(c0.tape), "#");
  EXPECT_EQ(join_word(initial_config(m, 3).tape), "#|||");
  RunTrace t = run_trace(m, 1, 0);
  ASSERT_EQ(t.configs.size(), 1u);
  EXPECT_EQ(t.configs[0], initial_config(m, 1));
  EXPECT_EQ(t.status, RunStatus::Running);
}

TEST(Turing, StepRules) {
  Machine m = tiny_machine(3, {{"q0", "#", "q1", "#", 'R'}, {"q1", "_", "q2", "|", 'L'}});
  Config c = initial_config(m, 0);
  Config c1 = step(m, c);
  EXPECT_EQ(c1.state, "q1");
  EXPECT_EQ(c1.head, 1u);
  EXPECT_EQ(c1.word(m.blank), (std::vector<std::string>{"#", "q1", "_"}));
  Config c2 = step(m, c1);
  EXPECT_EQ(c2.state, "q2");
  EXPECT_EQ(c2.head, 0u);
  EXPECT_EQ(join_word(c2.tape), "#|");

  Config h{"hx", 1, {"#", "|"}};
  EXPECT_EQ(step(m, h), h);
}

TEST(Turing, RunHaltsAtStepTwo) {
  Machine m = tiny_machine(2, {{"q0", "#", "q1", "#", 'S'}, {"q1", "#", "hx", "#", 'S'}});
  RunTrace t = run_trace(m, 0, 100);
  EXPECT_EQ(t.status, RunStatus::Halted);
  EXPECT_EQ(t.halt_state, "hx");
  EXPECT_EQ(t.halt_step, 2u);
  EXPECT_EQ(t.configs[t.halt_step].state, "hx");
}

TEST(Turing, CycleDetection) {
  Machine m = tiny_machine(3, {{"q0", "#", "q1", "#", 'S'}, {"q1", "#", "q2", "#", 'S'}, {"q2", "#", "q1", "#", 'S'}});
  RunTrace t = run_trace(m, 0, 100, true);
  EXPECT_EQ(t.status, RunStatus::Cycled);
  EXPECT_EQ(t.cycle_first, 1u);
  EXPECT_EQ(t.cycle_second, 3u);
  EXPECT_EQ(run_trace(m, 0, 100, false).status, RunStatus::Running);
}

// random valid machines keep # in cell 0 only, and halting configs are fixed points up to trailing blanks
TEST(Turing, MarkerDisciplineOnRandomMachines) {
  std::mt19937 rng(7);
  size_t steps = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int ns = 3;
    Machine m = tiny_machine(ns, {});
    std::vector<std::string> targets{"q1", "q2", "hx", "hy"};
    for (int q = 0; q < ns; ++q)
      for (auto s : m.sigma) {
        Instr ins;
        ins.q2 = targets[rng() % targets.size()];
        if (s == "#") {
          ins.s2 = "#";
          ins.move = rng() % 2 ? Move::R : Move::S;
        } else {
          ins.s2 = rng() % 2 ? "_" : "|";
          ins.move = static_cast<Move>(rng() % 3);
        }
        m.delta[{"q" + std::to_string(q), s}] = ins;
      }
    ASSERT_TRUE(validate_machine(m).empty());
    RunTrace t = run_trace(m, rng() % 4, 40);
    for (auto& c : t.configs) {
      ASSERT_EQ(c.tape[0], "#");
      ASSERT_EQ(std::count(c.tape.begin(), c.tape.end(), "#"), 1);
      if (m.is_halting(c.state)) ASSERT_EQ(step(m, c).word(m.blank), c.word(m.blank));
    }
    steps += t.configs.size();
    EXPECT_EQ(run_trace(m, 2, 40).configs, run_trace(m, 2, 40).configs);
  }
  EXPECT_GE(steps, 1000u);
}
