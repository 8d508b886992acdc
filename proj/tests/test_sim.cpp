//  Copyright 2026 The boundla Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include <gtest/gtest.h>

#include <map>

#include "boundla/boundla.hpp"

namespace {

using namespace boundla;

NetworkConfig config(std::size_t n, std::size_t f, Mode mode, SchedulerPolicy s = {},
                     std::uint64_t seed = 0) {
  NetworkConfig c;
  c.n = n;
  c.f = f;
  c.mode = mode;
  c.scheduler = s;
  c.seed = seed;
  return c;
}

// ---- synchronous world ----------------------------------------------------

TEST(SyncWorld, NoCrashesAgreeOnMax) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 2};
  const auto out = run_sync(c, config(3, 1, Mode::kSyncRounds), {}, std::span<const int>(y));
  for (const auto& d : out.decided) EXPECT_EQ(d, 2);
  std::size_t max_round = 0;
  for (const auto& e : out.trace.events) max_round = std::max(max_round, e.round);
  EXPECT_EQ(max_round, 2u);
}

TEST(SyncWorld, FaultFreeSingleRound) {
  const IntegerChain c(9);
  const std::vector<int> y{4, 1, 7, 7};
  const auto out = run_sync(c, config(4, 0, Mode::kSyncRounds), {}, std::span<const int>(y));
  for (const auto& d : out.decided) EXPECT_EQ(d, 7);
}

TEST(SyncWorld, PartialBroadcastRelayed) {
  // the only holder of 2 reaches p1 before crashing; p1 relays in round 2
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 1};
  CrashSchedule crash;
  crash.crashes[2] = CrashPoint{1, std::set<std::size_t>{1}};
  const auto out = run_sync(c, config(3, 1, Mode::kSyncRounds), crash, std::span<const int>(y));
  EXPECT_EQ(out.decided[0], 2);
  EXPECT_FALSE(out.decided[1]);
  EXPECT_EQ(out.decided[2], 2);
  EXPECT_EQ(out.crashed(), (std::set<std::size_t>{2}));
}

TEST(SyncWorld, NoEventsAfterCrash) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 5, 3, 2};
  CrashSchedule crash;
  crash.crashes[2] = CrashPoint{1, std::set<std::size_t>{3}};
  crash.crashes[3] = CrashPoint{2, std::nullopt};
  const auto out = run_sync(c, config(4, 2, Mode::kSyncRounds), crash, std::span<const int>(y));
  std::map<std::size_t, std::uint64_t> crashed_at;
  for (const auto& e : out.trace.events) {
    if (e.kind == TraceEvent::Kind::kCrash) crashed_at[e.process] = e.time;
  }
  ASSERT_EQ(crashed_at.size(), 2u);
  for (const auto& e : out.trace.events) {
    const bool acts = e.kind == TraceEvent::Kind::kSend || e.kind == TraceEvent::Kind::kDecide;
    const std::size_t actor = e.process;
    if (acts && crashed_at.contains(actor)) {
      // a crashing process's last SEND precedes its CRASH event
      EXPECT_LT(e.time, crashed_at[actor]);
    }
  }
}

TEST(SyncWorld, BudgetChecks) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 3};
  EXPECT_THROW(run_sync(c, config(3, 3, Mode::kSyncRounds), {}, std::span<const int>(y)), BudgetError);
  CrashSchedule late;
  late.crashes[1] = CrashPoint{5, std::nullopt};
  EXPECT_THROW(run_sync(c, config(3, 1, Mode::kSyncRounds), late, std::span<const int>(y)), BudgetError);
  CrashSchedule two;
  two.crashes[1] = CrashPoint{1, std::nullopt};
  two.crashes[2] = CrashPoint{1, std::nullopt};
  EXPECT_THROW(run_sync(c, config(3, 1, Mode::kSyncRounds), two, std::span<const int>(y)), BudgetError);
  EXPECT_THROW(run_sync(c, config(3, 1, Mode::kAsync), {}, std::span<const int>(y)), PreconditionError);
}

// ---- asynchronous DR world ------------------------------------------------

TEST(DRWorld, DeliverAllFaultFreeIsGlobalMax) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 4, 2, 8, 3};
  const auto out = run_async_dr(c, config(5, 0, Mode::kAsync, SchedulerPolicy::deliver_all()), {}, 1,
                                std::span<const int>(y));
  for (const auto& d : out.decided) EXPECT_EQ(d, 8);
}

TEST(DRWorld, FullDeliveryOfTheMax) {
  // scheduler delivers p3's message to everyone in round 1: delay p2 instead
  const IntegerChain c(9);
  const std::vector<int> y{1, 1, 3};
  const auto out = run_async_dr(c, config(3, 1, Mode::kAsync, SchedulerPolicy::delay_set({2})), {}, 1,
                                std::span<const int>(y));
  for (const auto& d : out.decided) EXPECT_EQ(d, 3);
}

TEST(DRWorld, DelayingTheMaxHolderPreservesOutputs) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 1, 3};
  for (std::size_t k = 1; k <= 10; ++k) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto out = run_async_dr(c, config(3, 1, Mode::kAsync, SchedulerPolicy::delay_set({3}), seed),
                                    {}, k, std::span<const int>(y));
      EXPECT_EQ(out.correct_decisions(), y);
    }
  }
}

TEST(DRWorld, DeterministicTraces) {
  const IntegerChain c(30);
  const auto inst = generate_valid_instance(c, 12, 3);
  const std::span<const int> y(inst.outputs);
  CrashSchedule crash;
  crash.crashes[4] = CrashPoint{2, std::nullopt};
  crash.crashes[7] = CrashPoint{1, std::set<std::size_t>{}};
  const auto cfg = config(12, 3, Mode::kAsync, SchedulerPolicy::uniform_random(), 77);
  const auto a = run_async_dr(c, cfg, crash, 4, y);
  const auto b = run_async_dr(c, cfg, crash, 4, y);
  EXPECT_EQ(a.trace.to_jsonl(), b.trace.to_jsonl());
  EXPECT_EQ(a.decided, b.decided);
  auto other = cfg;
  other.seed = 78;
  EXPECT_NE(run_async_dr(c, other, crash, 4, y).trace.to_jsonl(), a.trace.to_jsonl());
}

TEST(DRWorld, CrashBeforeSendingLeavesNoRoundMessages) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 3, 4};
  CrashSchedule crash;
  crash.crashes[4] = CrashPoint{1, std::set<std::size_t>{}};
  const auto out = run_async_dr(c, config(4, 1, Mode::kAsync, SchedulerPolicy::uniform_random(), 5),
                                crash, 2, std::span<const int>(y));
  for (const auto& e : out.trace.events) {
    EXPECT_FALSE(e.kind == TraceEvent::Kind::kSend && e.process == 4);
    EXPECT_FALSE(e.kind == TraceEvent::Kind::kDeliver && e.peer == 4);
  }
  for (const auto& d : out.correct_decisions()) EXPECT_LE(d, 3);
}

TEST(DRWorld, AsyncCrashRecipientsMustBeAtomic) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 3};
  CrashSchedule crash;
  crash.crashes[1] = CrashPoint{1, std::set<std::size_t>{2}};
  EXPECT_THROW(run_async_dr(c, config(3, 1, Mode::kAsync), crash, 1, std::span<const int>(y)),
               BudgetError);
}

TEST(DRWorld, ChooserGivingUpIsReported) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 3};
  auto cfg = config(3, 1, Mode::kAsync);
  auto none = [](const auto&, const std::vector<std::size_t>&) { return detail::kNoChoice; };
  EXPECT_THROW(detail::run_dr_world(c, cfg, {}, 1, std::span<const int>(y), none), ReplayError);
}

TEST(DRWorld, LoneSurvivorUsesItsOwnMessage) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 3};
  CrashSchedule crash;
  crash.crashes[1] = CrashPoint{1, std::set<std::size_t>{}};
  crash.crashes[2] = CrashPoint{1, std::set<std::size_t>{}};
  auto cfg = config(3, 2, Mode::kAsync, SchedulerPolicy::deliver_all());
  const auto out = run_async_dr(c, cfg, crash, 1, std::span<const int>(y));
  EXPECT_EQ(out.decided[2], 3);
}

// With UNIFORM_RANDOM every sender is equally likely to be among the first
// n-f round-1 deliveries to a fixed receiver.
TEST(DRWorld, UniformSchedulerChiSquare) {
  const IntegerChain c(9);
  const std::size_t n = 6, f = 2;
  const std::vector<int> y(n, 0);
  std::vector<double> counts(n, 0.0);
  const int runs = 3000;
  for (int s = 0; s < runs; ++s) {
    const auto out = run_async_dr(c, config(n, f, Mode::kAsync, SchedulerPolicy::uniform_random(),
                                            static_cast<std::uint64_t>(s)),
                                  {}, 1, std::span<const int>(y));
    for (const auto& e : out.trace.events) {
      if (e.kind == TraceEvent::Kind::kDeliver && e.process == 1 && e.round == 1 && e.accepted) {
        counts[e.peer - 1] += 1.0;
      }
    }
  }
  const double expected = runs * static_cast<double>(n - f) / static_cast<double>(n);
  double chi2 = 0.0;
  for (double o : counts) chi2 += (o - expected) * (o - expected) / expected;
  // 5 degrees of freedom, 0.999 quantile
  EXPECT_LT(chi2, 20.52);
}

// ---- traces and replay ----------------------------------------------------

TEST(Replay, ReproducesSyncAndAsyncRuns) {
  const VectorClockLattice vc(3, 3);
  const auto inst = generate_valid_instance(vc, 7, 9);
  const std::span<const ClockVector> y(inst.outputs);
  CrashSchedule crash;
  crash.crashes[2] = CrashPoint{1, std::set<std::size_t>{1, 5}};
  const auto s = run_sync(vc, config(7, 2, Mode::kSyncRounds), crash, y);
  const auto s2 = replay(vc, parse_trace(s.trace.to_jsonl()));
  EXPECT_EQ(s2.decided, s.decided);

  CrashSchedule acrash;
  acrash.crashes[3] = CrashPoint{2, std::nullopt};
  const auto a = run_async_dr(vc, config(7, 2, Mode::kAsync, SchedulerPolicy::uniform_random(), 4),
                              acrash, 3, y);
  const auto a2 = replay(vc, parse_trace(a.trace.to_jsonl()));
  EXPECT_EQ(a2.decided, a.decided);
  EXPECT_EQ(a2.trace.to_jsonl(), a.trace.to_jsonl());
}

TEST(Replay, TruncatedTraceRejected) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 1, 3};
  const auto out = run_async_dr(c, config(3, 1, Mode::kAsync, SchedulerPolicy::uniform_random(), 2), {}, 2,
                                std::span<const int>(y));
  std::string text = out.trace.to_jsonl();
  text = text.substr(0, text.rfind("{\"events\""));
  text = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  EXPECT_THROW(parse_trace(text), FormatError);
}

TEST(Replay, TamperedTraceRejected) {
  const IntegerChain c(9);
  const std::vector<int> y{1, 2, 3, 3};
  const auto out = run_async_dr(c, config(4, 1, Mode::kAsync, SchedulerPolicy::uniform_random(), 2), {}, 2,
                                std::span<const int>(y));
  Trace t = parse_trace(out.trace.to_jsonl());
  for (auto& e : t.events) {
    if (e.kind == TraceEvent::Kind::kDecide) {
      e.payload = 0;
      break;
    }
  }
  EXPECT_THROW(replay(c, t), ReplayError);
  Trace wrong_version = parse_trace(out.trace.to_jsonl());
  wrong_version.header["version"] = 99;
  EXPECT_THROW(parse_trace(wrong_version.to_jsonl()), FormatError);
  EXPECT_THROW(replay(IntegerChain(10), parse_trace(out.trace.to_jsonl())), ReplayError);
}

TEST(Replay, AdversaryRunKeepsGamma) {
  const IntegerChain c(9);
  const std::vector<int> y{2, 2, 2, 7};
  const auto out = run_async_dr(c, config(4, 1, Mode::kAsync, SchedulerPolicy::delay_set({4}), 3), {}, 3,
                                std::span<const int>(y));
  const auto summary = replay_document(out.trace.to_jsonl());
  EXPECT_EQ(summary.gamma_final, Distance::finite(5));
  EXPECT_EQ(summary.gamma_initial, summary.gamma_final);
}

}  // namespace
