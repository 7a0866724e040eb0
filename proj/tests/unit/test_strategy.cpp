#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "selfish/chain.hpp"
#include "selfish/errors.hpp"
#include "selfish/strategy.hpp"

using namespace selfish;

namespace {

// Minimal driver: mines the block where the acting party mines, then steps.
struct Driver {
  BlockTree tree;
  SelfishState state = selfish_init(0);
  std::vector<Step> steps;

  const Step& pool() {
    const auto id = tree.extend(pool_mining_target(state.chain), MinerClass::Pool).id;
    return record(selfish_on_pool_block(state, tree, id));
  }
  const Step& honest(TieBranch branch = TieBranch::NotApplicable) {
    const auto id = tree.extend(honest_on_block(state.chain, branch), MinerClass::Honest).id;
    return record(selfish_on_others_block(state, tree, id, branch));
  }
  const Step& record(Step s) {
    state = s.state;
    steps.push_back(std::move(s));
    return steps.back();
  }
};

enum class Label { Zero, ZeroPrime, Lead1, Lead2, Lead3, Lead4, Lead5 };

Label label(const ChainState& s) {
  if (s.tie_zero) return Label::ZeroPrime;
  return static_cast<Label>(s.lead == 0 ? 0 : s.lead + 1);
}

Driver reach(Label l) {
  Driver d;
  switch (l) {
    case Label::ZeroPrime:
      d.pool();
      d.honest();
      break;
    case Label::Zero:
      break;
    default:
      for (int i = 0; i + 1 < static_cast<int>(l); ++i) d.pool();
  }
  REQUIRE(label(d.state.chain) == l);
  return d;
}

enum class Event { Pool, Honest, HonestPoolBranch, HonestOthersBranch };

struct Row {
  Label from;
  Event event;
  Label to;
  RevenueCase revenue_case;
  ActionKind action;
  Credit credit;
};

// The state machine's transition graph with each edge's revenue case.
const std::vector<Row> kTable{
    {Label::Zero, Event::Pool, Label::Lead1, RevenueCase::PoolExtends, ActionKind::None, {}},
    {Label::Zero, Event::Honest, Label::Zero, RevenueCase::HonestNoFork, ActionKind::AdoptPublic,
     {.others = 1}},
    {Label::Lead1, Event::Pool, Label::Lead2, RevenueCase::PoolExtends, ActionKind::None, {}},
    {Label::Lead1, Event::Honest, Label::ZeroPrime, RevenueCase::HonestForcesTie,
     ActionKind::PublishLast, {}},
    {Label::Lead2, Event::Pool, Label::Lead3, RevenueCase::PoolExtends, ActionKind::None, {}},
    {Label::Lead2, Event::Honest, Label::Zero, RevenueCase::HonestAtLeadTwo,
     ActionKind::PublishAll, {.pool = 2, .orphaned_honest = 1}},
    {Label::Lead3, Event::Pool, Label::Lead4, RevenueCase::PoolExtends, ActionKind::None, {}},
    {Label::Lead3, Event::Honest, Label::Lead2, RevenueCase::HonestAtLongLead,
     ActionKind::PublishFirstUnpublished, {.pool = 1, .orphaned_honest = 1}},
    {Label::Lead4, Event::Pool, Label::Lead5, RevenueCase::PoolExtends, ActionKind::None, {}},
    {Label::Lead4, Event::Honest, Label::Lead3, RevenueCase::HonestAtLongLead,
     ActionKind::PublishFirstUnpublished, {.pool = 1, .orphaned_honest = 1}},
    {Label::ZeroPrime, Event::Pool, Label::Zero, RevenueCase::PoolWinsTie, ActionKind::PublishAll,
     {.pool = 2, .orphaned_honest = 1}},
    {Label::ZeroPrime, Event::HonestPoolBranch, Label::Zero, RevenueCase::HonestOnPoolBranch,
     ActionKind::AdoptPublic, {.pool = 1, .others = 1, .orphaned_honest = 1}},
    {Label::ZeroPrime, Event::HonestOthersBranch, Label::Zero, RevenueCase::HonestOnPublicBranch,
     ActionKind::AdoptPublic, {.others = 2, .orphaned_pool = 1}},
};

}  // namespace

TEST_CASE("exhaustive (state, event) table") {
  int mismatches = 0;
  for (const Row& row : kTable) {
    Driver d = reach(row.from);
    const Step& s = row.event == Event::Pool                ? d.pool()
                    : row.event == Event::Honest           ? d.honest()
                    : row.event == Event::HonestPoolBranch ? d.honest(TieBranch::PoolBranch)
                                                           : d.honest(TieBranch::OthersBranch);
    const bool ok = label(s.state.chain) == row.to && s.revenue_case == row.revenue_case &&
                    s.action.kind == row.action && s.credit == row.credit &&
                    consistent(s.state.chain, d.tree);
    CAPTURE(static_cast<int>(row.from));
    CAPTURE(static_cast<int>(row.event));
    CHECK(ok);
    mismatches += ok ? 0 : 1;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("state 0 + pool block keeps it private") {
  Driver d;
  const auto& s = d.pool();
  CHECK(s.state.chain.lead == 1);
  CHECK(s.action.kind == ActionKind::None);
  CHECK_FALSE(d.tree.at(s.state.chain.private_head).published);
  CHECK(pool_mining_target(s.state.chain) == s.state.chain.private_head);
}

TEST_CASE("lead 1 + honest block reveals the single block") {
  Driver d;
  const auto pool_block = d.pool().state.chain.private_head;
  const auto& s = d.honest();
  CHECK(s.action.blocks == std::vector<BlockId>{pool_block});
  CHECK(d.tree.at(pool_block).published);
  CHECK(s.state.chain.tie_zero);
  CHECK(d.tree.at(s.state.chain.public_head).height == d.tree.at(pool_block).height);
  CHECK(honest_on_block(s.state.chain, TieBranch::PoolBranch) == pool_block);
  CHECK(honest_on_block(s.state.chain, TieBranch::OthersBranch) == s.state.chain.public_head);
}

TEST_CASE("lead 2 + honest block publishes everything") {
  Driver d;
  d.pool();
  const auto head = d.pool().state.chain.private_head;
  const auto& s = d.honest();
  CHECK(s.action.kind == ActionKind::PublishAll);
  CHECK(s.action.blocks.size() == 2);
  CHECK(s.state.chain.public_head == head);
  CHECK(honest_on_block(s.state.chain, TieBranch::NotApplicable) == head);
}

TEST_CASE("lead 4 + honest block reveals exactly the oldest hidden block") {
  Driver d;
  std::vector<BlockId> pool_blocks;
  for (int i = 0; i < 4; ++i) pool_blocks.push_back(d.pool().state.chain.private_head);
  const auto& s = d.honest();
  CHECK(s.state.chain.lead == 3);
  CHECK(s.action.blocks == std::vector<BlockId>{pool_blocks[0]});
  const auto& s2 = d.honest();
  CHECK(s2.action.blocks == std::vector<BlockId>{pool_blocks[1]});
}

TEST_CASE("misuse is a contract violation") {
  Driver d;
  const auto stray = d.tree.extend(0, MinerClass::Honest).id;
  CHECK_THROWS_AS(selfish_on_pool_block(d.state, d.tree, stray), ContractViolation);
  const auto h = d.tree.extend(0, MinerClass::Honest).id;
  CHECK_THROWS_AS(selfish_on_others_block(d.state, d.tree, h, TieBranch::PoolBranch),
                  ContractViolation);

  Driver tie = reach(Label::ZeroPrime);
  const auto h2 =
      tie.tree.extend(honest_on_block(tie.state.chain, TieBranch::OthersBranch), MinerClass::Honest)
          .id;
  CHECK_THROWS_AS(selfish_on_others_block(tie.state, tie.tree, h2, TieBranch::NotApplicable),
                  ContractViolation);
}

TEST_CASE("honest pool strategy never forks") {
  BlockTree tree;
  SelfishState st = selfish_init(0);
  RevenueLedger ledger;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Step s;
    if (rng() % 3 == 0) {
      const auto id = tree.extend(st.chain.public_head, MinerClass::Pool).id;
      s = honest_pool_on_pool_block(st, tree, id);
    } else {
      const auto id = tree.extend(st.chain.public_head, MinerClass::Honest).id;
      s = honest_pool_on_others_block(st, tree, id);
    }
    apply(ledger, s.credit);
    ++ledger.total_events;
    st = s.state;
    CHECK(st.chain.lead == 0);
    CHECK(tree.at(st.chain.public_head).height == static_cast<std::uint32_t>(i + 1));
  }
  CHECK(ledger.orphaned_pool + ledger.orphaned_honest == 0);
  CHECK(ledger == recount(tree, st.chain.public_head));
}

TEST_CASE("random event sequences preserve the strategy invariants") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution pool_event(0.2 + 0.03 * static_cast<double>(seed % 10));
    std::bernoulli_distribution pool_branch(0.5);

    Driver d;
    RevenueLedger ledger;
    std::uint32_t pool_since_reset = 0;
    for (int i = 0; i < 400; ++i) {
      const ChainState before = d.state.chain;
      const Step& s = pool_event(rng) ? d.pool()
                      : before.tie_zero
                          ? d.honest(pool_branch(rng) ? TieBranch::PoolBranch
                                                      : TieBranch::OthersBranch)
                          : d.honest();
      apply(ledger, s.credit);
      ++ledger.total_events;
      const ChainState& after = s.state.chain;
      const bool was_pool = d.tree.at(static_cast<BlockId>(d.tree.size() - 1)).miner ==
                            MinerClass::Pool;

      REQUIRE(consistent(after, d.tree));

      // Published blocks form a prefix-closed set.
      for (const Block& b : d.tree.blocks()) {
        if (b.published && !b.is_genesis()) REQUIRE(d.tree.at(*b.parent).published);
      }

      // The private branch length counts pool blocks since the last reset.
      if (s.action.kind == ActionKind::PublishAll || s.action.kind == ActionKind::AdoptPublic) {
        pool_since_reset = 0;
      } else if (was_pool) {
        ++pool_since_reset;
      }
      REQUIRE(after.private_branch_len == pool_since_reset);

      // The lead only drops on honest blocks; from 3 and up by exactly one
      // newly published pool block.
      if (after.lead < before.lead) {
        REQUIRE_FALSE(was_pool);
        if (before.lead >= 3) {
          REQUIRE(s.action.kind == ActionKind::PublishFirstUnpublished);
          REQUIRE(s.action.blocks.size() == 1);
          REQUIRE(d.tree.at(s.action.blocks[0]).miner == MinerClass::Pool);
        }
      }
    }

    // Replaying the same sequence gives the same actions.
    Driver replay;
    for (const Step& original : d.steps) {
      const BlockId mined = static_cast<BlockId>(replay.tree.size());
      const Block& b = d.tree.at(mined);
      const Step& s =
          b.miner == MinerClass::Pool
              ? replay.pool()
              : replay.honest(!replay.state.chain.tie_zero ? TieBranch::NotApplicable
                              : b.parent == replay.state.chain.private_head
                                  ? TieBranch::PoolBranch
                                  : TieBranch::OthersBranch);
      REQUIRE(s.action == original.action);
      REQUIRE(s.state == original.state);
    }
    CHECK(ledger.counted() <= ledger.total_events);
  }
}
