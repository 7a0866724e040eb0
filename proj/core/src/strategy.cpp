#include "selfish/strategy.hpp"

#include <string>

#include "selfish/errors.hpp"

namespace selfish {

namespace {

void require_block(const BlockTree& tree, BlockId mined, BlockId expected_parent,
                   MinerClass miner) {
  const Block& b = tree.at(mined);
  if (b.parent != expected_parent || b.miner != miner) {
    throw ContractViolation("block " + std::to_string(mined) + " by " +
                            std::string(to_string(miner)) +
                            " does not extend the expected head " +
                            std::to_string(expected_parent));
  }
}

// Oldest unpublished block on the private branch.
BlockId first_unpublished(const BlockTree& tree, BlockId private_head) {
  BlockId cur = private_head;
  while (!tree.at(*tree.at(cur).parent).published) cur = *tree.at(cur).parent;
  return cur;
}

ChainState collapsed(BlockId head) { return ChainState{head, head, 0, false, 0}; }

}  // namespace

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::PublishAll:
      return "publish-all";
    case ActionKind::PublishFirstUnpublished:
      return "publish-first-unpublished";
    case ActionKind::PublishLast:
      return "publish-last";
    case ActionKind::AdoptPublic:
      return "adopt-public";
    case ActionKind::None:
      break;
  }
  return "none";
}

void apply(RevenueLedger& ledger, const Credit& c) {
  ledger.pool_blocks += c.pool;
  ledger.others_blocks += c.others;
  ledger.orphaned_pool += c.orphaned_pool;
  ledger.orphaned_honest += c.orphaned_honest;
}

SelfishState selfish_init(BlockId head) { return SelfishState{collapsed(head)}; }

BlockId honest_on_block(const ChainState& s, TieBranch branch) {
  if (s.tie_zero && branch == TieBranch::PoolBranch) return s.private_head;
  return s.public_head;
}

Step selfish_on_pool_block(const SelfishState& state, BlockTree& tree, BlockId mined) {
  const ChainState& before = state.chain;
  require_block(tree, mined, before.private_head, MinerClass::Pool);

  const auto delta_prev = before.lead;
  Step step{state, {}, RevenueCase::PoolExtends, {}};
  ChainState& s = step.state.chain;
  s.private_head = mined;
  s.private_branch_len += 1;

  if (delta_prev == 0 && s.private_branch_len == 2) {
    // Was a tie with a branch of one: the pool now leads by one and wins.
    step.action = {ActionKind::PublishAll, tree.publish_through(mined)};
    step.revenue_case = RevenueCase::PoolWinsTie;
    step.credit = {.pool = 2, .orphaned_honest = 1};
    s = collapsed(mined);
    return step;
  }
  s.lead += 1;
  return step;
}

Step selfish_on_others_block(const SelfishState& state, BlockTree& tree, BlockId mined,
                             TieBranch branch) {
  const ChainState& before = state.chain;
  if (before.tie_zero == (branch == TieBranch::NotApplicable)) {
    throw ContractViolation("tie branch '" + std::string(to_string(branch)) +
                            "' does not match the current state");
  }
  require_block(tree, mined, honest_on_block(before, branch), MinerClass::Honest);
  tree.publish(mined);

  const auto delta_prev = before.lead;
  Step step{state, {}, {}, {}};
  ChainState& s = step.state.chain;

  if (delta_prev == 0) {
    step.action = {ActionKind::AdoptPublic, {mined}};
    if (!before.tie_zero) {
      step.revenue_case = RevenueCase::HonestNoFork;
      step.credit = {.others = 1};
    } else if (branch == TieBranch::PoolBranch) {
      step.revenue_case = RevenueCase::HonestOnPoolBranch;
      step.credit = {.pool = 1, .others = 1, .orphaned_honest = 1};
    } else {
      step.revenue_case = RevenueCase::HonestOnPublicBranch;
      step.credit = {.others = 2, .orphaned_pool = 1};
    }
    s = collapsed(mined);
  } else if (delta_prev == 1) {
    // Same length now; reveal the single private block and try our luck.
    tree.publish(before.private_head);
    step.action = {ActionKind::PublishLast, {before.private_head}};
    step.revenue_case = RevenueCase::HonestForcesTie;
    s.public_head = mined;
    s.lead = 0;
    s.tie_zero = true;
  } else if (delta_prev == 2) {
    step.action = {ActionKind::PublishAll, tree.publish_through(before.private_head)};
    step.revenue_case = RevenueCase::HonestAtLeadTwo;
    step.credit = {.pool = 2, .orphaned_honest = 1};
    s = collapsed(before.private_head);
  } else {
    const BlockId reveal = first_unpublished(tree, before.private_head);
    tree.publish(reveal);
    step.action = {ActionKind::PublishFirstUnpublished, {reveal}};
    step.revenue_case = RevenueCase::HonestAtLongLead;
    step.credit = {.pool = 1, .orphaned_honest = 1};
    s.public_head = mined;
    s.lead -= 1;
  }
  return step;
}

Step honest_pool_on_pool_block(const SelfishState& state, BlockTree& tree, BlockId mined) {
  require_block(tree, mined, state.chain.public_head, MinerClass::Pool);
  tree.publish(mined);
  return Step{SelfishState{collapsed(mined)},
              {ActionKind::PublishAll, {mined}},
              std::nullopt,
              {.pool = 1}};
}

Step honest_pool_on_others_block(const SelfishState& state, BlockTree& tree, BlockId mined) {
  require_block(tree, mined, state.chain.public_head, MinerClass::Honest);
  tree.publish(mined);
  return Step{SelfishState{collapsed(mined)},
              {ActionKind::AdoptPublic, {mined}},
              std::nullopt,
              {.others = 1}};
}

}  // namespace selfish
