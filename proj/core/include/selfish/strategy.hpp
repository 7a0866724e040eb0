#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "selfish/chain.hpp"

namespace selfish {

enum class ActionKind : std::uint8_t {
  None,
  PublishAll,
  PublishFirstUnpublished,
  PublishLast,
  AdoptPublic,
};

std::string_view to_string(ActionKind kind);

struct StrategyAction {
  ActionKind kind = ActionKind::None;
  std::vector<BlockId> blocks;  // blocks newly published, or the adopted head

  bool operator==(const StrategyAction&) const = default;
};

/// Revenue situations of the selfish state machine, labelled (a) to (h).
enum class RevenueCase : char {
  PoolExtends = 'a',
  PoolWinsTie = 'b',
  HonestOnPoolBranch = 'c',
  HonestOnPublicBranch = 'd',
  HonestNoFork = 'e',
  HonestForcesTie = 'f',
  HonestAtLeadTwo = 'g',
  HonestAtLongLead = 'h',
};

/// Blocks whose fate became final on this step.
struct Credit {
  std::uint32_t pool = 0;
  std::uint32_t others = 0;
  std::uint32_t orphaned_pool = 0;
  std::uint32_t orphaned_honest = 0;

  bool operator==(const Credit&) const = default;
};

void apply(RevenueLedger& ledger, const Credit& credit);

struct SelfishState {
  ChainState chain;

  bool operator==(const SelfishState&) const = default;
};

struct Step {
  SelfishState state;
  StrategyAction action;
  std::optional<RevenueCase> revenue_case;  // empty for the honest strategy
  Credit credit;
};

/// Init: private chain = public chain = the tree's current head, no branch.
SelfishState selfish_init(BlockId head);

/// Where the pool mines next: always the private head.
inline BlockId pool_mining_target(const ChainState& s) { return s.private_head; }

/// Where honest miners mine: the longest public head, or under a 0' tie the
/// head picked by the tie-branch draw.
BlockId honest_on_block(const ChainState& s, TieBranch branch);

/// The pool found `mined` on top of its private head. `mined` must already be
/// in the tree; the step publishes blocks in `tree` as the action requires.
Step selfish_on_pool_block(const SelfishState& state, BlockTree& tree, BlockId mined);

/// Honest miners found `mined` on `honest_on_block(state.chain, branch)`.
Step selfish_on_others_block(const SelfishState& state, BlockTree& tree, BlockId mined,
                             TieBranch branch);

/// Honest baseline for the pool: every block is published at once, so no
/// fork ever forms and each block is credited when found.
Step honest_pool_on_pool_block(const SelfishState& state, BlockTree& tree, BlockId mined);
Step honest_pool_on_others_block(const SelfishState& state, BlockTree& tree, BlockId mined);

}  // namespace selfish
