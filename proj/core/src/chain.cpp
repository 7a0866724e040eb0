#include "selfish/chain.hpp"

#include <algorithm>
#include <string>

#include "selfish/errors.hpp"

namespace selfish {

std::string_view to_string(MinerClass miner) {
  return miner == MinerClass::Pool ? "pool" : "honest";
}

std::string_view to_string(TieBranch branch) {
  switch (branch) {
    case TieBranch::PoolBranch:
      return "pool-branch";
    case TieBranch::OthersBranch:
      return "others-branch";
    case TieBranch::NotApplicable:
      break;
  }
  return "n/a";
}

BlockTree::BlockTree() {
  blocks_.push_back(Block{0, std::nullopt, std::nullopt, 0, true});
}

const Block& BlockTree::extend(BlockId parent, MinerClass miner) {
  const Block& p = at(parent);
  const auto height = p.height + 1;
  const auto id = static_cast<BlockId>(blocks_.size());
  blocks_.push_back(Block{id, parent, miner, height, false});
  (miner == MinerClass::Pool ? pool_mined_ : honest_mined_) += 1;
  return blocks_.back();
}

const Block& BlockTree::at(BlockId id) const {
  if (!contains(id)) {
    throw StructuralError("unknown block id " + std::to_string(id));
  }
  return blocks_[id];
}

void BlockTree::publish(BlockId id) {
  const Block& b = at(id);
  if (b.published) return;
  if (!blocks_[*b.parent].published) {
    throw StructuralError("publishing block " + std::to_string(id) +
                          " would leave its parent unpublished");
  }
  blocks_[id].published = true;
}

std::vector<BlockId> BlockTree::publish_through(BlockId head) {
  std::vector<BlockId> pending;
  for (BlockId cur = head; !at(cur).published; cur = *blocks_[cur].parent) {
    pending.push_back(cur);
  }
  std::reverse(pending.begin(), pending.end());
  for (BlockId id : pending) blocks_[id].published = true;
  return pending;
}

std::vector<BlockId> BlockTree::path(BlockId head) const {
  std::vector<BlockId> out(at(head).height + 1);
  BlockId cur = head;
  for (auto i = out.size(); i-- > 0;) {
    out[i] = cur;
    if (i > 0) cur = *blocks_[cur].parent;
  }
  return out;
}

std::uint64_t BlockTree::mined_by(MinerClass miner) const {
  return miner == MinerClass::Pool ? pool_mined_ : honest_mined_;
}

std::vector<BlockId> main_chain(const BlockTree& tree,
                                std::span<const BlockId> heads,
                                std::optional<BlockId> prefer) {
  if (heads.empty()) throw ContractViolation("main_chain: empty head set");
  BlockId best = heads.front();
  for (BlockId h : heads) {
    const auto hh = tree.at(h).height;
    const auto bh = tree.at(best).height;
    if (hh > bh || (hh == bh && prefer && h == *prefer)) best = h;
  }
  return tree.path(best);
}

bool consistent(const ChainState& s, const BlockTree& tree) {
  if (!tree.contains(s.public_head) || !tree.contains(s.private_head)) return false;
  if (s.tie_zero && s.lead != 0) return false;
  if (s.lead == 0 && !s.tie_zero && s.private_head != s.public_head) return false;
  if (s.private_head == s.public_head && s.private_branch_len != 0) return false;

  const Block& pub = tree.at(s.public_head);
  const Block& priv = tree.at(s.private_head);
  if (!pub.published) return false;
  if (priv.height < pub.height ||
      priv.height - pub.height != s.lead) {
    return false;
  }
  if (s.tie_zero) {
    // Two published length-one branches off a common parent.
    return s.public_head != s.private_head && pub.parent == priv.parent &&
           priv.published && priv.miner == MinerClass::Pool &&
           s.private_branch_len == 1;
  }
  // Unpublished pool blocks above the public height number exactly `lead`.
  std::uint32_t hidden = 0;
  for (BlockId cur = s.private_head; !tree.at(cur).is_genesis();
       cur = *tree.at(cur).parent) {
    const Block& b = tree.at(cur);
    if (b.published) break;
    if (b.miner != MinerClass::Pool) return false;
    if (b.height > pub.height) ++hidden;
  }
  return hidden == s.lead;
}

double RevenueLedger::relative_revenue() const {
  const auto total = main_chain_blocks();
  return total == 0 ? 0.0 : static_cast<double>(pool_blocks) / static_cast<double>(total);
}

RevenueLedger recount(const BlockTree& tree, BlockId main_head) {
  RevenueLedger ledger;
  for (BlockId cur = main_head; !tree.at(cur).is_genesis();
       cur = *tree.at(cur).parent) {
    if (tree.at(cur).miner == MinerClass::Pool) {
      ++ledger.pool_blocks;
    } else {
      ++ledger.others_blocks;
    }
  }
  const auto pool_total = tree.mined_by(MinerClass::Pool);
  const auto honest_total = tree.mined_by(MinerClass::Honest);
  ledger.orphaned_pool = pool_total - ledger.pool_blocks;
  ledger.orphaned_honest = honest_total - ledger.others_blocks;
  ledger.total_events = pool_total + honest_total;
  return ledger;
}

}  // namespace selfish
