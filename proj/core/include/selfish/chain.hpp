#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace selfish {

enum class MinerClass : std::uint8_t { Pool, Honest };

/// Which head an honest miner extended while two equal-length public
/// branches exist (the 0' state). NotApplicable everywhere else.
enum class TieBranch : std::uint8_t { NotApplicable, PoolBranch, OthersBranch };

std::string_view to_string(MinerClass miner);
std::string_view to_string(TieBranch branch);

using BlockId = std::uint32_t;

struct Block {
  BlockId id = 0;
  std::optional<BlockId> parent;    // empty only for genesis
  std::optional<MinerClass> miner;  // genesis belongs to neither class
  std::uint32_t height = 0;
  bool published = false;

  bool is_genesis() const { return !parent.has_value(); }
  bool operator==(const Block&) const = default;
};

/// Every block ever mined, orphans included. Ids are dense and assigned in
/// creation order; id 0 is the implicit, published genesis block.
class BlockTree {
 public:
  BlockTree();

  BlockId genesis() const { return 0; }

  /// Appends an unpublished block on top of `parent`.
  /// Throws StructuralError if `parent` is unknown.
  const Block& extend(BlockId parent, MinerClass miner);

  /// Throws StructuralError if `id` is unknown.
  const Block& at(BlockId id) const;

  bool contains(BlockId id) const { return id < blocks_.size(); }

  /// Marks `id` published. The parent must already be published so that the
  /// published set stays closed under the parent relation.
  void publish(BlockId id);

  /// Publishes every unpublished block on the path genesis -> `head`, oldest
  /// first, and returns the ids that changed.
  std::vector<BlockId> publish_through(BlockId head);

  /// Path genesis -> `head` inclusive.
  std::vector<BlockId> path(BlockId head) const;

  /// Number of mined (non-genesis) blocks attributed to `miner`.
  std::uint64_t mined_by(MinerClass miner) const;

  std::size_t size() const { return blocks_.size(); }
  std::span<const Block> blocks() const { return blocks_; }
  void reserve(std::size_t n) { blocks_.reserve(n); }

 private:
  std::vector<Block> blocks_;
  std::uint64_t pool_mined_ = 0;
  std::uint64_t honest_mined_ = 0;
};

/// Longest-chain selection over `heads`. Among equally long heads the
/// `prefer` head wins when it is one of them, otherwise the first listed.
/// Throws ContractViolation on an empty head set.
std::vector<BlockId> main_chain(const BlockTree& tree,
                                std::span<const BlockId> heads,
                                std::optional<BlockId> prefer = std::nullopt);

/// The selfish pool's view of the fork: where each party mines and by how
/// much the private branch leads.
struct ChainState {
  BlockId public_head = 0;
  BlockId private_head = 0;
  std::uint32_t lead = 0;
  bool tie_zero = false;  // the 0' state: two public branches of length one
  std::uint32_t private_branch_len = 0;

  bool operator==(const ChainState&) const = default;
};

/// Checks every ChainState invariant against the tree, including that
/// `lead` equals the unpublished pool blocks above the public height.
bool consistent(const ChainState& state, const BlockTree& tree);

struct MiningEvent {
  MinerClass miner = MinerClass::Honest;
  TieBranch tie_branch = TieBranch::NotApplicable;
};

struct RevenueLedger {
  std::uint64_t pool_blocks = 0;
  std::uint64_t others_blocks = 0;
  std::uint64_t orphaned_pool = 0;
  std::uint64_t orphaned_honest = 0;
  std::uint64_t total_events = 0;

  bool operator==(const RevenueLedger&) const = default;

  std::uint64_t main_chain_blocks() const { return pool_blocks + others_blocks; }
  std::uint64_t counted() const {
    return pool_blocks + others_blocks + orphaned_pool + orphaned_honest;
  }
  bool settled() const { return counted() == total_events; }

  /// Pool share of the main chain; 0 when the main chain is empty.
  double relative_revenue() const;
};

/// Brute-force revenue count: every block on genesis -> `main_head` is
/// credited to its miner, every other mined block is an orphan.
RevenueLedger recount(const BlockTree& tree, BlockId main_head);

}  // namespace selfish
