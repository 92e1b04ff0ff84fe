#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atcd/attack_tree.hpp"

namespace atcd
{

/// SplitMix64. `below(n)` is `next() % n`; the tiny modulo bias is accepted
/// so that other implementations can reproduce suites bit for bit.
class SplitMix64
{
public:
  explicit SplitMix64( std::uint64_t seed ) : state_( seed ) {}

  std::uint64_t next()
  {
    std::uint64_t z = ( state_ += 0x9e3779b97f4a7c15ull );
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
    return z ^ ( z >> 31 );
  }

  std::uint64_t below( std::uint64_t n ) { return next() % n; }

private:
  std::uint64_t state_;
};

struct GenConfig
{
  std::uint64_t seed = 0;
  std::size_t min_nodes = 20;
  std::size_t count = 10;
  bool treelike_only = false;
  int cost_min = 1;
  int cost_max = 10;
  int damage_min = 0;
  int damage_max = 10;
  /// Probabilities are k/10 for k in 1..prob_steps.
  int prob_steps = 10;
};

/// Replaces BAS number `bas` of `t1` (BAS index order) by the root of `t2`.
/// The replaced BAS's damage is dropped.
AttackTree graft( const AttackTree& t1, std::size_t bas, const AttackTree& t2 );
/// Fresh root of the given kind over both roots.
AttackTree join( const AttackTree& t1, const AttackTree& t2, NodeKind kind );
/// `join`, then BAS `bas2` of `t2` is merged into BAS `bas1` of `t1`, which
/// keeps its attributes.
AttackTree join_identified( const AttackTree& t1, const AttackTree& t2, NodeKind kind, std::size_t bas1,
                            std::size_t bas2 );

/// Method 1, 2 or 3 with its random choices drawn from `rng`.
AttackTree combine( const AttackTree& t1, const AttackTree& t2, int method, SplitMix64& rng );

/// Fresh attributes for every node, drawn in node order.
AttackTree randomize_attributes( const AttackTree& tree, const GenConfig& cfg, SplitMix64& rng );

/// The factory tree, five balanced AND/OR trees with 4 to 8 BASs and a diamond.
std::vector<AttackTree> default_blocks();

struct Suite
{
  std::vector<AttackTree> trees;
  /// Combination methods drawn for each tree, in order.
  std::vector<std::vector<int>> methods;
};

/// Grows each tree from a random block by combining with random blocks until
/// it has at least `min_nodes` nodes, then randomizes the attributes.
Suite generate_suite( const GenConfig& cfg, const std::vector<AttackTree>& blocks );

nlohmann::json manifest( const GenConfig& cfg, const Suite& suite, const std::vector<std::string>& files );

} // namespace atcd
