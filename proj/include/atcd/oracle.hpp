#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "atcd/attack_tree.hpp"
#include "atcd/execution.hpp"
#include "atcd/pareto.hpp"

namespace atcd
{

// Brute-force references. Slow on purpose; every engine is tested against
// these.

inline constexpr std::size_t enum_bas_limit = 24;
inline constexpr std::size_t active_bas_limit = 24;
inline constexpr std::size_t cedpf_bas_limit = 14;

/// Front of (cost, damage) over all 2^|B| attacks, visited in Gray-code
/// order.
Front<AttrPair> cdpf_enum( const AttackTree& tree, Exec exec = Exec::Parallel );

/// Best damage among attacks of cost at most `budget`.
double dgc_enum( const AttackTree& tree, double budget );
/// Cheapest attack reaching `min_damage`, if any.
std::optional<double> cgd_enum( const AttackTree& tree, double min_damage );

struct Outcome
{
  Attack attack;
  double prob = 0.0;
};

/// Law of the actualized attack Y_x: every sub-attack of `x` with its
/// probability. Outcome `j` activates the i-th active BAS of `x` iff bit i of
/// `j` is set.
struct ActualizedDistribution
{
  std::vector<Outcome> support;
};

ActualizedDistribution distribution( const AttackTree& tree, const Attack& x );
double expected_damage_enum( const AttackTree& tree, const Attack& x );

/// Front of (cost, expected damage) over all attacks.
Front<AttrPair> cedpf_enum( const AttackTree& tree, Exec exec = Exec::Parallel );
double edgc_enum( const AttackTree& tree, double budget );

/// Triples (cost, damage, reached) of every attack on the BASs below `v`,
/// damage counted on the nodes below `v` only, then cost-filtered and
/// minimized.
Front<DetTriple> det_node_front_enum( const AttackTree& tree, std::size_t v, double budget );
/// Same with expected damage and the reach probability of `v`.
Front<ProbTriple> prob_node_front_enum( const AttackTree& tree, std::size_t v, double budget );

} // namespace atcd
