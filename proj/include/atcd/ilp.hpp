#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atcd/attack_tree.hpp"
#include "atcd/pareto.hpp"
#include "atcd/tree_engine.hpp"

namespace atcd
{

/// Attribute values in units of 10^-6, exact.
using Scaled = __int128;

inline constexpr int scale_digits = 6;
inline constexpr std::int64_t scale_factor = 1'000'000;

enum class Rounding
{
  Nearest,
  Down,
  Up
};

/// Reads `value` through its shortest round-trip decimal form, so 0.1 becomes
/// exactly 100000. Digits past the sixth decimal are rounded per `mode`.
Scaled to_scaled( double value, Rounding mode = Rounding::Nearest );
double from_scaled( Scaled value );
/// Plain decimal text without trailing zeros, e.g. "2.5" or "-100".
std::string scaled_to_string( Scaled value );

/// `lhs <= sum(rhs)`. AND gates give one constraint per child, OR gates one
/// with all children.
struct GateConstraint
{
  std::size_t lhs = 0;
  std::vector<std::size_t> rhs;
};

/// One binary variable per node. Objectives are cost and negated damage;
/// the optional side constraints are `cost <= cost_cap` and
/// `damage >= damage_floor`.
struct IlpModel
{
  AttackTree tree;
  std::vector<std::string> names;
  std::vector<Scaled> cost;
  std::vector<Scaled> damage;
  std::vector<GateConstraint> constraints;
  std::optional<Scaled> cost_cap;
  std::optional<Scaled> damage_floor;
};

IlpModel encode_bilp( const AttackTree& tree );

/// Every gate constraint and every set side constraint holds.
bool is_feasible( const IlpModel& model, const std::vector<std::uint8_t>& assignment );

enum class Objective
{
  Cost,
  NegDamage
};

enum class Status
{
  Optimal,
  Infeasible
};

struct SolveResult
{
  Status status = Status::Infeasible;
  std::vector<std::uint8_t> assignment;
  Scaled scaled_cost = 0;
  Scaled scaled_damage = 0;
  double cost = 0.0;
  double damage = 0.0;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t default_node_limit = 100'000'000;

/// Exact 0/1 branch and bound over the BAS variables; gate variables follow
/// the structure function. Ties on the chosen objective are broken by the
/// other one. Throws BudgetExceeded after `node_limit` search nodes.
SolveResult solve_single( const IlpModel& model, Objective objective, std::uint64_t node_limit = default_node_limit );

Solution dgc_dag( const AttackTree& tree, double budget, std::uint64_t node_limit = default_node_limit );
Solution cgd_dag( const AttackTree& tree, double min_damage, std::uint64_t node_limit = default_node_limit );

/// Epsilon-constraint loop: maximize damage, then minimize cost at that
/// damage, then cap the cost one unit below and repeat.
Front<AttrPair> cdpf_dag( const AttackTree& tree, std::uint64_t node_limit = default_node_limit );

/// CPLEX LP text, minimization. The side constraints are written when set.
std::string export_lp( const IlpModel& model, Objective objective );

} // namespace atcd
