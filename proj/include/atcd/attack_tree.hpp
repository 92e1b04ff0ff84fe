#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atcd/error.hpp"

namespace atcd
{

enum class NodeKind
{
  Bas,
  And,
  Or
};

std::string_view to_string( NodeKind kind );

/// Raw node description as handed to `AttackTree::build`. Children are node
/// indices into the same list.
struct Node
{
  std::string id;
  NodeKind kind = NodeKind::Bas;
  std::vector<std::size_t> children;
  std::optional<double> cost; // BAS only
  double damage = 0.0;
  std::optional<double> prob; // BAS only
};

/// Subset of the BASs of a tree, one flag per BAS in BAS index order.
class Attack
{
public:
  Attack() = default;
  explicit Attack( std::size_t bas_count ) : bits_( bas_count, 0u ) {}

  static Attack from_mask( std::uint64_t mask, std::size_t bas_count );

  std::size_t size() const noexcept { return bits_.size(); }
  bool test( std::size_t i ) const { return bits_[i] != 0u; }
  void set( std::size_t i, bool value = true ) { bits_[i] = value ? 1u : 0u; }
  std::size_t count() const noexcept;

  /// Bitwise x <= y, the attack order.
  bool is_subset_of( const Attack& other ) const;

  friend bool operator==( const Attack&, const Attack& ) = default;
  friend auto operator<=>( const Attack&, const Attack& ) = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// Validated attack tree. Immutable once built; every query is const and
/// safe to share between threads.
class AttackTree
{
public:
  static constexpr std::size_t npos = static_cast<std::size_t>( -1 );

  /// Validates `nodes` and fixes the root, BAS indexing and a bottom-up
  /// order. Throws `Error` on any well-formedness violation.
  static AttackTree build( std::vector<Node> nodes );

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t bas_count() const noexcept { return bas_.size(); }
  const Node& node( std::size_t v ) const { return nodes_[v]; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t root() const noexcept { return root_; }

  /// Node indices of the BASs, in document order.
  const std::vector<std::size_t>& bas_nodes() const noexcept { return bas_; }
  /// Position of node `v` among the BASs, or `npos` for gates.
  std::size_t bas_index( std::size_t v ) const { return bas_pos_[v]; }

  /// Children-before-parents order over all nodes.
  const std::vector<std::size_t>& bottom_up_order() const noexcept { return order_; }
  const std::vector<std::size_t>& parent_counts() const noexcept { return parent_count_; }

  bool is_treelike() const noexcept { return treelike_; }
  bool has_probabilities() const noexcept { return has_probs_; }

  std::optional<std::size_t> find( std::string_view id ) const;

  double cost( std::size_t v ) const { return nodes_[v].cost.value_or( 0.0 ); }
  double damage( std::size_t v ) const { return nodes_[v].damage; }
  /// Success probability of a BAS; trees without annotations behave as p = 1.
  double prob( std::size_t v ) const { return nodes_[v].prob.value_or( 1.0 ); }

  Attack empty_attack() const { return Attack( bas_.size() ); }
  Attack attack_of( const std::vector<std::string>& bas_ids ) const;
  std::vector<std::string> bas_ids_of( const Attack& x ) const;

private:
  AttackTree() = default;

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::vector<std::size_t> bas_;
  std::vector<std::size_t> bas_pos_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> parent_count_;
  std::unordered_map<std::string, std::size_t> by_id_;
  bool treelike_ = true;
  bool has_probs_ = false;
};

/// Reach flag of every node under attack `x`, each node evaluated exactly
/// once. `evaluations`, if given, receives the number of node visits.
std::vector<std::uint8_t> reach( const AttackTree& tree, const Attack& x, std::size_t* evaluations = nullptr );

bool structure( const AttackTree& tree, const Attack& x, std::size_t v );
double total_cost( const AttackTree& tree, const Attack& x );
/// Damage of every reached node; reaching the root is not required.
double total_damage( const AttackTree& tree, const Attack& x );

/// Probability that node `v` is reached when every attempted BAS succeeds
/// independently. Treelike trees only.
double prob_structure( const AttackTree& tree, const Attack& x, std::size_t v );
std::vector<double> prob_reach( const AttackTree& tree, const Attack& x );

/// Removes single-child gates (and duplicate children that would create
/// them). A removed gate's damage moves onto the node that replaces it.
AttackTree collapse_unary( const AttackTree& tree );

/// Every gate ends up with exactly two children: unary gates are collapsed,
/// k-ary gates become a right-leaning chain of zero-damage auxiliary gates.
/// BAS order is preserved.
AttackTree binarize( const AttackTree& tree );

/// Models a cost on an AND gate by a fresh mandatory BAS child carrying it.
AttackTree with_internal_costs( const AttackTree& tree, const std::map<std::size_t, double>& extra_cost );

} // namespace atcd
