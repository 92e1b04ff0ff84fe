#include "atcd/attack_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace atcd
{

std::string_view to_string( ErrorKind kind )
{
  switch ( kind )
  {
  case ErrorKind::CycleDetected: return "CycleDetected";
  case ErrorKind::MultipleRoots: return "MultipleRoots";
  case ErrorKind::NoRoot: return "NoRoot";
  case ErrorKind::LeafGate: return "LeafGate";
  case ErrorKind::InternalBAS: return "InternalBAS";
  case ErrorKind::MissingCost: return "MissingCost";
  case ErrorKind::NegativeAttribute: return "NegativeAttribute";
  case ErrorKind::ProbOutOfRange: return "ProbOutOfRange";
  case ErrorKind::DuplicateId: return "DuplicateId";
  case ErrorKind::DuplicateChild: return "DuplicateChild";
  case ErrorKind::DanglingChildRef: return "DanglingChildRef";
  case ErrorKind::MalformedDocument: return "MalformedDocument";
  case ErrorKind::KeyIsNotGate: return "KeyIsNotGate";
  case ErrorKind::NotTreelike: return "NotTreelike";
  case ErrorKind::LengthMismatch: return "LengthMismatch";
  case ErrorKind::NegativeCoefficient: return "NegativeCoefficient";
  case ErrorKind::NotMonotone: return "NotMonotone";
  case ErrorKind::NonZeroEmptyValue: return "NonZeroEmptyValue";
  case ErrorKind::TooLarge: return "TooLarge";
  case ErrorKind::OutOfRange: return "OutOfRange";
  case ErrorKind::EmptyTree: return "EmptyTree";
  case ErrorKind::NoBlocks: return "NoBlocks";
  case ErrorKind::InfeasibleDamageThreshold: return "InfeasibleDamageThreshold";
  case ErrorKind::NonFiniteAttribute: return "NonFiniteAttribute";
  case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  case ErrorKind::TooManyBas: return "TooManyBas";
  case ErrorKind::TooManyActiveBas: return "TooManyActiveBas";
  }
  return "Unknown";
}

std::string_view to_string( NodeKind kind )
{
  switch ( kind )
  {
  case NodeKind::Bas: return "BAS";
  case NodeKind::And: return "AND";
  case NodeKind::Or: return "OR";
  }
  return "?";
}

Attack Attack::from_mask( std::uint64_t mask, std::size_t bas_count )
{
  Attack x( bas_count );
  for ( std::size_t i = 0; i < bas_count && i < 64; ++i )
  {
    x.bits_[i] = static_cast<std::uint8_t>( ( mask >> i ) & 1u );
  }
  return x;
}

std::size_t Attack::count() const noexcept
{
  return static_cast<std::size_t>( std::count( bits_.begin(), bits_.end(), std::uint8_t{ 1 } ) );
}

bool Attack::is_subset_of( const Attack& other ) const
{
  if ( other.size() != size() )
  {
    return false;
  }
  for ( std::size_t i = 0; i < bits_.size(); ++i )
  {
    if ( bits_[i] > other.bits_[i] )
    {
      return false;
    }
  }
  return true;
}

namespace
{

void check_attribute( const Node& n, const char* what, double value )
{
  if ( !std::isfinite( value ) )
  {
    throw Error( ErrorKind::NonFiniteAttribute, std::string( what ) + " of '" + n.id + "' is not finite" );
  }
  if ( value < 0.0 )
  {
    throw Error( ErrorKind::NegativeAttribute, std::string( what ) + " of '" + n.id + "' is negative" );
  }
}

} // namespace

AttackTree AttackTree::build( std::vector<Node> nodes )
{
  AttackTree t;
  const auto n = nodes.size();
  if ( n == 0 )
  {
    throw Error( ErrorKind::NoRoot, "tree has no nodes" );
  }

  for ( std::size_t v = 0; v < n; ++v )
  {
    const auto& node = nodes[v];
    if ( !t.by_id_.emplace( node.id, v ).second )
    {
      throw Error( ErrorKind::DuplicateId, "id '" + node.id + "' is used twice" );
    }
  }

  t.parent_count_.assign( n, 0 );
  t.bas_pos_.assign( n, npos );
  for ( std::size_t v = 0; v < n; ++v )
  {
    auto& node = nodes[v];
    std::unordered_set<std::size_t> seen;
    for ( auto w : node.children )
    {
      if ( w >= n )
      {
        throw Error( ErrorKind::DanglingChildRef, "node '" + node.id + "' references a missing child" );
      }
      if ( !seen.insert( w ).second )
      {
        throw Error( ErrorKind::DuplicateChild, "node '" + node.id + "' lists '" + nodes[w].id + "' twice" );
      }
      ++t.parent_count_[w];
    }

    if ( node.kind == NodeKind::Bas )
    {
      if ( !node.children.empty() )
      {
        throw Error( ErrorKind::InternalBAS, "BAS '" + node.id + "' has children" );
      }
      if ( !node.cost )
      {
        throw Error( ErrorKind::MissingCost, "BAS '" + node.id + "' has no cost" );
      }
      check_attribute( node, "cost", *node.cost );
      if ( node.prob )
      {
        if ( !std::isfinite( *node.prob ) || *node.prob < 0.0 || *node.prob > 1.0 )
        {
          throw Error( ErrorKind::ProbOutOfRange, "prob of '" + node.id + "' is outside [0,1]" );
        }
        t.has_probs_ = true;
      }
      t.bas_pos_[v] = t.bas_.size();
      t.bas_.push_back( v );
    }
    else
    {
      if ( node.children.empty() )
      {
        throw Error( ErrorKind::LeafGate, "gate '" + node.id + "' has no children" );
      }
      if ( node.cost )
      {
        throw Error( ErrorKind::MalformedDocument,
                     "gate '" + node.id + "' carries a cost; model it as a dummy BAS under an AND" );
      }
      if ( node.prob )
      {
        throw Error( ErrorKind::MalformedDocument, "gate '" + node.id + "' carries a probability" );
      }
    }
    check_attribute( node, "damage", node.damage );
  }

  // Kahn's algorithm from the leaves up; anything left over sits on a cycle.
  std::vector<std::size_t> pending( n );
  std::vector<std::vector<std::size_t>> parents( n );
  for ( std::size_t v = 0; v < n; ++v )
  {
    pending[v] = nodes[v].children.size();
    for ( auto w : nodes[v].children )
    {
      parents[w].push_back( v );
    }
  }
  std::vector<std::size_t> ready;
  for ( std::size_t v = n; v-- > 0; )
  {
    if ( pending[v] == 0 )
    {
      ready.push_back( v );
    }
  }
  t.order_.reserve( n );
  while ( !ready.empty() )
  {
    const auto v = ready.back();
    ready.pop_back();
    t.order_.push_back( v );
    for ( auto p : parents[v] )
    {
      if ( --pending[p] == 0 )
      {
        ready.push_back( p );
      }
    }
  }
  if ( t.order_.size() != n )
  {
    throw Error( ErrorKind::CycleDetected, "the child relation contains a cycle" );
  }

  std::vector<std::size_t> roots;
  for ( std::size_t v = 0; v < n; ++v )
  {
    if ( t.parent_count_[v] == 0 )
    {
      roots.push_back( v );
    }
    if ( t.parent_count_[v] > 1 )
    {
      t.treelike_ = false;
    }
  }
  if ( roots.empty() )
  {
    throw Error( ErrorKind::NoRoot, "every node has a parent" );
  }
  if ( roots.size() > 1 )
  {
    throw Error( ErrorKind::MultipleRoots,
                 "nodes '" + nodes[roots[0]].id + "' and '" + nodes[roots[1]].id + "' both lack a parent" );
  }
  t.root_ = roots.front();
  t.nodes_ = std::move( nodes );
  return t;
}

std::optional<std::size_t> AttackTree::find( std::string_view id ) const
{
  const auto it = by_id_.find( std::string( id ) );
  if ( it == by_id_.end() )
  {
    return std::nullopt;
  }
  return it->second;
}

Attack AttackTree::attack_of( const std::vector<std::string>& bas_ids ) const
{
  Attack x( bas_.size() );
  for ( const auto& id : bas_ids )
  {
    const auto v = find( id );
    if ( !v || bas_pos_[*v] == npos )
    {
      throw Error( ErrorKind::OutOfRange, "'" + id + "' is not a BAS of this tree" );
    }
    x.set( bas_pos_[*v] );
  }
  return x;
}

std::vector<std::string> AttackTree::bas_ids_of( const Attack& x ) const
{
  std::vector<std::string> ids;
  for ( std::size_t i = 0; i < x.size() && i < bas_.size(); ++i )
  {
    if ( x.test( i ) )
    {
      ids.push_back( nodes_[bas_[i]].id );
    }
  }
  return ids;
}

namespace
{

void check_attack( const AttackTree& tree, const Attack& x )
{
  if ( x.size() != tree.bas_count() )
  {
    throw Error( ErrorKind::OutOfRange, "attack length " + std::to_string( x.size() ) + " does not match " +
                                            std::to_string( tree.bas_count() ) + " BASs" );
  }
}

} // namespace

std::vector<std::uint8_t> reach( const AttackTree& tree, const Attack& x, std::size_t* evaluations )
{
  check_attack( tree, x );
  std::vector<std::uint8_t> r( tree.size(), 0u );
  std::size_t visits = 0;
  for ( const auto v : tree.bottom_up_order() )
  {
    ++visits;
    const auto& node = tree.node( v );
    switch ( node.kind )
    {
    case NodeKind::Bas:
      r[v] = x.test( tree.bas_index( v ) ) ? 1u : 0u;
      break;
    case NodeKind::And:
      r[v] = std::all_of( node.children.begin(), node.children.end(), [&]( auto w ) { return r[w] != 0u; } );
      break;
    case NodeKind::Or:
      r[v] = std::any_of( node.children.begin(), node.children.end(), [&]( auto w ) { return r[w] != 0u; } );
      break;
    }
  }
  if ( evaluations )
  {
    *evaluations = visits;
  }
  return r;
}

bool structure( const AttackTree& tree, const Attack& x, std::size_t v )
{
  if ( v >= tree.size() )
  {
    throw Error( ErrorKind::OutOfRange, "node index out of range" );
  }
  return reach( tree, x )[v] != 0u;
}

double total_cost( const AttackTree& tree, const Attack& x )
{
  check_attack( tree, x );
  double c = 0.0;
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    if ( x.test( i ) )
    {
      c += tree.cost( tree.bas_nodes()[i] );
    }
  }
  return c;
}

double total_damage( const AttackTree& tree, const Attack& x )
{
  const auto r = reach( tree, x );
  double d = 0.0;
  for ( std::size_t v = 0; v < tree.size(); ++v )
  {
    if ( r[v] )
    {
      d += tree.damage( v );
    }
  }
  return d;
}

std::vector<double> prob_reach( const AttackTree& tree, const Attack& x )
{
  if ( !tree.is_treelike() )
  {
    throw Error( ErrorKind::NotTreelike, "probabilistic reach needs independent subtrees" );
  }
  check_attack( tree, x );
  std::vector<double> p( tree.size(), 0.0 );
  for ( const auto v : tree.bottom_up_order() )
  {
    const auto& node = tree.node( v );
    switch ( node.kind )
    {
    case NodeKind::Bas:
      p[v] = x.test( tree.bas_index( v ) ) ? tree.prob( v ) : 0.0;
      break;
    case NodeKind::And:
    {
      double acc = 1.0;
      for ( auto w : node.children )
      {
        acc *= p[w];
      }
      p[v] = acc;
      break;
    }
    case NodeKind::Or:
    {
      double none = 1.0;
      for ( auto w : node.children )
      {
        none *= 1.0 - p[w];
      }
      p[v] = 1.0 - none;
      break;
    }
    }
  }
  return p;
}

double prob_structure( const AttackTree& tree, const Attack& x, std::size_t v )
{
  if ( v >= tree.size() )
  {
    throw Error( ErrorKind::OutOfRange, "node index out of range" );
  }
  return prob_reach( tree, x )[v];
}

AttackTree collapse_unary( const AttackTree& tree )
{
  auto nodes = tree.nodes();
  const auto n = nodes.size();
  std::vector<bool> removed( n, false );

  // rep[v]: node standing in for v once unary gates above it are dissolved.
  std::vector<std::size_t> rep( n );
  std::iota( rep.begin(), rep.end(), std::size_t{ 0 } );
  auto find = [&]( std::size_t v ) {
    while ( rep[v] != v )
    {
      v = rep[v];
    }
    return v;
  };

  bool changed = true;
  while ( changed )
  {
    changed = false;
    for ( const auto v : tree.bottom_up_order() )
    {
      if ( removed[v] || nodes[v].kind == NodeKind::Bas )
      {
        continue;
      }
      std::vector<std::size_t> kids;
      for ( auto w : nodes[v].children )
      {
        const auto r = find( w );
        if ( std::find( kids.begin(), kids.end(), r ) == kids.end() )
        {
          kids.push_back( r );
        }
      }
      if ( kids.size() != nodes[v].children.size() || kids != nodes[v].children )
      {
        nodes[v].children = kids;
        changed = true;
      }
      if ( kids.size() == 1 )
      {
        nodes[kids.front()].damage += nodes[v].damage;
        rep[v] = kids.front();
        removed[v] = true;
        changed = true;
      }
    }
  }

  std::vector<std::size_t> new_index( n, AttackTree::npos );
  std::vector<Node> out;
  for ( std::size_t v = 0; v < n; ++v )
  {
    if ( !removed[v] )
    {
      new_index[v] = out.size();
      out.push_back( nodes[v] );
    }
  }
  for ( auto& node : out )
  {
    for ( auto& w : node.children )
    {
      w = new_index[find( w )];
    }
  }
  return AttackTree::build( std::move( out ) );
}

namespace
{

std::string fresh_id( const std::unordered_set<std::string>& taken, const std::string& base )
{
  if ( !taken.count( base ) )
  {
    return base;
  }
  for ( std::size_t k = 2;; ++k )
  {
    auto candidate = base + "~" + std::to_string( k );
    if ( !taken.count( candidate ) )
    {
      return candidate;
    }
  }
}

} // namespace

AttackTree binarize( const AttackTree& tree )
{
  const auto collapsed = collapse_unary( tree );
  const auto& src = collapsed.nodes();

  std::unordered_set<std::string> taken;
  for ( const auto& node : src )
  {
    taken.insert( node.id );
  }

  // Lay out the output: each original node followed by its auxiliary chain.
  std::vector<std::size_t> new_index( src.size() );
  std::size_t next = 0;
  for ( std::size_t v = 0; v < src.size(); ++v )
  {
    new_index[v] = next;
    const auto k = src[v].children.size();
    next += 1 + ( k > 2 ? k - 2 : 0 );
  }

  std::vector<Node> out( next );
  for ( std::size_t v = 0; v < src.size(); ++v )
  {
    const auto& node = src[v];
    const auto base = new_index[v];
    out[base] = node;
    const auto k = node.children.size();
    if ( k <= 2 )
    {
      for ( auto& w : out[base].children )
      {
        w = new_index[w];
      }
      continue;
    }
    // v = op(c0, aux1), aux1 = op(c1, aux2), ..., aux_{k-2} = op(c_{k-2}, c_{k-1})
    for ( std::size_t j = 0; j + 1 < k; ++j )
    {
      auto& gate = out[base + j];
      if ( j > 0 )
      {
        gate.id = fresh_id( taken, node.id + "#" + std::to_string( j ) );
        taken.insert( gate.id );
        gate.kind = node.kind;
        gate.damage = 0.0;
        gate.cost.reset();
        gate.prob.reset();
      }
      const auto right = ( j + 2 == k ) ? new_index[node.children[k - 1]] : base + j + 1;
      gate.children = { new_index[node.children[j]], right };
    }
  }
  return AttackTree::build( std::move( out ) );
}

AttackTree with_internal_costs( const AttackTree& tree, const std::map<std::size_t, double>& extra_cost )
{
  auto nodes = tree.nodes();
  std::unordered_set<std::string> taken;
  for ( const auto& node : nodes )
  {
    taken.insert( node.id );
  }
  for ( const auto& [gate, c] : extra_cost )
  {
    if ( gate >= nodes.size() || nodes[gate].kind != NodeKind::And )
    {
      throw Error( ErrorKind::KeyIsNotGate,
                   gate < nodes.size() ? "'" + nodes[gate].id + "' is not an AND gate" : "node index out of range" );
    }
    Node dummy;
    dummy.id = fresh_id( taken, nodes[gate].id + "$cost" );
    taken.insert( dummy.id );
    dummy.kind = NodeKind::Bas;
    dummy.cost = c;
    dummy.damage = 0.0;
    dummy.prob = 1.0;
    nodes[gate].children.push_back( nodes.size() );
    nodes.push_back( std::move( dummy ) );
  }
  return AttackTree::build( std::move( nodes ) );
}

} // namespace atcd
