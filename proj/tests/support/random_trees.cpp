#include "support/random_trees.hpp"

#include <algorithm>
#include <string>

namespace atcd::testing
{

double uniform01( SplitMix64& rng )
{
  return static_cast<double>( rng.next() >> 11 ) * 0x1.0p-53;
}

namespace
{

int draw( SplitMix64& rng, int lo, int hi )
{
  return lo + static_cast<int>( rng.below( static_cast<std::uint64_t>( hi - lo + 1 ) ) );
}

class Builder
{
public:
  Builder( SplitMix64& rng, const TreeShape& shape ) : rng_( rng ), shape_( shape ) {}

  std::size_t grow( std::size_t bas )
  {
    const auto v = nodes_.size();
    nodes_.emplace_back();
    nodes_[v].id = "n" + std::to_string( v );
    nodes_[v].damage = draw( rng_, 0, shape_.max_damage );
    if ( bas == 1 )
    {
      nodes_[v].kind = NodeKind::Bas;
      nodes_[v].cost = draw( rng_, 0, shape_.max_cost );
      if ( shape_.probs )
      {
        nodes_[v].prob = draw( rng_, 0, 10 ) / 10.0;
      }
      return v;
    }
    nodes_[v].kind = rng_.below( 2 ) ? NodeKind::And : NodeKind::Or;
    if ( draw( rng_, 1, 100 ) <= shape_.unary_percent )
    {
      const auto child = grow( bas );
      nodes_[v].children = { child };
      return v;
    }
    const auto arity = static_cast<std::size_t>( draw( rng_, 2, static_cast<int>( std::min<std::size_t>( bas, 4 ) ) ) );
    // split `bas` into `arity` positive parts
    std::vector<std::size_t> parts( arity, 1 );
    for ( std::size_t rest = bas - arity; rest > 0; --rest )
    {
      ++parts[rng_.below( arity )];
    }
    for ( const auto part : parts )
    {
      const auto child = grow( part );
      nodes_[v].children.push_back( child );
    }
    return v;
  }

  std::vector<Node> take() { return std::move( nodes_ ); }

private:
  SplitMix64& rng_;
  const TreeShape& shape_;
  std::vector<Node> nodes_;
};

} // namespace

AttackTree random_treelike( SplitMix64& rng, const TreeShape& shape )
{
  Builder builder( rng, shape );
  builder.grow( static_cast<std::size_t>( draw( rng, static_cast<int>( shape.min_bas ), static_cast<int>( shape.max_bas ) ) ) );
  return AttackTree::build( builder.take() );
}

AttackTree random_dag( SplitMix64& rng, const TreeShape& shape, std::size_t extra_edges )
{
  auto nodes = random_treelike( rng, shape ).nodes();
  std::vector<std::size_t> gates;
  for ( std::size_t v = 0; v < nodes.size(); ++v )
  {
    if ( nodes[v].kind != NodeKind::Bas )
    {
      gates.push_back( v );
    }
  }
  for ( std::size_t e = 0; e < extra_edges && !gates.empty(); ++e )
  {
    const auto u = gates[rng.below( gates.size() )];
    std::vector<std::size_t> targets;
    for ( auto w = u + 1; w < nodes.size(); ++w )
    {
      if ( std::find( nodes[u].children.begin(), nodes[u].children.end(), w ) == nodes[u].children.end() )
      {
        targets.push_back( w );
      }
    }
    if ( !targets.empty() )
    {
      nodes[u].children.push_back( targets[rng.below( targets.size() )] );
    }
  }
  return AttackTree::build( std::move( nodes ) );
}

std::vector<ProbTriple> random_ptrips( SplitMix64& rng, std::size_t n )
{
  std::vector<ProbTriple> out;
  for ( std::size_t i = 0; i < n; ++i )
  {
    out.push_back( { static_cast<double>( draw( rng, 0, 10 ) ), static_cast<double>( draw( rng, 0, 20 ) ) / 2.0,
                     draw( rng, 0, 10 ) / 10.0 } );
  }
  return out;
}

std::vector<double> random_monotone( SplitMix64& rng, std::size_t n )
{
  const std::size_t size = std::size_t{ 1 } << n;
  std::vector<double> table( size, 0.0 );
  for ( int k = 0; k < 3; ++k )
  {
    const auto need = 1 + rng.below( size - 1 );
    const auto value = static_cast<double>( 1 + rng.below( 9 ) );
    for ( std::size_t m = 0; m < size; ++m )
    {
      if ( ( m & need ) == need )
      {
        table[m] = std::max( table[m], value );
      }
    }
  }
  // plus a modular term, one weight per element
  for ( std::size_t i = 0; i < n; ++i )
  {
    const auto w = static_cast<double>( rng.below( 3 ) );
    for ( std::size_t m = 0; m < size; ++m )
    {
      table[m] += ( m >> i ) & 1u ? w : 0.0;
    }
  }
  return table;
}

} // namespace atcd::testing
