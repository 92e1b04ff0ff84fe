#include "atcd/tree_engine.hpp"

#include <algorithm>
#include <cmath>

namespace atcd
{

namespace
{

constexpr double threshold_slack = 1e-9;

void check_bound( double value, const char* what )
{
  if ( std::isnan( value ) || value < 0.0 )
  {
    throw Error( ErrorKind::OutOfRange, std::string( what ) + " must be a nonnegative number" );
  }
}

std::vector<DetTriple> base_points( const AttackTree& tree, std::size_t v, const DetTriple* )
{
  return { { 0.0, 0.0, false }, { tree.cost( v ), tree.damage( v ), true } };
}

std::vector<ProbTriple> base_points( const AttackTree& tree, std::size_t v, const ProbTriple* )
{
  const double p = tree.prob( v );
  return { { 0.0, 0.0, 0.0 }, { tree.cost( v ), p * tree.damage( v ), p } };
}

} // namespace

template<class P>
TreeAnalysis<P>::TreeAnalysis( const AttackTree& tree, double budget, Exec exec )
    : tree_( [&] {
        if ( !tree.is_treelike() )
        {
          throw Error( ErrorKind::NotTreelike, "bottom-up analysis needs a treelike attack tree" );
        }
        return binarize( tree );
      }() ),
      budget_( budget )
{
  check_bound( budget, "budget" );
  fronts_.resize( tree_.size() );
  origins_.resize( tree_.size() );

  for ( const auto v : tree_.bottom_up_order() )
  {
    const auto& node = tree_.node( v );
    TracedPoints<P> candidates;
    if ( node.kind == NodeKind::Bas )
    {
      // origin.left == 1 marks the activated point
      const auto base = base_points( tree_, v, static_cast<const P*>( nullptr ) );
      for ( std::uint32_t k = 0; k < base.size(); ++k )
      {
        if ( base[k].cost <= budget_ )
        {
          candidates.points.push_back( base[k] );
          candidates.origins.push_back( { k, 0 } );
        }
      }
    }
    else
    {
      const auto& left = fronts_[node.children[0]].points();
      const auto& right = fronts_[node.children[1]].points();
      candidates = combine_traced( node.kind, std::span<const P>( left ), std::span<const P>( right ),
                                   node.damage, budget_, exec );
    }

    const auto keep = minimal_indices( std::span<const P>( candidates.points ) );
    std::vector<P> points;
    std::vector<Origin> origins;
    points.reserve( keep.size() );
    origins.reserve( keep.size() );
    for ( const auto i : keep )
    {
      points.push_back( candidates.points[i] );
      origins.push_back( candidates.origins[i] );
    }
    fronts_[v] = Front<P>( typename Front<P>::trusted_t{}, std::move( points ) );
    origins_[v] = std::move( origins );
  }
}

template<class P>
Attack TreeAnalysis<P>::witness( std::size_t v, std::size_t i ) const
{
  Attack x = tree_.empty_attack();
  std::vector<std::pair<std::size_t, std::size_t>> stack{ { v, i } };
  while ( !stack.empty() )
  {
    const auto [u, k] = stack.back();
    stack.pop_back();
    const auto& node = tree_.node( u );
    const auto origin = origins_[u].at( k );
    if ( node.kind == NodeKind::Bas )
    {
      if ( origin.left == 1 )
      {
        x.set( tree_.bas_index( u ) );
      }
      continue;
    }
    stack.push_back( { node.children[0], origin.left } );
    stack.push_back( { node.children[1], origin.right } );
  }
  return x;
}

template<class P>
std::vector<std::pair<AttrPair, Attack>> TreeAnalysis<P>::projected() const
{
  const auto& root = root_front().points();
  std::vector<AttrPair> pairs;
  pairs.reserve( root.size() );
  for ( const auto& p : root )
  {
    pairs.push_back( { p.cost, p.damage } );
  }
  std::vector<std::pair<AttrPair, Attack>> out;
  for ( const auto i : minimal_indices( std::span<const AttrPair>( pairs ) ) )
  {
    out.emplace_back( pairs[i], witness( tree_.root(), i ) );
  }
  return out;
}

template class TreeAnalysis<DetTriple>;
template class TreeAnalysis<ProbTriple>;

namespace
{

template<class P>
Solution max_damage( const TreeAnalysis<P>& analysis )
{
  const auto& root = analysis.root_front();
  double best = -unbounded;
  for ( const auto& p : root )
  {
    best = std::max( best, p.damage );
  }
  // several front points may share the maximum; report the smallest attack
  std::optional<Solution> chosen;
  for ( std::size_t i = 0; i < root.size(); ++i )
  {
    if ( root[i].damage == best )
    {
      auto x = analysis.witness( analysis.tree().root(), i );
      if ( !chosen || x < chosen->witness )
      {
        chosen = Solution{ best, std::move( x ) };
      }
    }
  }
  return *chosen;
}

template<class P>
Solution min_cost( const TreeAnalysis<P>& analysis, double min_damage, double slack )
{
  for ( auto& [pair, x] : analysis.projected() )
  {
    if ( pair.damage >= min_damage - slack )
    {
      return { pair.cost, std::move( x ) };
    }
  }
  throw Error( ErrorKind::InfeasibleDamageThreshold, "no attack reaches damage " + std::to_string( min_damage ) );
}

} // namespace

Front<DetTriple> det_front( const AttackTree& tree, double budget )
{
  return DetAnalysis( tree, budget ).root_front();
}

Front<AttrPair> cdpf_tree( const AttackTree& tree )
{
  return project( det_front( tree ) );
}

Solution dgc_tree( const AttackTree& tree, double budget )
{
  return max_damage( DetAnalysis( tree, budget ) );
}

Solution cgd_tree( const AttackTree& tree, double min_damage )
{
  check_bound( min_damage, "damage threshold" );
  return min_cost( DetAnalysis( tree ), min_damage, 0.0 );
}

Front<ProbTriple> prob_front( const AttackTree& tree, double budget )
{
  return ProbAnalysis( tree, budget ).root_front();
}

Front<AttrPair> cedpf_tree( const AttackTree& tree )
{
  return project( prob_front( tree ) );
}

Solution edgc_tree( const AttackTree& tree, double budget )
{
  return max_damage( ProbAnalysis( tree, budget ) );
}

Solution cged_tree( const AttackTree& tree, double min_damage )
{
  check_bound( min_damage, "damage threshold" );
  return min_cost( ProbAnalysis( tree ), min_damage, threshold_slack );
}

} // namespace atcd
