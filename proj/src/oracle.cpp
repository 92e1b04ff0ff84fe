#include "atcd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace atcd
{

namespace
{

constexpr std::uint64_t chunk_size = 1u << 14;

void guard( std::size_t count, std::size_t limit, ErrorKind kind, const char* what )
{
  if ( count > limit )
  {
    throw Error( kind, std::to_string( count ) + " " + what + " exceeds the enumeration limit of " +
                           std::to_string( limit ) );
  }
}

/// Plain structure-function evaluation on a BAS status vector, written
/// independently of `reach` so the two can check each other.
class Evaluator
{
public:
  explicit Evaluator( const AttackTree& tree ) : tree_( tree ), reached_( tree.size() ) {}

  const std::vector<std::uint8_t>& run( const std::vector<std::uint8_t>& on )
  {
    for ( const auto v : tree_.bottom_up_order() )
    {
      const auto& node = tree_.node( v );
      if ( node.kind == NodeKind::Bas )
      {
        reached_[v] = on[tree_.bas_index( v )];
        continue;
      }
      const bool conj = node.kind == NodeKind::And;
      bool value = conj;
      for ( const auto w : node.children )
      {
        value = conj ? ( value && reached_[w] ) : ( value || reached_[w] );
      }
      reached_[v] = value ? 1u : 0u;
    }
    return reached_;
  }

  double damage( const std::vector<std::uint8_t>& on )
  {
    run( on );
    double sum = 0.0;
    for ( std::size_t v = 0; v < reached_.size(); ++v )
    {
      sum += reached_[v] ? tree_.damage( v ) : 0.0;
    }
    return sum;
  }

private:
  const AttackTree& tree_;
  std::vector<std::uint8_t> reached_;
};

double cost_of( const AttackTree& tree, const std::vector<std::uint8_t>& on )
{
  double sum = 0.0;
  for ( std::size_t i = 0; i < on.size(); ++i )
  {
    sum += on[i] ? tree.cost( tree.bas_nodes()[i] ) : 0.0;
  }
  return sum;
}

std::vector<std::uint8_t> bits_of( const Attack& x )
{
  std::vector<std::uint8_t> on( x.size() );
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    on[i] = x.test( i ) ? 1u : 0u;
  }
  return on;
}

/// E[d(Y_x)] with Y_x enumerated over the sub-attacks of `on`.
double expected_damage( const AttackTree& tree, Evaluator& eval, const std::vector<std::uint8_t>& on )
{
  std::vector<std::size_t> active;
  for ( std::size_t i = 0; i < on.size(); ++i )
  {
    if ( on[i] )
    {
      active.push_back( i );
    }
  }
  std::vector<std::uint8_t> y( on.size(), 0u );
  double sum = 0.0;
  for ( std::uint64_t j = 0; j < ( std::uint64_t{ 1 } << active.size() ); ++j )
  {
    double prob = 1.0;
    for ( std::size_t k = 0; k < active.size(); ++k )
    {
      const bool success = ( j >> k ) & 1u;
      const double p = tree.prob( tree.bas_nodes()[active[k]] );
      y[active[k]] = success ? 1u : 0u;
      prob *= success ? p : 1.0 - p;
    }
    if ( prob != 0.0 )
    {
      sum += prob * eval.damage( y );
    }
  }
  return sum;
}

/// Visits every attack in Gray-code order, chunk by chunk, and minimizes the
/// (cost, value) pairs. Chunks are independent; the parallel path only
/// changes who runs them.
Front<AttrPair> enumerate_front( const AttackTree& tree, Exec exec,
                                 const std::function<double( Evaluator&, const std::vector<std::uint8_t>& )>& value )
{
  const auto n = tree.bas_count();
  const std::uint64_t total = std::uint64_t{ 1 } << n;
  const auto chunks = static_cast<std::int64_t>( ( total + chunk_size - 1 ) / chunk_size );
  std::vector<std::vector<AttrPair>> partial( static_cast<std::size_t>( chunks ) );

  const auto run_chunk = [&]( std::int64_t c ) {
    Evaluator eval( tree );
    std::vector<std::uint8_t> on( n );
    std::vector<AttrPair> points;
    const std::uint64_t lo = static_cast<std::uint64_t>( c ) * chunk_size;
    const std::uint64_t hi = std::min( total, lo + chunk_size );
    for ( std::uint64_t k = lo; k < hi; ++k )
    {
      const std::uint64_t gray = k ^ ( k >> 1 );
      for ( std::size_t i = 0; i < n; ++i )
      {
        on[i] = ( gray >> i ) & 1u;
      }
      points.push_back( { cost_of( tree, on ), value( eval, on ) } );
    }
    partial[static_cast<std::size_t>( c )] = pareto_min( points ).points();
  };

  if ( exec == Exec::Parallel && chunks > 1 )
  {
#pragma omp parallel for schedule( dynamic, 1 )
    for ( std::int64_t c = 0; c < chunks; ++c )
    {
      run_chunk( c );
    }
  }
  else
  {
    for ( std::int64_t c = 0; c < chunks; ++c )
    {
      run_chunk( c );
    }
  }

  std::vector<AttrPair> merged;
  for ( const auto& part : partial )
  {
    merged.insert( merged.end(), part.begin(), part.end() );
  }
  return pareto_min( merged );
}

std::vector<std::size_t> descendants( const AttackTree& tree, std::size_t v )
{
  std::vector<std::uint8_t> seen( tree.size(), 0u );
  std::vector<std::size_t> stack{ v };
  std::vector<std::size_t> out;
  while ( !stack.empty() )
  {
    const auto u = stack.back();
    stack.pop_back();
    if ( seen[u] )
    {
      continue;
    }
    seen[u] = 1u;
    out.push_back( u );
    for ( const auto w : tree.node( u ).children )
    {
      stack.push_back( w );
    }
  }
  std::sort( out.begin(), out.end() );
  return out;
}

std::vector<std::size_t> local_bas( const AttackTree& tree, const std::vector<std::size_t>& nodes )
{
  std::vector<std::size_t> out;
  for ( const auto u : nodes )
  {
    if ( tree.node( u ).kind == NodeKind::Bas )
    {
      out.push_back( tree.bas_index( u ) );
    }
  }
  std::sort( out.begin(), out.end() );
  return out;
}

} // namespace

Front<AttrPair> cdpf_enum( const AttackTree& tree, Exec exec )
{
  guard( tree.bas_count(), enum_bas_limit, ErrorKind::TooManyBas, "BASs" );
  return enumerate_front( tree, exec, []( Evaluator& eval, const std::vector<std::uint8_t>& on ) {
    return eval.damage( on );
  } );
}

double dgc_enum( const AttackTree& tree, double budget )
{
  double best = 0.0;
  for ( const auto& p : cdpf_enum( tree ) )
  {
    if ( p.cost <= budget )
    {
      best = std::max( best, p.damage );
    }
  }
  return best;
}

std::optional<double> cgd_enum( const AttackTree& tree, double min_damage )
{
  for ( const auto& p : cdpf_enum( tree ) )
  {
    if ( p.damage >= min_damage )
    {
      return p.cost;
    }
  }
  return std::nullopt;
}

ActualizedDistribution distribution( const AttackTree& tree, const Attack& x )
{
  guard( x.count(), active_bas_limit, ErrorKind::TooManyActiveBas, "active BASs" );
  std::vector<std::size_t> active;
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    if ( x.test( i ) )
    {
      active.push_back( i );
    }
  }
  ActualizedDistribution law;
  for ( std::uint64_t j = 0; j < ( std::uint64_t{ 1 } << active.size() ); ++j )
  {
    Outcome outcome{ tree.empty_attack(), 1.0 };
    for ( std::size_t k = 0; k < active.size(); ++k )
    {
      const bool success = ( j >> k ) & 1u;
      const double p = tree.prob( tree.bas_nodes()[active[k]] );
      outcome.attack.set( active[k], success );
      outcome.prob *= success ? p : 1.0 - p;
    }
    law.support.push_back( std::move( outcome ) );
  }
  return law;
}

double expected_damage_enum( const AttackTree& tree, const Attack& x )
{
  guard( x.count(), active_bas_limit, ErrorKind::TooManyActiveBas, "active BASs" );
  Evaluator eval( tree );
  return expected_damage( tree, eval, bits_of( x ) );
}

Front<AttrPair> cedpf_enum( const AttackTree& tree, Exec exec )
{
  guard( tree.bas_count(), cedpf_bas_limit, ErrorKind::TooManyBas, "BASs" );
  return enumerate_front( tree, exec, [&tree]( Evaluator& eval, const std::vector<std::uint8_t>& on ) {
    return expected_damage( tree, eval, on );
  } );
}

double edgc_enum( const AttackTree& tree, double budget )
{
  double best = 0.0;
  for ( const auto& p : cedpf_enum( tree ) )
  {
    if ( p.cost <= budget )
    {
      best = std::max( best, p.damage );
    }
  }
  return best;
}

Front<DetTriple> det_node_front_enum( const AttackTree& tree, std::size_t v, double budget )
{
  const auto nodes = descendants( tree, v );
  const auto bas = local_bas( tree, nodes );
  guard( bas.size(), enum_bas_limit, ErrorKind::TooManyBas, "BASs" );
  Evaluator eval( tree );
  std::vector<std::uint8_t> on( tree.bas_count(), 0u );
  std::vector<DetTriple> points;
  for ( std::uint64_t m = 0; m < ( std::uint64_t{ 1 } << bas.size() ); ++m )
  {
    for ( std::size_t k = 0; k < bas.size(); ++k )
    {
      on[bas[k]] = ( m >> k ) & 1u;
    }
    const auto& reached = eval.run( on );
    double damage = 0.0;
    for ( const auto u : nodes )
    {
      damage += reached[u] ? tree.damage( u ) : 0.0;
    }
    points.push_back( { cost_of( tree, on ), damage, reached[v] != 0 } );
  }
  return m_u( points, budget );
}

Front<ProbTriple> prob_node_front_enum( const AttackTree& tree, std::size_t v, double budget )
{
  const auto nodes = descendants( tree, v );
  const auto bas = local_bas( tree, nodes );
  guard( bas.size(), cedpf_bas_limit, ErrorKind::TooManyBas, "BASs" );
  Evaluator eval( tree );
  std::vector<std::uint8_t> y( tree.bas_count(), 0u );
  std::vector<ProbTriple> points;
  for ( std::uint64_t m = 0; m < ( std::uint64_t{ 1 } << bas.size() ); ++m )
  {
    double cost = 0.0;
    for ( std::size_t k = 0; k < bas.size(); ++k )
    {
      cost += ( ( m >> k ) & 1u ) ? tree.cost( tree.bas_nodes()[bas[k]] ) : 0.0;
    }
    double damage = 0.0;
    double prob = 0.0;
    // sub-attacks of m, including m itself
    for ( std::uint64_t s = m;; s = ( s - 1 ) & m )
    {
      double weight = 1.0;
      for ( std::size_t k = 0; k < bas.size(); ++k )
      {
        y[bas[k]] = ( s >> k ) & 1u;
        if ( ( m >> k ) & 1u )
        {
          const double p = tree.prob( tree.bas_nodes()[bas[k]] );
          weight *= y[bas[k]] ? p : 1.0 - p;
        }
      }
      const auto& reached = eval.run( y );
      for ( const auto u : nodes )
      {
        damage += reached[u] ? weight * tree.damage( u ) : 0.0;
      }
      prob += reached[v] ? weight : 0.0;
      if ( s == 0 )
      {
        break;
      }
    }
    points.push_back( { cost, damage, prob } );
  }
  return m_u( points, budget );
}

} // namespace atcd
