#include "atcd/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace atcd
{

int worker_count()
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace
{

template<class P>
bool near( const P& a, const P& b )
{
  return std::abs( a.cost - b.cost ) < dedup_tolerance && std::abs( a.damage - b.damage ) < dedup_tolerance &&
         std::abs( potential( a ) - potential( b ) ) < dedup_tolerance;
}

/// Rounds to the dedup grid so that values differing only by summation
/// order compare equal during dominance checks.
double snap( double x )
{
  return std::isfinite( x ) ? std::round( x / dedup_tolerance ) * dedup_tolerance : x;
}

AttrPair snapped( const AttrPair& p )
{
  return { snap( p.cost ), snap( p.damage ) };
}

DetTriple snapped( const DetTriple& p )
{
  return { snap( p.cost ), snap( p.damage ), p.reached };
}

ProbTriple snapped( const ProbTriple& p )
{
  return { snap( p.cost ), snap( p.damage ), snap( p.prob ) };
}

/// Merges near-duplicates among an antichain already in front order.
template<class P>
std::vector<std::size_t> merge_near( std::span<const P> points, const std::vector<std::size_t>& kept )
{
  std::vector<std::size_t> out;
  out.reserve( kept.size() );
  for ( const auto i : kept )
  {
    bool merged = false;
    for ( auto k = out.size(); k-- > 0; )
    {
      auto& j = out[k];
      if ( points[i].cost - points[j].cost >= dedup_tolerance )
      {
        break;
      }
      if ( near( points[i], points[j] ) )
      {
        if ( front_less( points[i], points[j] ) )
        {
          j = i;
        }
        merged = true;
        break;
      }
    }
    if ( !merged )
    {
      out.push_back( i );
    }
  }
  if ( out.size() != kept.size() )
  {
    std::stable_sort( out.begin(), out.end(), [&]( auto a, auto b ) { return front_less( points[a], points[b] ); } );
  }
  return out;
}

template<class P, class Keep>
std::vector<std::size_t> sweep( std::span<const P> points, Keep&& keep )
{
  std::vector<P> keys;
  keys.reserve( points.size() );
  for ( const auto& p : points )
  {
    keys.push_back( snapped( p ) );
  }
  // among equal keys the original first in front order wins
  std::vector<std::size_t> idx( points.size() );
  std::iota( idx.begin(), idx.end(), std::size_t{ 0 } );
  std::stable_sort( idx.begin(), idx.end(), [&]( auto a, auto b ) {
    if ( front_less( keys[a], keys[b] ) )
    {
      return true;
    }
    return !front_less( keys[b], keys[a] ) && front_less( points[a], points[b] );
  } );
  std::vector<std::size_t> kept;
  const P* previous = nullptr;
  for ( const auto i : idx )
  {
    if ( previous && *previous == keys[i] )
    {
      continue;
    }
    previous = &keys[i];
    if ( keep( keys[i] ) )
    {
      kept.push_back( i );
    }
  }
  return merge_near( points, kept );
}

} // namespace

std::vector<std::size_t> minimal_indices( std::span<const AttrPair> points )
{
  double best = -unbounded;
  return sweep( points, [&]( const AttrPair& p ) {
    if ( p.damage > best )
    {
      best = p.damage;
      return true;
    }
    return false;
  } );
}

std::vector<std::size_t> minimal_indices( std::span<const DetTriple> points )
{
  // Everything earlier in front order is no more expensive; a point survives
  // unless an earlier one with at least its reach bit does as much damage.
  double best_any = -unbounded;
  double best_reached = -unbounded;
  return sweep( points, [&]( const DetTriple& p ) {
    const bool keep = p.reached ? p.damage > best_reached : p.damage > best_any;
    if ( keep )
    {
      best_any = std::max( best_any, p.damage );
      if ( p.reached )
      {
        best_reached = std::max( best_reached, p.damage );
      }
    }
    return keep;
  } );
}

std::vector<std::size_t> minimal_indices( std::span<const ProbTriple> points )
{
  // Staircase of (damage, prob) maxima seen so far: prob strictly decreases
  // as damage grows.
  std::map<double, double> stairs;
  return sweep( points, [&]( const ProbTriple& p ) {
    auto it = stairs.lower_bound( p.damage );
    if ( it != stairs.end() && it->second >= p.prob )
    {
      return false;
    }
    if ( it != stairs.end() && it->first == p.damage )
    {
      it = stairs.erase( it );
    }
    while ( it != stairs.begin() )
    {
      auto prev = std::prev( it );
      if ( prev->second > p.prob )
      {
        break;
      }
      stairs.erase( prev );
    }
    stairs.emplace_hint( it, p.damage, p.prob );
    return true;
  } );
}

DetTriple combine_point( NodeKind gate, const DetTriple& a, const DetTriple& b, double gate_damage )
{
  const bool reached = gate == NodeKind::And ? ( a.reached && b.reached ) : ( a.reached || b.reached );
  return { a.cost + b.cost, a.damage + b.damage + ( reached ? gate_damage : 0.0 ), reached };
}

ProbTriple combine_point( NodeKind gate, const ProbTriple& a, const ProbTriple& b, double gate_damage )
{
  const double p = gate == NodeKind::And ? a.prob * b.prob : star( a.prob, b.prob );
  return { a.cost + b.cost, a.damage + b.damage + p * gate_damage, p };
}

namespace
{

void require_gate( NodeKind gate )
{
  if ( gate == NodeKind::Bas )
  {
    throw Error( ErrorKind::KeyIsNotGate, "combination needs an AND or OR gate" );
  }
}

template<class P>
std::vector<P> combine_all_impl( NodeKind gate, std::span<const P> left, std::span<const P> right, double d )
{
  require_gate( gate );
  std::vector<P> out;
  out.reserve( left.size() * right.size() );
  for ( const auto& a : left )
  {
    for ( const auto& b : right )
    {
      out.push_back( combine_point( gate, a, b, d ) );
    }
  }
  return out;
}

template<class P>
TracedPoints<P> combine_traced_serial( NodeKind gate, std::span<const P> left, std::span<const P> right, double d,
                                       double budget )
{
  TracedPoints<P> out;
  out.points.reserve( left.size() * right.size() );
  out.origins.reserve( left.size() * right.size() );
  for ( std::uint32_t i = 0; i < left.size(); ++i )
  {
    for ( std::uint32_t j = 0; j < right.size(); ++j )
    {
      if ( left[i].cost + right[j].cost <= budget )
      {
        out.points.push_back( combine_point( gate, left[i], right[j], d ) );
        out.origins.push_back( { i, j } );
      }
    }
  }
  return out;
}

template<class P>
TracedPoints<P> combine_traced_parallel( NodeKind gate, std::span<const P> left, std::span<const P> right, double d,
                                         double budget )
{
  const auto rows = static_cast<std::int64_t>( left.size() );
  std::vector<std::size_t> offset( left.size() + 1, 0 );

#pragma omp parallel for schedule( static )
  for ( std::int64_t i = 0; i < rows; ++i )
  {
    std::size_t n = 0;
    for ( const auto& b : right )
    {
      n += ( left[i].cost + b.cost <= budget ) ? 1 : 0;
    }
    offset[i + 1] = n;
  }
  std::partial_sum( offset.begin(), offset.end(), offset.begin() );

  TracedPoints<P> out;
  out.points.resize( offset.back() );
  out.origins.resize( offset.back() );

#pragma omp parallel for schedule( static )
  for ( std::int64_t i = 0; i < rows; ++i )
  {
    auto k = offset[i];
    for ( std::uint32_t j = 0; j < right.size(); ++j )
    {
      if ( left[i].cost + right[j].cost <= budget )
      {
        out.points[k] = combine_point( gate, left[i], right[j], d );
        out.origins[k] = { static_cast<std::uint32_t>( i ), j };
        ++k;
      }
    }
  }
  return out;
}

template<class P>
TracedPoints<P> combine_traced_impl( NodeKind gate, std::span<const P> left, std::span<const P> right, double d,
                                     double budget, Exec exec )
{
  require_gate( gate );
  if ( exec == Exec::Parallel && left.size() * right.size() >= parallel_grain )
  {
    return combine_traced_parallel( gate, left, right, d, budget );
  }
  return combine_traced_serial( gate, left, right, d, budget );
}

} // namespace

std::vector<DetTriple> combine_all( NodeKind gate, std::span<const DetTriple> left, std::span<const DetTriple> right,
                                    double gate_damage )
{
  return combine_all_impl( gate, left, right, gate_damage );
}

std::vector<ProbTriple> combine_all( NodeKind gate, std::span<const ProbTriple> left,
                                     std::span<const ProbTriple> right, double gate_damage )
{
  return combine_all_impl( gate, left, right, gate_damage );
}

TracedPoints<DetTriple> combine_traced( NodeKind gate, std::span<const DetTriple> left,
                                        std::span<const DetTriple> right, double gate_damage, double budget,
                                        Exec exec )
{
  return combine_traced_impl( gate, left, right, gate_damage, budget, exec );
}

TracedPoints<ProbTriple> combine_traced( NodeKind gate, std::span<const ProbTriple> left,
                                         std::span<const ProbTriple> right, double gate_damage, double budget,
                                         Exec exec )
{
  return combine_traced_impl( gate, left, right, gate_damage, budget, exec );
}

Front<DetTriple> combine_det( NodeKind gate, const Front<DetTriple>& left, const Front<DetTriple>& right,
                              double gate_damage, double budget )
{
  const auto traced = combine_traced( gate, std::span<const DetTriple>( left.points() ),
                                      std::span<const DetTriple>( right.points() ), gate_damage, budget );
  return pareto_min( traced.points );
}

Front<ProbTriple> combine_prob( NodeKind gate, const Front<ProbTriple>& left, const Front<ProbTriple>& right,
                                double gate_damage, double budget )
{
  const auto traced = combine_traced( gate, std::span<const ProbTriple>( left.points() ),
                                      std::span<const ProbTriple>( right.points() ), gate_damage, budget );
  return pareto_min( traced.points );
}

} // namespace atcd
