#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "atcd/attack_tree.hpp"
#include "atcd/execution.hpp"

namespace atcd
{

inline constexpr double unbounded = std::numeric_limits<double>::infinity();

/// Points closer than this in every coordinate are merged by `pareto_min`.
inline constexpr double dedup_tolerance = 1e-9;

/// (cost, damage); (c,d) below (c',d') iff c <= c' and d >= d'.
struct AttrPair
{
  double cost = 0.0;
  double damage = 0.0;

  friend bool operator==( const AttrPair&, const AttrPair& ) = default;
};

/// (cost, damage, node reached).
struct DetTriple
{
  double cost = 0.0;
  double damage = 0.0;
  bool reached = false;

  friend bool operator==( const DetTriple&, const DetTriple& ) = default;
};

/// (cost, expected damage, reach probability).
struct ProbTriple
{
  double cost = 0.0;
  double damage = 0.0;
  double prob = 0.0;

  friend bool operator==( const ProbTriple&, const ProbTriple& ) = default;
};

inline double potential( const AttrPair& ) { return 0.0; }
inline double potential( const DetTriple& p ) { return p.reached ? 1.0 : 0.0; }
inline double potential( const ProbTriple& p ) { return p.prob; }

/// Partial order of the domain: `a` is at least as good as `b`.
template<class P>
bool weakly_dominates( const P& a, const P& b )
{
  return a.cost <= b.cost && a.damage >= b.damage && potential( a ) >= potential( b );
}

template<class P>
bool strictly_dominates( const P& a, const P& b )
{
  return weakly_dominates( a, b ) && !( a == b );
}

/// Front order: cost ascending, then damage descending, then potential
/// descending.
template<class P>
bool front_less( const P& a, const P& b )
{
  if ( a.cost != b.cost )
  {
    return a.cost < b.cost;
  }
  if ( a.damage != b.damage )
  {
    return a.damage > b.damage;
  }
  return potential( a ) > potential( b );
}

/// Indices of the minimal elements of `points`, exact duplicates and
/// near-duplicates dropped, listed in front order.
std::vector<std::size_t> minimal_indices( std::span<const AttrPair> points );
std::vector<std::size_t> minimal_indices( std::span<const DetTriple> points );
std::vector<std::size_t> minimal_indices( std::span<const ProbTriple> points );

template<class P>
class TreeAnalysis;

/// Antichain in front order. Only `pareto_min` and friends produce one.
template<class P>
class Front
{
public:
  Front() = default;
  explicit Front( std::span<const P> points )
  {
    for ( const auto i : minimal_indices( points ) )
    {
      points_.push_back( points[i] );
    }
  }
  Front( std::initializer_list<P> points ) : Front( std::span<const P>( points.begin(), points.size() ) ) {}

  const std::vector<P>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const P& operator[]( std::size_t i ) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==( const Front&, const Front& ) = default;

private:
  template<class Q>
  friend class TreeAnalysis;

  struct trusted_t
  {
  };
  Front( trusted_t, std::vector<P> points ) : points_( std::move( points ) ) {}

  std::vector<P> points_;
};

template<class P>
Front<P> pareto_min( std::span<const P> points )
{
  return Front<P>( points );
}

template<class P>
Front<P> pareto_min( const std::vector<P>& points )
{
  return Front<P>( std::span<const P>( points ) );
}

/// Points with cost at most `budget`, order kept.
template<class P>
std::vector<P> cost_filter( std::span<const P> points, double budget )
{
  std::vector<P> out;
  for ( const auto& p : points )
  {
    if ( p.cost <= budget )
    {
      out.push_back( p );
    }
  }
  return out;
}

/// Cost filter followed by minimization.
template<class P>
Front<P> m_u( std::span<const P> points, double budget )
{
  const auto kept = cost_filter( points, budget );
  return pareto_min( kept );
}

template<class P>
Front<P> m_u( const std::vector<P>& points, double budget )
{
  return m_u( std::span<const P>( points ), budget );
}

/// Drops the third coordinate and minimizes.
template<class P>
Front<AttrPair> project( std::span<const P> points )
{
  std::vector<AttrPair> pairs;
  pairs.reserve( points.size() );
  for ( const auto& p : points )
  {
    pairs.push_back( { p.cost, p.damage } );
  }
  return pareto_min( pairs );
}

template<class P>
Front<AttrPair> project( const Front<P>& front )
{
  return project( std::span<const P>( front.points() ) );
}

/// One point of the product of two operand sets with the operand positions
/// it came from.
struct Origin
{
  std::uint32_t left = 0;
  std::uint32_t right = 0;
};

/// Gate combinators. `And` is the triangle operator, `Or` the nabla one:
/// costs and damages add, the gate damage is paid in proportion to the
/// combined reach.
DetTriple combine_point( NodeKind gate, const DetTriple& a, const DetTriple& b, double gate_damage );
ProbTriple combine_point( NodeKind gate, const ProbTriple& a, const ProbTriple& b, double gate_damage );

/// Full product X (op) Y, row-major, no filtering.
std::vector<DetTriple> combine_all( NodeKind gate, std::span<const DetTriple> left, std::span<const DetTriple> right,
                                    double gate_damage );
std::vector<ProbTriple> combine_all( NodeKind gate, std::span<const ProbTriple> left,
                                     std::span<const ProbTriple> right, double gate_damage );

/// Product restricted to cost <= budget, with provenance. The parallel
/// kernel returns the same sequence as the serial one.
template<class P>
struct TracedPoints
{
  std::vector<P> points;
  std::vector<Origin> origins;
};

TracedPoints<DetTriple> combine_traced( NodeKind gate, std::span<const DetTriple> left,
                                        std::span<const DetTriple> right, double gate_damage, double budget,
                                        Exec exec = Exec::Parallel );
TracedPoints<ProbTriple> combine_traced( NodeKind gate, std::span<const ProbTriple> left,
                                         std::span<const ProbTriple> right, double gate_damage, double budget,
                                         Exec exec = Exec::Parallel );

Front<DetTriple> combine_det( NodeKind gate, const Front<DetTriple>& left, const Front<DetTriple>& right,
                              double gate_damage, double budget = unbounded );
Front<ProbTriple> combine_prob( NodeKind gate, const Front<ProbTriple>& left, const Front<ProbTriple>& right,
                                double gate_damage, double budget = unbounded );

/// Probability that at least one of two independent events occurs. Written
/// as a complement product so it stays monotone under rounding.
inline double star( double p, double q )
{
  return 1.0 - ( 1.0 - p ) * ( 1.0 - q );
}

} // namespace atcd
