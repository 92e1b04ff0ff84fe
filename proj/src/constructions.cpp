#include "atcd/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace atcd
{

AttackTree from_knapsack( const std::vector<double>& f_coeffs, const std::vector<double>& g_coeffs )
{
  if ( f_coeffs.size() != g_coeffs.size() )
  {
    throw Error( ErrorKind::LengthMismatch, "damage and cost coefficient lists differ in length" );
  }
  if ( f_coeffs.empty() )
  {
    throw Error( ErrorKind::OutOfRange, "a knapsack instance needs at least one item" );
  }
  std::vector<Node> nodes{ { "R", NodeKind::And, {}, std::nullopt, 0.0, std::nullopt } };
  for ( std::size_t i = 0; i < f_coeffs.size(); ++i )
  {
    if ( f_coeffs[i] < 0.0 || g_coeffs[i] < 0.0 )
    {
      throw Error( ErrorKind::NegativeCoefficient, "coefficient " + std::to_string( i + 1 ) + " is negative" );
    }
    nodes[0].children.push_back( i + 1 );
    nodes.push_back( { "v" + std::to_string( i + 1 ), NodeKind::Bas, {}, g_coeffs[i], f_coeffs[i], std::nullopt } );
  }
  return AttackTree::build( std::move( nodes ) );
}

namespace
{

void check_table( const std::vector<double>& table, std::size_t n )
{
  if ( n == 0 )
  {
    throw Error( ErrorKind::OutOfRange, "need at least one input" );
  }
  if ( n > monotone_max_inputs )
  {
    throw Error( ErrorKind::TooLarge, std::to_string( n ) + " inputs, at most " +
                                          std::to_string( monotone_max_inputs ) + " supported" );
  }
  const std::size_t size = std::size_t{ 1 } << n;
  if ( table.size() != size )
  {
    throw Error( ErrorKind::LengthMismatch,
                 "table has " + std::to_string( table.size() ) + " entries, expected " + std::to_string( size ) );
  }
  for ( std::size_t m = 0; m < size; ++m )
  {
    if ( !std::isfinite( table[m] ) || table[m] < 0.0 )
    {
      throw Error( ErrorKind::NegativeCoefficient, "table entry " + std::to_string( m ) + " is not a nonnegative number" );
    }
    for ( std::size_t i = 0; i < n; ++i )
    {
      const auto up = m | ( std::size_t{ 1 } << i );
      if ( table[up] < table[m] )
      {
        throw Error( ErrorKind::NotMonotone,
                     "entry " + std::to_string( up ) + " is below entry " + std::to_string( m ) );
      }
    }
  }
  if ( table[0] != 0.0 )
  {
    throw Error( ErrorKind::NonZeroEmptyValue, "the empty attack always has damage 0" );
  }
}

} // namespace

std::vector<std::uint32_t> monotone_order( const std::vector<double>& table, std::size_t n )
{
  check_table( table, n );
  std::vector<std::uint32_t> order( table.size() );
  std::iota( order.begin(), order.end(), 0u );
  std::sort( order.begin(), order.end(), [&]( std::uint32_t a, std::uint32_t b ) {
    if ( table[a] != table[b] )
    {
      return table[a] < table[b];
    }
    if ( std::popcount( a ) != std::popcount( b ) )
    {
      return std::popcount( a ) < std::popcount( b );
    }
    return a < b;
  } );
  return order;
}

AttackTree realize_monotone( const std::vector<double>& table, std::size_t n )
{
  const auto order = monotone_order( table, n );
  const std::size_t count = order.size();

  // layout: x0..x{n-1}, then A2..A{count}, O2..O{count}, R
  // (the first subset is the empty one; its AND and OR are dropped)
  const auto a_index = [&]( std::size_t k ) { return n + ( k - 2 ); };
  const auto o_index = [&]( std::size_t k ) { return n + ( count - 1 ) + ( k - 2 ); };

  std::vector<Node> nodes;
  for ( std::size_t i = 0; i < n; ++i )
  {
    nodes.push_back( { "x" + std::to_string( i ), NodeKind::Bas, {}, 1.0, 0.0, std::nullopt } );
  }
  for ( std::size_t k = 2; k <= count; ++k )
  {
    Node a{ "A" + std::to_string( k ), NodeKind::And, {}, std::nullopt, 0.0, std::nullopt };
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( ( order[k - 1] >> i ) & 1u )
      {
        a.children.push_back( i );
      }
    }
    nodes.push_back( std::move( a ) );
  }
  for ( std::size_t k = 2; k <= count; ++k )
  {
    Node o{ "O" + std::to_string( k ), NodeKind::Or, {}, std::nullopt,
            table[order[k - 1]] - table[order[k - 2]], std::nullopt };
    for ( std::size_t i = k; i <= count; ++i )
    {
      o.children.push_back( a_index( i ) );
    }
    nodes.push_back( std::move( o ) );
  }
  Node root{ "R", NodeKind::And, {}, std::nullopt, 0.0, std::nullopt };
  for ( std::size_t k = 2; k <= count; ++k )
  {
    root.children.push_back( o_index( k ) );
  }
  nodes.push_back( std::move( root ) );
  return collapse_unary( AttackTree::build( std::move( nodes ) ) );
}

AttackTree exponential_pf_instance( int n )
{
  if ( n < 1 || n > 20 )
  {
    throw Error( ErrorKind::OutOfRange, "n must lie in 1..20, got " + std::to_string( n ) );
  }
  std::vector<Node> nodes{ { "R", NodeKind::Or, {}, std::nullopt, 0.0, std::nullopt } };
  for ( int i = 0; i < n; ++i )
  {
    const double weight = std::ldexp( 1.0, i );
    nodes[0].children.push_back( static_cast<std::size_t>( i ) + 1 );
    nodes.push_back( { "v" + std::to_string( i ), NodeKind::Bas, {}, weight, weight, std::nullopt } );
  }
  return collapse_unary( AttackTree::build( std::move( nodes ) ) );
}

} // namespace atcd
