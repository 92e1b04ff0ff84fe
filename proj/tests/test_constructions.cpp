#include <doctest.h>

#include <algorithm>

#include "atcd/constructions.hpp"
#include "atcd/oracle.hpp"
#include "atcd/tree_engine.hpp"
#include "support/random_trees.hpp"

using namespace atcd;

namespace
{

ErrorKind kind_of( auto&& call )
{
  try
  {
    call();
  }
  catch ( const Error& e )
  {
    return e.kind();
  }
  FAIL( "no error thrown" );
  return ErrorKind::OutOfRange;
}

} // namespace

TEST_CASE( "knapsack trees" )
{
  const auto t = from_knapsack( { 3, 5 }, { 2, 4 } );
  CHECK( t.is_treelike() );
  CHECK( t.size() == 3 );
  const auto both = Attack::from_mask( 3, 2 );
  CHECK( total_damage( t, both ) == 8 );
  CHECK( total_cost( t, both ) == 6 );
  CHECK( total_damage( t, Attack::from_mask( 1, 2 ) ) == 3 );

  const auto single = from_knapsack( { 7 }, { 1 } );
  CHECK( total_damage( single, Attack::from_mask( 1, 1 ) ) == 7 );

  CHECK( kind_of( [] { (void)from_knapsack( { 1, 2 }, { 1 } ); } ) == ErrorKind::LengthMismatch );
  CHECK( kind_of( [] { (void)from_knapsack( { 1, -2 }, { 1, 1 } ); } ) == ErrorKind::NegativeCoefficient );
  CHECK( kind_of( [] { (void)from_knapsack( {}, {} ); } ) == ErrorKind::OutOfRange );
}

TEST_CASE( "knapsack decisions agree" )
{
  SplitMix64 rng( 17 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    const auto n = 1 + rng.below( 8 );
    std::vector<double> f, g;
    for ( std::size_t i = 0; i < n; ++i )
    {
      f.push_back( static_cast<double>( rng.below( 20 ) ) );
      g.push_back( static_cast<double>( rng.below( 20 ) ) );
    }
    const auto u = static_cast<double>( rng.below( 60 ) );
    const auto l = static_cast<double>( rng.below( 80 ) );
    bool knapsack = false;
    for ( std::uint64_t m = 0; m < ( std::uint64_t{ 1 } << n ); ++m )
    {
      double value = 0.0, weight = 0.0;
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( ( m >> i ) & 1u )
        {
          value += f[i];
          weight += g[i];
        }
      }
      knapsack = knapsack || ( weight <= u && value >= l );
    }
    CHECK( ( dgc_enum( from_knapsack( f, g ), u ) >= l ) == knapsack );
  }
}

TEST_CASE( "monotone realization" )
{
  const auto one = realize_monotone( { 0, 5 }, 1 );
  CHECK( total_damage( one, Attack::from_mask( 0, 1 ) ) == 0 );
  CHECK( total_damage( one, Attack::from_mask( 1, 1 ) ) == 5 );

  const std::vector<double> table{ 0, 1, 2, 2 };
  const auto two = realize_monotone( table, 2 );
  for ( std::uint64_t m = 0; m < 4; ++m )
  {
    CHECK( total_damage( two, Attack::from_mask( m, 2 ) ) == table[m] );
  }

  CHECK( kind_of( [] { (void)realize_monotone( { 0, 2, 1, 1 }, 2 ); } ) == ErrorKind::NotMonotone );
  CHECK( kind_of( [] { (void)realize_monotone( std::vector<double>( 32, 0.0 ), 5 ); } ) == ErrorKind::TooLarge );
  CHECK( kind_of( [] { (void)realize_monotone( { 1, 2 }, 1 ); } ) == ErrorKind::NonZeroEmptyValue );
  CHECK( kind_of( [] { (void)realize_monotone( { 0, 1, 2 }, 2 ); } ) == ErrorKind::LengthMismatch );
}

TEST_CASE( "random monotone tables are realized exactly" )
{
  SplitMix64 rng( 3 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    const std::size_t n = 3;
    const auto table = atcd::testing::random_monotone( rng, n );
    const auto t = realize_monotone( table, n );
    const auto order = monotone_order( table, n );
    CAPTURE( trial );
    for ( std::uint32_t m = 0; m < 8; ++m )
    {
      const auto x = Attack::from_mask( m, n );
      CHECK( total_damage( t, x ) == table[m] );

      // largest position whose subset lies inside m
      std::size_t last = 1;
      for ( std::size_t k = 1; k <= order.size(); ++k )
      {
        if ( ( order[k - 1] & m ) == order[k - 1] )
        {
          last = k;
        }
      }
      for ( std::size_t k = 2; k <= order.size(); ++k )
      {
        if ( const auto a = t.find( "A" + std::to_string( k ) ) )
        {
          CHECK( structure( t, x, *a ) == ( ( order[k - 1] & m ) == order[k - 1] ) );
        }
        if ( const auto o = t.find( "O" + std::to_string( k ) ) )
        {
          CHECK( structure( t, x, *o ) == ( k <= last ) );
        }
      }
    }
  }
}

TEST_CASE( "exponential fronts" )
{
  CHECK( cdpf_tree( exponential_pf_instance( 1 ) ).points() == std::vector<AttrPair>{ { 0, 0 }, { 1, 1 } } );
  const auto f3 = cdpf_tree( exponential_pf_instance( 3 ) );
  REQUIRE( f3.size() == 8 );
  for ( std::size_t k = 0; k < 8; ++k )
  {
    CHECK( f3[k] == AttrPair{ double( k ), double( k ) } );
  }
  for ( int n = 1; n <= 10; ++n )
  {
    CHECK( cdpf_tree( exponential_pf_instance( n ) ).size() == ( std::size_t{ 1 } << n ) );
  }
  CHECK( kind_of( [] { (void)exponential_pf_instance( 0 ); } ) == ErrorKind::OutOfRange );
  CHECK( kind_of( [] { (void)exponential_pf_instance( 21 ); } ) == ErrorKind::OutOfRange );
}
