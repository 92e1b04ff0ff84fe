#include <doctest.h>

#include "atcd/attack_tree.hpp"
#include "atcd/json_io.hpp"
#include "support/fixtures.hpp"
#include "support/random_trees.hpp"

using namespace atcd;
using atcd::testing::fixture;

namespace
{

ErrorKind kind_of( const char* doc )
{
  try
  {
    parse_tree( std::string_view( doc ) );
  }
  catch ( const Error& e )
  {
    return e.kind();
  }
  FAIL( "document was accepted" );
  return ErrorKind::MalformedDocument;
}

std::size_t idx( const AttackTree& t, const char* id )
{
  return *t.find( id );
}

} // namespace

TEST_CASE( "factory fixture parses" )
{
  const auto t = fixture( "factory.json" );
  CHECK( t.size() == 5 );
  CHECK( t.bas_count() == 3 );
  CHECK( t.is_treelike() );
  CHECK( t.node( t.root() ).id == "ps" );
  CHECK( t.bas_ids_of( Attack::from_mask( 0b111, 3 ) ) == std::vector<std::string>{ "ca", "pb", "fd" } );
}

TEST_CASE( "single BAS document" )
{
  const auto t = parse_tree( std::string_view( R"({"nodes":[{"id":"a","type":"BAS","cost":2}]})" ) );
  CHECK( t.size() == 1 );
  CHECK( t.root() == 0 );
  CHECK( t.damage( 0 ) == 0.0 );
}

TEST_CASE( "validation errors" )
{
  CHECK( kind_of( R"({"nodes":[
    {"id":"ps","type":"OR","children":["ca","dr"]},{"id":"ca","type":"BAS","cost":1},
    {"id":"dr","type":"AND","children":["pb","ps"]},{"id":"pb","type":"BAS","cost":3}]})" ) ==
         ErrorKind::CycleDetected );
  CHECK( kind_of( R"({"nodes":[{"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1}]})" ) ==
         ErrorKind::MultipleRoots );
  CHECK( kind_of( R"({"nodes":[{"id":"g","type":"AND","children":[]}]})" ) == ErrorKind::LeafGate );
  CHECK( kind_of( R"({"nodes":[{"id":"g","type":"BAS","cost":1,"children":["a"]},{"id":"a","type":"BAS","cost":1}]})" ) ==
         ErrorKind::InternalBAS );
  CHECK( kind_of( R"({"nodes":[{"id":"a","type":"BAS"}]})" ) == ErrorKind::MissingCost );
  CHECK( kind_of( R"({"nodes":[{"id":"a","type":"BAS","cost":-1}]})" ) == ErrorKind::NegativeAttribute );
  CHECK( kind_of( R"({"nodes":[{"id":"a","type":"BAS","cost":1,"prob":1.5}]})" ) == ErrorKind::ProbOutOfRange );
  CHECK( kind_of( R"({"nodes":[{"id":"a","type":"BAS","cost":1},{"id":"a","type":"BAS","cost":1}]})" ) ==
         ErrorKind::DuplicateId );
  CHECK( kind_of( R"({"nodes":[{"id":"g","type":"OR","children":["zz"]}]})" ) == ErrorKind::DanglingChildRef );
  CHECK( kind_of( R"({"nodes":[{"id":"g","type":"OR","children":["a","a"]},{"id":"a","type":"BAS","cost":1}]})" ) ==
         ErrorKind::DuplicateChild );
  CHECK( kind_of( R"({"nodes":[{"id":"g","type":"OR","children":["g"]}]})" ) == ErrorKind::CycleDetected );
  CHECK( kind_of( R"([1,2])" ) == ErrorKind::MalformedDocument );
}

TEST_CASE( "structure function on the factory tree" )
{
  const auto t = fixture( "factory.json" );
  const auto pb_fd = t.attack_of( { "pb", "fd" } );
  CHECK( structure( t, pb_fd, idx( t, "dr" ) ) );
  CHECK_FALSE( structure( t, t.attack_of( { "pb" } ), idx( t, "ps" ) ) );
  for ( std::size_t v = 0; v < t.size(); ++v )
  {
    CHECK_FALSE( structure( t, t.empty_attack(), v ) );
  }
}

TEST_CASE( "cost and damage on the factory tree" )
{
  const auto t = fixture( "factory.json" );
  const double costs[] = { 0, 2, 3, 5, 1, 3, 4, 6 };
  const double damages[] = { 0, 10, 0, 310, 200, 210, 200, 310 };
  // columns of the worked table: x = (ca, pb, fd) read as a binary number
  for ( unsigned col = 0; col < 8; ++col )
  {
    Attack x = t.empty_attack();
    x.set( 0, col & 4u );
    x.set( 1, col & 2u );
    x.set( 2, col & 1u );
    CHECK( total_cost( t, x ) == costs[col] );
    CHECK( total_damage( t, x ) == damages[col] );
  }
}

TEST_CASE( "binarize" )
{
  SUBCASE( "ternary AND becomes a chain" )
  {
    const auto t = parse_tree( std::string_view( R"({"nodes":[
      {"id":"r","type":"AND","children":["a","b","c"],"damage":5},
      {"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1},{"id":"c","type":"BAS","cost":1}]})" ) );
    const auto b = binarize( t );
    REQUIRE( b.size() == 5 );
    const auto& root = b.node( b.root() );
    CHECK( root.id == "r" );
    CHECK( root.damage == 5.0 );
    REQUIRE( root.children.size() == 2 );
    CHECK( b.node( root.children[0] ).id == "a" );
    const auto& aux = b.node( root.children[1] );
    CHECK( aux.kind == NodeKind::And );
    CHECK( aux.damage == 0.0 );
    CHECK( b.node( aux.children[0] ).id == "b" );
    CHECK( b.node( aux.children[1] ).id == "c" );
  }
  SUBCASE( "binary tree is left alone" )
  {
    const auto t = fixture( "factory.json" );
    CHECK( dump_tree( binarize( t ) ) == dump_tree( t ) );
  }
  SUBCASE( "OR over four BASs keeps damage on all 16 attacks" )
  {
    const auto t = parse_tree( std::string_view( R"({"nodes":[
      {"id":"r","type":"OR","children":["a","b","c","d"],"damage":7},
      {"id":"a","type":"BAS","cost":1,"damage":1},{"id":"b","type":"BAS","cost":2,"damage":2},
      {"id":"c","type":"BAS","cost":3,"damage":3},{"id":"d","type":"BAS","cost":4,"damage":4}]})" ) );
    const auto b = binarize( t );
    int ors = 0;
    for ( const auto& n : b.nodes() )
    {
      ors += n.kind == NodeKind::Or ? 1 : 0;
    }
    CHECK( ors == 3 );
    for ( std::uint64_t m = 0; m < 16; ++m )
    {
      const auto x = Attack::from_mask( m, 4 );
      CHECK( total_damage( b, x ) == total_damage( t, x ) );
    }
  }
  SUBCASE( "unary gates are folded into their child" )
  {
    const auto t = parse_tree( std::string_view( R"({"nodes":[
      {"id":"r","type":"AND","children":["u","c"],"damage":1},
      {"id":"u","type":"OR","children":["a"],"damage":4},
      {"id":"a","type":"BAS","cost":1,"damage":2},{"id":"c","type":"BAS","cost":1}]})" ) );
    const auto b = binarize( t );
    CHECK( b.size() == 3 );
    CHECK( b.damage( *b.find( "a" ) ) == 6.0 );
  }
}

TEST_CASE( "internal costs" )
{
  SUBCASE( "AND with internal cost needs the cost paid" )
  {
    const auto t = parse_tree( std::string_view( R"({"nodes":[
      {"id":"g","type":"AND","children":["a"],"damage":1},{"id":"a","type":"BAS","cost":1}]})" ) );
    const auto h = with_internal_costs( t, { { 0, 1.0 } } );
    CHECK( h.bas_count() == 2 );
    double cheapest = 1e9;
    for ( std::uint64_t m = 0; m < 4; ++m )
    {
      const auto x = Attack::from_mask( m, 2 );
      if ( total_damage( h, x ) >= 1.0 )
      {
        cheapest = std::min( cheapest, total_cost( h, x ) );
      }
    }
    CHECK( cheapest == 2.0 );
  }
  SUBCASE( "extra cost 3 over a BAS of cost 1" )
  {
    const auto t = parse_tree( std::string_view( R"({"nodes":[
      {"id":"g","type":"AND","children":["a"]},{"id":"a","type":"BAS","cost":1}]})" ) );
    const auto h = with_internal_costs( t, { { 0, 3.0 } } );
    CHECK_FALSE( structure( h, Attack::from_mask( 0b01, 2 ), h.root() ) );
    CHECK( structure( h, Attack::from_mask( 0b11, 2 ), h.root() ) );
    CHECK( total_cost( h, Attack::from_mask( 0b11, 2 ) ) == 4.0 );
  }
  SUBCASE( "empty map" )
  {
    const auto t = fixture( "factory.json" );
    CHECK( dump_tree( with_internal_costs( t, {} ) ) == dump_tree( t ) );
  }
  SUBCASE( "OR and BAS keys are rejected" )
  {
    const auto t = fixture( "factory.json" );
    CHECK_THROWS_AS( with_internal_costs( t, { { idx( t, "ps" ), 1.0 } } ), Error );
    CHECK_THROWS_AS( with_internal_costs( t, { { idx( t, "ca" ), 1.0 } } ), Error );
  }
}

TEST_CASE( "probabilistic structure function" )
{
  const auto t = fixture( "factory_prob.json" );
  CHECK( prob_structure( t, t.attack_of( { "pb", "fd" } ), idx( t, "dr" ) ) == doctest::Approx( 0.36 ).epsilon( 1e-15 ) );
  CHECK( prob_structure( t, Attack::from_mask( 0b111, 3 ), idx( t, "ps" ) ) ==
         doctest::Approx( 0.2 + 0.36 - 0.2 * 0.36 ).epsilon( 1e-15 ) );
  for ( std::size_t v = 0; v < t.size(); ++v )
  {
    CHECK( prob_structure( t, t.empty_attack(), v ) == 0.0 );
  }
  CHECK_THROWS_AS( prob_structure( fixture( "diamond.json" ), Attack::from_mask( 1, 3 ), 0 ), Error );
}

TEST_CASE( "properties on random trees" )
{
  SplitMix64 rng( 7 );
  atcd::testing::TreeShape shape;
  shape.max_bas = 12;
  for ( int trial = 0; trial < 60; ++trial )
  {
    const auto t = trial % 2 ? atcd::testing::random_treelike( rng, shape ) : atcd::testing::random_dag( rng, shape, 3 );
    const auto b = binarize( t );
    const auto n = t.bas_count();
    const std::uint64_t total = std::uint64_t{ 1 } << n;
    for ( std::uint64_t m = 0; m < total; ++m )
    {
      const auto x = Attack::from_mask( m, n );
      // binarize keeps cost and damage
      CHECK( total_cost( b, x ) == total_cost( t, x ) );
      CHECK( total_damage( b, x ) == total_damage( t, x ) );

      std::size_t visits = 0;
      const auto r = reach( t, x, &visits );
      CHECK( visits <= t.size() );

      // monotone: adding one BAS never loses a node or damage
      const auto bit = static_cast<std::size_t>( rng.below( n ) );
      auto y = x;
      y.set( bit );
      const auto ry = reach( t, y );
      for ( std::size_t v = 0; v < t.size(); ++v )
      {
        CHECK( r[v] <= ry[v] );
      }
      CHECK( total_damage( t, x ) <= total_damage( t, y ) );

      if ( t.is_treelike() )
      {
        const auto ps = prob_reach( t, x );
        for ( std::size_t v = 0; v < t.size(); ++v )
        {
          CHECK( ps[v] == static_cast<double>( r[v] ) );
        }
      }
    }
  }
}

TEST_CASE( "JSON round trip" )
{
  const auto t = fixture( "factory_prob.json" );
  CHECK( dump_tree( parse_tree( to_json( t ) ) ) == dump_tree( t ) );
}
