#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "atcd/constructions.hpp"
#include "atcd/ilp.hpp"
#include "atcd/oracle.hpp"
#include "atcd/tree_engine.hpp"
#include "support/algebra.hpp"
#include "support/fixtures.hpp"
#include "support/random_trees.hpp"

using namespace atcd;
using atcd::testing::fixture;
using Clock = std::chrono::steady_clock;

namespace
{

/// Collects failed checks of one criterion.
struct Report
{
  std::vector<std::string> failures;

  void check( bool ok, const std::string& what )
  {
    if ( !ok )
    {
      failures.push_back( what );
    }
  }
};

double seconds_since( Clock::time_point start )
{
  return std::chrono::duration<double>( Clock::now() - start ).count();
}

template<class F>
double timed( F&& f )
{
  const auto start = Clock::now();
  f();
  return seconds_since( start );
}

std::string str( double x )
{
  std::ostringstream os;
  os.precision( 17 );
  os << x;
  return os.str();
}

bool close_fronts( const Front<AttrPair>& a, const Front<AttrPair>& b, double tol )
{
  if ( a.size() != b.size() )
  {
    return false;
  }
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    if ( std::abs( a[i].cost - b[i].cost ) > tol || std::abs( a[i].damage - b[i].damage ) > tol )
    {
      return false;
    }
  }
  return true;
}

const Front<AttrPair> factory_front{ { 0, 0 }, { 1, 200 }, { 3, 210 }, { 5, 310 } };

void golden_front( Report& r )
{
  const auto t = fixture( "factory.json" );
  Front<AttrPair> f;
  double s = timed( [&] { f = cdpf_tree( t ); } );
  r.check( f == factory_front, "cdpf_tree front" );
  r.check( s < 0.1, "cdpf_tree took " + str( s ) + " s" );
  s = timed( [&] { f = cdpf_dag( t ); } );
  r.check( f == factory_front, "cdpf_dag front" );
  r.check( s < 0.1, "cdpf_dag took " + str( s ) + " s" );
  s = timed( [&] { f = cdpf_enum( t ); } );
  r.check( f == factory_front, "cdpf_enum front" );
  r.check( s < 0.1, "cdpf_enum took " + str( s ) + " s" );
}

void golden_dgc( Report& r )
{
  const auto t = fixture( "factory.json" );
  const double s = timed( [&] {
    r.check( dgc_tree( t, 2.0 ).value == 200, "dgc_tree(2)" );
    r.check( dgc_dag( t, 2.0 ).value == 200, "dgc_dag(2)" );
  } );
  r.check( s < 0.1, "took " + str( s ) + " s" );
}

void golden_probabilistic( Report& r )
{
  const auto t = fixture( "factory_prob.json" );
  const auto x = t.attack_of( { "pb", "fd" } );
  const double expected = expected_damage_enum( t, x );
  r.check( std::abs( expected - 112.0 ) <= 1e-12, "expected damage of {pb, fd} is " + str( expected ) + ", not 112" );

  std::map<std::vector<std::string>, double> law;
  for ( const auto& o : distribution( t, x ).support )
  {
    law[t.bas_ids_of( o.attack )] = o.prob;
  }
  const std::vector<std::pair<std::vector<std::string>, double>> want{
      { {}, 0.06 }, { { "fd" }, 0.54 }, { { "pb" }, 0.04 }, { { "pb", "fd" }, 0.36 } };
  for ( const auto& [ids, p] : want )
  {
    r.check( std::abs( law[ids] - p ) <= 1e-12, "outcome probability " + str( law[ids] ) + " vs " + str( p ) );
  }

  const auto coins = fixture( "example12.json" );
  r.check( close_fronts( cedpf_tree( coins ), Front<AttrPair>{ { 0, 0 }, { 1, 0.5 }, { 2, 0.75 } }, 1e-9 ),
           "cedpf of the two-coin OR" );
}

void exponential_fronts( Report& r )
{
  for ( int n = 1; n <= 10; ++n )
  {
    Front<AttrPair> f;
    const double s = timed( [&] { f = cdpf_tree( exponential_pf_instance( n ) ); } );
    r.check( f.size() == ( std::size_t{ 1 } << n ), "n=" + std::to_string( n ) + " front size " + std::to_string( f.size() ) );
    if ( n == 10 )
    {
      r.check( s < 10.0, "n=10 took " + str( s ) + " s" );
    }
  }
}

void oracle_equivalence( Report& r )
{
  const auto start = Clock::now();
  SplitMix64 rng( 5001 );
  atcd::testing::TreeShape shape;
  shape.max_bas = 12;
  for ( int k = 0; k < 200; ++k )
  {
    const auto t = atcd::testing::random_treelike( rng, shape );
    const auto tag = "treelike #" + std::to_string( k );
    r.check( cdpf_tree( t ) == cdpf_enum( t ), tag + " front" );
    for ( int j = 0; j < 3; ++j )
    {
      const double u = static_cast<double>( rng.below( 60 ) );
      r.check( dgc_tree( t, u ).value == dgc_enum( t, u ), tag + " dgc(" + str( u ) + ")" );
    }
  }

  for ( int k = 0; k < 200; ++k )
  {
    const auto t = atcd::testing::random_dag( rng, shape, 1 + rng.below( 4 ) );
    const auto tag = "dag #" + std::to_string( k );
    r.check( cdpf_dag( t ) == cdpf_enum( t ), tag + " front" );
    const auto all = Attack::from_mask( ~std::uint64_t{ 0 }, t.bas_count() );
    const std::vector<double> thresholds{ static_cast<double>( rng.below( 40 ) ), static_cast<double>( rng.below( 80 ) ),
                                          total_damage( t, all ) + 1.0 };
    for ( const double l : thresholds )
    {
      const auto want = cgd_enum( t, l );
      try
      {
        const auto got = cgd_dag( t, l );
        r.check( want && got.value == *want, tag + " cgd(" + str( l ) + ")" );
      }
      catch ( const Error& e )
      {
        r.check( !want && e.kind() == ErrorKind::InfeasibleDamageThreshold, tag + " cgd(" + str( l ) + ") threw" );
      }
    }
  }

  shape.max_bas = 10;
  shape.probs = true;
  for ( int k = 0; k < 100; ++k )
  {
    const auto t = atcd::testing::random_treelike( rng, shape );
    r.check( close_fronts( cedpf_tree( t ), cedpf_enum( t ), 1e-9 ), "probabilistic #" + std::to_string( k ) );
  }
  const double s = seconds_since( start );
  r.check( s < 300.0, "took " + str( s ) + " s" );
}

void combinator_algebra( Report& r )
{
  SplitMix64 rng( 1600 );
  for ( int k = 0; k < 1000; ++k )
  {
    const auto xs = atcd::testing::random_ptrips( rng, 1 + rng.below( 50 ) );
    const auto ys = atcd::testing::random_ptrips( rng, 1 + rng.below( 50 ) );
    const double d = static_cast<double>( rng.below( 10 ) );
    const double budget = static_cast<double>( rng.below( 25 ) );
    for ( const auto& name : atcd::testing::failed_identities( xs, ys, d, budget ) )
    {
      r.check( false, "instance " + std::to_string( k ) + ": " + name );
    }
  }
}

void monotone_realization( Report& r )
{
  SplitMix64 rng( 2 );
  for ( std::size_t n = 1; n <= 4; ++n )
  {
    for ( int k = 0; k < 30; ++k )
    {
      const auto table = atcd::testing::random_monotone( rng, n );
      const auto t = realize_monotone( table, n );
      for ( std::uint64_t m = 0; m < table.size(); ++m )
      {
        r.check( total_damage( t, Attack::from_mask( m, n ) ) == table[m],
                 "n=" + std::to_string( n ) + " table " + std::to_string( k ) + " mask " + std::to_string( m ) );
      }
    }
  }
}

void knapsack_reduction( Report& r )
{
  SplitMix64 rng( 12 );
  for ( int k = 0; k < 20; ++k )
  {
    const std::size_t n = 1 + rng.below( 12 );
    std::vector<double> f, g;
    for ( std::size_t i = 0; i < n; ++i )
    {
      f.push_back( static_cast<double>( rng.below( 30 ) ) );
      g.push_back( static_cast<double>( rng.below( 30 ) ) );
    }
    const double u = static_cast<double>( rng.below( 15 * n ) );
    const double l = static_cast<double>( rng.below( 15 * n ) );
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
    const auto t = from_knapsack( f, g );
    bool cddp = false;
    for ( std::uint64_t m = 0; m < ( std::uint64_t{ 1 } << n ); ++m )
    {
      const auto x = Attack::from_mask( m, n );
      cddp = cddp || ( total_cost( t, x ) <= u && total_damage( t, x ) >= l );
    }
    r.check( knapsack == cddp, "instance " + std::to_string( k ) );
  }
}

void relative_speedup( Report& r )
{
  SplitMix64 rng( 20 );
  atcd::testing::TreeShape shape;
  shape.min_bas = 20;
  shape.max_bas = 20;
  const auto t = atcd::testing::random_treelike( rng, shape );
  Front<AttrPair> tree, brute;
  double tree_s = 1e9;
  for ( int k = 0; k < 3; ++k )
  {
    tree_s = std::min( tree_s, timed( [&] { tree = cdpf_tree( t ); } ) );
  }
  const double enum_s = timed( [&] { brute = cdpf_enum( t ); } );
  r.check( tree == brute, "fronts differ" );
  r.check( enum_s >= 10.0 * tree_s, "speedup only " + str( enum_s / tree_s ) );
  std::printf( "    tree %.6f s, enumeration %.6f s, speedup %.0fx\n", tree_s, enum_s, enum_s / tree_s );
}

void deterministic_limit( Report& r )
{
  SplitMix64 rng( 10 );
  for ( int k = 0; k < 50; ++k )
  {
    const auto t = atcd::testing::random_treelike( rng, {} );
    r.check( cedpf_tree( t ) == cdpf_tree( t ), "tree " + std::to_string( k ) );
  }
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<void( Report& )>>> criteria{
      { "golden front on the factory tree", golden_front },
      { "damage under a budget of 2", golden_dgc },
      { "probabilistic goldens", golden_probabilistic },
      { "exponential fronts", exponential_fronts },
      { "engines agree with enumeration", oracle_equivalence },
      { "combinator identities", combinator_algebra },
      { "monotone realization", monotone_realization },
      { "knapsack reduction", knapsack_reduction },
      { "tree engine speedup over enumeration", relative_speedup },
      { "unit probabilities", deterministic_limit },
  };
  int failed = 0;
  for ( std::size_t i = 0; i < criteria.size(); ++i )
  {
    Report report;
    double s = 0.0;
    try
    {
      s = timed( [&] { criteria[i].second( report ); } );
    }
    catch ( const std::exception& e )
    {
      report.check( false, std::string( "exception: " ) + e.what() );
    }
    const bool pass = report.failures.empty();
    failed += pass ? 0 : 1;
    std::printf( "%s %2zu %s (%.3f s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), s );
    for ( std::size_t k = 0; k < report.failures.size() && k < 10; ++k )
    {
      std::printf( "    %s\n", report.failures[k].c_str() );
    }
  }
  std::printf( "%d of %zu criteria failed\n", failed, criteria.size() );
  return failed == 0 ? 0 : 1;
}
