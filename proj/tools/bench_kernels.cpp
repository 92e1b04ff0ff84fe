#include <benchmark/benchmark.h>

#include "atcd/oracle.hpp"
#include "atcd/pareto.hpp"
#include "atcd/tree_engine.hpp"
#include "support/random_trees.hpp"

using namespace atcd;

namespace
{

Exec mode( const benchmark::State& state )
{
  return state.range( 0 ) == 0 ? Exec::Serial : Exec::Parallel;
}

void label( benchmark::State& state )
{
  state.SetLabel( state.range( 0 ) == 0 ? "serial" : "parallel" );
}

void combine_kernel( benchmark::State& state )
{
  SplitMix64 rng( 1 );
  const auto n = static_cast<std::size_t>( state.range( 1 ) );
  const auto xs = atcd::testing::random_ptrips( rng, n );
  const auto ys = atcd::testing::random_ptrips( rng, n );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( combine_traced( NodeKind::Or, std::span<const ProbTriple>( xs ),
                                              std::span<const ProbTriple>( ys ), 2.0, unbounded, mode( state ) ) );
  }
  label( state );
}

void enumeration( benchmark::State& state )
{
  SplitMix64 rng( 2 );
  atcd::testing::TreeShape shape;
  shape.min_bas = static_cast<std::size_t>( state.range( 1 ) );
  shape.max_bas = shape.min_bas;
  const auto t = atcd::testing::random_treelike( rng, shape );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( cdpf_enum( t, mode( state ) ) );
  }
  label( state );
}

void tree_analysis( benchmark::State& state )
{
  SplitMix64 rng( 3 );
  atcd::testing::TreeShape shape;
  shape.min_bas = static_cast<std::size_t>( state.range( 1 ) );
  shape.max_bas = shape.min_bas;
  shape.probs = true;
  const auto t = atcd::testing::random_treelike( rng, shape );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( ProbAnalysis( t, unbounded, mode( state ) ).root_front().size() );
  }
  label( state );
}

} // namespace

BENCHMARK( combine_kernel )->ArgsProduct( { { 0, 1 }, { 64, 512 } } )->Unit( benchmark::kMicrosecond );
BENCHMARK( enumeration )->ArgsProduct( { { 0, 1 }, { 16, 20 } } )->Unit( benchmark::kMillisecond );
BENCHMARK( tree_analysis )->ArgsProduct( { { 0, 1 }, { 40, 80 } } )->Unit( benchmark::kMillisecond );

BENCHMARK_MAIN();
