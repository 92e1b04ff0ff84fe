// Command-line front end: analyses, enumeration, LP export, suite
// generation and benchmarking.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "atcd/constructions.hpp"
#include "atcd/generator.hpp"
#include "atcd/ilp.hpp"
#include "atcd/json_io.hpp"
#include "atcd/oracle.hpp"
#include "atcd/tree_engine.hpp"

namespace fs = std::filesystem;
using namespace atcd;

namespace
{

enum Exit : int
{
  ok = 0,
  invalid = 1,
  infeasible = 2,
  guard_hit = 3,
  unsupported = 4
};

int exit_code( ErrorKind kind )
{
  switch ( kind )
  {
  case ErrorKind::InfeasibleDamageThreshold:
    return infeasible;
  case ErrorKind::TooManyBas:
  case ErrorKind::TooManyActiveBas:
  case ErrorKind::BudgetExceeded:
    return guard_hit;
  case ErrorKind::NotTreelike:
    return unsupported;
  default:
    return invalid;
  }
}

std::uint64_t node_limit()
{
  if ( const char* env = std::getenv( "ATCD_BB_NODE_LIMIT" ) )
  {
    return std::strtoull( env, nullptr, 10 );
  }
  return default_node_limit;
}

std::string fixed( double value, int digits )
{
  char buf[64];
  std::snprintf( buf, sizeof( buf ), "%.*f", digits, value );
  return buf;
}

std::string front_csv( const Front<AttrPair>& front, const char* damage_header, int digits )
{
  std::ostringstream out;
  out << "cost," << damage_header << "\n";
  for ( const auto& p : front )
  {
    out << fixed( p.cost, digits ) << "," << fixed( p.damage, digits ) << "\n";
  }
  return out.str();
}

void emit( const std::string& text, const std::string& output )
{
  if ( output.empty() )
  {
    std::cout << text;
    return;
  }
  std::ofstream out( output );
  if ( !out )
  {
    throw Error( ErrorKind::MalformedDocument, "cannot write '" + output + "'" );
  }
  out << text;
}

/// Expected damages are rounded to the 9 decimals the CSV output uses.
double round9( double x )
{
  return std::round( x * 1e9 ) / 1e9;
}

std::string solution_json( const AttackTree& tree, const Solution& s, const char* value_key, bool expected )
{
  nlohmann::json out;
  out[value_key] = json_number( expected ? round9( s.value ) : s.value );
  out["witness"] = tree.bas_ids_of( s.witness );
  out["cost"] = json_number( total_cost( tree, s.witness ) );
  if ( expected )
  {
    const auto ps = prob_reach( tree, s.witness );
    double sum = 0.0;
    for ( std::size_t v = 0; v < tree.size(); ++v )
    {
      sum += ps[v] * tree.damage( v );
    }
    out["expected_damage"] = json_number( round9( sum ) );
  }
  else
  {
    out["damage"] = json_number( total_damage( tree, s.witness ) );
  }
  return out.dump() + "\n";
}

void require_tree( const AttackTree& tree )
{
  if ( !tree.is_treelike() )
  {
    throw Error( ErrorKind::NotTreelike,
                 "probabilistic analysis of DAG-like attack trees is unsupported (an open problem); "
                 "only treelike inputs are accepted" );
  }
}

Front<AttrPair> det_front_with( const AttackTree& tree, const std::string& engine )
{
  if ( engine == "tree" || ( engine == "auto" && tree.is_treelike() ) )
  {
    return cdpf_tree( tree );
  }
  if ( engine == "enum" )
  {
    return cdpf_enum( tree );
  }
  return cdpf_dag( tree, node_limit() );
}

bool use_tree( const AttackTree& tree, const std::string& engine )
{
  return engine == "tree" || ( engine == "auto" && tree.is_treelike() );
}

struct BenchRow
{
  std::string file;
  std::size_t nodes = 0;
  std::size_t bas = 0;
  std::string engine;
  double millis = 0.0;
  long long front_size = -1;
};

std::vector<std::string> split_list( const std::string& text )
{
  std::vector<std::string> out;
  std::stringstream in( text );
  std::string item;
  while ( std::getline( in, item, ',' ) )
  {
    if ( !item.empty() )
    {
      out.push_back( item );
    }
  }
  return out;
}

std::string run_bench( const std::string& suite_dir, const std::vector<std::string>& engines )
{
  std::vector<fs::path> files;
  for ( const auto& entry : fs::directory_iterator( suite_dir ) )
  {
    if ( entry.path().extension() == ".json" && entry.path().filename() != "manifest.json" )
    {
      files.push_back( entry.path() );
    }
  }
  std::sort( files.begin(), files.end() );

  std::vector<std::vector<BenchRow>> rows( files.size() );
  std::vector<std::string> errors( files.size() );
#pragma omp parallel for schedule( dynamic, 1 )
  for ( std::size_t k = 0; k < files.size(); ++k )
  {
    try
    {
      const auto tree = load_tree( files[k] );
      for ( const auto& engine : engines )
      {
        if ( ( engine == "tree" && !tree.is_treelike() ) || ( engine == "enum" && tree.bas_count() > enum_bas_limit ) )
        {
          continue;
        }
        BenchRow row{ files[k].filename().string(), tree.size(), tree.bas_count(), engine, 0.0, -1 };
        const auto start = std::chrono::steady_clock::now();
        try
        {
          row.front_size = static_cast<long long>( det_front_with( tree, engine ).size() );
        }
        catch ( const Error& e )
        {
          if ( e.kind() != ErrorKind::BudgetExceeded )
          {
            throw;
          }
        }
        row.millis = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
        rows[k].push_back( row );
      }
    }
    catch ( const std::exception& e )
    {
      errors[k] = e.what();
    }
  }

  std::ostringstream out;
  out << "file,nodes,bas,engine,millis,front_size\n";
  for ( std::size_t k = 0; k < files.size(); ++k )
  {
    if ( !errors[k].empty() )
    {
      std::cerr << files[k].filename().string() << ": " << errors[k] << "\n";
    }
    for ( const auto& r : rows[k] )
    {
      out << r.file << "," << r.nodes << "," << r.bas << "," << r.engine << "," << fixed( r.millis, 3 ) << ","
          << r.front_size << "\n";
    }
  }
  return out.str();
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Cost-damage analysis of attack trees" };
  app.require_subcommand( 1 );

  std::string input;
  std::string output;
  std::string engine = "auto";
  double budget = 0.0;
  double min_damage = 0.0;

  const auto add_input = [&]( CLI::App* sub ) { sub->add_option( "-i,--input", input, "Attack tree JSON" )->required(); };
  const auto add_output = [&]( CLI::App* sub ) { sub->add_option( "-o,--output", output, "Output file (default stdout)" ); };
  const std::vector<std::string> engines{ "auto", "tree", "ilp", "enum" };

  auto* validate = app.add_subcommand( "validate", "Check a document and report its shape" );
  add_input( validate );

  auto* pf = app.add_subcommand( "pf", "Cost-damage Pareto front as CSV" );
  add_input( pf );
  add_output( pf );
  pf->add_option( "--engine", engine, "Solver" )->check( CLI::IsMember( engines ) );

  auto* dgc = app.add_subcommand( "dgc", "Maximal damage within a budget" );
  add_input( dgc );
  add_output( dgc );
  dgc->add_option( "--budget", budget, "Cost budget U" )->required();
  dgc->add_option( "--engine", engine, "Solver" )->check( CLI::IsMember( { "auto", "tree", "ilp" } ) );

  auto* cgd = app.add_subcommand( "cgd", "Minimal cost reaching a damage threshold" );
  add_input( cgd );
  add_output( cgd );
  cgd->add_option( "--min-damage", min_damage, "Damage threshold L" )->required();
  cgd->add_option( "--engine", engine, "Solver" )->check( CLI::IsMember( { "auto", "tree", "ilp" } ) );

  auto* epf = app.add_subcommand( "epf", "Cost-expected damage Pareto front as CSV (treelike only)" );
  add_input( epf );
  add_output( epf );

  auto* edgc = app.add_subcommand( "edgc", "Maximal expected damage within a budget (treelike only)" );
  add_input( edgc );
  add_output( edgc );
  edgc->add_option( "--budget", budget, "Cost budget U" )->required();

  auto* cged = app.add_subcommand( "cged", "Minimal cost reaching an expected damage threshold (treelike only)" );
  add_input( cged );
  add_output( cged );
  cged->add_option( "--min-damage", min_damage, "Expected damage threshold L" )->required();

  bool expected = false;
  auto* en = app.add_subcommand( "enum", "Front by brute-force enumeration" );
  add_input( en );
  add_output( en );
  en->add_flag( "--expected", expected, "Cost-expected damage front instead" );

  std::string objective = "damage";
  std::optional<double> lp_budget;
  std::optional<double> lp_floor;
  auto* lp = app.add_subcommand( "encode-lp", "Write the integer program in LP format" );
  add_input( lp );
  add_output( lp );
  lp->add_option( "--objective", objective, "cost or damage" )->check( CLI::IsMember( { "cost", "damage" } ) );
  lp->add_option( "--budget", lp_budget, "Add cost <= U" );
  lp->add_option( "--min-damage", lp_floor, "Add damage >= L" );

  GenConfig cfg;
  std::vector<std::string> block_files;
  std::string out_dir;
  auto* gen = app.add_subcommand( "gen", "Generate a random suite" );
  gen->add_option( "-o,--output", out_dir, "Output directory" )->required();
  gen->add_option( "--seed", cfg.seed, "RNG seed" );
  gen->add_option( "--min-nodes", cfg.min_nodes, "Minimal node count per tree" );
  gen->add_option( "--count", cfg.count, "Number of trees" );
  gen->add_flag( "--treelike", cfg.treelike_only, "Only treelike blocks and methods 1 and 2" );
  gen->add_option( "--blocks", block_files, "Building-block documents (default: built-in library)" );

  std::string suite_dir;
  std::string bench_engines = "tree,ilp";
  auto* bench = app.add_subcommand( "bench", "Time engines over a suite, CSV out" );
  bench->add_option( "--suite", suite_dir, "Suite directory" )->required();
  bench->add_option( "--engines", bench_engines, "Comma-separated list of tree, ilp, enum" );
  add_output( bench );

  CLI11_PARSE( app, argc, argv );

  try
  {
    if ( *validate )
    {
      const auto tree = load_tree( input );
      std::cout << ( tree.is_treelike() ? "treelike" : "DAG" ) << " nodes=" << tree.size()
                << " bas=" << tree.bas_count() << "\n";
    }
    else if ( *pf )
    {
      const auto tree = load_tree( input );
      emit( front_csv( det_front_with( tree, engine ), "damage", 6 ), output );
    }
    else if ( *dgc )
    {
      const auto tree = load_tree( input );
      const auto s = use_tree( tree, engine ) ? dgc_tree( tree, budget ) : dgc_dag( tree, budget, node_limit() );
      emit( solution_json( tree, s, "damage", false ), output );
    }
    else if ( *cgd )
    {
      const auto tree = load_tree( input );
      const auto s =
          use_tree( tree, engine ) ? cgd_tree( tree, min_damage ) : cgd_dag( tree, min_damage, node_limit() );
      emit( solution_json( tree, s, "cost", false ), output );
    }
    else if ( *epf )
    {
      const auto tree = load_tree( input );
      require_tree( tree );
      emit( front_csv( cedpf_tree( tree ), "expected_damage", 9 ), output );
    }
    else if ( *edgc )
    {
      const auto tree = load_tree( input );
      require_tree( tree );
      emit( solution_json( tree, edgc_tree( tree, budget ), "expected_damage", true ), output );
    }
    else if ( *cged )
    {
      const auto tree = load_tree( input );
      require_tree( tree );
      emit( solution_json( tree, cged_tree( tree, min_damage ), "cost", true ), output );
    }
    else if ( *en )
    {
      const auto tree = load_tree( input );
      emit( expected ? front_csv( cedpf_enum( tree ), "expected_damage", 9 )
                     : front_csv( cdpf_enum( tree ), "damage", 6 ),
            output );
    }
    else if ( *lp )
    {
      auto model = encode_bilp( load_tree( input ) );
      if ( lp_budget )
      {
        model.cost_cap = to_scaled( *lp_budget, Rounding::Down );
      }
      if ( lp_floor )
      {
        model.damage_floor = to_scaled( *lp_floor, Rounding::Up );
      }
      emit( export_lp( model, objective == "cost" ? Objective::Cost : Objective::NegDamage ), output );
    }
    else if ( *gen )
    {
      std::vector<AttackTree> blocks;
      for ( const auto& f : block_files )
      {
        blocks.push_back( load_tree( f ) );
      }
      if ( block_files.empty() )
      {
        blocks = default_blocks();
      }
      const auto suite = generate_suite( cfg, blocks );
      fs::create_directories( out_dir );
      std::vector<std::string> names;
      for ( std::size_t k = 0; k < suite.trees.size(); ++k )
      {
        char name[32];
        std::snprintf( name, sizeof( name ), "at_%04zu.json", k );
        names.emplace_back( name );
        save_tree( suite.trees[k], fs::path( out_dir ) / name );
      }
      std::ofstream( fs::path( out_dir ) / "manifest.json" ) << manifest( cfg, suite, names ).dump( 2 ) << "\n";
      std::cout << "wrote " << names.size() << " trees to " << out_dir << "\n";
    }
    else if ( *bench )
    {
      emit( run_bench( suite_dir, split_list( bench_engines ) ), output );
    }
  }
  catch ( const Error& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code( e.kind() );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  }
  return ok;
}
