#include "atcd/generator.hpp"

#include <algorithm>
#include <unordered_set>

#include "atcd/json_io.hpp"

namespace atcd
{

namespace
{

std::string unique_id( std::unordered_set<std::string>& taken, const std::string& base )
{
  auto id = base;
  for ( std::size_t k = 2; taken.count( id ); ++k )
  {
    id = base + "~" + std::to_string( k );
  }
  taken.insert( id );
  return id;
}

/// t1's nodes followed by t2's, t2 renamed where ids clash. Returns the
/// offset of t2's nodes.
std::size_t append( std::vector<Node>& nodes, std::unordered_set<std::string>& taken, const AttackTree& t2 )
{
  const auto offset = nodes.size();
  for ( auto node : t2.nodes() )
  {
    node.id = unique_id( taken, node.id );
    for ( auto& w : node.children )
    {
      w += offset;
    }
    nodes.push_back( std::move( node ) );
  }
  return offset;
}

std::unordered_set<std::string> ids_of( const AttackTree& t )
{
  std::unordered_set<std::string> ids;
  for ( const auto& node : t.nodes() )
  {
    ids.insert( node.id );
  }
  return ids;
}

/// Drops node `gone`, redirecting references to `target`, and removes any
/// child listed twice as a result.
std::vector<Node> redirect( std::vector<Node> nodes, std::size_t gone, std::size_t target )
{
  for ( auto& node : nodes )
  {
    std::vector<std::size_t> kids;
    for ( auto w : node.children )
    {
      w = w == gone ? target : w;
      if ( std::find( kids.begin(), kids.end(), w ) == kids.end() )
      {
        kids.push_back( w );
      }
    }
    node.children = std::move( kids );
  }
  nodes.erase( nodes.begin() + static_cast<std::ptrdiff_t>( gone ) );
  for ( auto& node : nodes )
  {
    for ( auto& w : node.children )
    {
      w -= w > gone ? 1 : 0;
    }
  }
  return nodes;
}

void check_bas( const AttackTree& t, std::size_t bas )
{
  if ( t.bas_count() == 0 )
  {
    throw Error( ErrorKind::EmptyTree, "tree has no BAS" );
  }
  if ( bas >= t.bas_count() )
  {
    throw Error( ErrorKind::OutOfRange, "BAS number " + std::to_string( bas ) + " does not exist" );
  }
}

NodeKind random_gate( SplitMix64& rng )
{
  return rng.below( 2 ) == 0 ? NodeKind::And : NodeKind::Or;
}

} // namespace

AttackTree graft( const AttackTree& t1, std::size_t bas, const AttackTree& t2 )
{
  check_bas( t1, bas );
  auto nodes = t1.nodes();
  auto taken = ids_of( t1 );
  const auto offset = append( nodes, taken, t2 );
  return AttackTree::build( redirect( std::move( nodes ), t1.bas_nodes()[bas], offset + t2.root() ) );
}

AttackTree join( const AttackTree& t1, const AttackTree& t2, NodeKind kind )
{
  auto nodes = t1.nodes();
  auto taken = ids_of( t1 );
  const auto offset = append( nodes, taken, t2 );
  nodes.push_back( { unique_id( taken, "top" ), kind, { t1.root(), offset + t2.root() }, std::nullopt, 0.0,
                     std::nullopt } );
  return AttackTree::build( std::move( nodes ) );
}

AttackTree join_identified( const AttackTree& t1, const AttackTree& t2, NodeKind kind, std::size_t bas1,
                            std::size_t bas2 )
{
  check_bas( t1, bas1 );
  check_bas( t2, bas2 );
  auto nodes = join( t1, t2, kind ).nodes();
  return AttackTree::build(
      redirect( std::move( nodes ), t1.size() + t2.bas_nodes()[bas2], t1.bas_nodes()[bas1] ) );
}

AttackTree combine( const AttackTree& t1, const AttackTree& t2, int method, SplitMix64& rng )
{
  switch ( method )
  {
  case 1:
    return graft( t1, rng.below( t1.bas_count() ), t2 );
  case 2:
    return join( t1, t2, random_gate( rng ) );
  case 3:
  {
    const auto kind = random_gate( rng );
    const auto b1 = rng.below( t1.bas_count() );
    const auto b2 = rng.below( t2.bas_count() );
    return join_identified( t1, t2, kind, b1, b2 );
  }
  default:
    throw Error( ErrorKind::OutOfRange, "combination method must be 1, 2 or 3" );
  }
}

AttackTree randomize_attributes( const AttackTree& tree, const GenConfig& cfg, SplitMix64& rng )
{
  const auto draw = [&rng]( int lo, int hi ) {
    return static_cast<double>( lo + static_cast<int>( rng.below( static_cast<std::uint64_t>( hi - lo + 1 ) ) ) );
  };
  auto nodes = tree.nodes();
  for ( auto& node : nodes )
  {
    if ( node.kind == NodeKind::Bas )
    {
      node.cost = draw( cfg.cost_min, cfg.cost_max );
      node.damage = draw( cfg.damage_min, cfg.damage_max );
      node.prob = draw( 1, cfg.prob_steps ) / cfg.prob_steps;
    }
    else
    {
      node.damage = draw( cfg.damage_min, cfg.damage_max );
    }
  }
  return AttackTree::build( std::move( nodes ) );
}

std::vector<AttackTree> default_blocks()
{
  static const char* const documents[] = {
      R"({"nodes":[
        {"id":"ps","type":"OR","children":["ca","dr"],"damage":200},
        {"id":"ca","type":"BAS","cost":1},
        {"id":"dr","type":"AND","children":["pb","fd"],"damage":100},
        {"id":"pb","type":"BAS","cost":3},
        {"id":"fd","type":"BAS","cost":2,"damage":10}]})",
      R"({"nodes":[
        {"id":"g","type":"AND","children":["g1","g2"]},
        {"id":"g1","type":"OR","children":["a","b"]},
        {"id":"g2","type":"OR","children":["c","d"]},
        {"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1},
        {"id":"c","type":"BAS","cost":1},{"id":"d","type":"BAS","cost":1}]})",
      R"({"nodes":[
        {"id":"g","type":"OR","children":["g1","g2","e"]},
        {"id":"g1","type":"AND","children":["a","b"]},
        {"id":"g2","type":"AND","children":["c","d"]},
        {"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1},
        {"id":"c","type":"BAS","cost":1},{"id":"d","type":"BAS","cost":1},
        {"id":"e","type":"BAS","cost":1}]})",
      R"({"nodes":[
        {"id":"g","type":"AND","children":["g1","g2","f"]},
        {"id":"g1","type":"OR","children":["a","b","c"]},
        {"id":"g2","type":"AND","children":["d","e"]},
        {"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1},
        {"id":"c","type":"BAS","cost":1},{"id":"d","type":"BAS","cost":1},
        {"id":"e","type":"BAS","cost":1},{"id":"f","type":"BAS","cost":1}]})",
      R"({"nodes":[
        {"id":"g","type":"OR","children":["g1","g2"]},
        {"id":"g1","type":"AND","children":["g3","c"]},
        {"id":"g2","type":"AND","children":["d","g4"]},
        {"id":"g3","type":"OR","children":["a","b"]},
        {"id":"g4","type":"OR","children":["e","f","h"]},
        {"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1},
        {"id":"c","type":"BAS","cost":1},{"id":"d","type":"BAS","cost":1},
        {"id":"e","type":"BAS","cost":1},{"id":"f","type":"BAS","cost":1},
        {"id":"h","type":"BAS","cost":1}]})",
      R"({"nodes":[
        {"id":"g","type":"AND","children":["g1","g2"]},
        {"id":"g1","type":"OR","children":["g3","g4"]},
        {"id":"g2","type":"OR","children":["g5","g6"]},
        {"id":"g3","type":"AND","children":["a","b"]},
        {"id":"g4","type":"AND","children":["c","d"]},
        {"id":"g5","type":"AND","children":["e","f"]},
        {"id":"g6","type":"AND","children":["h","i"]},
        {"id":"a","type":"BAS","cost":1},{"id":"b","type":"BAS","cost":1},
        {"id":"c","type":"BAS","cost":1},{"id":"d","type":"BAS","cost":1},
        {"id":"e","type":"BAS","cost":1},{"id":"f","type":"BAS","cost":1},
        {"id":"h","type":"BAS","cost":1},{"id":"i","type":"BAS","cost":1}]})",
      R"({"nodes":[
        {"id":"g","type":"OR","children":["g1","g2"]},
        {"id":"g1","type":"AND","children":["s","a"]},
        {"id":"g2","type":"AND","children":["s","b"]},
        {"id":"s","type":"BAS","cost":1},{"id":"a","type":"BAS","cost":1},
        {"id":"b","type":"BAS","cost":1}]})",
  };
  std::vector<AttackTree> blocks;
  for ( const auto* doc : documents )
  {
    blocks.push_back( parse_tree( std::string_view( doc ) ) );
  }
  return blocks;
}

Suite generate_suite( const GenConfig& cfg, const std::vector<AttackTree>& blocks )
{
  std::vector<const AttackTree*> pool;
  for ( const auto& b : blocks )
  {
    if ( !cfg.treelike_only || b.is_treelike() )
    {
      pool.push_back( &b );
    }
  }
  if ( pool.empty() )
  {
    throw Error( ErrorKind::NoBlocks, cfg.treelike_only ? "no treelike building blocks" : "no building blocks" );
  }

  SplitMix64 rng( cfg.seed );
  const auto pick = [&]() -> const AttackTree& { return *pool[rng.below( pool.size() )]; };
  Suite suite;
  for ( std::size_t k = 0; k < cfg.count; ++k )
  {
    auto tree = pick();
    std::vector<int> methods;
    while ( tree.size() < cfg.min_nodes )
    {
      const int method = 1 + static_cast<int>( rng.below( cfg.treelike_only ? 2 : 3 ) );
      const auto& other = pick();
      tree = combine( tree, other, method, rng );
      methods.push_back( method );
    }
    suite.trees.push_back( randomize_attributes( tree, cfg, rng ) );
    suite.methods.push_back( std::move( methods ) );
  }
  return suite;
}

nlohmann::json manifest( const GenConfig& cfg, const Suite& suite, const std::vector<std::string>& files )
{
  nlohmann::json out;
  out["seed"] = cfg.seed;
  out["config"] = { { "min_nodes", cfg.min_nodes },
                    { "count", cfg.count },
                    { "treelike_only", cfg.treelike_only },
                    { "cost_range", { cfg.cost_min, cfg.cost_max } },
                    { "damage_range", { cfg.damage_min, cfg.damage_max } },
                    { "prob_steps", cfg.prob_steps },
                    { "rng", "splitmix64" },
                    { "method_weights", "uniform" },
                    { "method1_damage", "replaced BAS damage dropped" } };
  out["files"] = nlohmann::json::array();
  for ( std::size_t k = 0; k < suite.trees.size(); ++k )
  {
    const auto& t = suite.trees[k];
    out["files"].push_back( { { "file", k < files.size() ? files[k] : "" },
                              { "nodes", t.size() },
                              { "bas", t.bas_count() },
                              { "treelike", t.is_treelike() },
                              { "methods", suite.methods[k] } } );
  }
  return out;
}

} // namespace atcd
