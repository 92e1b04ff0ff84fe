#include "atcd/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace atcd
{

namespace
{

using nlohmann::json;

[[noreturn]] void malformed( const std::string& message )
{
  throw Error( ErrorKind::MalformedDocument, message );
}

double number_field( const json& obj, const char* key, const std::string& id )
{
  const auto& value = obj.at( key );
  if ( !value.is_number() )
  {
    malformed( std::string( "field '" ) + key + "' of '" + id + "' must be a number" );
  }
  return value.get<double>();
}

NodeKind kind_from( const std::string& type, const std::string& id )
{
  if ( type == "BAS" )
  {
    return NodeKind::Bas;
  }
  if ( type == "AND" )
  {
    return NodeKind::And;
  }
  if ( type == "OR" )
  {
    return NodeKind::Or;
  }
  malformed( "node '" + id + "' has unknown type '" + type + "'" );
}

} // namespace

json json_number( double value )
{
  if ( std::trunc( value ) == value && std::abs( value ) < 9e15 )
  {
    return static_cast<std::int64_t>( value );
  }
  return value;
}

AttackTree parse_tree( const json& document )
{
  if ( !document.is_object() || !document.contains( "nodes" ) || !document["nodes"].is_array() )
  {
    malformed( "expected an object with a 'nodes' array" );
  }
  const auto& items = document["nodes"];

  std::vector<Node> nodes;
  nodes.reserve( items.size() );
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::string>> child_ids( items.size() );

  for ( const auto& item : items )
  {
    if ( !item.is_object() || !item.contains( "id" ) || !item["id"].is_string() )
    {
      malformed( "every node needs a string 'id'" );
    }
    Node node;
    node.id = item["id"].get<std::string>();
    if ( !index.emplace( node.id, nodes.size() ).second )
    {
      throw Error( ErrorKind::DuplicateId, "id '" + node.id + "' is used twice" );
    }
    if ( !item.contains( "type" ) || !item["type"].is_string() )
    {
      malformed( "node '" + node.id + "' needs a string 'type'" );
    }
    node.kind = kind_from( item["type"].get<std::string>(), node.id );
    if ( item.contains( "children" ) )
    {
      if ( !item["children"].is_array() )
      {
        malformed( "children of '" + node.id + "' must be an array" );
      }
      for ( const auto& c : item["children"] )
      {
        if ( !c.is_string() )
        {
          malformed( "children of '" + node.id + "' must be ids" );
        }
        child_ids[nodes.size()].push_back( c.get<std::string>() );
      }
    }
    if ( item.contains( "cost" ) )
    {
      node.cost = number_field( item, "cost", node.id );
    }
    if ( item.contains( "damage" ) )
    {
      node.damage = number_field( item, "damage", node.id );
    }
    if ( item.contains( "prob" ) )
    {
      node.prob = number_field( item, "prob", node.id );
    }
    nodes.push_back( std::move( node ) );
  }

  for ( std::size_t v = 0; v < nodes.size(); ++v )
  {
    for ( const auto& c : child_ids[v] )
    {
      const auto it = index.find( c );
      if ( it == index.end() )
      {
        throw Error( ErrorKind::DanglingChildRef, "node '" + nodes[v].id + "' references unknown '" + c + "'" );
      }
      nodes[v].children.push_back( it->second );
    }
  }
  return AttackTree::build( std::move( nodes ) );
}

AttackTree parse_tree( std::string_view text )
{
  json document;
  try
  {
    document = json::parse( text );
  }
  catch ( const json::parse_error& e )
  {
    malformed( e.what() );
  }
  return parse_tree( document );
}

AttackTree load_tree( const std::filesystem::path& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    malformed( "cannot open '" + path.string() + "'" );
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_tree( std::string_view( buffer.str() ) );
}

json to_json( const AttackTree& tree )
{
  json items = json::array();
  for ( const auto& node : tree.nodes() )
  {
    json item;
    item["id"] = node.id;
    item["type"] = std::string( to_string( node.kind ) );
    if ( node.kind == NodeKind::Bas )
    {
      item["cost"] = json_number( node.cost.value_or( 0.0 ) );
      if ( node.prob )
      {
        item["prob"] = json_number( *node.prob );
      }
    }
    else
    {
      json kids = json::array();
      for ( auto w : node.children )
      {
        kids.push_back( tree.node( w ).id );
      }
      item["children"] = std::move( kids );
    }
    item["damage"] = json_number( node.damage );
    items.push_back( std::move( item ) );
  }
  return json{ { "nodes", std::move( items ) } };
}

std::string dump_tree( const AttackTree& tree )
{
  return to_json( tree ).dump( 2 ) + "\n";
}

void save_tree( const AttackTree& tree, const std::filesystem::path& path )
{
  std::ofstream out( path );
  if ( !out )
  {
    malformed( "cannot write '" + path.string() + "'" );
  }
  out << dump_tree( tree );
}

} // namespace atcd
