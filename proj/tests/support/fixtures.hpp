#pragma once

#include <string>

#include "atcd/json_io.hpp"

namespace atcd::testing
{

inline AttackTree fixture( const std::string& name )
{
  return load_tree( std::string( ATCD_FIXTURES ) + "/" + name );
}

} // namespace atcd::testing
