#include "atcd/ilp.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string_view>

namespace atcd
{

namespace
{

bool all_zero( std::string_view digits )
{
  return digits.find_first_not_of( '0' ) == std::string_view::npos;
}

} // namespace

Scaled to_scaled( double value, Rounding mode )
{
  if ( !std::isfinite( value ) )
  {
    throw Error( ErrorKind::NonFiniteAttribute, "value is not finite" );
  }
  if ( std::abs( value ) > 1e30 )
  {
    throw Error( ErrorKind::TooLarge, "value exceeds the exact integer range" );
  }
  const bool negative = value < 0.0;
  if ( negative && mode != Rounding::Nearest )
  {
    mode = mode == Rounding::Down ? Rounding::Up : Rounding::Down;
  }

  char buffer[400];
  const auto [end, ec] = std::to_chars( buffer, buffer + sizeof( buffer ), std::abs( value ), std::chars_format::fixed );
  const std::string_view text( buffer, static_cast<std::size_t>( end - buffer ) );
  const auto dot = text.find( '.' );
  const auto whole = text.substr( 0, dot );
  const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr( dot + 1 );

  Scaled result = 0;
  for ( const char c : whole )
  {
    result = result * 10 + ( c - '0' );
  }
  for ( int i = 0; i < scale_digits; ++i )
  {
    result = result * 10 + ( i < static_cast<int>( frac.size() ) ? frac[i] - '0' : 0 );
  }
  if ( frac.size() > static_cast<std::size_t>( scale_digits ) )
  {
    const auto rest = frac.substr( scale_digits );
    switch ( mode )
    {
    case Rounding::Nearest:
      result += rest[0] >= '5' ? 1 : 0;
      break;
    case Rounding::Up:
      result += all_zero( rest ) ? 0 : 1;
      break;
    case Rounding::Down:
      break;
    }
  }
  return negative ? -result : result;
}

double from_scaled( Scaled value )
{
  return static_cast<double>( value / scale_factor ) + static_cast<double>( value % scale_factor ) / scale_factor;
}

std::string scaled_to_string( Scaled value )
{
  std::string sign = value < 0 ? "-" : "";
  if ( value < 0 )
  {
    value = -value;
  }
  auto whole = value / scale_factor;
  auto frac = static_cast<std::int64_t>( value % scale_factor );
  std::string digits;
  do
  {
    digits.insert( digits.begin(), static_cast<char>( '0' + static_cast<int>( whole % 10 ) ) );
    whole /= 10;
  } while ( whole > 0 );
  if ( frac == 0 )
  {
    return sign + digits;
  }
  auto fraction = std::to_string( frac );
  fraction.insert( 0, scale_digits - fraction.size(), '0' );
  fraction.erase( fraction.find_last_not_of( '0' ) + 1 );
  return sign + digits + "." + fraction;
}

IlpModel encode_bilp( const AttackTree& tree )
{
  IlpModel model{ tree, {}, {}, {}, {}, std::nullopt, std::nullopt };
  for ( std::size_t v = 0; v < tree.size(); ++v )
  {
    const auto& node = tree.node( v );
    model.names.push_back( "y_" + node.id );
    model.cost.push_back( node.kind == NodeKind::Bas ? to_scaled( tree.cost( v ) ) : 0 );
    model.damage.push_back( to_scaled( tree.damage( v ) ) );
  }
  for ( const auto v : tree.bottom_up_order() )
  {
    const auto& node = tree.node( v );
    if ( node.kind == NodeKind::And )
    {
      for ( const auto w : node.children )
      {
        model.constraints.push_back( { v, { w } } );
      }
    }
    else if ( node.kind == NodeKind::Or )
    {
      model.constraints.push_back( { v, node.children } );
    }
  }
  return model;
}

namespace
{

Scaled objective_sum( const std::vector<Scaled>& coefficients, const std::vector<std::uint8_t>& y )
{
  Scaled sum = 0;
  for ( std::size_t v = 0; v < y.size(); ++v )
  {
    sum += y[v] ? coefficients[v] : 0;
  }
  return sum;
}

} // namespace

bool is_feasible( const IlpModel& model, const std::vector<std::uint8_t>& assignment )
{
  if ( assignment.size() != model.names.size() )
  {
    return false;
  }
  for ( const auto& c : model.constraints )
  {
    int rhs = 0;
    for ( const auto w : c.rhs )
    {
      rhs += assignment[w];
    }
    if ( assignment[c.lhs] > rhs )
    {
      return false;
    }
  }
  if ( model.cost_cap && objective_sum( model.cost, assignment ) > *model.cost_cap )
  {
    return false;
  }
  if ( model.damage_floor && objective_sum( model.damage, assignment ) < *model.damage_floor )
  {
    return false;
  }
  return true;
}

namespace
{

class BranchAndBound
{
public:
  BranchAndBound( const IlpModel& model, Objective objective, std::uint64_t node_limit )
      : model_( model ), tree_( model.tree ), objective_( objective ), node_limit_( node_limit ),
        state_( tree_.bas_count(), undecided )
  {
    cap_ = model.cost_cap.value_or( std::numeric_limits<Scaled>::max() );
    for ( const auto v : tree_.bas_nodes() )
    {
      bas_cost_.push_back( model.cost[v] );
    }
  }

  SolveResult run()
  {
    if ( cap_ >= 0 )
    {
      visit( 0 );
    }
    SolveResult result;
    result.nodes = nodes_;
    if ( !found_ )
    {
      return result;
    }
    result.status = Status::Optimal;
    const auto flags = reach( tree_, best_ );
    result.assignment.assign( flags.begin(), flags.end() );
    result.scaled_cost = best_cost_;
    result.scaled_damage = best_damage_;
    result.cost = from_scaled( best_cost_ );
    result.damage = from_scaled( best_damage_ );
    return result;
  }

private:
  static constexpr std::int8_t undecided = -1;

  Scaled damage_of( const Attack& x ) const
  {
    const auto flags = reach( tree_, x );
    Scaled sum = 0;
    for ( std::size_t v = 0; v < flags.size(); ++v )
    {
      sum += flags[v] ? model_.damage[v] : 0;
    }
    return sum;
  }

  bool improves( Scaled cost, Scaled damage ) const
  {
    if ( !found_ )
    {
      return true;
    }
    if ( objective_ == Objective::NegDamage )
    {
      return damage > best_damage_ || ( damage == best_damage_ && cost < best_cost_ );
    }
    return cost < best_cost_ || ( cost == best_cost_ && damage > best_damage_ );
  }

  bool hopeless( Scaled cost_lower, Scaled damage_upper ) const
  {
    if ( !found_ )
    {
      return false;
    }
    if ( objective_ == Objective::NegDamage )
    {
      return damage_upper < best_damage_ || ( damage_upper == best_damage_ && cost_lower >= best_cost_ );
    }
    return cost_lower > best_cost_ || ( cost_lower == best_cost_ && damage_upper <= best_damage_ );
  }

  void visit( Scaled fixed_cost )
  {
    if ( ++nodes_ > node_limit_ )
    {
      throw Error( ErrorKind::BudgetExceeded, "branch and bound exceeded " + std::to_string( node_limit_ ) + " nodes" );
    }

    const auto n = state_.size();
    Attack low = tree_.empty_attack();
    Attack high = tree_.empty_attack();
    std::vector<std::size_t> open;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( state_[i] == 1 )
      {
        low.set( i );
        high.set( i );
      }
      else if ( state_[i] == undecided && bas_cost_[i] <= cap_ - fixed_cost )
      {
        high.set( i );
        open.push_back( i );
      }
    }

    const auto low_damage = damage_of( low );
    const auto high_damage = damage_of( high );
    if ( model_.damage_floor && high_damage < *model_.damage_floor )
    {
      return;
    }
    if ( ( !model_.damage_floor || low_damage >= *model_.damage_floor ) && improves( fixed_cost, low_damage ) )
    {
      found_ = true;
      best_ = low;
      best_cost_ = fixed_cost;
      best_damage_ = low_damage;
    }
    if ( open.empty() || hopeless( fixed_cost, high_damage ) )
    {
      return;
    }

    // damage gained per unit of cost, lowest index on ties
    std::size_t pick = open.front();
    double pick_ratio = -1.0;
    for ( const auto i : open )
    {
      low.set( i );
      const double gain = from_scaled( damage_of( low ) - low_damage );
      low.set( i, false );
      const double ratio = gain / ( from_scaled( bas_cost_[i] ) + 1.0 );
      if ( ratio > pick_ratio )
      {
        pick = i;
        pick_ratio = ratio;
      }
    }

    state_[pick] = 1;
    visit( fixed_cost + bas_cost_[pick] );
    state_[pick] = 0;
    visit( fixed_cost );
    state_[pick] = undecided;
  }

  const IlpModel& model_;
  const AttackTree& tree_;
  Objective objective_;
  std::uint64_t node_limit_;
  std::vector<std::int8_t> state_;
  std::vector<Scaled> bas_cost_;
  Scaled cap_ = 0;
  std::uint64_t nodes_ = 0;

  bool found_ = false;
  Attack best_;
  Scaled best_cost_ = 0;
  Scaled best_damage_ = 0;
};

Attack attack_of_assignment( const AttackTree& tree, const std::vector<std::uint8_t>& y )
{
  Attack x = tree.empty_attack();
  for ( std::size_t i = 0; i < tree.bas_count(); ++i )
  {
    x.set( i, y[tree.bas_nodes()[i]] != 0 );
  }
  return x;
}

void check_bound( double value, const char* what )
{
  if ( std::isnan( value ) || value < 0.0 )
  {
    throw Error( ErrorKind::OutOfRange, std::string( what ) + " must be a nonnegative number" );
  }
}

} // namespace

SolveResult solve_single( const IlpModel& model, Objective objective, std::uint64_t node_limit )
{
  return BranchAndBound( model, objective, node_limit ).run();
}

Solution dgc_dag( const AttackTree& tree, double budget, std::uint64_t node_limit )
{
  check_bound( budget, "budget" );
  auto model = encode_bilp( tree );
  if ( std::isfinite( budget ) )
  {
    model.cost_cap = to_scaled( budget, Rounding::Down );
  }
  const auto result = solve_single( model, Objective::NegDamage, node_limit );
  return { result.damage, attack_of_assignment( tree, result.assignment ) };
}

Solution cgd_dag( const AttackTree& tree, double min_damage, std::uint64_t node_limit )
{
  check_bound( min_damage, "damage threshold" );
  auto model = encode_bilp( tree );
  if ( std::isinf( min_damage ) )
  {
    throw Error( ErrorKind::InfeasibleDamageThreshold, "no attack reaches infinite damage" );
  }
  model.damage_floor = to_scaled( min_damage, Rounding::Up );
  const auto result = solve_single( model, Objective::Cost, node_limit );
  if ( result.status == Status::Infeasible )
  {
    throw Error( ErrorKind::InfeasibleDamageThreshold, "no attack reaches damage " + std::to_string( min_damage ) );
  }
  return { result.cost, attack_of_assignment( tree, result.assignment ) };
}

Front<AttrPair> cdpf_dag( const AttackTree& tree, std::uint64_t node_limit )
{
  auto model = encode_bilp( tree );
  std::vector<AttrPair> points;
  while ( true )
  {
    model.damage_floor.reset();
    const auto top = solve_single( model, Objective::NegDamage, node_limit );
    if ( top.status == Status::Infeasible )
    {
      break;
    }
    model.damage_floor = top.scaled_damage;
    const auto cheapest = solve_single( model, Objective::Cost, node_limit );
    points.push_back( { cheapest.cost, cheapest.damage } );
    if ( cheapest.scaled_cost == 0 )
    {
      break;
    }
    model.cost_cap = cheapest.scaled_cost - 1;
  }
  if ( points.empty() || points.back().cost != 0.0 )
  {
    points.push_back( { 0.0, 0.0 } );
  }
  return pareto_min( points );
}

namespace
{

std::string lp_name( const std::string& name )
{
  static constexpr std::string_view allowed = "!\"#$%&()/,.;?@_`'{}|~";
  std::string out = name;
  for ( auto& c : out )
  {
    const bool ok = ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) ||
                    allowed.find( c ) != std::string_view::npos;
    if ( !ok )
    {
      c = '_';
    }
  }
  return out;
}

/// Linear expression in LP syntax; zero coefficients are skipped.
std::string lp_expression( const std::vector<std::pair<Scaled, std::string>>& terms )
{
  std::ostringstream out;
  bool first = true;
  for ( const auto& [coef, var] : terms )
  {
    if ( coef == 0 )
    {
      continue;
    }
    const auto magnitude = coef < 0 ? -coef : coef;
    if ( first )
    {
      out << ( coef < 0 ? "- " : "" );
    }
    else
    {
      out << ( coef < 0 ? " - " : " + " );
    }
    if ( magnitude != scale_factor )
    {
      out << scaled_to_string( magnitude ) << ' ';
    }
    out << var;
    first = false;
  }
  if ( first )
  {
    out << "0 " << ( terms.empty() ? std::string( "y" ) : terms.front().second );
  }
  return out.str();
}

} // namespace

std::string export_lp( const IlpModel& model, Objective objective )
{
  std::vector<std::string> vars;
  for ( const auto& n : model.names )
  {
    vars.push_back( lp_name( n ) );
  }
  std::vector<std::pair<Scaled, std::string>> cost_terms;
  std::vector<std::pair<Scaled, std::string>> damage_terms;
  for ( std::size_t v = 0; v < vars.size(); ++v )
  {
    if ( model.tree.node( v ).kind == NodeKind::Bas )
    {
      cost_terms.push_back( { model.cost[v], vars[v] } );
    }
    damage_terms.push_back( { -model.damage[v], vars[v] } );
  }

  std::ostringstream out;
  out << "Minimize\n obj: " << lp_expression( objective == Objective::Cost ? cost_terms : damage_terms ) << "\n";

  std::vector<std::string> rows;
  for ( const auto& c : model.constraints )
  {
    std::vector<std::pair<Scaled, std::string>> terms{ { scale_factor, vars[c.lhs] } };
    for ( const auto w : c.rhs )
    {
      terms.push_back( { -scale_factor, vars[w] } );
    }
    rows.push_back( lp_expression( terms ) + " <= 0" );
  }
  if ( model.cost_cap )
  {
    rows.push_back( lp_expression( cost_terms ) + " <= " + scaled_to_string( *model.cost_cap ) );
  }
  if ( model.damage_floor )
  {
    rows.push_back( lp_expression( damage_terms ) + " <= " + scaled_to_string( -*model.damage_floor ) );
  }
  if ( !rows.empty() )
  {
    out << "Subject To\n";
    for ( std::size_t i = 0; i < rows.size(); ++i )
    {
      out << " c" << i + 1 << ": " << rows[i] << "\n";
    }
  }

  out << "Bounds\n";
  for ( const auto& var : vars )
  {
    out << " 0 <= " << var << " <= 1\n";
  }
  out << "Binary\n";
  for ( const auto& var : vars )
  {
    out << " " << var << "\n";
  }
  out << "End\n";
  return out.str();
}

} // namespace atcd
