#pragma once

#include <string>
#include <vector>

#include "atcd/pareto.hpp"

namespace atcd::testing
{

/// Names of the combinator identities that fail for (X, Y, d, U): cost
/// filtering commutes with minimization, and filtering or minimizing the
/// right operand first does not change the filtered or minimized AND/OR
/// combination.
std::vector<std::string> failed_identities( const std::vector<ProbTriple>& xs, const std::vector<ProbTriple>& ys,
                                            double d, double budget );

} // namespace atcd::testing
