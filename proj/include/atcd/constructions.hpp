#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "atcd/attack_tree.hpp"

namespace atcd
{

/// AND root over one BAS per item, cost g_i and damage f_i, so total cost and
/// damage are the two linear functions. BASs are `v1`..`vn`, the root `R`.
AttackTree from_knapsack( const std::vector<double>& f_coeffs, const std::vector<double>& g_coeffs );

inline constexpr std::size_t monotone_max_inputs = 4;

/// Subsets of an n-element set (little-endian masks) ordered by table value,
/// ties by size then mask, so x below y in the subset order comes first.
std::vector<std::uint32_t> monotone_order( const std::vector<double>& table, std::size_t n );

/// Tree whose damage function equals `table` on every attack. `table[m]` is
/// the value of the subset with mask `m`; it must be nondecreasing with
/// table[0] == 0. BAS `xi` is element i, each with cost 1. Gates are
/// `A<k>` (AND over the k-th subset), `O<k>` (OR over A<k>..A<2^n>) and the
/// root `R`, with k counted from 1 in `monotone_order`; single-child gates
/// are collapsed.
AttackTree realize_monotone( const std::vector<double>& table, std::size_t n );

/// OR over v0..v{n-1} with cost and damage 2^i: every attack is Pareto
/// optimal.
AttackTree exponential_pf_instance( int n );

} // namespace atcd
