#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "atcd/attack_tree.hpp"
#include "atcd/execution.hpp"
#include "atcd/pareto.hpp"

namespace atcd
{

/// Optimal value of a single-objective query together with one attack
/// attaining it.
struct Solution
{
  double value = 0.0;
  Attack witness;
};

/// Bottom-up fronts of a treelike tree. The input is binarized first; every
/// node of the binarized tree gets its cost-filtered front, and each front
/// point remembers which child points produced it so attacks can be rebuilt.
///
/// `P` is `DetTriple` (reach bit) or `ProbTriple` (reach probability).
template<class P>
class TreeAnalysis
{
public:
  TreeAnalysis( const AttackTree& tree, double budget = unbounded, Exec exec = Exec::Parallel );

  /// The binarized tree the fronts refer to. BAS indices match the input.
  const AttackTree& tree() const noexcept { return tree_; }
  double budget() const noexcept { return budget_; }

  const Front<P>& front( std::size_t v ) const { return fronts_[v]; }
  const Front<P>& root_front() const { return fronts_[tree_.root()]; }

  /// Attack on the input tree that produces point `i` of the front at `v`.
  Attack witness( std::size_t v, std::size_t i ) const;

  /// Cost/damage front at the root, each point with its attack.
  std::vector<std::pair<AttrPair, Attack>> projected() const;

private:
  AttackTree tree_;
  double budget_;
  std::vector<Front<P>> fronts_;
  std::vector<std::vector<Origin>> origins_;
};

extern template class TreeAnalysis<DetTriple>;
extern template class TreeAnalysis<ProbTriple>;

using DetAnalysis = TreeAnalysis<DetTriple>;
using ProbAnalysis = TreeAnalysis<ProbTriple>;

Front<DetTriple> det_front( const AttackTree& tree, double budget = unbounded );
Front<AttrPair> cdpf_tree( const AttackTree& tree );
Solution dgc_tree( const AttackTree& tree, double budget );
Solution cgd_tree( const AttackTree& tree, double min_damage );

Front<ProbTriple> prob_front( const AttackTree& tree, double budget = unbounded );
Front<AttrPair> cedpf_tree( const AttackTree& tree );
Solution edgc_tree( const AttackTree& tree, double budget );
/// Expected damages within 1e-9 of the threshold count as meeting it.
Solution cged_tree( const AttackTree& tree, double min_damage );

} // namespace atcd
