#pragma once
// Brute-force tree generators (the search-space definitions) and the
// proper-tree axiom checker.
#include <functional>
#include <string>
#include <vector>

#include "odt/core.hpp"
#include "odt/rules.hpp"

namespace odt::trees {

// Canonical pre-order serialization; two trees are structurally equal iff
// their canon strings are equal. Leaves print their exact index sets.
std::string tree_canon(const DTree& t);

using TreeSink = std::function<bool(const DTreePtr&)>;  // return false to stop

// Recursive generator: every proper tree using all rules in rs exactly once,
// leaf index sets intersected down the recursion. rs holds positions into
// `rules`; A must be the ancestry matrix of `rules`. Returns false if the
// sink stopped the stream.
bool gen_dts_rec(const IndexSet& region, const std::vector<int>& rs,
                 const rules::AncestryMatrix& A, const std::vector<rules::Rule>& rules,
                 const TreeSink& sink);
std::vector<DTreePtr> gen_dts_rec_all(const IndexSet& region, const std::vector<int>& rs,
                                      const rules::AncestryMatrix& A,
                                      const std::vector<rules::Rule>& rules);

// Insert rule r into t: descend left on ancestry +1, right on -1; stop with
// nullptr on 0 (the insertion would break properness); split the reached leaf.
DTreePtr update(int r, const DTreePtr& t, const rules::AncestryMatrix& A,
                const std::vector<rules::Rule>& rules);

// Vectorized generator: insert each rule last into the trees over the rest,
// removing duplicates at every level. Same set of trees as gen_dts_rec.
std::vector<DTreePtr> gen_dts_vec(const IndexSet& region, const std::vector<int>& rs,
                                  const rules::AncestryMatrix& A,
                                  const std::vector<rules::Rule>& rules);

// Permutation generator: sequential update along every permutation of rs,
// keeping successes. The result is a multiset (duplicates possible); its set
// of canon strings equals gen_dts_rec's.
std::vector<DTreePtr> gen_dts_kperms(const IndexSet& region, const std::vector<int>& rs,
                                     const rules::AncestryMatrix& A,
                                     const std::vector<rules::Rule>& rules);

// Depth-d space: d=0 a single leaf; d>=1 one node per rule of the region with
// all cross products of depth-(d-1) subtrees over its sides. Rules are
// regenerated per subregion through the pool. An empty region becomes a leaf
// immediately at any depth. No deduplication. Node rule ids are pool indices.
std::vector<DTreePtr> gen_dtds_depth(int d, const IndexSet& region, rules::RulePool& pool);

// Axiom checker: node subregions come from its rule (1), each leaf set equals
// the intersection of its path sides (2), and for every internal ancestor
// pair the ancestry entry matches the realized side (3, 4).
using RuleAt = std::function<const rules::Rule&(int)>;
bool check_proper(const DTree& t, const RuleAt& rule_at, const rules::AncestryMatrix& A);
bool check_proper(const DTree& t, const std::vector<rules::Rule>& rules,
                  const rules::AncestryMatrix& A);
bool check_proper(const DTree& t, const rules::RulePool& pool, const rules::AncestryMatrix& A);

}  // namespace odt::trees
