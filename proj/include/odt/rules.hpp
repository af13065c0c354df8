#pragma once
// Splitting-rule generators (axis-parallel, hypersurface, mixed) and the
// ancestry relation over a rule set.
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

#include "odt/core.hpp"
#include "odt/geometry.hpp"

namespace odt::rules {

enum class RuleKind { Axis, Surface };

// A splitting rule: a bipartition (pos, neg) of the region it was generated
// over, plus the data needed to route unseen points. `defining` is always a
// subset of `pos` (points on the surface count as positive).
struct Rule {
    int id = 0;  // dense within its generator's id space
    RuleKind kind = RuleKind::Axis;
    int axis_dim = -1;        // axis rules
    double threshold = 0.0;   // axis rules: x[dim] >= threshold -> pos
    int degree = 0;           // polynomial degree; 0 for axis
    geometry::Hypersurface surf;  // surface rules
    IndexSet defining;
    IndexSet pos, neg;
};

// K x K entries in {-1, 0, +1}: at(i,j) = +1 iff defining(j) is contained in
// pos(i), -1 iff contained in neg(i), 0 otherwise. Diagonal is 0.
class AncestryMatrix {
public:
    AncestryMatrix() = default;
    explicit AncestryMatrix(int k) : k_(k), m_(static_cast<size_t>(k) * static_cast<size_t>(k), 0) {}
    int size() const { return k_; }
    int8_t at(int i, int j) const { return m_[static_cast<size_t>(i) * static_cast<size_t>(k_) + static_cast<size_t>(j)]; }
    void set(int i, int j, int8_t v) { m_[static_cast<size_t>(i) * static_cast<size_t>(k_) + static_cast<size_t>(j)] = v; }

private:
    int k_ = 0;
    std::vector<int8_t> m_;
};

// One candidate root with the rest of the rule list divided by ancestry side.
// Entries are positions into the rule vector the matrix was built from.
struct Split {
    std::vector<int> pos;
    int root = -1;
    std::vector<int> neg;
};

// One rule per (point, dimension) with threshold = that coordinate and
// x[dim] >= threshold -> pos; rules inducing the same (pos, neg) partition of
// the region are deduplicated keeping the lowest (point, dim) pair. Ids are
// dense in generation order after dedup.
std::vector<Rule> gen_splits_axis(const Dataset& ds);
std::vector<Rule> gen_splits_axis(const Dataset& ds, const IndexSet& region);

struct SurfacePolicy {
    bool strict = false;  // degenerate defining combination: throw instead of skip
};

using RuleSink = std::function<bool(const Rule&)>;  // return false to stop

// One rule per G-combination of region points (G = C(D+M,D) - 1) via
// hypersurface fitting; rule ids equal combination ranks, so skipped
// degenerate combinations leave id gaps. Returns the number skipped.
uint64_t gen_splits_surface(const Dataset& ds, int M, const IndexSet& region,
                            const SurfacePolicy& policy, const RuleSink& sink);
std::vector<Rule> gen_splits_surface(const Dataset& ds, int M, bool strict = false,
                                     uint64_t* skipped = nullptr);
std::vector<Rule> gen_splits_surface(const Dataset& ds, int M, const IndexSet& region,
                                     bool strict = false, uint64_t* skipped = nullptr);

// Disjoint union over strictly ascending degrees (0 = axis-parallel group).
// Group ids are offset by the id-space sizes of all earlier groups: the
// deduplicated count for the axis group, C(|region|, G) for surface groups.
std::vector<Rule> gen_splits_mixed(const Dataset& ds, const std::vector<int>& degrees,
                                   const IndexSet& region, bool strict = false,
                                   uint64_t* skipped = nullptr);
std::vector<Rule> gen_splits_mixed(const Dataset& ds, const std::vector<int>& degrees,
                                   bool strict = false, uint64_t* skipped = nullptr);

// Brute-force defining-point containment, O(K^2 * G).
AncestryMatrix ancestry_matrix(const std::vector<Rule>& rules);

// For each candidate root i in rs with at(i,j) != 0 for every other j in rs,
// emit (those j with +1, i, those with -1), preserving rs order.
std::vector<Split> splits(const std::vector<int>& rs, const AncestryMatrix& A);

struct BitsetHash {
    size_t operator()(const IndexSet& s) const { return static_cast<size_t>(hash_bits(s)); }
};

// Pooled per-region rule source for depth-constrained search. The generator
// must be a pure function of the region's point set; results are cached by
// region so repeated queries return identical pool indices.
class RulePool {
public:
    using Generator = std::function<std::vector<Rule>(const IndexSet& region)>;
    explicit RulePool(Generator gen) : gen_(std::move(gen)) {}

    // Pool indices of the region's rules, generating and interning on first use.
    const std::vector<int>& rules_for(const IndexSet& region);
    // Reference stays valid as the pool grows (deque storage).
    const Rule& rule(int pool_index) const { return pool_[static_cast<size_t>(pool_index)]; }
    const std::deque<Rule>& all() const { return pool_; }

private:
    Generator gen_;
    std::deque<Rule> pool_;
    std::unordered_map<IndexSet, std::vector<int>, BitsetHash> cache_;
};

}  // namespace odt::rules
