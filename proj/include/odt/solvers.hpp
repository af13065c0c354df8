#pragma once
// Optimal solvers: selection, size- and depth-constrained dynamic programs,
// the factorized outer loop over rule combinations, filter fusion, thinning
// bounds, and the optional memo cache.
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "odt/core.hpp"
#include "odt/rules.hpp"

namespace odt::solvers {

enum class ThinMode { Off, Gub, Similarity, Kmeans };

struct SearchConfig {
    int size_k = -1;   // exactly one of size_k / depth is >= 0
    int depth = -1;
    int min_leaf = 0;
    int max_depth = -1;  // optional cross-constraint in size mode
    int max_size = -1;   // optional cross-constraint in depth mode
    ThinMode thin = ThinMode::Off;
    int workers = 1;
    bool memo = false;
    bool validate_scheme = true;
};

struct Scored {
    DTreePtr tree;
    double cost = 0.0;
};

struct SolveStats {
    uint64_t memo_hits = 0;
    uint64_t memo_misses = 0;
    uint64_t pruned = 0;         // combinations or rule branches skipped by thinning
    uint64_t combos_total = 0;   // size mode: K-combinations in the search space
    uint64_t combos_solved = 0;  // size mode: combinations actually solved
    void merge(const SolveStats& o);
};

// Optimistic lower / pessimistic upper bound pair.
struct Bound {
    double lb = 0.0;
    double ub = std::numeric_limits<double>::infinity();
    std::string provenance;
};

// Sampled check that combine(a,b) >= max(a,b) and is monotone in each
// argument (the dynamic programs are unsound otherwise). Throws ContractError.
void validate_objective_scheme(const Objective& obj);

// First candidate attaining the minimal objective, in stream order.
// Throws InfeasibleError on an empty candidate list.
DTreePtr min_e(const std::vector<DTreePtr>& candidates, const Dataset& ds, const Objective& obj);

// Prefix-closed tree predicates. The three library fields fuse into the
// dynamic programs; a custom predicate forces the enumerative path, where a
// sampled prefix-closedness check guards the fusion contract.
struct PrefixPred {
    int min_leaf = 0;
    int max_depth = -1;
    int max_size = -1;
    std::function<bool(const DTree&)> custom;
    bool neutral() const { return min_leaf <= 0 && max_depth < 0 && max_size < 0 && !custom; }
};

// Size-constrained DP over one rule combination: optimal proper tree using
// all of rs exactly once. Infeasible combination -> nullopt.
std::optional<Scored> sodt_rec(const IndexSet& region, const std::vector<int>& rs,
                               const rules::AncestryMatrix& A,
                               const std::vector<rules::Rule>& rules, const Dataset& ds,
                               const Objective& obj);

// Filter-fused variant: objective equals min over the pred-filtered
// enumeration of gen_dts_rec.
std::optional<Scored> sodt_filt(const IndexSet& region, const std::vector<int>& rs,
                                const rules::AncestryMatrix& A,
                                const std::vector<rules::Rule>& rules, const Dataset& ds,
                                const Objective& obj, const PrefixPred& pred);

// Running global upper bound with combination-rank tie-breaking. keep() is
// conservative: a descriptor survives unless its bound proves it cannot beat
// the incumbent (or tie at a lower rank).
class GubThinner {
public:
    bool keep(double lb, uint64_t rank) const;
    void offer(double cost, uint64_t rank);
    bool has() const;
    double ub() const;

private:
    mutable std::mutex mu_;
    bool has_ = false;
    double ub_ = std::numeric_limits<double>::infinity();
    uint64_t rank_ = 0;
};

// Optimal size-K tree: parallel map of the DP over all K-combinations of rule
// positions, reduced by (cost, combination rank). Ties across workers are
// resolved by rank, so the result is independent of cfg.workers.
// Throws InfeasibleError when every combination is infeasible under the config.
Scored odt_size(int K, const std::vector<rules::Rule>& rules, const rules::AncestryMatrix& A,
                const Dataset& ds, const Objective& obj, const SearchConfig& cfg,
                SolveStats* stats = nullptr);

// Depth-constrained DP. Empty region -> leaf immediately; a nonempty region
// whose generator yields no rules is infeasible at d >= 1 -> nullopt.
std::optional<Scored> odt_depth(int d, const IndexSet& region, const Dataset& ds,
                                rules::RulePool& pool, const Objective& obj,
                                const SearchConfig& cfg, SolveStats* stats = nullptr);
std::optional<Scored> odt_depth_filt(int d, const IndexSet& region, const Dataset& ds,
                                     rules::RulePool& pool, const Objective& obj,
                                     const SearchConfig& cfg, const PrefixPred& pred,
                                     SolveStats* stats = nullptr);

// lb = max(0, ref_opt_cost - |ref \ query|). EXPERIMENTAL: the supporting
// assumption is unproven; solvers that use it pair every run with a safety
// check in the test suite.
Bound similarity_lb(const IndexSet& ref_region, const IndexSet& query_region, double ref_opt_cost);

// Exact minimal sum of squared deviations over a partition of ys into k
// clusters (DP over the sorted order; optimal 1-D clusters are contiguous).
double kmeans_1d(int k, std::vector<double> ys);

// lb for the optimal size-K regression tree: kmeans_1d with K+1 clusters
// (clamped to |ys|).
Bound kmeans_lb(int K, const std::vector<double>& ys);

}  // namespace odt::solvers
