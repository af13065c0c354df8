#pragma once
// Exact censuses of the tree search spaces and instantiated worst-case
// counting formulas. All counts are arbitrary-precision integers.
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "odt/core.hpp"
#include "odt/rules.hpp"

namespace odt::analysis {

using BigInt = mpz_class;

BigInt catalan(int n);
BigInt binom_big(int n, int k);
BigInt factorial_big(int n);

inline constexpr uint64_t kDefaultCensusBudget = 10'000'000;

// Exact number of distinct proper trees with exactly K rules: the sum over
// K-combinations of the recursive generator's output size. Counting is
// structural (splits depend only on the ancestry matrix, never on regions).
// Exceeding the node budget raises BudgetError instead of truncating.
BigInt census_size_trees(const std::vector<rules::Rule>& rules, const rules::AncestryMatrix& A,
                         int K, uint64_t budget = kDefaultCensusBudget);

// Exact size of the depth-d space over the full dataset (no deduplication,
// matching the depth generator). BudgetError past the node budget.
BigInt census_depth_trees(const Dataset& ds, int d, rules::RulePool& pool,
                          uint64_t budget = kDefaultCensusBudget);

// Provable lower bound on the depth-d space over axis-parallel rules:
// C(#deduplicated axis rules, d).
BigInt depth_lb(const Dataset& ds, int d);

struct ReportRow {
    std::string label;
    std::string value;
};

struct ComplexityParams {
    bool size_mode = true;
    int k_or_d = 1;
    std::vector<int> degrees = {0};  // 0 = axis-parallel group
    uint64_t budget = kDefaultCensusBudget;
    bool measure = true;  // run censuses where the budget allows
};

// Worst-case terms instantiated with the instance's N, D, K, G, alongside
// measured censuses (rows flagged "refused(budget)" when the budget stops them).
std::vector<ReportRow> complexity_report(const Dataset& ds, const ComplexityParams& p);

std::string report_tsv(const std::vector<ReportRow>& rows);
std::string report_table(const std::vector<ReportRow>& rows);

// Compares an externally reported search-space count against the provable
// lower bound; returns a one-line verdict.
std::string probe_verdict(const BigInt& external_count, const BigInt& lower_bound);

}  // namespace odt::analysis
