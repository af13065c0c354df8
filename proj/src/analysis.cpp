#include "odt/analysis.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

#include "odt/combgen.hpp"
#include "odt/geometry.hpp"

namespace odt::analysis {

BigInt catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: negative n");
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    return c / (n + 1);
}

BigInt binom_big(int n, int k) {
    if (k < 0 || n < 0) return 0;
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return c;
}

BigInt factorial_big(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative n");
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

namespace {

struct BudgetCounter {
    uint64_t budget;
    uint64_t used = 0;
    void spend() {
        if (++used > budget) throw BudgetError("census budget exceeded");
    }
};

// Number of proper trees over exactly the rule set rs; depends only on the
// ancestry matrix. Memoized across combinations (subsets recur).
BigInt count_size_trees(const std::vector<int>& rs, const rules::AncestryMatrix& A,
                        std::map<std::vector<int>, BigInt>& memo, BudgetCounter& budget) {
    if (rs.empty()) return 1;
    auto it = memo.find(rs);
    if (it != memo.end()) return it->second;
    budget.spend();
    BigInt total = 0;
    for (const auto& sp : rules::splits(rs, A)) {
        BigInt l = count_size_trees(sp.pos, A, memo, budget);
        BigInt r = count_size_trees(sp.neg, A, memo, budget);
        total += l * r;
    }
    memo[rs] = total;
    return total;
}

struct DepthCountKey {
    IndexSet region;
    int d;
    bool operator==(const DepthCountKey& o) const { return d == o.d && region == o.region; }
};
struct DepthCountKeyHash {
    size_t operator()(const DepthCountKey& k) const {
        return static_cast<size_t>((hash_bits(k.region) ^ static_cast<uint64_t>(k.d)) * 0x100000001b3ULL);
    }
};

BigInt count_depth_trees(int d, const IndexSet& region, rules::RulePool& pool,
                         std::unordered_map<DepthCountKey, BigInt, DepthCountKeyHash>& memo,
                         BudgetCounter& budget) {
    if (d == 0 || region.none()) return 1;
    DepthCountKey key{region, d};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    budget.spend();
    BigInt total = 0;
    std::vector<int> rs = pool.rules_for(region);  // copy: the pool grows as we recurse
    for (int ri : rs) {
        const rules::Rule& r = pool.rule(ri);
        BigInt l = count_depth_trees(d - 1, r.pos, pool, memo, budget);
        BigInt rt = count_depth_trees(d - 1, r.neg, pool, memo, budget);
        total += l * rt;
    }
    memo[key] = total;
    return total;
}

}  // namespace

BigInt census_size_trees(const std::vector<rules::Rule>& rules, const rules::AncestryMatrix& A,
                         int K, uint64_t budget) {
    int R = static_cast<int>(rules.size());
    if (K < 0 || K > R) throw std::invalid_argument("census_size_trees: need 0 <= K <= |rules|");
    BudgetCounter counter{budget};
    std::map<std::vector<int>, BigInt> memo;
    BigInt total = 0;
    combgen::kcombs(K, R, [&](const std::vector<int>& comb) {
        total += count_size_trees(comb, A, memo, counter);
        return true;
    });
    return total;
}

BigInt census_depth_trees(const Dataset& ds, int d, rules::RulePool& pool, uint64_t budget) {
    if (d < 0) throw std::invalid_argument("census_depth_trees: negative depth");
    BudgetCounter counter{budget};
    std::unordered_map<DepthCountKey, BigInt, DepthCountKeyHash> memo;
    return count_depth_trees(d, full_set(static_cast<size_t>(ds.n())), pool, memo, counter);
}

BigInt depth_lb(const Dataset& ds, int d) {
    int unique_rules = static_cast<int>(rules::gen_splits_axis(ds).size());
    return binom_big(unique_rules, d);
}

std::vector<ReportRow> complexity_report(const Dataset& ds, const ComplexityParams& p) {
    std::vector<ReportRow> rows;
    int N = ds.n();
    int D = ds.d();
    int K = p.k_or_d;
    rows.push_back({"N", std::to_string(N)});
    rows.push_back({"D", std::to_string(D)});
    rows.push_back({p.size_mode ? "K" : "d", std::to_string(K)});

    bool has_axis = false;
    std::vector<int> surface_degrees;
    for (int M : p.degrees) {
        if (M == 0)
            has_axis = true;
        else
            surface_degrees.push_back(M);
    }

    if (has_axis) {
        BigInt nd_k;
        mpz_ui_pow_ui(nd_k.get_mpz_t(), static_cast<unsigned long>(N) * static_cast<unsigned long>(D),
                      static_cast<unsigned long>(K));
        rows.push_back({"(N*D)^" + std::string(p.size_mode ? "K" : "d"), nd_k.get_str()});
        BigInt chain = factorial_big(K) * catalan(K) * binom_big(D, K);
        rows.push_back({"K!*Catalan(K)*C(D,K)", chain.get_str()});
    }
    for (int M : surface_degrees) {
        int G = geometry::monomials(D, M).g();
        rows.push_back({"G(degree " + std::to_string(M) + ")", std::to_string(G)});
        BigInt n_gk;
        mpz_ui_pow_ui(n_gk.get_mpz_t(), static_cast<unsigned long>(N),
                      static_cast<unsigned long>(G) * static_cast<unsigned long>(K));
        rows.push_back({"N^(G*K) degree " + std::to_string(M), n_gk.get_str()});
    }
    try {
        rows.push_back({"cover_count(N,D)", std::to_string(geometry::cover_count(N, D))});
    } catch (const std::overflow_error&) {
        rows.push_back({"cover_count(N,D)", "overflow"});
    }

    if (p.measure) {
        try {
            if (p.size_mode) {
                auto rule_list = rules::gen_splits_mixed(ds, p.degrees);
                auto A = rules::ancestry_matrix(rule_list);
                if (static_cast<int>(rule_list.size()) >= K) {
                    BigInt census = census_size_trees(rule_list, A, K, p.budget);
                    rows.push_back({"census_size_trees", census.get_str()});
                } else {
                    rows.push_back({"census_size_trees", "infeasible(K > rules)"});
                }
            } else {
                std::vector<int> degrees = p.degrees;
                rules::RulePool pool([&ds, degrees](const IndexSet& region) {
                    return rules::gen_splits_mixed(ds, degrees, region);
                });
                BigInt census = census_depth_trees(ds, K, pool, p.budget);
                rows.push_back({"census_depth_trees", census.get_str()});
                rows.push_back({"depth_lb", depth_lb(ds, K).get_str()});
            }
        } catch (const BudgetError&) {
            rows.push_back({p.size_mode ? "census_size_trees" : "census_depth_trees", "refused(budget)"});
        }
    }
    return rows;
}

std::string report_tsv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    for (const auto& r : rows) out << r.label << "\t" << r.value << "\n";
    return out.str();
}

std::string report_table(const std::vector<ReportRow>& rows) {
    size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.label.size());
    std::ostringstream out;
    for (const auto& r : rows)
        out << r.label << std::string(width - r.label.size() + 2, ' ') << r.value << "\n";
    return out.str();
}

std::string probe_verdict(const BigInt& external_count, const BigInt& lower_bound) {
    if (external_count < lower_bound)
        return "CONTRADICTED: reported count " + external_count.get_str() +
               " is below the provable lower bound " + lower_bound.get_str();
    return "CONSISTENT: reported count " + external_count.get_str() +
           " meets the provable lower bound " + lower_bound.get_str();
}

}  // namespace odt::analysis
