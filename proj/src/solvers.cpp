#include "odt/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "odt/combgen.hpp"
#include "odt/trees.hpp"

namespace odt::solvers {

void SolveStats::merge(const SolveStats& o) {
    memo_hits += o.memo_hits;
    memo_misses += o.memo_misses;
    pruned += o.pruned;
    combos_total += o.combos_total;
    combos_solved += o.combos_solved;
}

void validate_objective_scheme(const Objective& obj) {
    static const double samples[] = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
    const double eps = 1e-12;
    for (double a : samples) {
        for (double b : samples) {
            double g = obj.combine(a, b);
            if (g < std::max(a, b) - eps)
                throw ContractError("objective scheme violation: combine(" + std::to_string(a) +
                                    ", " + std::to_string(b) + ") < max of the two");
        }
    }
    for (double b : samples) {
        double prev = obj.combine(samples[0], b);
        for (double a : samples) {
            double g = obj.combine(a, b);
            if (g < prev - eps)
                throw ContractError("objective scheme violation: combine not monotone in first argument");
            prev = g;
        }
        prev = obj.combine(b, samples[0]);
        for (double a : samples) {
            double g = obj.combine(b, a);
            if (g < prev - eps)
                throw ContractError("objective scheme violation: combine not monotone in second argument");
            prev = g;
        }
    }
}

DTreePtr min_e(const std::vector<DTreePtr>& candidates, const Dataset& ds, const Objective& obj) {
    if (candidates.empty()) throw InfeasibleError("no feasible tree");
    const DTreePtr* best = nullptr;
    double best_cost = 0.0;
    for (const auto& t : candidates) {
        double c = evaluate(*t, ds, obj);
        if (!best || c < best_cost) {
            best = &t;
            best_cost = c;
        }
    }
    return *best;
}

// ---- Size-constrained DP ----

namespace {

struct SizeKey {
    IndexSet region;
    std::vector<int> rs;
    int depth_budget = -1;
    bool operator==(const SizeKey& o) const {
        return depth_budget == o.depth_budget && region == o.region && rs == o.rs;
    }
};

struct SizeKeyHash {
    size_t operator()(const SizeKey& k) const {
        uint64_t h = hash_bits(k.region);
        for (int v : k.rs) h = (h ^ static_cast<uint64_t>(v)) * 0x100000001b3ULL;
        h = (h ^ static_cast<uint64_t>(k.depth_budget + 2)) * 0x100000001b3ULL;
        return static_cast<size_t>(h);
    }
};

using SizeMemo = std::unordered_map<SizeKey, std::optional<Scored>, SizeKeyHash>;

std::optional<Scored> sodt_dp(const IndexSet& region, const std::vector<int>& rs,
                              const rules::AncestryMatrix& A,
                              const std::vector<rules::Rule>& rules, const Dataset& ds,
                              const Objective& obj, int min_leaf, int depth_budget,
                              SizeMemo* memo, SolveStats* stats) {
    if (rs.empty()) {
        if (static_cast<int>(region.count()) < min_leaf) return std::nullopt;
        return Scored{make_leaf(region), obj.leaf_cost(region, ds)};
    }
    if (depth_budget == 0) return std::nullopt;  // a node is required but no depth remains
    if (memo) {
        auto it = memo->find(SizeKey{region, rs, depth_budget});
        if (it != memo->end()) {
            if (stats) ++stats->memo_hits;
            return it->second;
        }
        if (stats) ++stats->memo_misses;
    }
    int child_budget = depth_budget < 0 ? -1 : depth_budget - 1;
    std::optional<Scored> best;
    for (const auto& sp : rules::splits(rs, A)) {
        const rules::Rule& r = rules[static_cast<size_t>(sp.root)];
        auto lt = sodt_dp(region & r.pos, sp.pos, A, rules, ds, obj, min_leaf, child_budget, memo, stats);
        if (!lt) continue;
        auto rt = sodt_dp(region & r.neg, sp.neg, A, rules, ds, obj, min_leaf, child_budget, memo, stats);
        if (!rt) continue;
        double c = obj.combine(lt->cost, rt->cost);
        if (!best || c < best->cost) best = Scored{make_node(lt->tree, sp.root, rt->tree), c};
    }
    if (memo) (*memo)[SizeKey{region, rs, depth_budget}] = best;
    return best;
}

bool pred_accepts(const DTree& t, const PrefixPred& pred) {
    if (pred.max_depth >= 0 && tree_depth(t) > pred.max_depth) return false;
    if (pred.max_size >= 0 && tree_size(t) > pred.max_size) return false;
    if (pred.min_leaf > 0) {
        bool ok = true;
        std::function<void(const DTree&)> walk = [&](const DTree& n) {
            if (!ok) return;
            if (n.is_leaf()) {
                if (static_cast<int>(n.leaf.count()) < pred.min_leaf) ok = false;
                return;
            }
            walk(*n.left);
            walk(*n.right);
        };
        walk(t);
        if (!ok) return false;
    }
    if (pred.custom && !pred.custom(t)) return false;
    return true;
}

// Prefix-closedness spot check: an accepted tree's every strict subtree must
// also satisfy the custom predicate.
void check_prefix_closed(const DTree& t, const std::function<bool(const DTree&)>& custom) {
    std::function<void(const DTree&)> walk = [&](const DTree& n) {
        if (!custom(n))
            throw ContractError("filter predicate is not prefix-closed: accepted tree has a rejected subtree");
        if (!n.is_leaf()) {
            walk(*n.left);
            walk(*n.right);
        }
    };
    if (!t.is_leaf()) {
        walk(*t.left);
        walk(*t.right);
    }
}

std::optional<Scored> enumerate_filtered_size(const IndexSet& region, const std::vector<int>& rs,
                                              const rules::AncestryMatrix& A,
                                              const std::vector<rules::Rule>& rules,
                                              const Dataset& ds, const Objective& obj,
                                              const PrefixPred& pred) {
    std::optional<Scored> best;
    int sampled = 0;
    trees::gen_dts_rec(region, rs, A, rules, [&](const DTreePtr& t) {
        if (!pred_accepts(*t, pred)) return true;
        if (pred.custom && sampled < 64) {
            ++sampled;
            check_prefix_closed(*t, pred.custom);
        }
        double c = evaluate(*t, ds, obj);
        if (!best || c < best->cost) best = Scored{t, c};
        return true;
    });
    return best;
}

}  // namespace

std::optional<Scored> sodt_rec(const IndexSet& region, const std::vector<int>& rs,
                               const rules::AncestryMatrix& A,
                               const std::vector<rules::Rule>& rules, const Dataset& ds,
                               const Objective& obj) {
    return sodt_dp(region, rs, A, rules, ds, obj, 0, -1, nullptr, nullptr);
}

std::optional<Scored> sodt_filt(const IndexSet& region, const std::vector<int>& rs,
                                const rules::AncestryMatrix& A,
                                const std::vector<rules::Rule>& rules, const Dataset& ds,
                                const Objective& obj, const PrefixPred& pred) {
    if (pred.custom) return enumerate_filtered_size(region, rs, A, rules, ds, obj, pred);
    if (pred.max_size >= 0 && static_cast<int>(rs.size()) > pred.max_size) return std::nullopt;
    return sodt_dp(region, rs, A, rules, ds, obj, pred.min_leaf, pred.max_depth, nullptr, nullptr);
}

// ---- Global upper bound ----

bool GubThinner::keep(double lb, uint64_t rank) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!has_) return true;
    if (lb < ub_) return true;
    return lb == ub_ && rank < rank_;
}

void GubThinner::offer(double cost, uint64_t rank) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!has_ || cost < ub_ || (cost == ub_ && rank < rank_)) {
        has_ = true;
        ub_ = cost;
        rank_ = rank;
    }
}

bool GubThinner::has() const {
    std::lock_guard<std::mutex> lock(mu_);
    return has_;
}

double GubThinner::ub() const {
    std::lock_guard<std::mutex> lock(mu_);
    return ub_;
}

// ---- Factorized size solver ----

Scored odt_size(int K, const std::vector<rules::Rule>& rules, const rules::AncestryMatrix& A,
                const Dataset& ds, const Objective& obj, const SearchConfig& cfg,
                SolveStats* stats) {
    if (K < 0) throw std::invalid_argument("odt_size: negative K");
    if (cfg.validate_scheme) validate_objective_scheme(obj);
    if (cfg.thin == ThinMode::Similarity)
        throw std::invalid_argument("similarity thinning applies to depth-constrained search only");
    int R = static_cast<int>(rules.size());
    if (R < K) throw std::invalid_argument("odt_size: need at least K rules");
    uint64_t total = combgen::comb_count(K, R);
    IndexSet region = full_set(static_cast<size_t>(ds.n()));

    double claim_lb = 0.0;  // bound used at claim time against the incumbent
    if (cfg.thin == ThinMode::Kmeans) {
        if (obj.label != "l2")
            throw std::invalid_argument("kmeans thinning requires the squared-loss objective");
        claim_lb = kmeans_lb(K, ds.targets).lb;
    }

    PrefixPred pred;
    pred.min_leaf = cfg.min_leaf;
    pred.max_depth = cfg.max_depth;
    bool statically_infeasible = cfg.max_size >= 0 && K > cfg.max_size;

    GubThinner thinner;
    int w = std::max(1, cfg.workers);
    struct WorkerBest {
        Scored scored;
        uint64_t rank = 0;
        bool has = false;
    };
    std::vector<WorkerBest> results(static_cast<size_t>(w));
    std::vector<SolveStats> wstats(static_cast<size_t>(w));
    std::atomic<uint64_t> next{0};

    auto work = [&](int wi) {
        SizeMemo memo;
        SizeMemo* memo_ptr = cfg.memo ? &memo : nullptr;
        WorkerBest local;
        SolveStats& st = wstats[static_cast<size_t>(wi)];
        for (;;) {
            uint64_t i = next.fetch_add(1);
            if (i >= total) break;
            if (statically_infeasible) continue;
            if (cfg.thin != ThinMode::Off && thinner.has() && !thinner.keep(claim_lb, i)) {
                ++st.pruned;
                continue;
            }
            std::vector<int> comb = combgen::comb_unrank(i, K, R);
            auto res = sodt_dp(region, comb, A, rules, ds, obj, pred.min_leaf, pred.max_depth,
                               memo_ptr, &st);
            ++st.combos_solved;
            if (!res) continue;
            thinner.offer(res->cost, i);
            if (!local.has || res->cost < local.scored.cost) {
                local.scored = *res;
                local.rank = i;
                local.has = true;
            }
        }
        results[static_cast<size_t>(wi)] = std::move(local);
    };

    if (w == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(w));
        for (int wi = 0; wi < w; ++wi) threads.emplace_back(work, wi);
        for (auto& t : threads) t.join();
    }

    const WorkerBest* best = nullptr;
    for (const auto& r : results) {
        if (!r.has) continue;
        if (!best || r.scored.cost < best->scored.cost ||
            (r.scored.cost == best->scored.cost && r.rank < best->rank))
            best = &r;
    }
    if (stats) {
        for (const auto& s : wstats) stats->merge(s);
        stats->combos_total += total;
    }
    if (!best) throw InfeasibleError("no feasible tree");
    return best->scored;
}

// ---- Depth-constrained DP ----

namespace {

struct DepthKey {
    IndexSet region;
    int d = 0;
    int size_cap = -1;
    bool operator==(const DepthKey& o) const {
        return d == o.d && size_cap == o.size_cap && region == o.region;
    }
};

struct DepthKeyHash {
    size_t operator()(const DepthKey& k) const {
        uint64_t h = hash_bits(k.region);
        h = (h ^ static_cast<uint64_t>(k.d)) * 0x100000001b3ULL;
        h = (h ^ static_cast<uint64_t>(k.size_cap + 2)) * 0x100000001b3ULL;
        return static_cast<size_t>(h);
    }
};

class DepthSolver {
public:
    DepthSolver(const Dataset& ds, rules::RulePool& pool, const Objective& obj,
                const SearchConfig& cfg, const PrefixPred& pred, SolveStats* stats)
        : ds_(ds), pool_(pool), obj_(obj), cfg_(cfg), pred_(pred), stats_(stats) {}

    // Optimal tree of exact depth d (leaves early only on empty regions) with
    // at most size_cap internal nodes (-1 = unconstrained).
    std::optional<Scored> solve(int d, const IndexSet& region, int size_cap) {
        if (region.none() || d == 0) return leaf_of(region);
        if (size_cap == 0) return std::nullopt;  // a node is required
        DepthKey key{region, d, size_cap};
        if (cfg_.memo) {
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                if (stats_) ++stats_->memo_hits;
                return it->second;
            }
            if (stats_) ++stats_->memo_misses;
        }
        std::optional<Scored> best;
        std::vector<int> rs = pool_.rules_for(region);  // copy: the pool grows as we recurse
        for (int ri : rs) {
            const rules::Rule& r = pool_.rule(ri);
            if (best && cfg_.thin != ThinMode::Off) {
                double lb = obj_.combine(region_lb(r.pos, d - 1, size_cap), region_lb(r.neg, d - 1, size_cap));
                if (lb >= best->cost) {
                    if (stats_) ++stats_->pruned;
                    continue;
                }
            }
            if (size_cap < 0) {
                auto lt = solve(d - 1, r.pos, -1);
                if (!lt) continue;
                auto rt = solve(d - 1, r.neg, -1);
                if (!rt) continue;
                consider(best, lt, rt, ri);
            } else {
                for (int sl = 0; sl <= size_cap - 1; ++sl) {
                    auto lt = solve(d - 1, r.pos, sl);
                    if (!lt) continue;
                    auto rt = solve(d - 1, r.neg, size_cap - 1 - sl);
                    if (!rt) continue;
                    consider(best, lt, rt, ri);
                }
            }
        }
        if (cfg_.memo) memo_[key] = best;
        if (cfg_.thin == ThinMode::Similarity && size_cap < 0 && best)
            sim_cache_[d].emplace_back(region, best->cost);
        return best;
    }

private:
    std::optional<Scored> leaf_of(const IndexSet& region) {
        if (static_cast<int>(region.count()) < pred_.min_leaf) return std::nullopt;
        return Scored{make_leaf(region), obj_.leaf_cost(region, ds_)};
    }

    void consider(std::optional<Scored>& best, const std::optional<Scored>& lt,
                  const std::optional<Scored>& rt, int ri) {
        double c = obj_.combine(lt->cost, rt->cost);
        if (!best || c < best->cost) best = Scored{make_node(lt->tree, ri, rt->tree), c};
    }

    // Optimistic lower bound for the optimal subtree over `region` at depth
    // budget `d`. Zero unless a bound source applies.
    double region_lb(const IndexSet& region, int d, int size_cap) {
        if (cfg_.thin == ThinMode::Kmeans && obj_.label == "l2") {
            size_t cnt = region.count();
            if (cnt == 0) return 0.0;
            uint64_t leaves = d >= 63 ? cnt : std::min<uint64_t>(uint64_t{1} << d, cnt);
            std::vector<double> ys;
            ys.reserve(cnt);
            for (size_t i = region.find_first(); i != IndexSet::npos; i = region.find_next(i))
                ys.push_back(ds_.targets[i]);
            return kmeans_1d(static_cast<int>(leaves), std::move(ys));
        }
        if (cfg_.thin == ThinMode::Similarity && size_cap < 0) {
            auto it = sim_cache_.find(d);
            if (it == sim_cache_.end()) return 0.0;
            double lb = 0.0;
            for (const auto& [ref, cost] : it->second)
                lb = std::max(lb, similarity_lb(ref, region, cost).lb);
            return lb;
        }
        return 0.0;
    }

    const Dataset& ds_;
    rules::RulePool& pool_;
    const Objective& obj_;
    const SearchConfig& cfg_;
    const PrefixPred& pred_;
    SolveStats* stats_;
    std::unordered_map<DepthKey, std::optional<Scored>, DepthKeyHash> memo_;
    std::unordered_map<int, std::vector<std::pair<IndexSet, double>>> sim_cache_;
};

std::optional<Scored> enumerate_filtered_depth(int d, const IndexSet& region,
                                               rules::RulePool& pool, const Dataset& ds,
                                               const Objective& obj, const PrefixPred& pred) {
    std::optional<Scored> best;
    int sampled = 0;
    for (const DTreePtr& t : trees::gen_dtds_depth(d, region, pool)) {
        if (!pred_accepts(*t, pred)) continue;
        if (pred.custom && sampled < 64) {
            ++sampled;
            check_prefix_closed(*t, pred.custom);
        }
        double c = evaluate(*t, ds, obj);
        if (!best || c < best->cost) best = Scored{t, c};
    }
    return best;
}

}  // namespace

std::optional<Scored> odt_depth(int d, const IndexSet& region, const Dataset& ds,
                                rules::RulePool& pool, const Objective& obj,
                                const SearchConfig& cfg, SolveStats* stats) {
    PrefixPred pred;
    pred.min_leaf = cfg.min_leaf;
    pred.max_size = cfg.max_size;
    return odt_depth_filt(d, region, ds, pool, obj, cfg, pred, stats);
}

std::optional<Scored> odt_depth_filt(int d, const IndexSet& region, const Dataset& ds,
                                     rules::RulePool& pool, const Objective& obj,
                                     const SearchConfig& cfg, const PrefixPred& pred,
                                     SolveStats* stats) {
    if (d < 0) throw std::invalid_argument("odt_depth: negative depth");
    if (cfg.validate_scheme) validate_objective_scheme(obj);
    if (pred.custom) return enumerate_filtered_depth(d, region, pool, ds, obj, pred);
    if (pred.max_depth >= 0 && d > pred.max_depth) return std::nullopt;
    DepthSolver solver(ds, pool, obj, cfg, pred, stats);
    return solver.solve(d, region, pred.max_size);
}

// ---- Bounds ----

Bound similarity_lb(const IndexSet& ref_region, const IndexSet& query_region, double ref_opt_cost) {
    double removed = static_cast<double>((ref_region - query_region).count());
    Bound b;
    b.lb = std::max(0.0, ref_opt_cost - removed);
    b.provenance = "similarity";
    return b;
}

double kmeans_1d(int k, std::vector<double> ys) {
    int n = static_cast<int>(ys.size());
    if (k < 1 || k > n) throw std::invalid_argument("kmeans_1d: need 1 <= k <= |ys|");
    std::sort(ys.begin(), ys.end());
    std::vector<double> s(static_cast<size_t>(n) + 1, 0.0), s2(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        s[static_cast<size_t>(i) + 1] = s[static_cast<size_t>(i)] + ys[static_cast<size_t>(i)];
        s2[static_cast<size_t>(i) + 1] = s2[static_cast<size_t>(i)] + ys[static_cast<size_t>(i)] * ys[static_cast<size_t>(i)];
    }
    auto cost = [&](int a, int b) {  // half-open [a, b)
        double len = b - a;
        double sum = s[static_cast<size_t>(b)] - s[static_cast<size_t>(a)];
        double sq = s2[static_cast<size_t>(b)] - s2[static_cast<size_t>(a)];
        return std::max(0.0, sq - sum * sum / len);
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(static_cast<size_t>(n) + 1, inf), cur(static_cast<size_t>(n) + 1, inf);
    prev[0] = 0.0;
    for (int j = 1; j <= k; ++j) {
        std::fill(cur.begin(), cur.end(), inf);
        for (int i = j; i <= n; ++i) {
            double best = inf;
            for (int m = j - 1; m < i; ++m) {
                if (prev[static_cast<size_t>(m)] == inf) continue;
                best = std::min(best, prev[static_cast<size_t>(m)] + cost(m, i));
            }
            cur[static_cast<size_t>(i)] = best;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<size_t>(n)];
}

Bound kmeans_lb(int K, const std::vector<double>& ys) {
    if (K < 0) throw std::invalid_argument("kmeans_lb: negative K");
    Bound b;
    b.provenance = "kmeans";
    if (ys.empty()) return b;
    int k = std::min<int>(K + 1, static_cast<int>(ys.size()));
    b.lb = kmeans_1d(k, ys);
    return b;
}

}  // namespace odt::solvers
