// Acceptance harness: one pass/fail line per criterion, exit 0 iff all pass.
// Every fast path is judged against an independent enumerative oracle built
// from the brute-force generators, never against the solver under test.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "odt/analysis.hpp"
#include "odt/combgen.hpp"
#include "odt/core.hpp"
#include "odt/geometry.hpp"
#include "odt/rules.hpp"
#include "odt/solvers.hpp"
#include "odt/trees.hpp"

using namespace odt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Dataset random_instance(std::mt19937_64& rng, int max_n, int max_dim) {
    int n = 3 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, max_n - 2)));
    int dim = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_dim));
    int classes = (rng() % 4 == 0) ? 3 : 2;
    std::vector<std::vector<double>> pts;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
        std::vector<double> p;
        for (int j = 0; j < dim; ++j) p.push_back(static_cast<double>(rng() % 10));
        pts.push_back(std::move(p));
        labels.push_back(static_cast<int>(rng() % static_cast<uint64_t>(classes)));
    }
    return make_dataset(std::move(pts), std::move(labels));
}

using TreePred = std::function<bool(const DTree&)>;

// Enumerative optimum over all K-combinations, optionally filter-then-min.
double oracle_size_min(const Dataset& ds, const std::vector<rules::Rule>& rule_list,
                       const rules::AncestryMatrix& A, int K, const TreePred& keep = nullptr) {
    IndexSet region = full_set(static_cast<size_t>(ds.n()));
    Objective obj = zero_one_objective();
    double best = kInf;
    combgen::kcombs(K, static_cast<int>(rule_list.size()), [&](const std::vector<int>& comb) {
        for (const auto& t : trees::gen_dts_rec_all(region, comb, A, rule_list)) {
            if (keep && !keep(*t)) continue;
            best = std::min(best, evaluate(*t, ds, obj));
        }
        return true;
    });
    return best;
}

double oracle_depth_min(const Dataset& ds, int d, const TreePred& keep = nullptr) {
    rules::RulePool pool([&ds](const IndexSet& region) { return rules::gen_splits_axis(ds, region); });
    IndexSet region = full_set(static_cast<size_t>(ds.n()));
    Objective obj = zero_one_objective();
    double best = kInf;
    for (const auto& t : trees::gen_dtds_depth(d, region, pool)) {
        if (keep && !keep(*t)) continue;
        best = std::min(best, evaluate(*t, ds, obj));
    }
    return best;
}

bool every_leaf_at_least(const DTree& t, size_t m) {
    if (t.is_leaf()) return t.leaf.count() >= m;
    return every_leaf_at_least(*t.left, m) && every_leaf_at_least(*t.right, m);
}

double solver_size_min(const Dataset& ds, const std::vector<rules::Rule>& rule_list,
                       const rules::AncestryMatrix& A, int K, solvers::SearchConfig cfg) {
    cfg.size_k = K;
    try {
        return solvers::odt_size(K, rule_list, A, ds, zero_one_objective(), cfg, nullptr).cost;
    } catch (const InfeasibleError&) {
        return kInf;
    }
}

double solver_depth_min(const Dataset& ds, int d, solvers::SearchConfig cfg) {
    rules::RulePool pool([&ds](const IndexSet& region) { return rules::gen_splits_axis(ds, region); });
    IndexSet region = full_set(static_cast<size_t>(ds.n()));
    cfg.depth = d;
    auto r = solvers::odt_depth(d, region, ds, pool, zero_one_objective(), cfg, nullptr);
    return r ? r->cost : kInf;
}

// Instances are kept so the fusion criterion reruns exactly the oracle sets.
struct SizeInstance {
    Dataset ds;
    std::vector<int> degrees;
};

std::vector<SizeInstance> g_size_instances;
std::vector<Dataset> g_depth_instances;

// ---- criterion bodies ----

bool c1_size_oracle(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    for (int inst = 0; inst < 50; ++inst) {
        std::vector<int> degrees = (inst % 2 == 0) ? std::vector<int>{0} : std::vector<int>{0, 1};
        SizeInstance si{random_instance(rng, 8, 2), degrees};
        auto rule_list = rules::gen_splits_mixed(si.ds, degrees);
        auto A = rules::ancestry_matrix(rule_list);
        int R = static_cast<int>(rule_list.size());
        for (int K = 0; K <= std::min(3, R); ++K) {
            double oracle = oracle_size_min(si.ds, rule_list, A, K);
            double dp = solver_size_min(si.ds, rule_list, A, K, {});
            if (oracle != dp) {
                detail = "instance " + std::to_string(inst) + " K=" + std::to_string(K) +
                         " oracle=" + std::to_string(oracle) + " solver=" + std::to_string(dp);
                return false;
            }
        }
        g_size_instances.push_back(std::move(si));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) {
        detail = "runtime " + std::to_string(secs) + "s exceeds 60s";
        return false;
    }
    detail = "50 instances, " + std::to_string(secs) + "s";
    return true;
}

bool c2_depth_oracle(std::string& detail) {
    std::mt19937_64 rng(202);
    for (int inst = 0; inst < 50; ++inst) {
        Dataset ds = random_instance(rng, 8, 2);
        for (int d = 0; d <= 2; ++d) {
            double oracle = oracle_depth_min(ds, d);
            double dp = solver_depth_min(ds, d, {});
            if (oracle != dp) {
                detail = "instance " + std::to_string(inst) + " d=" + std::to_string(d) +
                         " oracle=" + std::to_string(oracle) + " solver=" + std::to_string(dp);
                return false;
            }
        }
        g_depth_instances.push_back(std::move(ds));
    }
    return true;
}

bool c3_generator_set_equality(std::string& detail) {
    std::mt19937_64 rng(303);
    int checked = 0;
    while (checked < 20) {
        Dataset ds = random_instance(rng, 7, 2);
        auto rule_list = rules::gen_splits_axis(ds);
        auto A = rules::ancestry_matrix(rule_list);
        int R = static_cast<int>(rule_list.size());
        IndexSet region = full_set(static_cast<size_t>(ds.n()));
        for (int K = 1; K <= std::min(3, R) && checked < 20; ++K) {
            uint64_t total = combgen::comb_count(K, R);
            auto comb = combgen::comb_unrank(rng() % total, K, R);
            auto canon_set = [&](const std::vector<DTreePtr>& ts) {
                std::vector<std::string> cs;
                for (const auto& t : ts) cs.push_back(trees::tree_canon(*t));
                std::sort(cs.begin(), cs.end());
                cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
                return cs;
            };
            auto rec = canon_set(trees::gen_dts_rec_all(region, comb, A, rule_list));
            auto vec = canon_set(trees::gen_dts_vec(region, comb, A, rule_list));
            auto kp = canon_set(trees::gen_dts_kperms(region, comb, A, rule_list));
            if (rec != vec || rec != kp) {
                detail = "set mismatch on rule set " + std::to_string(checked);
                return false;
            }
            ++checked;
        }
    }
    detail = "20 rule sets";
    return true;
}

bool c4_axiom_soundness(std::string& detail) {
    std::mt19937_64 rng(404);
    uint64_t passed = 0, total = 0, mutants = 0;
    for (int inst = 0; inst < 6; ++inst) {
        Dataset ds = random_instance(rng, 7, 2);
        auto rule_list = rules::gen_splits_axis(ds);
        auto A = rules::ancestry_matrix(rule_list);
        int R = static_cast<int>(rule_list.size());
        IndexSet region = full_set(static_cast<size_t>(ds.n()));
        for (int K = 1; K <= std::min(2, R); ++K) {
            combgen::kcombs(K, R, [&](const std::vector<int>& comb) {
                std::vector<std::vector<DTreePtr>> streams = {
                    trees::gen_dts_rec_all(region, comb, A, rule_list),
                    trees::gen_dts_vec(region, comb, A, rule_list),
                    trees::gen_dts_kperms(region, comb, A, rule_list)};
                for (const auto& ts : streams)
                    for (const auto& t : ts) {
                        ++total;
                        if (trees::check_proper(*t, rule_list, A)) ++passed;
                        if (!t->is_leaf()) {
                            // flipped side: positive subtree hung under the negative edge
                            auto bad = make_node(t->right, t->rule, t->left);
                            if (trees::check_proper(*bad, rule_list, A)) {
                                detail = "flipped mutant accepted";
                                return false;
                            }
                            ++mutants;
                        }
                    }
                return true;
            });
        }
        // depth space, pool-generated rules
        rules::RulePool pool([&ds](const IndexSet& r) { return rules::gen_splits_axis(ds, r); });
        for (int d = 0; d <= 2; ++d) {
            auto ts = trees::gen_dtds_depth(d, region, pool);
            std::vector<rules::Rule> pool_rules(pool.all().begin(), pool.all().end());
            auto Ap = rules::ancestry_matrix(pool_rules);
            for (const auto& t : ts) {
                ++total;
                if (trees::check_proper(*t, pool, Ap)) ++passed;
                if (!t->is_leaf()) {
                    auto bad = make_node(t->right, t->rule, t->left);
                    if (trees::check_proper(*bad, pool, Ap)) {
                        detail = "flipped depth-space mutant accepted";
                        return false;
                    }
                    ++mutants;
                }
            }
        }
    }
    if (!detail.empty()) return false;
    detail = std::to_string(passed) + "/" + std::to_string(total) + " trees pass, " +
             std::to_string(mutants) + " mutants rejected";
    return passed == total && total > 0 && mutants > 0;
}

bool c5_counting_identities(std::string& detail) {
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            uint64_t count = 0;
            std::vector<int> prev;
            bool adjacency = true;
            combgen::kcombs(k, n, [&](const std::vector<int>& comb) {
                ++count;
                if (!prev.empty()) {
                    std::vector<int> sym;
                    std::set_symmetric_difference(prev.begin(), prev.end(), comb.begin(),
                                                  comb.end(), std::back_inserter(sym));
                    adjacency = adjacency && sym.size() == 2;
                }
                prev = comb;
                return true;
            });
            uint64_t expect = k > n ? 0 : combgen::comb_count(k, n);
            if (count != expect) {
                detail = "kcombs(" + std::to_string(k) + "," + std::to_string(n) + ") = " +
                         std::to_string(count) + " expected " + std::to_string(expect);
                return false;
            }
            if (!adjacency) {
                detail = "revolving-door adjacency broken at k=" + std::to_string(k) +
                         " n=" + std::to_string(n);
                return false;
            }
        }
    for (int N = 1; N <= 6; ++N)
        for (int G = 1; G <= 2; ++G)
            for (int K = 0; K <= 2; ++K) {
                if (G > N) continue;
                uint64_t universe = combgen::comb_count(G, N);
                uint64_t count = 0;
                combgen::nested_combs(K, G, N, [](uint64_t, const std::vector<int>&) {},
                                      [&](const std::vector<uint64_t>&) {
                                          ++count;
                                          return true;
                                      });
                uint64_t expect =
                    K > static_cast<int>(universe) ? 0 : combgen::comb_count(K, static_cast<int>(universe));
                if (count != expect) {
                    detail = "nested_combs N=" + std::to_string(N) + " G=" + std::to_string(G) +
                             " K=" + std::to_string(K);
                    return false;
                }
            }
    for (int n = 0; n <= 6; ++n) {
        std::vector<int> items(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) items[static_cast<size_t>(i)] = i;
        for (int k = 0; k <= n; ++k) {
            auto key = [](const std::vector<int>& v) {
                std::string s;
                for (int x : v) s += static_cast<char>('a' + x);
                return s;
            };
            std::vector<std::string> direct, via_combs;
            combgen::kperms(k, items, [&](const std::vector<int>& p) {
                direct.push_back(key(p));
                return true;
            });
            combgen::kcombs(k, n, [&](const std::vector<int>& comb) {
                combgen::perms(comb, [&](const std::vector<int>& p) {
                    via_combs.push_back(key(p));
                    return true;
                });
                return true;
            });
            std::sort(direct.begin(), direct.end());
            std::sort(via_combs.begin(), via_combs.end());
            if (direct != via_combs) {
                detail = "kperms multiset identity fails at n=" + std::to_string(n) +
                         " k=" + std::to_string(k);
                return false;
            }
        }
    }
    return true;
}

bool c6_geometry_theorems(std::string& detail) {
    using namespace geometry;
    // (a) separable labelings recovered by two-point fits under both orientations
    std::mt19937_64 rng(606);
    MonomialBasis b2 = monomials(2, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({static_cast<double>(rng() % 97) / 7.0,
                           static_cast<double>(rng() % 89) / 7.0});
        double a = static_cast<double>(rng() % 19) - 9.0;
        double c = static_cast<double>(rng() % 19) - 9.0;
        double off = static_cast<double>(rng() % 23) - 11.0 + 0.37;
        if (a == 0 && c == 0) a = 1;
        std::vector<int> labels;
        for (const auto& p : pts) labels.push_back(a * p[0] + c * p[1] + off >= 0 ? 1 : 0);
        Dataset ds = make_dataset(pts, labels);
        IndexSet cls0(static_cast<size_t>(n)), cls1(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            (ds.labels[static_cast<size_t>(i)] == 0 ? cls0 : cls1).set(static_cast<size_t>(i));
        bool separated = false;
        combgen::kcombs(2, n, [&](const std::vector<int>& comb) {
            Hypersurface h;
            try {
                h = fit_hypersurface(comb, ds, b2);
            } catch (const DegenerateCombination&) {
                return true;
            }
            for (int flip = 0; flip < 2; ++flip) {
                Hypersurface hh = h;
                if (flip)
                    for (double& w : hh.normal) w = -w;
                auto [pos, neg] = assign_sides(hh, b2, ds);
                if (pos == cls0 || pos == cls1) separated = true;
            }
            return !separated;
        });
        if (!separated) {
            detail = "(a) trial " + std::to_string(trial) + " not separated";
            return false;
        }
    }
    // (b) a degree-2 surface through two points separates the 1-D parabola
    // labeling at cost 0. Orientation matters: on-surface points are glued to
    // the positive side, so only x^2 - 1 >= 0 realizes {P} vs {Q}.
    {
        Dataset ds = make_dataset({{-1.0}, {0.0}, {1.0}}, std::vector<std::string>{"P", "Q", "P"});
        MonomialBasis quad = monomials(1, 2);
        IndexSet cls_p(3);
        cls_p.set(0);
        cls_p.set(2);
        bool hit = false;
        combgen::kcombs(2, 3, [&](const std::vector<int>& comb) {
            Hypersurface h;
            try {
                h = fit_hypersurface(comb, ds, quad);
            } catch (const DegenerateCombination&) {
                return true;
            }
            for (int flip = 0; flip < 2; ++flip) {
                Hypersurface hh = h;
                if (flip)
                    for (double& w : hh.normal) w = -w;
                auto [pos, neg] = assign_sides(hh, quad, ds);
                if (pos == cls_p) hit = true;
            }
            return !hit;
        });
        if (!hit) {
            detail = "(b) no degree-2 two-point fit separates the parabola labeling";
            return false;
        }
    }
    // (c) fitting in the original space and in the explicitly embedded space
    // assigns identical sides: the embedded fit matrix is the same matrix
    for (int inst = 0; inst < 10; ++inst) {
        int n = 6 + static_cast<int>(rng() % 3);
        int dim = 1 + static_cast<int>(rng() % 2);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < n; ++i) {
            std::vector<double> p;
            for (int j = 0; j < dim; ++j)
                p.push_back(static_cast<double>(rng() % 997) / 31.0);
            pts.push_back(p);
        }
        Dataset ds = make_dataset(pts, std::vector<int>(static_cast<size_t>(n), 0));
        MonomialBasis basis = monomials(dim, 2);
        int G = basis.g();
        if (G > n) continue;
        MonomialBasis lin = monomials(G, 1);
        std::vector<std::vector<double>> emb;
        for (const auto& p : pts) {
            auto y = veronese_embed(p, basis);
            emb.emplace_back(y.begin() + 1, y.end());
        }
        Dataset ds_emb = make_dataset(emb, std::vector<int>(static_cast<size_t>(n), 0));
        bool compared = false;
        combgen::kcombs(G, n, [&](const std::vector<int>& comb) {
            Hypersurface ho, he;
            try {
                ho = fit_hypersurface(comb, ds, basis);
                he = fit_hypersurface(comb, ds_emb, lin);
            } catch (const DegenerateCombination&) {
                return true;
            }
            auto so = assign_sides(ho, basis, ds);
            auto se = assign_sides(he, lin, ds_emb);
            if (so != se) {
                detail = "(c) side assignments disagree on instance " + std::to_string(inst);
                return false;
            }
            compared = true;
            return !compared;
        });
        if (!detail.empty()) return false;
        if (!compared) {
            detail = "(c) no non-degenerate combination on instance " + std::to_string(inst);
            return false;
        }
    }
    return true;
}

bool c7_cover_count(std::string& detail) {
    for (int D = 1; D <= 6; ++D)
        for (int N = 1; N <= D + 1; ++N) {
            uint64_t got = geometry::cover_count(N, D);
            uint64_t expect = 1ull << N;
            if (got != expect) {
                detail = "cover_count(" + std::to_string(N) + "," + std::to_string(D) + ") = " +
                         std::to_string(got) + " expected 2^N = " + std::to_string(expect);
                return false;
            }
        }
    if (geometry::cover_count(4, 2) != 14) {
        detail = "cover_count(4,2) = " + std::to_string(geometry::cover_count(4, 2));
        return false;
    }
    return true;
}

bool c8_fusion_preservation(std::string& detail) {
    if (g_size_instances.empty() || g_depth_instances.empty()) {
        detail = "criteria 1-2 instance sets unavailable";
        return false;
    }
    Objective obj = zero_one_objective();
    TreePred filt = [](const DTree& t) {
        return every_leaf_at_least(t, 2) && tree_depth(t) <= 2;
    };
    for (size_t i = 0; i < g_size_instances.size(); ++i) {
        const auto& [ds, degrees] = g_size_instances[i];
        auto rule_list = rules::gen_splits_mixed(ds, degrees);
        auto A = rules::ancestry_matrix(rule_list);
        int R = static_cast<int>(rule_list.size());
        for (int K = 0; K <= std::min(3, R); ++K) {
            double plain = solver_size_min(ds, rule_list, A, K, {});
            solvers::SearchConfig gub;
            gub.thin = solvers::ThinMode::Gub;
            if (solver_size_min(ds, rule_list, A, K, gub) != plain) {
                detail = "size gub mismatch, instance " + std::to_string(i) + " K=" + std::to_string(K);
                return false;
            }
            solvers::SearchConfig fused;
            fused.min_leaf = 2;
            fused.max_depth = 2;
            double fused_cost = solver_size_min(ds, rule_list, A, K, fused);
            double filtered = oracle_size_min(ds, rule_list, A, K, filt);
            if (fused_cost != filtered) {
                detail = "size filter mismatch, instance " + std::to_string(i) +
                         " K=" + std::to_string(K);
                return false;
            }
        }
    }
    for (size_t i = 0; i < g_depth_instances.size(); ++i) {
        const Dataset& ds = g_depth_instances[i];
        for (int d = 0; d <= 2; ++d) {
            double plain = solver_depth_min(ds, d, {});
            solvers::SearchConfig gub;
            gub.thin = solvers::ThinMode::Gub;
            if (solver_depth_min(ds, d, gub) != plain) {
                detail = "depth gub mismatch, instance " + std::to_string(i) + " d=" + std::to_string(d);
                return false;
            }
            solvers::SearchConfig fused;
            fused.min_leaf = 2;
            double fused_cost = solver_depth_min(ds, d, fused);
            double filtered = oracle_depth_min(ds, d, [](const DTree& t) {
                return every_leaf_at_least(t, 2);
            });
            if (fused_cost != filtered) {
                detail = "depth filter mismatch, instance " + std::to_string(i) +
                         " d=" + std::to_string(d);
                return false;
            }
        }
    }
    return true;
}

bool c9_monotonicity_counterexample(std::string& detail) {
    Objective obj = zero_one_objective();
    // frozen counterexample: two equal-cost trees over {x>=8, y>=9} whose
    // order flips after inserting x>=7
    {
        Dataset ds = make_dataset({{8, 9}, {8, 1}, {5, 3}, {4, 0}, {7, 9}},
                                  std::vector<int>{1, 0, 1, 1, 2});
        auto rule_list = rules::gen_splits_axis(ds);
        auto A = rules::ancestry_matrix(rule_list);
        auto find_rule = [&](int dim, double thr) {
            for (const auto& r : rule_list)
                if (r.axis_dim == dim && r.threshold == thr) return r.id;
            return -1;
        };
        int rx8 = find_rule(0, 8), ry9 = find_rule(1, 9), rx7 = find_rule(0, 7);
        if (rx8 < 0 || ry9 < 0 || rx7 < 0) {
            detail = "frozen instance rules missing";
            return false;
        }
        IndexSet region = full_set(5);
        auto ts = trees::gen_dts_rec_all(region, {rx8, ry9}, A, rule_list);
        DTreePtr t, tp;
        for (const auto& cand : ts) {
            if (cand->rule == ry9 && !cand->left->is_leaf()) t = cand;
            if (cand->rule == rx8 && !cand->left->is_leaf()) tp = cand;
        }
        if (!t || !tp) {
            detail = "frozen instance trees missing";
            return false;
        }
        auto u = trees::update(rx7, t, A, rule_list);
        auto up = trees::update(rx7, tp, A, rule_list);
        if (!u || !up) {
            detail = "frozen instance updates infeasible";
            return false;
        }
        bool flips = evaluate(*t, ds, obj) <= evaluate(*tp, ds, obj) &&
                     evaluate(*u, ds, obj) > evaluate(*up, ds, obj);
        if (!flips) {
            detail = "frozen instance no longer a counterexample";
            return false;
        }
    }
    // randomized search must also find one on its own
    std::mt19937_64 rng(424242);
    for (int inst = 0; inst < 200; ++inst) {
        Dataset ds = random_instance(rng, 8, 2);
        auto rule_list = rules::gen_splits_axis(ds);
        auto A = rules::ancestry_matrix(rule_list);
        int R = static_cast<int>(rule_list.size());
        IndexSet region = full_set(static_cast<size_t>(ds.n()));
        bool found = false;
        combgen::kcombs(2, R, [&](const std::vector<int>& comb) {
            auto ts = trees::gen_dts_rec_all(region, comb, A, rule_list);
            for (size_t a = 0; a < ts.size() && !found; ++a)
                for (size_t b = 0; b < ts.size() && !found; ++b) {
                    if (a == b) continue;
                    if (evaluate(*ts[a], ds, obj) > evaluate(*ts[b], ds, obj)) continue;
                    for (int r = 0; r < R && !found; ++r) {
                        if (r == comb[0] || r == comb[1]) continue;
                        auto ua = trees::update(r, ts[a], A, rule_list);
                        auto ub = trees::update(r, ts[b], A, rule_list);
                        if (!ua || !ub) continue;
                        found = evaluate(*ua, ds, obj) > evaluate(*ub, ds, obj);
                    }
                }
            return !found;
        });
        if (found) {
            detail = "search found a counterexample at instance " + std::to_string(inst);
            return true;
        }
    }
    detail = "search exhausted 200 instances without a counterexample";
    return false;
}

bool c10_kmeans(std::string& detail) {
    std::mt19937_64 rng(1010);
    // oracle: every set partition via restricted growth strings, min SSE per
    // block count; 1-D contiguity then has nothing left to hide
    for (int trial = 0; trial < 4; ++trial) {
        int n = 5 + static_cast<int>(rng() % 4);
        std::vector<double> ys;
        for (int i = 0; i < n; ++i) ys.push_back(static_cast<double>(rng() % 100) / 9.0);
        std::vector<double> best(static_cast<size_t>(n) + 1, kInf);
        std::vector<int> rgs(static_cast<size_t>(n), 0);
        std::function<void(int, int)> walk = [&](int i, int maxb) {
            if (i == n) {
                int blocks = maxb + 1;
                std::vector<double> sum(static_cast<size_t>(blocks), 0), cnt(static_cast<size_t>(blocks), 0);
                for (int j = 0; j < n; ++j) {
                    sum[static_cast<size_t>(rgs[static_cast<size_t>(j)])] += ys[static_cast<size_t>(j)];
                    cnt[static_cast<size_t>(rgs[static_cast<size_t>(j)])] += 1;
                }
                double sse = 0;
                for (int j = 0; j < n; ++j) {
                    double mu = sum[static_cast<size_t>(rgs[static_cast<size_t>(j)])] /
                                cnt[static_cast<size_t>(rgs[static_cast<size_t>(j)])];
                    sse += (ys[static_cast<size_t>(j)] - mu) * (ys[static_cast<size_t>(j)] - mu);
                }
                best[static_cast<size_t>(blocks)] = std::min(best[static_cast<size_t>(blocks)], sse);
                return;
            }
            for (int b = 0; b <= maxb + 1; ++b) {
                rgs[static_cast<size_t>(i)] = b;
                walk(i + 1, std::max(maxb, b));
            }
        };
        walk(0, -1);
        for (int k = 1; k <= n; ++k) {
            double fast = solvers::kmeans_1d(k, ys);
            if (std::abs(fast - best[static_cast<size_t>(k)]) > 1e-9) {
                detail = "kmeans_1d(k=" + std::to_string(k) + ") = " + std::to_string(fast) +
                         " oracle " + std::to_string(best[static_cast<size_t>(k)]);
                return false;
            }
        }
    }
    // regression SSE of a size-K tree is bounded below by k-means with K+1 clusters
    Objective l2 = squared_loss_objective();
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng() % 5);
        int dim = 1 + static_cast<int>(rng() % 2);
        std::vector<std::vector<double>> pts;
        std::vector<double> targets;
        for (int i = 0; i < n; ++i) {
            std::vector<double> p;
            for (int j = 0; j < dim; ++j) p.push_back(static_cast<double>(rng() % 10));
            pts.push_back(p);
            targets.push_back(static_cast<double>(rng() % 50) / 3.0);
        }
        Dataset ds = make_dataset_regression(pts, targets);
        auto rule_list = rules::gen_splits_axis(ds);
        auto A = rules::ancestry_matrix(rule_list);
        int K = 1 + static_cast<int>(rng() % 2);
        if (static_cast<int>(rule_list.size()) < K) continue;
        solvers::SearchConfig cfg;
        cfg.size_k = K;
        double cost;
        try {
            cost = solvers::odt_size(K, rule_list, A, ds, l2, cfg, nullptr).cost;
        } catch (const InfeasibleError&) {
            continue;
        }
        double bound = solvers::kmeans_1d(std::min(K + 1, n), targets);
        if (cost < bound - 1e-9) {
            detail = "trial " + std::to_string(trial) + " SSE " + std::to_string(cost) +
                     " below kmeans bound " + std::to_string(bound);
            return false;
        }
    }
    return true;
}

bool c11_census_bound(std::string& detail) {
    std::mt19937_64 rng(1111);
    for (int inst = 0; inst < 10; ++inst) {
        Dataset ds = random_instance(rng, 7, 2);
        int d = 1 + static_cast<int>(rng() % 2);
        rules::RulePool pool([&ds](const IndexSet& r) { return rules::gen_splits_axis(ds, r); });
        analysis::BigInt census = analysis::census_depth_trees(ds, d, pool);
        analysis::BigInt lb = analysis::depth_lb(ds, d);
        if (census < lb) {
            detail = "instance " + std::to_string(inst) + " census " + census.get_str() +
                     " below bound " + lb.get_str();
            return false;
        }
    }
    return true;
}

bool c12_determinism(std::string& detail) {
#ifndef ODT_CLI_PATH
    detail = "CLI path not compiled in";
    return false;
#else
    char tmpl[] = "/tmp/odt_accept_XXXXXX";
    char* dirc = mkdtemp(tmpl);
    if (!dirc) {
        detail = "mkdtemp failed";
        return false;
    }
    std::string dir = dirc;
    {
        std::ofstream csv(dir + "/data.csv");
        csv << "x,y,label\n";
        std::mt19937_64 rng(1212);
        for (int i = 0; i < 8; ++i)
            csv << rng() % 10 << "," << rng() % 10 << "," << (rng() % 2 ? "A" : "B") << "\n";
    }
    auto run = [&](const std::string& args) {
        std::string cmd = std::string(ODT_CLI_PATH) + " " + args + " >" + dir + "/log 2>&1";
        int status = std::system(cmd.c_str());
        return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    std::string base = "fit --data " + dir + "/data.csv --size 2 ";
    if (!run(base + "--workers 1 --out " + dir + "/a") ||
        !run(base + "--workers 1 --out " + dir + "/b") ||
        !run(base + "--workers 4 --out " + dir + "/c")) {
        detail = "fit run failed, see " + dir + "/log";
        return false;
    }
    std::string a = slurp(dir + "/a/tree.json");
    if (a.empty() || a != slurp(dir + "/b/tree.json") || a != slurp(dir + "/c/tree.json")) {
        detail = "tree.json differs across runs";
        return false;
    }
    return true;
#endif
}

bool c13_memo_report(std::string& detail) {
    std::mt19937_64 rng(1313);
    std::ostringstream report;
    bool counters = true;
    for (int inst = 0; inst < 5; ++inst) {
        int n = 5 + static_cast<int>(rng() % 3);
        std::vector<std::vector<double>> pts;
        std::vector<int> labels;
        for (int i = 0; i < n; ++i) {
            pts.push_back({static_cast<double>(rng() % 50) / 3.0,
                           static_cast<double>(rng() % 50) / 3.0});
            labels.push_back(static_cast<int>(rng() % 2));
        }
        Dataset ds = make_dataset(pts, labels);
        auto rule_list = rules::gen_splits_mixed(ds, {1});
        auto A = rules::ancestry_matrix(rule_list);
        if (static_cast<int>(rule_list.size()) < 2) continue;
        solvers::SearchConfig cfg;
        cfg.size_k = 2;
        cfg.memo = true;
        solvers::SolveStats stats;
        try {
            solvers::odt_size(2, rule_list, A, ds, zero_one_objective(), cfg, &stats);
        } catch (const InfeasibleError&) {
            continue;
        }
        uint64_t lookups = stats.memo_hits + stats.memo_misses;
        double rate = lookups ? static_cast<double>(stats.memo_hits) / static_cast<double>(lookups) : 0.0;
        report << "  memo instance " << inst << ": rules=" << rule_list.size()
               << " hits=" << stats.memo_hits << " misses=" << stats.memo_misses
               << " hit_rate=" << rate << "\n";
        counters = counters && lookups > 0;
    }
    std::string lines = report.str();
    if (lines.empty()) {
        detail = "no hyperplane instance produced a report";
        return false;
    }
    std::cout << lines;
    return counters;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        std::function<bool(std::string&)> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "size solver matches enumeration", c1_size_oracle},
        {2, "depth solver matches enumeration", c2_depth_oracle},
        {3, "generator canon sets coincide", c3_generator_set_equality},
        {4, "axiom checker sound on all generators", c4_axiom_soundness},
        {5, "counting identities", c5_counting_identities},
        {6, "geometry theorems at desk scale", c6_geometry_theorems},
        {7, "separable dichotomy count", c7_cover_count},
        {8, "fusion and thinning preserve optima", c8_fusion_preservation},
        {9, "sequential update is not monotone", c9_monotonicity_counterexample},
        {10, "kmeans_1d exact and bounds regression trees", c10_kmeans},
        {11, "depth census meets its lower bound", c11_census_bound},
        {12, "worker count never changes output", c12_determinism},
        {13, "memo hit rate reported", c13_memo_report},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        std::cout << "CRITERION " << c.number << " (" << c.name << "): "
                  << (ok ? "PASS" : "FAIL") << (detail.empty() ? "" : " [" + detail + "]")
                  << std::endl;
        if (!ok) ++failed;
    }
    return failed ? 1 : 0;
}
