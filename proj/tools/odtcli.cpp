// Command-line surface: fit, verify, census, bench.
// Exit codes: 0 success, 1 usage or parse error, 2 infeasible constraints or
// refused budget, 3 internal contract violation.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "odt/analysis.hpp"
#include "odt/combgen.hpp"
#include "odt/core.hpp"
#include "odt/export.hpp"
#include "odt/geometry.hpp"
#include "odt/rules.hpp"
#include "odt/solvers.hpp"
#include "odt/trees.hpp"

using namespace odt;
using nlohmann::ordered_json;

namespace {

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

struct RuleFlags {
    bool axis = false;
    int degree = -1;
    std::string mixed;
};

std::vector<int> resolve_degrees(const RuleFlags& f) {
    int chosen = (f.axis ? 1 : 0) + (f.degree >= 0 ? 1 : 0) + (f.mixed.empty() ? 0 : 1);
    if (chosen > 1) throw std::invalid_argument("choose exactly one of --axis, --degree, --mixed");
    if (chosen == 0 || f.axis) return {0};
    if (f.degree >= 0) return {f.degree};
    std::vector<int> out;
    std::stringstream ss(f.mixed);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("--mixed: bad degree '" + tok + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("--mixed: empty degree list");
    return out;
}

solvers::ThinMode parse_thin(const std::string& s) {
    if (s == "off") return solvers::ThinMode::Off;
    if (s == "gub") return solvers::ThinMode::Gub;
    if (s == "similarity") return solvers::ThinMode::Similarity;
    if (s == "kmeans") return solvers::ThinMode::Kmeans;
    throw std::invalid_argument("--thin: expected off|gub|similarity|kmeans");
}

Objective parse_objective(const std::string& s, const Dataset& ds) {
    if (s == "zeroone") return zero_one_objective();
    if (s == "l2") {
        if (ds.targets.empty())
            throw std::invalid_argument("--objective l2 requires a numeric label column");
        return squared_loss_objective();
    }
    throw std::invalid_argument("--objective: expected zeroone|l2");
}

rules::RulePool make_pool(const Dataset& ds, std::vector<int> degrees, bool strict) {
    return rules::RulePool([&ds, degrees, strict](const IndexSet& region) {
        return rules::gen_splits_mixed(ds, degrees, region, strict);
    });
}

std::string thin_name(solvers::ThinMode m) {
    switch (m) {
        case solvers::ThinMode::Off: return "off";
        case solvers::ThinMode::Gub: return "gub";
        case solvers::ThinMode::Similarity: return "similarity";
        case solvers::ThinMode::Kmeans: return "kmeans";
    }
    return "off";
}

// ---- fit ----

struct FitArgs {
    std::string data, label_col, out_dir = ".", thin = "off", objective = "zeroone";
    RuleFlags rule_flags;
    int size_k = -1, depth = -1, min_leaf = 0, max_depth = -1, max_size = -1, workers = 1;
    uint64_t seed = 0;
    bool strict_geometry = false, memo = false;
};

int run_fit(const FitArgs& a) {
    if ((a.size_k >= 0) + (a.depth >= 0) != 1)
        throw std::invalid_argument("choose exactly one of --size K or --depth d");
    Dataset ds = load_dataset(a.data, a.label_col);
    std::vector<int> degrees = resolve_degrees(a.rule_flags);
    Objective obj = parse_objective(a.objective, ds);

    solvers::SearchConfig cfg;
    cfg.size_k = a.size_k;
    cfg.depth = a.depth;
    cfg.min_leaf = a.min_leaf;
    cfg.max_depth = a.max_depth;
    cfg.max_size = a.max_size;
    cfg.thin = parse_thin(a.thin);
    cfg.workers = a.workers;
    cfg.memo = a.memo;

    solvers::SolveStats stats;
    double t0 = now_ms();
    solvers::Scored result;
    std::string solver_name;
    std::vector<rules::Rule> rule_list;
    rules::RulePool pool = make_pool(ds, degrees, a.strict_geometry);
    if (a.size_k >= 0) {
        solver_name = "odt_size";
        uint64_t skipped = 0;
        rule_list = rules::gen_splits_mixed(ds, degrees, a.strict_geometry, &skipped);
        auto A = rules::ancestry_matrix(rule_list);
        result = solvers::odt_size(a.size_k, rule_list, A, ds, obj, cfg, &stats);
    } else {
        solver_name = "odt_depth";
        auto opt = solvers::odt_depth(a.depth, full_set(static_cast<size_t>(ds.n())), ds, pool,
                                      obj, cfg, &stats);
        if (!opt) throw InfeasibleError("no feasible tree");
        result = *opt;
    }
    double wall_ms = now_ms() - t0;

    trees::RuleAt rule_at;
    if (a.size_k >= 0)
        rule_at = [&rule_list](int i) -> const rules::Rule& { return rule_list[static_cast<size_t>(i)]; };
    else
        rule_at = [&pool](int i) -> const rules::Rule& { return pool.rule(i); };

    std::filesystem::create_directories(a.out_dir);
    std::string tree_json_path = a.out_dir + "/tree.json";
    std::string tree_dot_path = a.out_dir + "/tree.dot";
    std::string manifest_path = a.out_dir + "/manifest.json";

    ordered_json tj = io::tree_to_json(*result.tree, rule_at, ds);
    io::write_text_file(tree_json_path, tj.dump(2) + "\n");
    io::write_text_file(tree_dot_path, io::tree_to_dot(*result.tree, rule_at, ds));

    std::ostringstream hash_hex;
    hash_hex << std::hex << std::setw(16) << std::setfill('0') << io::file_hash(a.data);
    ordered_json manifest;
    manifest["dataset"] = {{"path", a.data}, {"fnv1a64", hash_hex.str()}};
    ordered_json cfg_json;
    cfg_json["mode"] = a.size_k >= 0 ? "size" : "depth";
    if (a.size_k >= 0)
        cfg_json["size"] = a.size_k;
    else
        cfg_json["depth"] = a.depth;
    cfg_json["degrees"] = degrees;
    cfg_json["min_leaf"] = a.min_leaf;
    cfg_json["max_depth"] = a.max_depth;
    cfg_json["max_size"] = a.max_size;
    cfg_json["thin"] = thin_name(cfg.thin);
    cfg_json["objective"] = a.objective;
    cfg_json["workers"] = a.workers;
    cfg_json["seed"] = a.seed;
    cfg_json["strict_geometry"] = a.strict_geometry;
    cfg_json["memo"] = a.memo;
    manifest["config"] = cfg_json;
    manifest["solver"] = solver_name;
    manifest["objective"] = result.cost;
    manifest["wall_ms"] = wall_ms;
    manifest["outputs"] = {{"tree_json", tree_json_path}, {"tree_dot", tree_dot_path}};
    manifest["stats"] = {{"memo_hits", stats.memo_hits},
                         {"memo_misses", stats.memo_misses},
                         {"pruned", stats.pruned},
                         {"combos_total", stats.combos_total},
                         {"combos_solved", stats.combos_solved}};
    io::write_text_file(manifest_path, manifest.dump(2) + "\n");

    std::cout << "objective " << result.cost << "\n";
    std::cout << "wall_ms " << wall_ms << "\n";
    std::cout << "wrote " << tree_json_path << " " << tree_dot_path << " " << manifest_path << "\n";
    return 0;
}

// ---- verify ----

struct VerifyArgs {
    uint64_t seed = 0;
    int instances = 50;
    int max_n = 8;
    int max_dim = 2;
    int max_k = 3;
    int max_depth = 2;
};

Dataset random_instance(std::mt19937_64& rng, int max_n, int max_dim) {
    int n = 3 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, max_n - 2)));
    int dim = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_dim));
    int classes = (rng() % 4 == 0) ? 3 : 2;
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
        std::vector<double> p;
        for (int j = 0; j < dim; ++j) p.push_back(static_cast<double>(rng() % 10));
        points.push_back(std::move(p));
        labels.push_back(static_cast<int>(rng() % static_cast<uint64_t>(classes)));
    }
    return make_dataset(std::move(points), std::move(labels));
}

void dump_repro_csv(const Dataset& ds, const std::string& path) {
    std::ostringstream out;
    for (int j = 0; j < ds.d(); ++j) out << "x" << j << ",";
    out << "label\n";
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = 0; j < ds.d(); ++j) out << ds.points[static_cast<size_t>(i)][static_cast<size_t>(j)] << ",";
        out << ds.label_names[static_cast<size_t>(ds.labels[static_cast<size_t>(i)])] << "\n";
    }
    io::write_text_file(path, out.str());
}

int run_verify(const VerifyArgs& a) {
    const char* fault_env = std::getenv("ODT_VERIFY_FAULT");
    bool fault = fault_env && std::string(fault_env) != "" && std::string(fault_env) != "0";
    std::mt19937_64 rng(a.seed);
    Objective obj = zero_one_objective();
    for (int inst = 0; inst < a.instances; ++inst) {
        Dataset ds = random_instance(rng, a.max_n, a.max_dim);
        IndexSet region = full_set(static_cast<size_t>(ds.n()));
        auto rule_list = rules::gen_splits_axis(ds);
        auto A = rules::ancestry_matrix(rule_list);
        int R = static_cast<int>(rule_list.size());

        auto mismatch = [&](const std::string& what, double oracle, double dp) {
            std::string csv = "verify_fail.csv";
            dump_repro_csv(ds, csv);
            std::cout << "MISMATCH instance=" << inst << " " << what << " oracle=" << oracle
                      << " solver=" << dp << " repro=" << csv << "\n";
            return 3;
        };

        // size-constrained: solver vs full enumeration
        for (int K = 0; K <= std::min(a.max_k, R); ++K) {
            bool oracle_any = false;
            double oracle_best = 0;
            combgen::kcombs(K, R, [&](const std::vector<int>& comb) {
                for (const auto& t : trees::gen_dts_rec_all(region, comb, A, rule_list)) {
                    double c = evaluate(*t, ds, obj);
                    if (!oracle_any || c < oracle_best) {
                        oracle_any = true;
                        oracle_best = c;
                    }
                }
                return true;
            });
            solvers::SearchConfig cfg;
            cfg.size_k = K;
            cfg.workers = 1;
            bool dp_any = true;
            double dp_best = 0;
            try {
                dp_best = solvers::odt_size(K, rule_list, A, ds, obj, cfg, nullptr).cost;
            } catch (const InfeasibleError&) {
                dp_any = false;
            }
            if (fault && dp_any) dp_best += 1.0;
            if (dp_any != oracle_any)
                return mismatch("size K=" + std::to_string(K) + " feasibility",
                                oracle_any ? oracle_best : -1, dp_any ? dp_best : -1);
            if (dp_any && dp_best != oracle_best)
                return mismatch("size K=" + std::to_string(K), oracle_best, dp_best);
            if (dp_any) {
                cfg.thin = solvers::ThinMode::Gub;
                double thinned = solvers::odt_size(K, rule_list, A, ds, obj, cfg, nullptr).cost;
                if (thinned != oracle_best)
                    return mismatch("size K=" + std::to_string(K) + " gub", oracle_best, thinned);
            }
        }

        // depth-constrained: solver vs full enumeration over regenerated rules
        for (int d = 0; d <= a.max_depth; ++d) {
            rules::RulePool oracle_pool = make_pool(ds, {0}, false);
            bool oracle_any = false;
            double oracle_best = 0;
            for (const auto& t : trees::gen_dtds_depth(d, region, oracle_pool)) {
                double c = evaluate(*t, ds, obj);
                if (!oracle_any || c < oracle_best) {
                    oracle_any = true;
                    oracle_best = c;
                }
            }
            rules::RulePool pool = make_pool(ds, {0}, false);
            solvers::SearchConfig cfg;
            cfg.depth = d;
            auto dp = solvers::odt_depth(d, region, ds, pool, obj, cfg, nullptr);
            double dp_best = dp ? dp->cost : 0;
            if (fault && dp) dp_best += 1.0;
            if (dp.has_value() != oracle_any)
                return mismatch("depth d=" + std::to_string(d) + " feasibility",
                                oracle_any ? oracle_best : -1, dp ? dp_best : -1);
            if (dp && dp_best != oracle_best)
                return mismatch("depth d=" + std::to_string(d), oracle_best, dp_best);
            if (dp) {
                rules::RulePool pool2 = make_pool(ds, {0}, false);
                cfg.thin = solvers::ThinMode::Gub;
                auto thinned = solvers::odt_depth(d, region, ds, pool2, obj, cfg, nullptr);
                if (!thinned || thinned->cost != oracle_best)
                    return mismatch("depth d=" + std::to_string(d) + " gub", oracle_best,
                                    thinned ? thinned->cost : -1);
            }
        }
        std::cout << "instance " << inst << ": ok (n=" << ds.n() << " d=" << ds.d()
                  << " rules=" << R << ")\n";
    }
    std::cout << "verify: " << a.instances << " instances passed\n";
    return 0;
}

// ---- census ----

struct CensusArgs {
    std::string data, label_col, probe_count;
    RuleFlags rule_flags;
    int size_k = -1, depth = -1;
    uint64_t budget = analysis::kDefaultCensusBudget;
};

int run_census(const CensusArgs& a) {
    if ((a.size_k >= 0) + (a.depth >= 0) != 1)
        throw std::invalid_argument("choose exactly one of --size K or --depth d");
    Dataset ds = load_dataset(a.data, a.label_col);
    std::vector<int> degrees = resolve_degrees(a.rule_flags);
    bool has_axis = false;
    for (int M : degrees) has_axis = has_axis || M == 0;

    std::vector<analysis::ReportRow> rows;
    rows.push_back({"N", std::to_string(ds.n())});
    rows.push_back({"D", std::to_string(ds.d())});
    bool refused = false, measured = false;
    analysis::BigInt census = 0;
    // Best provable lower bound on the space being counted. The measured
    // census is exact; C(#axis rules, d) holds for any depth-d space whose
    // rule groups include the axis group. Size mode has no cheap bound.
    analysis::BigInt lb = 0;
    bool have_lb = false;
    if (a.size_k >= 0) {
        rows.push_back({"K", std::to_string(a.size_k)});
        auto rule_list = rules::gen_splits_mixed(ds, degrees);
        auto A = rules::ancestry_matrix(rule_list);
        rows.push_back({"rules", std::to_string(rule_list.size())});
        if (static_cast<int>(rule_list.size()) < a.size_k) {
            rows.push_back({"census_size_trees", "infeasible(K > rules)"});
        } else {
            try {
                census = analysis::census_size_trees(rule_list, A, a.size_k, a.budget);
                rows.push_back({"census_size_trees", census.get_str()});
                measured = true;
            } catch (const BudgetError&) {
                refused = true;
                rows.push_back({"census_size_trees", "refused(budget)"});
            }
        }
    } else {
        rows.push_back({"d", std::to_string(a.depth)});
        rules::RulePool pool = make_pool(ds, degrees, false);
        try {
            census = analysis::census_depth_trees(ds, a.depth, pool, a.budget);
            rows.push_back({"census_depth_trees", census.get_str()});
            measured = true;
        } catch (const BudgetError&) {
            refused = true;
            rows.push_back({"census_depth_trees", "refused(budget)"});
        }
        if (has_axis) {
            lb = analysis::depth_lb(ds, a.depth);
            have_lb = true;
            rows.push_back({"depth_lb", lb.get_str()});
        }
    }
    try {
        rows.push_back({"cover_count", std::to_string(geometry::cover_count(ds.n(), ds.d()))});
    } catch (const std::overflow_error&) {
        rows.push_back({"cover_count", "overflow"});
    }
    std::cout << analysis::report_tsv(rows);
    if (measured && have_lb) std::cout << analysis::probe_verdict(census, lb) << "\n";
    if (!a.probe_count.empty()) {
        analysis::BigInt external(a.probe_count);
        analysis::BigInt probe_lb = measured ? census : lb;
        std::cout << "probe: " << analysis::probe_verdict(external, probe_lb) << "\n";
    }
    if (refused) std::cout << "partial: census refused past budget " << a.budget << "\n";
    return 0;
}

// ---- bench ----

struct BenchArgs {
    std::string data, label_col, objective = "zeroone";
    RuleFlags rule_flags;
    int size_k = 2, depth = 2, repeat = 3;
};

int run_bench(const BenchArgs& a) {
    Dataset ds = load_dataset(a.data, a.label_col);
    std::vector<int> degrees = resolve_degrees(a.rule_flags);
    Objective obj = parse_objective(a.objective, ds);
    auto rule_list = rules::gen_splits_mixed(ds, degrees);
    auto A = rules::ancestry_matrix(rule_list);
    int R = static_cast<int>(rule_list.size());
    int K = std::min(a.size_k, R);
    IndexSet region = full_set(static_cast<size_t>(ds.n()));
    std::cout << "name\twall_ms\tresult\n";

    auto bench_row = [&](const std::string& name, auto&& fn) {
        double best_ms = 0;
        std::string result;
        for (int r = 0; r < a.repeat; ++r) {
            double t0 = now_ms();
            result = fn();
            double ms = now_ms() - t0;
            if (r == 0 || ms < best_ms) best_ms = ms;
        }
        std::cout << name << "\t" << best_ms << "\t" << result << "\n";
    };

    bench_row("gen_dts_rec", [&] {
        uint64_t trees = 0;
        combgen::kcombs(K, R, [&](const std::vector<int>& comb) {
            trees += trees::gen_dts_rec_all(region, comb, A, rule_list).size();
            return true;
        });
        return std::to_string(trees);
    });
    bench_row("gen_dts_vec", [&] {
        uint64_t trees = 0;
        combgen::kcombs(K, R, [&](const std::vector<int>& comb) {
            trees += trees::gen_dts_vec(region, comb, A, rule_list).size();
            return true;
        });
        return std::to_string(trees);
    });
    bench_row("gen_dts_kperms", [&] {
        uint64_t trees = 0;
        combgen::kcombs(K, R, [&](const std::vector<int>& comb) {
            trees += trees::gen_dts_kperms(region, comb, A, rule_list).size();
            return true;
        });
        return std::to_string(trees);
    });

    std::vector<solvers::ThinMode> modes = {solvers::ThinMode::Off, solvers::ThinMode::Gub};
    if (obj.label == "l2") modes.push_back(solvers::ThinMode::Kmeans);
    for (auto mode : modes) {
        bench_row("odt_size+" + thin_name(mode), [&] {
            solvers::SearchConfig cfg;
            cfg.size_k = K;
            cfg.thin = mode;
            try {
                return std::to_string(solvers::odt_size(K, rule_list, A, ds, obj, cfg).cost);
            } catch (const InfeasibleError&) {
                return std::string("infeasible");
            }
        });
    }
    for (auto mode : {solvers::ThinMode::Off, solvers::ThinMode::Gub}) {
        bench_row("odt_depth+" + thin_name(mode), [&] {
            rules::RulePool pool = make_pool(ds, degrees, false);
            solvers::SearchConfig cfg;
            cfg.depth = a.depth;
            cfg.thin = mode;
            auto r = solvers::odt_depth(a.depth, region, ds, pool, obj, cfg);
            return r ? std::to_string(r->cost) : std::string("infeasible");
        });
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"provably optimal decision trees over proper splitting rules"};
    app.require_subcommand(1);

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "fit an optimal tree and export it");
    fit_cmd->add_option("--data", fit.data, "input CSV")->required();
    fit_cmd->add_option("--label-col", fit.label_col, "label column name (default: last)");
    fit_cmd->add_option("--size", fit.size_k, "exact internal node count K");
    fit_cmd->add_option("--depth", fit.depth, "tree depth d");
    fit_cmd->add_flag("--axis", fit.rule_flags.axis, "axis-parallel rules (default)");
    fit_cmd->add_option("--degree", fit.rule_flags.degree, "polynomial hypersurface rules of this degree");
    fit_cmd->add_option("--mixed", fit.rule_flags.mixed, "comma list of ascending degrees, 0 = axis");
    fit_cmd->add_option("--min-leaf", fit.min_leaf, "minimum rows per leaf");
    fit_cmd->add_option("--max-depth", fit.max_depth, "depth cap (size mode cross-constraint)");
    fit_cmd->add_option("--max-size", fit.max_size, "size cap (depth mode cross-constraint)");
    fit_cmd->add_option("--thin", fit.thin, "off|gub|similarity|kmeans");
    fit_cmd->add_option("--objective", fit.objective, "zeroone|l2");
    fit_cmd->add_option("--workers", fit.workers, "worker threads (size mode)");
    fit_cmd->add_option("--seed", fit.seed, "recorded in the manifest");
    fit_cmd->add_flag("--strict-geometry", fit.strict_geometry, "fail on degenerate combinations");
    fit_cmd->add_flag("--memo", fit.memo, "enable the subtree memo cache");
    fit_cmd->add_option("--out", fit.out_dir, "output directory");

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "oracle-equivalence suite on random instances");
    verify_cmd->add_option("--seed", verify.seed, "RNG seed");
    verify_cmd->add_option("--instances", verify.instances, "instance count");
    verify_cmd->add_option("--max-n", verify.max_n, "max rows per instance");
    verify_cmd->add_option("--max-dim", verify.max_dim, "max feature dimensions");
    verify_cmd->add_option("--max-k", verify.max_k, "max tree size checked");
    verify_cmd->add_option("--max-depth", verify.max_depth, "max tree depth checked");

    CensusArgs census;
    CLI::App* census_cmd = app.add_subcommand("census", "exact search-space counts");
    census_cmd->add_option("--data", census.data, "input CSV")->required();
    census_cmd->add_option("--label-col", census.label_col, "label column name");
    census_cmd->add_option("--size", census.size_k, "count trees with exactly K rules");
    census_cmd->add_option("--depth", census.depth, "count the depth-d space");
    census_cmd->add_flag("--axis", census.rule_flags.axis, "axis-parallel rules (default)");
    census_cmd->add_option("--degree", census.rule_flags.degree, "hypersurface rules of this degree");
    census_cmd->add_option("--mixed", census.rule_flags.mixed, "comma list of ascending degrees");
    census_cmd->add_option("--budget", census.budget, "node budget before refusal");
    census_cmd->add_option("--probe-count", census.probe_count, "external count to check against the lower bound");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "generator and solver timing comparison");
    bench_cmd->add_option("--data", bench.data, "input CSV")->required();
    bench_cmd->add_option("--label-col", bench.label_col, "label column name");
    bench_cmd->add_option("--size", bench.size_k, "tree size for the solver rows");
    bench_cmd->add_option("--depth", bench.depth, "tree depth for the solver rows");
    bench_cmd->add_flag("--axis", bench.rule_flags.axis, "axis-parallel rules (default)");
    bench_cmd->add_option("--degree", bench.rule_flags.degree, "hypersurface rules of this degree");
    bench_cmd->add_option("--mixed", bench.rule_flags.mixed, "comma list of ascending degrees");
    bench_cmd->add_option("--objective", bench.objective, "zeroone|l2");
    bench_cmd->add_option("--repeat", bench.repeat, "timing repetitions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(fit_cmd)) return run_fit(fit);
        if (app.got_subcommand(verify_cmd)) return run_verify(verify);
        if (app.got_subcommand(census_cmd)) return run_census(census);
        if (app.got_subcommand(bench_cmd)) return run_bench(bench);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const geometry::DegenerateCombination& e) {
        std::cerr << "degenerate geometry: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
