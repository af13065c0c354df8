#include "odt/trees.hpp"

#include <unordered_set>
#include <utility>

#include "odt/combgen.hpp"

namespace odt::trees {

std::string tree_canon(const DTree& t) {
    if (t.is_leaf()) return ids_string(t.leaf);
    return "(" + std::to_string(t.rule) + " " + tree_canon(*t.left) + " " + tree_canon(*t.right) + ")";
}

bool gen_dts_rec(const IndexSet& region, const std::vector<int>& rs,
                 const rules::AncestryMatrix& A, const std::vector<rules::Rule>& rules,
                 const TreeSink& sink) {
    if (rs.empty()) return sink(make_leaf(region));
    for (const auto& sp : rules::splits(rs, A)) {
        const rules::Rule& r = rules[static_cast<size_t>(sp.root)];
        bool cont = gen_dts_rec(region & r.pos, sp.pos, A, rules, [&](const DTreePtr& lt) {
            return gen_dts_rec(region & r.neg, sp.neg, A, rules, [&](const DTreePtr& rt) {
                return sink(make_node(lt, sp.root, rt));
            });
        });
        if (!cont) return false;
    }
    return true;
}

std::vector<DTreePtr> gen_dts_rec_all(const IndexSet& region, const std::vector<int>& rs,
                                      const rules::AncestryMatrix& A,
                                      const std::vector<rules::Rule>& rules) {
    std::vector<DTreePtr> out;
    gen_dts_rec(region, rs, A, rules, [&](const DTreePtr& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

DTreePtr update(int r, const DTreePtr& t, const rules::AncestryMatrix& A,
                const std::vector<rules::Rule>& rules) {
    const rules::Rule& rule = rules[static_cast<size_t>(r)];
    if (t->is_leaf())
        return make_node(make_leaf(t->leaf & rule.pos), r, make_leaf(t->leaf & rule.neg));
    int8_t e = A.at(t->rule, r);
    if (e == 1) {
        DTreePtr l = update(r, t->left, A, rules);
        return l ? make_node(l, t->rule, t->right) : nullptr;
    }
    if (e == -1) {
        DTreePtr rt = update(r, t->right, A, rules);
        return rt ? make_node(t->left, t->rule, rt) : nullptr;
    }
    return nullptr;
}

std::vector<DTreePtr> gen_dts_vec(const IndexSet& region, const std::vector<int>& rs,
                                  const rules::AncestryMatrix& A,
                                  const std::vector<rules::Rule>& rules) {
    if (rs.empty()) return {make_leaf(region)};
    std::vector<DTreePtr> out;
    std::unordered_set<std::string> seen;
    for (size_t i = 0; i < rs.size(); ++i) {
        int r = rs[i];
        std::vector<int> rest;
        rest.reserve(rs.size() - 1);
        for (size_t j = 0; j < rs.size(); ++j)
            if (j != i) rest.push_back(rs[j]);
        for (const DTreePtr& t : gen_dts_vec(region, rest, A, rules)) {
            DTreePtr u = update(r, t, A, rules);
            if (u && seen.insert(tree_canon(*u)).second) out.push_back(u);
        }
    }
    return out;
}

std::vector<DTreePtr> gen_dts_kperms(const IndexSet& region, const std::vector<int>& rs,
                                     const rules::AncestryMatrix& A,
                                     const std::vector<rules::Rule>& rules) {
    std::vector<DTreePtr> out;
    combgen::perms(rs, [&](const std::vector<int>& perm) {
        DTreePtr t = make_leaf(region);
        for (int r : perm) {
            t = update(r, t, A, rules);
            if (!t) break;
        }
        if (t) out.push_back(t);
        return true;
    });
    return out;
}

std::vector<DTreePtr> gen_dtds_depth(int d, const IndexSet& region, rules::RulePool& pool) {
    if (d < 0) throw std::invalid_argument("gen_dtds_depth: negative depth");
    if (d == 0 || region.none()) return {make_leaf(region)};
    std::vector<DTreePtr> out;
    std::vector<int> rs = pool.rules_for(region);  // copy: the pool grows during recursion
    for (int r : rs) {
        const rules::Rule& rule = pool.rule(r);
        auto lefts = gen_dtds_depth(d - 1, rule.pos, pool);
        auto rights = gen_dtds_depth(d - 1, rule.neg, pool);
        for (const DTreePtr& lt : lefts)
            for (const DTreePtr& rt : rights) out.push_back(make_node(lt, r, rt));
    }
    return out;
}

namespace {

bool check_rec(const DTree& t, const IndexSet& expect, const RuleAt& rule_at,
               const rules::AncestryMatrix& A, std::vector<std::pair<int, bool>>& path) {
    if (t.is_leaf()) return t.leaf == expect;
    if (!t.left || !t.right) return false;
    for (const auto& [anc, went_pos] : path) {
        if (anc == t.rule) {
            // Regenerating rules per region can re-emit a rule inside its own
            // one-sided split; the diagonal carries no entry, so test the
            // defining-set containment directly.
            const rules::Rule& a = rule_at(anc);
            const IndexSet& side = went_pos ? a.pos : a.neg;
            if ((a.defining & side) != a.defining) return false;
            continue;
        }
        int8_t e = A.at(anc, t.rule);
        if (e != (went_pos ? 1 : -1)) return false;
    }
    const rules::Rule& r = rule_at(t.rule);
    path.emplace_back(t.rule, true);
    bool ok = check_rec(*t.left, expect & r.pos, rule_at, A, path);
    if (ok) {
        path.back().second = false;
        ok = check_rec(*t.right, expect & r.neg, rule_at, A, path);
    }
    path.pop_back();
    return ok;
}

}  // namespace

bool check_proper(const DTree& t, const RuleAt& rule_at, const rules::AncestryMatrix& A) {
    IndexSet region;
    try {
        region = tree_region(t);
    } catch (const ContractError&) {
        return false;  // overlapping leaves
    }
    std::vector<std::pair<int, bool>> path;
    return check_rec(t, region, rule_at, A, path);
}

bool check_proper(const DTree& t, const std::vector<rules::Rule>& rules,
                  const rules::AncestryMatrix& A) {
    return check_proper(
        t, [&](int i) -> const rules::Rule& { return rules[static_cast<size_t>(i)]; }, A);
}

bool check_proper(const DTree& t, const rules::RulePool& pool, const rules::AncestryMatrix& A) {
    return check_proper(t, [&](int i) -> const rules::Rule& { return pool.rule(i); }, A);
}

}  // namespace odt::trees
