#include "odt/rules.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "odt/combgen.hpp"

namespace odt::rules {

std::vector<Rule> gen_splits_axis(const Dataset& ds) {
    return gen_splits_axis(ds, full_set(static_cast<size_t>(ds.n())));
}

std::vector<Rule> gen_splits_axis(const Dataset& ds, const IndexSet& region) {
    std::vector<Rule> out;
    std::unordered_set<IndexSet, BitsetHash> seen;
    std::vector<int> members = ids_vector(region);
    for (int p : members) {
        for (int dim = 0; dim < ds.d(); ++dim) {
            double t = ds.points[static_cast<size_t>(p)][static_cast<size_t>(dim)];
            IndexSet pos(region.size()), neg(region.size());
            for (int i : members) {
                if (ds.points[static_cast<size_t>(i)][static_cast<size_t>(dim)] >= t)
                    pos.set(static_cast<size_t>(i));
                else
                    neg.set(static_cast<size_t>(i));
            }
            if (!seen.insert(pos).second) continue;  // keep lowest (point, dim)
            Rule r;
            r.id = static_cast<int>(out.size());
            r.kind = RuleKind::Axis;
            r.axis_dim = dim;
            r.threshold = t;
            r.degree = 0;
            r.defining = IndexSet(region.size());
            r.defining.set(static_cast<size_t>(p));
            r.pos = std::move(pos);
            r.neg = std::move(neg);
            out.push_back(std::move(r));
        }
    }
    return out;
}

uint64_t gen_splits_surface(const Dataset& ds, int M, const IndexSet& region,
                            const SurfacePolicy& policy, const RuleSink& sink) {
    if (M < 1) throw std::invalid_argument("gen_splits_surface: degree must be >= 1");
    auto basis = geometry::monomials(ds.d(), M);
    int G = basis.g();
    std::vector<int> members = ids_vector(region);
    uint64_t skipped = 0;
    if (static_cast<int>(members.size()) < G) return skipped;  // no G-combination exists
    uint64_t rank = 0;
    combgen::kcombs(G, static_cast<int>(members.size()), [&](const std::vector<int>& c) {
        uint64_t id = rank++;
        std::vector<int> defining;
        defining.reserve(c.size());
        for (int pos : c) defining.push_back(members[static_cast<size_t>(pos)]);
        geometry::Hypersurface h;
        try {
            h = geometry::fit_hypersurface(defining, ds, basis);
        } catch (const geometry::DegenerateCombination&) {
            if (policy.strict) throw;
            ++skipped;
            return true;
        }
        Rule r;
        r.id = static_cast<int>(id);
        r.kind = RuleKind::Surface;
        r.degree = M;
        r.surf = std::move(h);
        r.defining = IndexSet(region.size());
        for (int idx : defining) r.defining.set(static_cast<size_t>(idx));
        IndexSet pos(region.size()), neg(region.size());
        for (int i : members) {
            if (geometry::side_of(r.surf, basis, ds.points[static_cast<size_t>(i)]))
                pos.set(static_cast<size_t>(i));
            else
                neg.set(static_cast<size_t>(i));
        }
        r.pos = std::move(pos);
        r.neg = std::move(neg);
        return sink(r);
    });
    return skipped;
}

std::vector<Rule> gen_splits_surface(const Dataset& ds, int M, bool strict, uint64_t* skipped) {
    return gen_splits_surface(ds, M, full_set(static_cast<size_t>(ds.n())), strict, skipped);
}

std::vector<Rule> gen_splits_surface(const Dataset& ds, int M, const IndexSet& region,
                                     bool strict, uint64_t* skipped) {
    std::vector<Rule> out;
    SurfacePolicy policy;
    policy.strict = strict;
    uint64_t s = gen_splits_surface(ds, M, region, policy, [&](const Rule& r) {
        out.push_back(r);
        return true;
    });
    if (skipped) *skipped = s;
    return out;
}

std::vector<Rule> gen_splits_mixed(const Dataset& ds, const std::vector<int>& degrees,
                                   const IndexSet& region, bool strict, uint64_t* skipped) {
    if (degrees.empty()) throw std::invalid_argument("gen_splits_mixed: empty degree list");
    for (size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 0) throw std::invalid_argument("gen_splits_mixed: negative degree");
        if (i > 0 && degrees[i] <= degrees[i - 1])
            throw std::invalid_argument("gen_splits_mixed: degrees must be strictly ascending");
    }
    std::vector<Rule> out;
    uint64_t total_skipped = 0;
    uint64_t offset = 0;
    uint64_t member_count = region.count();
    for (int M : degrees) {
        if (M == 0) {
            auto axis = gen_splits_axis(ds, region);
            for (auto& r : axis) {
                r.id = static_cast<int>(offset + static_cast<uint64_t>(r.id));
                out.push_back(std::move(r));
            }
            offset += axis.size();
        } else {
            uint64_t s = 0;
            auto group = gen_splits_surface(ds, M, region, strict, &s);
            total_skipped += s;
            for (auto& r : group) {
                r.id = static_cast<int>(offset + static_cast<uint64_t>(r.id));
                out.push_back(std::move(r));
            }
            int G = geometry::monomials(ds.d(), M).g();
            if (member_count >= static_cast<uint64_t>(G))
                offset += combgen::comb_count(G, static_cast<int>(member_count));
        }
    }
    if (skipped) *skipped = total_skipped;
    return out;
}

std::vector<Rule> gen_splits_mixed(const Dataset& ds, const std::vector<int>& degrees,
                                   bool strict, uint64_t* skipped) {
    return gen_splits_mixed(ds, degrees, full_set(static_cast<size_t>(ds.n())), strict, skipped);
}

AncestryMatrix ancestry_matrix(const std::vector<Rule>& rules) {
    int k = static_cast<int>(rules.size());
    AncestryMatrix a(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const IndexSet& d = rules[static_cast<size_t>(j)].defining;
            if (d.is_subset_of(rules[static_cast<size_t>(i)].pos))
                a.set(i, j, 1);
            else if (d.is_subset_of(rules[static_cast<size_t>(i)].neg))
                a.set(i, j, -1);
        }
    }
    return a;
}

std::vector<Split> splits(const std::vector<int>& rs, const AncestryMatrix& A) {
    std::vector<Split> out;
    for (int i : rs) {
        Split s;
        s.root = i;
        bool ok = true;
        for (int j : rs) {
            if (j == i) continue;
            int8_t e = A.at(i, j);
            if (e == 1)
                s.pos.push_back(j);
            else if (e == -1)
                s.neg.push_back(j);
            else {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(s));
    }
    return out;
}

const std::vector<int>& RulePool::rules_for(const IndexSet& region) {
    auto it = cache_.find(region);
    if (it != cache_.end()) return it->second;
    std::vector<Rule> fresh = gen_(region);
    std::vector<int> indices;
    indices.reserve(fresh.size());
    for (auto& r : fresh) {
        indices.push_back(static_cast<int>(pool_.size()));
        pool_.push_back(std::move(r));
    }
    return cache_.emplace(region, std::move(indices)).first->second;
}

}  // namespace odt::rules
