#include "odt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "odt/combgen.hpp"

namespace odt::geometry {

static void gen_exponents(int D, int grade, int pos, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
    if (pos == D - 1) {
        cur[pos] = grade;
        out.push_back(cur);
        return;
    }
    for (int e = grade; e >= 0; --e) {
        cur[pos] = e;
        gen_exponents(D, grade - e, pos + 1, cur, out);
    }
}

MonomialBasis monomials(int D, int M) {
    if (D < 1 || M < 0) throw std::invalid_argument("monomials: need D >= 1, M >= 0");
    MonomialBasis b;
    b.dim = D;
    b.degree = M;
    std::vector<int> cur(static_cast<size_t>(D));
    for (int grade = 0; grade <= M; ++grade) gen_exponents(D, grade, 0, cur, b.exponents);
    return b;
}

std::vector<double> veronese_embed(const std::vector<double>& x, const MonomialBasis& basis) {
    if (static_cast<int>(x.size()) != basis.dim)
        throw std::invalid_argument("veronese_embed: dimension mismatch");
    std::vector<double> out;
    out.reserve(basis.exponents.size());
    for (const auto& alpha : basis.exponents) {
        double v = 1.0;
        for (int j = 0; j < basis.dim; ++j)
            for (int e = 0; e < alpha[j]; ++e) v *= x[j];
        if (!std::isfinite(v)) throw std::runtime_error("veronese_embed: non-finite component");
        out.push_back(v);
    }
    return out;
}

namespace {

// Elimination with full pivoting. Returns the rank; when kernel != nullptr and
// the kernel is one-dimensional, writes a spanning vector into *kernel.
// Rank threshold: candidate pivots within kTol of the largest pivot's
// magnitude (relative) count as zero.
int eliminate(std::vector<std::vector<double>>& a, int rows, int cols,
              std::vector<double>* kernel) {
    std::vector<int> pivot_col;
    std::vector<char> used(static_cast<size_t>(cols), 0);
    double largest = 0.0;
    int rank = 0;
    for (int step = 0; step < rows; ++step) {
        int pr = -1, pc = -1;
        double best = 0.0;
        for (int r = step; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (!used[c] && std::abs(a[r][c]) > best) {
                    best = std::abs(a[r][c]);
                    pr = r;
                    pc = c;
                }
        if (step == 0) largest = best;
        if (pr < 0 || best <= kTol * largest || best == 0.0) break;
        std::swap(a[step], a[pr]);
        used[pc] = 1;
        pivot_col.push_back(pc);
        for (int r = step + 1; r < rows; ++r) {
            double f = a[r][pc] / a[step][pc];
            if (f == 0.0) continue;
            for (int c = 0; c < cols; ++c) a[r][c] -= f * a[step][c];
            a[r][pc] = 0.0;
        }
        ++rank;
    }
    if (kernel && rank == cols - 1) {
        int free_col = -1;
        for (int c = 0; c < cols; ++c)
            if (!used[c]) free_col = c;
        std::vector<double> x(static_cast<size_t>(cols), 0.0);
        x[free_col] = 1.0;
        for (int t = rank - 1; t >= 0; --t) {
            int c = pivot_col[t];
            double s = a[t][free_col];
            for (int u = t + 1; u < rank; ++u) s += a[t][pivot_col[u]] * x[pivot_col[u]];
            x[c] = -s / a[t][c];
        }
        *kernel = std::move(x);
    }
    return rank;
}

}  // namespace

Hypersurface fit_hypersurface(const std::vector<int>& indices, const Dataset& ds,
                              const MonomialBasis& basis) {
    int G = basis.g();
    if (G < 1) throw std::invalid_argument("fit_hypersurface: basis has no defining points");
    if (static_cast<int>(indices.size()) != G)
        throw std::invalid_argument("fit_hypersurface: need exactly " + std::to_string(G) +
                                    " defining points");
    std::vector<std::vector<double>> a;
    a.reserve(indices.size());
    for (int idx : indices) {
        if (idx < 0 || idx >= ds.n()) throw std::invalid_argument("fit_hypersurface: bad index");
        a.push_back(veronese_embed(ds.points[idx], basis));
    }
    std::vector<double> kernel;
    int rank = eliminate(a, G, G + 1, &kernel);
    if (rank < G)
        throw DegenerateCombination("degenerate combination: kernel dimension " +
                                    std::to_string(G + 1 - rank));
    // Canonical scale and orientation.
    double maxabs = 0.0;
    for (double v : kernel) maxabs = std::max(maxabs, std::abs(v));
    for (double& v : kernel) v /= maxabs;
    for (double v : kernel) {
        if (v != 0.0) {
            if (v < 0.0)
                for (double& w : kernel) w = -w;
            break;
        }
    }
    Hypersurface h;
    h.degree = basis.degree;
    h.normal = std::move(kernel);
    h.defining = indices;
    std::sort(h.defining.begin(), h.defining.end());
    return h;
}

double surface_value(const Hypersurface& h, const MonomialBasis& basis,
                     const std::vector<double>& x) {
    auto e = veronese_embed(x, basis);
    double v = 0.0;
    for (size_t j = 0; j < e.size(); ++j) v += h.normal[j] * e[j];
    return v;
}

bool side_of(const Hypersurface& h, const MonomialBasis& basis, const std::vector<double>& x) {
    auto e = veronese_embed(x, basis);
    double v = 0.0, wmax = 0.0, emax = 1.0;
    for (size_t j = 0; j < e.size(); ++j) {
        v += h.normal[j] * e[j];
        wmax = std::max(wmax, std::abs(h.normal[j]));
        emax = std::max(emax, std::abs(e[j]));
    }
    return v >= -kTol * wmax * emax;
}

std::pair<IndexSet, IndexSet> assign_sides(const Hypersurface& h, const MonomialBasis& basis,
                                           const Dataset& ds) {
    IndexSet pos(static_cast<size_t>(ds.n())), neg(static_cast<size_t>(ds.n()));
    for (int i = 0; i < ds.n(); ++i) {
        if (side_of(h, basis, ds.points[i]))
            pos.set(static_cast<size_t>(i));
        else
            neg.set(static_cast<size_t>(i));
    }
    return {pos, neg};
}

uint64_t cover_count(int N, int D) {
    if (N < 1 || D < 1) throw std::invalid_argument("cover_count: need N >= 1, D >= 1");
    uint64_t sum = 0;
    for (int d = 0; d <= D; ++d) {
        uint64_t c = combgen::comb_count(d, N - 1);
        if (__builtin_add_overflow(sum, c, &sum)) throw std::overflow_error("cover_count overflow");
    }
    uint64_t out;
    if (__builtin_mul_overflow(sum, uint64_t{2}, &out)) throw std::overflow_error("cover_count overflow");
    return out;
}

bool general_position_check(const Dataset& ds, const MonomialBasis& basis,
                            uint64_t sample_budget, uint64_t seed) {
    int G = basis.g();
    int m = G + 1;
    if (ds.n() <= G) return true;  // no (G+1)-subset exists
    std::vector<std::vector<double>> embedded;
    embedded.reserve(static_cast<size_t>(ds.n()));
    for (const auto& p : ds.points) embedded.push_back(veronese_embed(p, basis));

    auto full_rank = [&](const std::vector<int>& subset) {
        std::vector<std::vector<double>> a;
        a.reserve(subset.size());
        for (int idx : subset) a.push_back(embedded[static_cast<size_t>(idx)]);
        return eliminate(a, m, m, nullptr) == m;
    };

    bool exhaustive = false;
    uint64_t total = 0;
    try {
        total = combgen::comb_count(m, ds.n());
        exhaustive = total <= sample_budget;
    } catch (const std::overflow_error&) {
        exhaustive = false;
    }
    if (exhaustive) {
        bool ok = true;
        combgen::kcombs(m, ds.n(), [&](const std::vector<int>& c) {
            ok = full_rank(c);
            return ok;
        });
        return ok;
    }
    std::mt19937_64 rng(seed);
    std::vector<int> idx(static_cast<size_t>(ds.n()));
    for (int i = 0; i < ds.n(); ++i) idx[static_cast<size_t>(i)] = i;
    for (uint64_t s = 0; s < sample_budget; ++s) {
        for (int j = 0; j < m; ++j) {
            size_t pick = static_cast<size_t>(j) + rng() % (idx.size() - static_cast<size_t>(j));
            std::swap(idx[static_cast<size_t>(j)], idx[pick]);
        }
        std::vector<int> subset(idx.begin(), idx.begin() + m);
        if (!full_rank(subset)) return false;
    }
    return true;
}

}  // namespace odt::geometry
