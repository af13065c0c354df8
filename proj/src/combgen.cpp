#include "odt/combgen.hpp"

#include <limits>
#include <stdexcept>

namespace odt::combgen {

static uint64_t mul_check(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("combination count overflows 64 bits");
    return r;
}

static uint64_t add_check(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("combination count overflows 64 bits");
    return r;
}

uint64_t comb_count(int k, int n) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        // c = c * (n-k+i) / i stays integral: it equals C(n-k+i, i).
        c = mul_check(c, static_cast<uint64_t>(n - k + i)) / static_cast<uint64_t>(i);
    }
    return c;
}

namespace {

// Revolving-door enumeration by the block recursion
//   T(n,k) = T(n-1,k) ++ [c + {n-1} | c <- reverse(T(n-1,k-1))]
// `acc` holds the chosen large elements in descending push order.
struct KcombEmitter {
    const Visitor& visit;
    IntVec acc;
    IntVec out;

    bool emit(int base_n) {
        out.clear();
        for (int i = 0; i < base_n; ++i) out.push_back(i);
        for (auto it = acc.rbegin(); it != acc.rend(); ++it) out.push_back(*it);
        return visit(out);
    }

    bool gen(int n, int k, bool rev) {
        if (k < 0 || k > n) return true;
        if (k == 0) return emit(0);
        if (k == n) return emit(n);
        if (!rev) {
            if (!gen(n - 1, k, false)) return false;
            acc.push_back(n - 1);
            bool ok = gen(n - 1, k - 1, true);
            acc.pop_back();
            return ok;
        }
        acc.push_back(n - 1);
        bool ok = gen(n - 1, k - 1, false);
        acc.pop_back();
        if (!ok) return false;
        return gen(n - 1, k, true);
    }
};

}  // namespace

bool kcombs(int k, int n, const Visitor& visit) {
    if (k < 0 || n < 0) throw std::invalid_argument("kcombs: negative size");
    KcombEmitter e{visit, {}, {}};
    return e.gen(n, k, false);
}

static void check_comb(const IntVec& comb, int n) {
    for (size_t i = 0; i < comb.size(); ++i) {
        if (comb[i] < 0 || comb[i] >= n) throw std::invalid_argument("comb_rank: element out of range");
        if (i > 0 && comb[i] <= comb[i - 1])
            throw std::invalid_argument("comb_rank: elements must be strictly increasing");
    }
}

// Rank within T(n,k): the first block T(n-1,k) keeps its ranks; a combination
// containing n-1 sits in the reversed second block, so its offset there is
// C(n-1,k-1) - 1 - rank of the remainder in T(n-1,k-1).
uint64_t comb_rank(const IntVec& comb, int n) {
    check_comb(comb, n);
    int k = static_cast<int>(comb.size());
    uint64_t rank = 0;
    int sign = +1;
    while (k > 0) {
        int m = comb[k - 1];
        if (m < n - 1) {
            --n;
            continue;
        }
        uint64_t a = comb_count(k, n - 1);
        uint64_t b = comb_count(k - 1, n - 1);
        if (sign > 0)
            rank = add_check(rank, a + b - 1);
        else
            rank -= a + b - 1;
        sign = -sign;
        --n;
        --k;
    }
    return rank;
}

IntVec comb_unrank(uint64_t rank, int k, int n) {
    if (k < 0 || n < 0) throw std::invalid_argument("comb_unrank: negative size");
    if (rank >= comb_count(k, n)) throw std::out_of_range("comb_unrank: rank out of range");
    IntVec out(static_cast<size_t>(k));
    while (k > 0) {
        uint64_t a = comb_count(k, n - 1);
        if (rank < a) {
            --n;
            continue;
        }
        uint64_t b = comb_count(k - 1, n - 1);
        out[static_cast<size_t>(k - 1)] = n - 1;
        rank = a + b - 1 - rank;  // rank of the remainder in T(n-1,k-1)
        --n;
        --k;
    }
    return out;
}

bool perms(const IntVec& items, const Visitor& visit) {
    if (items.empty()) {
        IntVec empty;
        return visit(empty);
    }
    IntVec tail(items.begin() + 1, items.end());
    IntVec buf;
    return perms(tail, [&](const IntVec& p) {
        for (size_t pos = 0; pos <= p.size(); ++pos) {
            buf.clear();
            buf.insert(buf.end(), p.begin(), p.begin() + static_cast<long>(pos));
            buf.push_back(items[0]);
            buf.insert(buf.end(), p.begin() + static_cast<long>(pos), p.end());
            if (!visit(buf)) return false;
        }
        return true;
    });
}

static bool kperms_rec(int k, IntVec& pool, IntVec& cur, const Visitor& visit) {
    if (k == 0) return visit(cur);
    for (size_t i = 0; i < pool.size(); ++i) {
        int x = pool[i];
        pool.erase(pool.begin() + static_cast<long>(i));
        cur.push_back(x);
        bool ok = kperms_rec(k - 1, pool, cur, visit);
        cur.pop_back();
        pool.insert(pool.begin() + static_cast<long>(i), x);
        if (!ok) return false;
    }
    return true;
}

bool kperms(int k, const IntVec& items, const Visitor& visit) {
    if (k < 0) throw std::invalid_argument("kperms: negative size");
    IntVec pool = items;
    IntVec cur;
    return kperms_rec(k, pool, cur, visit);
}

namespace {

// Shared outer loop: enumerate K-subsets of a rank universe, firing `fire`
// exactly once per universe element, in order, at first reference.
bool nested_outer(int K, uint64_t universe, const std::function<void(uint64_t)>& fire,
                  const RankVisitor& visit) {
    if (universe > static_cast<uint64_t>(std::numeric_limits<int>::max()))
        throw std::overflow_error("nested combination universe too large to stream");
    comb_count(K, static_cast<int>(universe));  // outer count must fit in 64 bits
    uint64_t next_unseen = 0;
    std::vector<uint64_t> ranks(static_cast<size_t>(K));
    return kcombs(K, static_cast<int>(universe), [&](const IntVec& c) {
        for (size_t i = 0; i < c.size(); ++i) {
            while (next_unseen <= static_cast<uint64_t>(c[i])) {
                fire(next_unseen);
                ++next_unseen;
            }
            ranks[i] = static_cast<uint64_t>(c[i]);
        }
        return visit(ranks);
    });
}

}  // namespace

bool nested_combs(int K, int G, int N, const InnerSink& sink, const RankVisitor& visit) {
    if (K < 0 || G < 1 || N < G) throw std::invalid_argument("nested_combs: need K >= 0, G >= 1, N >= G");
    uint64_t universe = comb_count(G, N);
    if (universe > static_cast<uint64_t>(std::numeric_limits<int>::max()))
        throw std::overflow_error("nested combination universe too large to stream");
    comb_count(K, static_cast<int>(universe));  // C(C(N,G),K) must fit in 64 bits
    return nested_outer(
        K, universe, [&](uint64_t r) { sink(r, comb_unrank(r, G, N)); }, visit);
}

bool nested_combs_mixed(int K, const IntVec& Gs, int N, const MixedSink& sink,
                        const RankVisitor& visit) {
    if (K < 0 || Gs.empty()) throw std::invalid_argument("nested_combs_mixed: need K >= 0 and sizes");
    for (size_t i = 0; i < Gs.size(); ++i) {
        if (Gs[i] < 1 || Gs[i] > N) throw std::invalid_argument("nested_combs_mixed: size out of range");
        if (i > 0 && Gs[i] <= Gs[i - 1])
            throw std::invalid_argument("nested_combs_mixed: sizes must be strictly ascending");
    }
    std::vector<uint64_t> offsets(Gs.size());
    uint64_t universe = 0;
    for (size_t i = 0; i < Gs.size(); ++i) {
        offsets[i] = universe;
        universe = add_check(universe, comb_count(Gs[i], N));
    }
    auto fire = [&](uint64_t global) {
        size_t g = Gs.size() - 1;
        while (g > 0 && offsets[g] > global) --g;
        sink(global, Gs[g], comb_unrank(global - offsets[g], Gs[g], N));
    };
    return nested_outer(K, universe, fire, visit);
}

}  // namespace odt::combgen
