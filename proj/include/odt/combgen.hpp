#pragma once
// Combination / permutation / nested-combination generators.
// All generators stream through a visitor; returning false stops enumeration.
#include <cstdint>
#include <functional>
#include <vector>

namespace odt::combgen {

using IntVec = std::vector<int>;
using Visitor = std::function<bool(const IntVec&)>;

// C(n,k) with overflow checking; throws std::overflow_error.
uint64_t comb_count(int k, int n);

// All k-element subsets of {0..n-1} in revolving-door order: consecutive
// outputs differ by removing one element and inserting another.
// Returns false iff the visitor stopped early. k > n yields nothing.
bool kcombs(int k, int n, const Visitor& visit);

// Bijection onto 0..C(n,k)-1, consistent with the kcombs emission order.
uint64_t comb_rank(const IntVec& comb, int n);
IntVec comb_unrank(uint64_t rank, int k, int n);

// All |items|! orderings via insertion recursion: each permutation of the
// tail is expanded by inserting the head at every position.
bool perms(const IntVec& items, const Visitor& visit);

// All ordered k-selections, enumerated by direct recursive choice.
// As a multiset this equals perms applied to every k-combination.
bool kperms(int k, const IntVec& items, const Visitor& visit);

// Nested combinations: K-subsets of the rank universe 0..C(N,G)-1, emitted
// in revolving-door order over ranks. `sink` fires exactly once per inner
// G-combination, in rank order, the first time any outer output needs it.
using InnerSink = std::function<void(uint64_t global_index, const IntVec& inner_comb)>;
using RankVisitor = std::function<bool(const std::vector<uint64_t>&)>;
bool nested_combs(int K, int G, int N, const InnerSink& sink, const RankVisitor& visit);

// Mixed inner sizes: the universe is the disjoint union of all C(N,G) sets
// for G in Gs (strictly ascending); global index = rank + sum of C(N,G')
// over smaller G'. The sink additionally learns which G produced the inner.
using MixedSink = std::function<void(uint64_t global_index, int G, const IntVec& inner_comb)>;
bool nested_combs_mixed(int K, const IntVec& Gs, int N, const MixedSink& sink,
                        const RankVisitor& visit);

}  // namespace odt::combgen
