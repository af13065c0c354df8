#pragma once
// Polynomial embedding, hypersurface fitting through point combinations,
// side assignment, and the separable-dichotomy count.
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "odt/core.hpp"

namespace odt::geometry {

// Relative tolerance for on-surface and rank decisions.
inline constexpr double kTol = 1e-9;

// Monomials over (1, x1..xD) of total degree <= M, in graded lexicographic
// order (by total degree, then lexicographically decreasing exponents),
// starting with the constant term. Size is C(D+M, D).
struct MonomialBasis {
    int dim = 0;
    int degree = 0;
    std::vector<std::vector<int>> exponents;  // each of length dim
    int size() const { return static_cast<int>(exponents.size()); }
    // Defining-point count for a hypersurface of this degree: size() - 1.
    int g() const { return size() - 1; }
};
MonomialBasis monomials(int D, int M);

// Component j is the basis monomial j evaluated at x. Throws on non-finite.
std::vector<double> veronese_embed(const std::vector<double>& x, const MonomialBasis& basis);

struct Hypersurface {
    int degree = 0;
    std::vector<double> normal;  // length basis.size(), canonical orientation
    std::vector<int> defining;   // point indices, strictly increasing
};

// A point-combination whose embedded matrix has kernel dimension > 1.
struct DegenerateCombination : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normal spans the 1-D kernel of the G x (G+1) embedded matrix, found by
// eliminination with full pivoting; rank threshold is kTol times the largest
// pivot. Scale: max |coefficient| = 1, first nonzero coefficient positive.
Hypersurface fit_hypersurface(const std::vector<int>& indices, const Dataset& ds,
                              const MonomialBasis& basis);

double surface_value(const Hypersurface& h, const MonomialBasis& basis,
                     const std::vector<double>& x);

// True means the positive side. Values within kTol of zero (relative to the
// normal and embedding magnitudes) count as on-surface and are positive.
bool side_of(const Hypersurface& h, const MonomialBasis& basis, const std::vector<double>& x);

std::pair<IndexSet, IndexSet> assign_sides(const Hypersurface& h, const MonomialBasis& basis,
                                           const Dataset& ds);

// Number of linearly separable dichotomies of N points in general position
// in R^D: 2 * sum_{d=0}^{D} C(N-1, d). Checked 64-bit arithmetic.
uint64_t cover_count(int N, int D);

// True if no checked (G+1)-subset of embedded points is rank deficient.
// Exhaustive when C(N, G+1) <= sample_budget, otherwise seeded random probes.
bool general_position_check(const Dataset& ds, const MonomialBasis& basis,
                            uint64_t sample_budget, uint64_t seed = 0);

}  // namespace odt::geometry
