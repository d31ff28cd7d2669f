#pragma once

#include <optional>
#include <span>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/linalg.hpp"

namespace specgap {

// Vertex function f: V -> R, indexed like the graph's vertices.
using FunctionVector = std::vector<double>;

inline constexpr double kHalf = 0.5;
inline constexpr double kDefaultHalfTol = 1e-8;

// epsilon = min_i |1 - lambda_i| over the normalized-Laplacian spectrum: the
// spectral distance from 1, the quantity the whole artifact is about.
struct GapReport {
    double epsilon;
    double nearest_eigenvalue;  // the eigenvalue attaining the min (smallest index on ties)
    Spectrum spectrum;
    FamilyTag family;
    bool achieves_half;         // |epsilon - 1/2| <= tol
};

// I - D^{-1/2} A D^{-1/2}: the symmetric conjugate of the random-walk Laplacian
// f(v) - (1/deg v) sum_{w~v} f(w); same spectrum. Isolated vertices are rejected.
SymMatrix normalized_laplacian_sym(const Graph& g);

// Eigenvalues of the normalized Laplacian, ascending, with multiplicity groups.
// Requires a connected graph; validates lambda_1 ~ 0, trace = n, range [0, 2].
Spectrum spectrum_of(const Graph& g, double cluster_tol = kDefaultClusterTol);

GapReport epsilon_direct(const Graph& g, double tol_half = kDefaultHalfTol);

// M = (I - D^{1/2} (Delta) D^{-1/2})^2 assembled entrywise from common neighborhoods:
//   M_uv = sum_{w in N(u) cap N(v)} 1 / (deg w * sqrt(deg u * deg v)).
// Its smallest eigenvalue is epsilon^2, the M-matrix characterization of the gap.
SymMatrix build_M(const Graph& g);

// sqrt of the smallest eigenvalue of build_M(g); tiny negatives (>= -1e-12) clamp
// to 0, anything lower is a NumericError.
double epsilon_via_M(const Graph& g);

// The variational form of epsilon^2:
//   R(f) = [sum_w (1/deg w) (sum_{v in N(w)} f(v))^2] / [sum_w deg w * f(w)^2],
// an upper bound on epsilon^2 for every f != 0, tight at the minimizer.
double rayleigh_gap_quotient(const Graph& g, std::span<const double> f);

// max_v |(Delta f)(v) - lambda f(v)| with the random-walk Delta. Zero for exact
// eigenpairs up to rounding.
double verify_eigenfunction(const Graph& g, std::span<const double> f, double lambda);

// max_{i != 1} |lambda_i - 1|. For connected g this sits in [1/(N-1), 1]:
// the lower end exactly on complete graphs, the upper end exactly on bipartite ones.
double max_dist_from_one(const Graph& g);

// sqrt(d-1)/d for d = min degree; the gap bound that kicks in at min degree >= 2.
// d <= 1 is a domain error (the bound is vacuous there).
double degree_bound_epsilon(const Graph& g);

// I - (I - L)^ell: the Laplacian whose averaging step looks ell hops out.
SymMatrix neighborhood_laplacian(const Graph& g, int ell);

struct NeighborhoodGapCheck {
    double min_dist;    // min_i |1 - lambda_i^[ell]|
    double lambda_max;  // largest eigenvalue of the ell-step operator
    bool holds;         // min_dist <= 1/2^ell (+tol); for even ell also lambda_max in [1 - 1/2^ell, 1]
};

NeighborhoodGapCheck neighborhood_gap_check(const Graph& g, int ell);

// sum_{w in N(u) symdiff N(v)} (1/deg w - 1/4) when u,v share a neighbor;
// empty optional when they don't (the inequality only speaks to that case).
// Any graph with epsilon >= 1/2 has margin >= 1/2 on every qualifying pair.
std::optional<double> symmetric_difference_margin(const Graph& g, int u, int v);

// True iff every vertex has a neighbor of degree <= 3. Necessary for epsilon > 1/2,
// so a false return certifies epsilon <= 1/2 without an eigensolve. Never used in
// the other direction.
bool deg3_neighbor_filter(const Graph& g);

// Cheapest certified upper bound on epsilon, from the variational quotient on the
// two pruning test functions: single-vertex indicators and +-1 pairs with a common
// neighbor. Used by the enumeration to skip eigensolves on graphs provably below
// 1/2 - margin; returns nothing when no test function certifies a bound below cap.
std::optional<double> cheap_epsilon_upper_bound(const Graph& g, double cap);

}  // namespace specgap
