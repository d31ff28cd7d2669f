#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/spectral.hpp"

namespace specgap {

enum class EnumMode { Labeled, IsomorphFree };

using GraphSink = std::function<void(const Graph&)>;

// Every connected labeled graph on n vertices, by ascending edge mask. Bit k of the
// mask is edge (i, j), i < j, k = j(j-1)/2 + i, the graph6 bit order.
void labeled_connected_stream(int n, const GraphSink& sink);

// One representative per isomorphism class of connected graphs on n vertices, in
// ascending canonical-key order. Built level by level: attach a new vertex to every
// nonempty subset of each (k-1)-representative and dedup by canonical key; complete
// because every connected graph has a spanning-tree leaf whose removal stays connected.
void isomorph_free_stream(int n, const GraphSink& sink);

// Canonical form: the graph6 string of the relabeling that minimizes the adjacency
// bitstring over all permutations respecting the ordered equitable partition
// (degree-seeded neighbor-color refinement). Equal strings iff isomorphic.
std::string canonical_form(const Graph& g);

// The same canonical adjacency bitstring packed into an integer (n <= 11), plus the
// inverse. Internal currency of the isomorph-free generator and witness dedup.
std::uint64_t canonical_key(const Graph& g);
Graph graph_from_key(int n, std::uint64_t key);

struct WitnessEntry {
    std::string graph6;  // canonical
    FamilyTag family;
    bool operator==(const WitnessEntry&) const = default;
};

struct Violation {
    std::string graph6;  // canonical
    double value;        // the offending epsilon / deviation
    std::string reason;
    bool operator==(const Violation&) const = default;
};

// Shared result shape of the exhaustive suites. In labeled mode labeled_total counts
// all 2^C(n,2) masks scanned and isomorphism_classes is absent; in isomorph-free mode
// both labeled_total and connected_count count streamed class representatives and
// isomorphism_classes repeats that count. Witnesses are deduped by canonical form and
// sorted, so reports are byte-identical across thread counts.
struct EnumReport {
    int n = 0;
    std::string mode;
    bool prune = false;
    std::uint64_t labeled_total = 0;
    std::uint64_t connected_count = 0;
    std::optional<std::uint64_t> isomorphism_classes;
    double max_epsilon = 0.0;
    std::vector<WitnessEntry> extremal_witnesses;  // epsilon >= 1/2 - 1e-8
    std::vector<Violation> violations;
    std::uint64_t pruned_by_filter = 0;
    double wall_time_seconds = 0.0;
};

struct DegreeBoundRow {
    int min_deg;
    std::uint64_t graphs;
    double bound;        // sqrt(d-1)/d
    double max_epsilon;  // observed
    std::string argmax_graph6;
};

struct DegreeBoundReport {
    int n = 0;
    std::uint64_t connected_count = 0;
    std::vector<DegreeBoundRow> rows;  // one per min degree >= 2 present at this n
    std::vector<Violation> violations;
    double wall_time_seconds = 0.0;
};

struct NeighborhoodEllRow {
    int ell;
    double bound;  // 1/2^ell
    std::uint64_t equality_attainments;          // min_dist within 1e-9 of the bound
    std::vector<std::string> equality_examples;  // canonical graph6, sorted, capped
    std::uint64_t top_equality_attainments;      // even ell: lambda_max = 1 - 1/2^ell
};

struct NeighborhoodReport {
    int n = 0;
    int ell_max = 0;
    std::uint64_t connected_count = 0;
    std::vector<NeighborhoodEllRow> rows;
    std::vector<Violation> violations;
    double wall_time_seconds = 0.0;
};

struct EquivalenceReport {  // epsilon_direct vs epsilon_via_M, graph by graph
    int n = 0;
    std::uint64_t connected_count = 0;
    double max_abs_diff = 0.0;
    std::vector<Violation> violations;  // |diff| > 1e-8
    double wall_time_seconds = 0.0;
};

inline constexpr double kWitnessTol = 1e-8;    // epsilon >= 1/2 - this => witness
inline constexpr double kViolationTol = 1e-8;  // epsilon >  1/2 + this => violation
inline constexpr double kPruneMargin = 1e-6;   // filters may only certify below 1/2 - this

// Exhaustive check of the half bound and its equality classification. Violations:
// epsilon > 1/2 + 1e-8, or a witness whose classifier says Other. With prune on,
// eigensolves are skipped exactly when cheap_epsilon_upper_bound certifies
// epsilon < 1/2 - 1e-6; every graph near the boundary is eigensolved.
EnumReport verify_gap_theorem(int n, EnumMode mode, bool prune, int threads);

// Exhaustive check of epsilon <= sqrt(d-1)/d over connected graphs with min degree
// d >= 2, reported per degree class.
DegreeBoundReport verify_degree_bound(int n, int threads);

// Exhaustive check that every connected graph has an ell-step eigenvalue within
// 1/2^ell of 1, for ell = 1..ell_max, with the even-ell top-eigenvalue pinch.
NeighborhoodReport verify_neighborhood_theorem(int n, int ell_max, int threads);

// Exhaustive |epsilon_direct - epsilon_via_M| <= 1e-8 over connected graphs on n.
EquivalenceReport verify_gap_equivalence(int n, int threads);

// CSV rows "graph6,n,d_min,epsilon,family" for streamed graphs with
// epsilon >= eps_min, preceded by a header row. Rows come out in stream order.
void enumerate_csv(int n, EnumMode mode, double eps_min, std::ostream& out);

// --threads flag if positive, else SPECGAP_THREADS, else hardware concurrency.
int resolve_thread_count(int requested);

std::string report_to_json(const EnumReport& r);
std::string report_to_json(const DegreeBoundReport& r);
std::string report_to_json(const NeighborhoodReport& r);
std::string report_to_json(const EquivalenceReport& r);

}  // namespace specgap
