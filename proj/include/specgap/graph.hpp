#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "specgap/errors.hpp"

namespace specgap {

inline constexpr int kMaxVertices = 64;

// Simple undirected graph on at most 64 vertices, one adjacency bitrow per vertex.
// Bit u of adj[v] is set iff v~u. No loops, no multi-edges by construction.
struct Graph {
    int n = 0;
    std::array<std::uint64_t, kMaxVertices> adj{};

    Graph() = default;
    explicit Graph(int n_) : n(n_) {
        if (n_ < 1 || n_ > kMaxVertices)
            throw std::invalid_argument("vertex count must be in [1, 64], got " +
                                        std::to_string(n_));
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n)
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " out of range [0, " + std::to_string(n) + ")");
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return (adj[u] >> v) & 1u;
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("self-loop rejected at vertex " + std::to_string(u));
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
    }

    int edge_count() const {
        int twice = 0;
        for (int v = 0; v < n; ++v) twice += std::popcount(adj[v]);
        return twice / 2;
    }

    bool operator==(const Graph& o) const {
        if (n != o.n) return false;
        for (int v = 0; v < n; ++v)
            if (adj[v] != o.adj[v]) return false;
        return true;
    }
};

int degree(const Graph& g, int v);
bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);
int min_degree(const Graph& g);

// Graph families. Petal/Book are the extremal families: Petal(m) is m triangles
// sharing an apex (N = 2m+1); Book(m) is m pages x-v_i-w_i-y sharing the endpoints
// x,y of an absent spine edge (N = 2m+2). The rest exist for generation and for
// naming inputs on the command line.
enum class Family : std::uint8_t {
    Petal,
    Book,
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Other,
};

struct FamilyTag {
    Family kind = Family::Other;
    int a = 0;  // m for Petal/Book, N for Path/Cycle/Complete, first side for K_{a,b}
    int b = 0;  // second side for K_{a,b}, unused otherwise

    bool operator==(const FamilyTag&) const = default;
};

inline FamilyTag petal_tag(int m) { return {Family::Petal, m, 0}; }
inline FamilyTag book_tag(int m) { return {Family::Book, m, 0}; }

// Vertex conventions: Petal(m) puts the apex at 0, v_i at i, w_i at m+i (i = 1..m,
// shifted down by one). Book(m) puts x at 0, y at 1, v_i at 1+i, w_i at 1+m+i.
Graph make_family(const FamilyTag& tag);

// Structural recognizer for the extremal families. Returns Petal(m)/Book(m) iff the
// graph is isomorphic to that member (degree multiset plus apex/spine incidence
// pattern, no permutation search); everything else reports Other. The coincidences
// resolve to the extremal tag: C3 -> Petal(1), P4 -> Book(1), C6 -> Book(2).
FamilyTag classify_family(const Graph& g);

std::string family_to_string(const FamilyTag& tag);
// The CLI spelling: "petal:3", "book:2", "path:5", "cycle:6", "complete:4",
// "complete-bipartite:2,3". family_spelling is what reports embed, so its output
// feeds back into --family; "other" is the one spelling that doesn't parse.
std::string family_spelling(const FamilyTag& tag);
FamilyTag family_from_string(const std::string& s);

}  // namespace specgap
