#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "specgap/enumerate.hpp"
#include "specgap/graph_io.hpp"

namespace specgap {

namespace {

// Ordered equitable partition: seed cells by degree (ascending), then split
// each cell by the vector of neighbor counts per cell until stable. Cell order
// after a split is decided by those count vectors alone, so the whole partition
// is invariant under relabeling, which is what lets the search below restrict
// itself to permutations that respect it.
std::vector<std::vector<int>> equitable_partition(const Graph& g) {
    const int n = g.n;
    std::vector<std::vector<int>> cells;
    {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return degree(g, a) < degree(g, b); });
        for (int v : order) {
            if (cells.empty() || degree(g, cells.back().front()) != degree(g, v))
                cells.emplace_back();
            cells.back().push_back(v);
        }
    }

    std::vector<int> cell_of(n);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c]) cell_of[v] = int(c);

        std::vector<std::vector<int>> next;
        for (const auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::vector<std::pair<std::vector<int>, int>> keyed;
            for (int v : cell) {
                std::vector<int> sig(cells.size(), 0);
                std::uint64_t row = g.adj[v];
                while (row) {
                    const int w = std::countr_zero(row);
                    row &= row - 1;
                    ++sig[cell_of[w]];
                }
                keyed.emplace_back(std::move(sig), v);
            }
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t i = 0; i < keyed.size(); ++i) {
                if (i == 0 || keyed[i].first != keyed[i - 1].first) {
                    if (i != 0) changed = true;
                    next.emplace_back();
                }
                next.back().push_back(keyed[i].second);
            }
        }
        cells = std::move(next);
    }
    return cells;
}

// Branch-and-bound over partition-respecting relabelings, minimizing the
// upper-triangle adjacency bits in graph6 column order. New label p is drawn
// from its cell; placing it appends column p (bits toward labels 0..p-1), and a
// branch dies the moment its prefix exceeds the best completed labeling.
class Canonicalizer {
  public:
    explicit Canonicalizer(const Graph& g) : g_(g), n_(g.n) {
        auto cells = equitable_partition(g);
        cell_at_pos_.reserve(n_);
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (std::size_t i = 0; i < cells[c].size(); ++i) cell_at_pos_.push_back(int(c));
        cells_ = std::move(cells);
        perm_.resize(n_);
        rel_.assign(n_, kLess);
        cur_.reserve(n_ * (n_ - 1) / 2);
    }

    Graph run() {
        dfs(0);
        Graph canon(n_);
        for (int p = 0; p < n_; ++p)
            for (int q = p + 1; q < n_; ++q)
                if (g_.has_edge(best_perm_[p], best_perm_[q])) canon.add_edge(p, q);
        return canon;
    }

  private:
    enum Rel : std::uint8_t { kEqual, kLess };

    void dfs(int p) {
        auto& cell = cells_[cell_at_pos_[p]];
        std::vector<int> tried;
        for (int u : cell) {
            if (assigned_ & (std::uint64_t{1} << u)) continue;
            bool redundant = false;
            for (int t : tried) {  // swapping u with an already-tried twin is an automorphism
                if ((g_.adj[t] & ~(std::uint64_t{1} << u)) ==
                    (g_.adj[u] & ~(std::uint64_t{1} << t))) {
                    redundant = true;
                    break;
                }
            }
            if (redundant) continue;
            tried.push_back(u);

            const Rel parent = p == 0 ? kEqual : Rel(rel_[p - 1]);
            const std::size_t mark = cur_.size();
            bool worse = false;
            Rel rel = parent;
            for (int q = 0; q < p; ++q) {
                const std::uint8_t bit = g_.has_edge(perm_[q], u) ? 1 : 0;
                cur_.push_back(bit);
                if (have_best_ && rel == kEqual) {
                    const std::uint8_t ref = best_[mark + q];
                    if (bit > ref) {
                        worse = true;
                        break;
                    }
                    if (bit < ref) rel = kLess;
                }
            }
            if (worse) {
                cur_.resize(mark);
                continue;
            }
            perm_[p] = u;
            rel_[p] = !have_best_ ? kLess : rel;
            assigned_ |= std::uint64_t{1} << u;

            if (p == n_ - 1) {
                if (!have_best_ || rel_[p] == kLess) {
                    best_ = cur_;
                    best_perm_ = perm_;
                    have_best_ = true;
                    std::fill(rel_.begin(), rel_.end(), kEqual);
                }
            } else {
                dfs(p + 1);
            }

            assigned_ &= ~(std::uint64_t{1} << u);
            cur_.resize(mark);
        }
    }

    const Graph& g_;
    int n_;
    std::vector<std::vector<int>> cells_;
    std::vector<int> cell_at_pos_;
    std::vector<int> perm_;
    std::vector<int> best_perm_;
    std::vector<std::uint8_t> cur_, best_;
    std::vector<std::uint8_t> rel_;
    std::uint64_t assigned_ = 0;
    bool have_best_ = false;
};

Graph canonical_graph(const Graph& g) {
    return Canonicalizer(g).run();
}

constexpr int kKeyMaxVertices = 11;  // 55 edge bits + the vertex count fits in 64

}  // namespace

std::string canonical_form(const Graph& g) {
    return emit_graph6(canonical_graph(g));
}

std::uint64_t canonical_key(const Graph& g) {
    if (g.n > kKeyMaxVertices)
        throw std::invalid_argument("packed canonical keys stop at 11 vertices");
    Graph canon = canonical_graph(g);
    std::uint64_t bits = 0;
    for (int j = 1; j < canon.n; ++j)
        for (int i = 0; i < j; ++i)
            if (canon.has_edge(i, j))
                bits |= std::uint64_t{1} << (j * (j - 1) / 2 + i);
    return (std::uint64_t(canon.n) << 55) | bits;
}

Graph graph_from_key(int n, std::uint64_t key) {
    if (n < 1 || n > kKeyMaxVertices) throw std::invalid_argument("key vertex count out of range");
    if (int(key >> 55) != n) throw std::invalid_argument("key does not match vertex count");
    Graph g(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (key & (std::uint64_t{1} << (j * (j - 1) / 2 + i))) g.add_edge(i, j);
    return g;
}

}  // namespace specgap
