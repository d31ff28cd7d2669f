#include "specgap/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

// Degrees and their reciprocals in one pass; rejects isolated vertices, which
// would put a zero under the square root.
struct DegreeTable {
    int deg[kMaxVertices];
    double inv[kMaxVertices];
    double inv_sqrt[kMaxVertices];

    explicit DegreeTable(const Graph& g) {
        for (int v = 0; v < g.n; ++v) {
            deg[v] = degree(g, v);
            if (deg[v] == 0) throw std::domain_error("graph has an isolated vertex");
            inv[v] = 1.0 / deg[v];
            inv_sqrt[v] = 1.0 / std::sqrt(double(deg[v]));
        }
    }
};

void require_connected(const Graph& g) {
    if (!is_connected(g)) throw DisconnectedGraphError("graph is not connected");
}

}  // namespace

SymMatrix normalized_laplacian_sym(const Graph& g) {
    const DegreeTable dt(g);
    SymMatrix l(g.n);
    for (int u = 0; u < g.n; ++u) {
        l.set(u, u, 1.0);
        std::uint64_t row = g.adj[u];
        while (row) {
            const int v = std::countr_zero(row);
            row &= row - 1;
            if (v > u) l.set(u, v, -dt.inv_sqrt[u] * dt.inv_sqrt[v]);
        }
    }
    return l;
}

Spectrum spectrum_of(const Graph& g, double cluster_tol) {
    require_connected(g);
    std::vector<double> ev = eigenvalues_sym(normalized_laplacian_sym(g));
    if (std::abs(ev.front()) > 1e-9 || ev.back() > 2.0 + 1e-9)
        throw NumericError("normalized Laplacian eigenvalues out of range");
    double trace = 0;
    for (double v : ev) trace += v;
    if (std::abs(trace - g.n) > 1e-8)
        throw NumericError("normalized Laplacian trace drifted");
    return spectrum_from_values(std::move(ev), cluster_tol);
}

GapReport epsilon_direct(const Graph& g, double tol_half) {
    GapReport r;
    r.spectrum = spectrum_of(g);
    auto [dist, idx] = min_abs_deviation(r.spectrum.values, 1.0);
    r.epsilon = dist;
    r.nearest_eigenvalue = r.spectrum.values[idx];
    r.family = classify_family(g);
    r.achieves_half = std::abs(r.epsilon - kHalf) <= tol_half;
    return r;
}

SymMatrix build_M(const Graph& g) {
    const DegreeTable dt(g);
    SymMatrix m(g.n);
    // Entries accumulate in long double and round to double once. That keeps
    // entries at symmetric positions bit-identical regardless of the order the
    // common neighbors happen to be visited in, so an eigenvector forced to 0
    // by a graph symmetry stays an exact null vector of the stored matrix.
    for (int u = 0; u < g.n; ++u) {
        for (int v = u; v < g.n; ++v) {
            std::uint64_t common = g.adj[u] & g.adj[v];
            if (!common && u != v) {
                m.set(u, v, 0.0);
                continue;
            }
            long double s = 0;
            while (common) {
                const int w = std::countr_zero(common);
                common &= common - 1;
                s += static_cast<long double>(dt.inv[w]);
            }
            s *= static_cast<long double>(dt.inv_sqrt[u]);
            s *= static_cast<long double>(dt.inv_sqrt[v]);
            m.set(u, v, static_cast<double>(s));
        }
    }
    return m;
}

double epsilon_via_M(const Graph& g) {
    require_connected(g);
    // Extended-precision solve: the bottom eigenvalue is about to go under a
    // square root, which would blow a double-sized wobble up to ~1e-8 whenever
    // the true value sits at 0.
    const double mu = eigenvalues_sym_extended(build_M(g)).front();
    if (mu < -1e-12) throw NumericError("M matrix produced a negative bottom eigenvalue");
    return std::sqrt(std::max(0.0, mu));
}

double rayleigh_gap_quotient(const Graph& g, std::span<const double> f) {
    if (int(f.size()) != g.n) throw std::invalid_argument("function length != vertex count");
    const DegreeTable dt(g);
    double num = 0, den = 0;
    for (int w = 0; w < g.n; ++w) {
        double s = 0;
        std::uint64_t row = g.adj[w];
        while (row) {
            const int v = std::countr_zero(row);
            row &= row - 1;
            s += f[v];
        }
        num += dt.inv[w] * s * s;
        den += dt.deg[w] * f[w] * f[w];
    }
    if (den == 0) throw std::invalid_argument("zero function");
    return num / den;
}

double verify_eigenfunction(const Graph& g, std::span<const double> f, double lambda) {
    if (int(f.size()) != g.n) throw std::invalid_argument("function length != vertex count");
    const DegreeTable dt(g);
    double worst = 0;
    for (int v = 0; v < g.n; ++v) {
        double s = 0;
        std::uint64_t row = g.adj[v];
        while (row) {
            const int w = std::countr_zero(row);
            row &= row - 1;
            s += f[w];
        }
        worst = std::max(worst, std::abs(f[v] - dt.inv[v] * s - lambda * f[v]));
    }
    return worst;
}

double max_dist_from_one(const Graph& g) {
    if (g.n < 2) throw std::domain_error("needs at least two vertices");
    Spectrum s = spectrum_of(g);
    double best = 0;
    for (std::size_t i = 1; i < s.values.size(); ++i)
        best = std::max(best, std::abs(s.values[i] - 1.0));
    return best;
}

double degree_bound_epsilon(const Graph& g) {
    const int d = min_degree(g);
    if (d < 2) throw std::domain_error("minimum degree must be at least 2");
    return std::sqrt(double(d - 1)) / d;
}

SymMatrix neighborhood_laplacian(const Graph& g, int ell) {
    if (ell < 1) throw std::invalid_argument("step count must be positive");
    SymMatrix l = normalized_laplacian_sym(g);
    SymMatrix s(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j) s.set(i, j, (i == j ? 1.0 : 0.0) - l(i, j));
    SymMatrix p = s;
    for (int k = 1; k < ell; ++k) p = sym_product(p, s);
    SymMatrix out(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j) out.set(i, j, (i == j ? 1.0 : 0.0) - p(i, j));
    return out;
}

NeighborhoodGapCheck neighborhood_gap_check(const Graph& g, int ell) {
    require_connected(g);
    std::vector<double> ev = eigenvalues_sym(neighborhood_laplacian(g, ell));
    NeighborhoodGapCheck r;
    r.min_dist = min_abs_deviation(ev, 1.0).first;
    r.lambda_max = ev.back();
    const double bound = std::ldexp(1.0, -ell);  // 1 / 2^ell
    r.holds = r.min_dist <= bound + 1e-9;
    if (ell % 2 == 0)
        r.holds = r.holds && r.lambda_max >= 1.0 - bound - 1e-9 &&
                  r.lambda_max <= 1.0 + 1e-9;
    return r;
}

std::optional<double> symmetric_difference_margin(const Graph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) throw std::invalid_argument("endpoints must differ");
    if (!(g.adj[u] & g.adj[v])) return std::nullopt;
    double margin = 0;
    std::uint64_t sym = g.adj[u] ^ g.adj[v];
    while (sym) {
        const int w = std::countr_zero(sym);
        sym &= sym - 1;
        const int d = degree(g, w);
        if (d == 0) throw std::domain_error("graph has an isolated vertex");
        margin += 1.0 / d - 0.25;
    }
    return margin;
}

bool deg3_neighbor_filter(const Graph& g) {
    std::uint64_t low = 0;
    for (int v = 0; v < g.n; ++v)
        if (degree(g, v) <= 3) low |= std::uint64_t{1} << v;
    for (int v = 0; v < g.n; ++v)
        if (!(g.adj[v] & low)) return false;
    return true;
}

std::optional<double> cheap_epsilon_upper_bound(const Graph& g, double cap) {
    const DegreeTable dt(g);
    const double cap2 = cap * cap;

    // Single-vertex indicators first: cheapest, and they already kill graphs
    // with a vertex whose neighbors all have high degree.
    for (int v = 0; v < g.n; ++v) {
        double s = 0;
        std::uint64_t row = g.adj[v];
        while (row) {
            const int w = std::countr_zero(row);
            row &= row - 1;
            s += dt.inv[w];
        }
        const double q = s * dt.inv[v];
        if (q < cap2) return std::sqrt(q);
    }

    // Opposite-sign pairs with a common neighbor: the common neighbors cancel,
    // leaving only the symmetric difference in the numerator.
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            if (!(g.adj[u] & g.adj[v])) continue;
            double s = 0;
            std::uint64_t sym = g.adj[u] ^ g.adj[v];
            while (sym) {
                const int w = std::countr_zero(sym);
                sym &= sym - 1;
                s += dt.inv[w];
            }
            const double q = s / (dt.deg[u] + dt.deg[v]);
            if (q < cap2) return std::sqrt(q);
        }
    }
    return std::nullopt;
}

}  // namespace specgap
