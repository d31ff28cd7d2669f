#include "specgap/graph.hpp"

#include <array>
#include <cstdio>

namespace specgap {

namespace {

std::uint64_t full_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

int degree(const Graph& g, int v) {
    g.check_vertex(v);
    return std::popcount(g.adj[v]);
}

int min_degree(const Graph& g) {
    int d = kMaxVertices;
    for (int v = 0; v < g.n; ++v) d = std::min(d, std::popcount(g.adj[v]));
    return d;
}

bool is_connected(const Graph& g) {
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint64_t reach = 0;
        for (std::uint64_t f = frontier; f;) {
            int v = std::countr_zero(f);
            f &= f - 1;
            reach |= g.adj[v];
        }
        frontier = reach & ~seen;
        seen |= frontier;
    }
    return seen == full_mask(g.n);
}

bool is_bipartite(const Graph& g) {
    std::array<std::int8_t, kMaxVertices> color;
    color.fill(-1);
    std::array<int, kMaxVertices> queue;
    for (int s = 0; s < g.n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        int head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            int u = queue[head++];
            for (std::uint64_t row = g.adj[u]; row;) {
                int w = std::countr_zero(row);
                row &= row - 1;
                if (color[w] < 0) {
                    color[w] = static_cast<std::int8_t>(1 - color[u]);
                    queue[tail++] = w;
                } else if (color[w] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

Graph make_family(const FamilyTag& tag) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    switch (tag.kind) {
        case Family::Petal: {
            require(tag.a >= 1, "petal needs m >= 1");
            const int m = tag.a;
            Graph g(2 * m + 1);  // apex 0, v_i = i, w_i = m+i
            for (int i = 1; i <= m; ++i) {
                g.add_edge(0, i);
                g.add_edge(0, m + i);
                g.add_edge(i, m + i);
            }
            return g;
        }
        case Family::Book: {
            require(tag.a >= 1, "book needs m >= 1");
            const int m = tag.a;
            Graph g(2 * m + 2);  // x = 0, y = 1, v_i = 1+i, w_i = 1+m+i; no x-y edge
            for (int i = 1; i <= m; ++i) {
                g.add_edge(0, 1 + i);
                g.add_edge(1, 1 + m + i);
                g.add_edge(1 + i, 1 + m + i);
            }
            return g;
        }
        case Family::Path: {
            require(tag.a >= 1, "path needs N >= 1");
            Graph g(tag.a);
            for (int i = 0; i + 1 < tag.a; ++i) g.add_edge(i, i + 1);
            return g;
        }
        case Family::Cycle: {
            require(tag.a >= 3, "cycle needs N >= 3");
            Graph g(tag.a);
            for (int i = 0; i + 1 < tag.a; ++i) g.add_edge(i, i + 1);
            g.add_edge(tag.a - 1, 0);
            return g;
        }
        case Family::Complete: {
            require(tag.a >= 1, "complete graph needs N >= 1");
            Graph g(tag.a);
            for (int i = 0; i < tag.a; ++i)
                for (int j = i + 1; j < tag.a; ++j) g.add_edge(i, j);
            return g;
        }
        case Family::CompleteBipartite: {
            require(tag.a >= 1 && tag.b >= 1, "complete bipartite needs sides >= 1");
            Graph g(tag.a + tag.b);
            for (int i = 0; i < tag.a; ++i)
                for (int j = 0; j < tag.b; ++j) g.add_edge(i, tag.a + j);
            return g;
        }
        case Family::Other:
            break;
    }
    throw std::invalid_argument("cannot construct an unnamed family");
}

namespace {

bool petal_shape(const Graph& g, int m) {
    const int n = 2 * m + 1;
    if (g.n != n) return false;
    if (m == 1)  // triangle: three vertices, all of degree 2
        return std::popcount(g.adj[0]) == 2 && std::popcount(g.adj[1]) == 2 &&
               std::popcount(g.adj[2]) == 2;
    int apex = -1;
    for (int v = 0; v < n; ++v) {
        const int d = std::popcount(g.adj[v]);
        if (d == 2 * m) {
            if (apex >= 0) return false;
            apex = v;
        } else if (d != 2) {
            return false;
        }
    }
    if (apex < 0) return false;
    if (g.adj[apex] != (full_mask(n) ^ (std::uint64_t{1} << apex))) return false;
    const std::uint64_t apex_bit = std::uint64_t{1} << apex;
    for (int v = 0; v < n; ++v) {
        if (v == apex) continue;
        // page vertex: the apex plus exactly one partner page vertex
        if (!(g.adj[v] & apex_bit)) return false;
        if (std::popcount(g.adj[v] ^ apex_bit) != 1) return false;
    }
    return true;
}

bool book_shape(const Graph& g, int m) {
    const int n = 2 * m + 2;
    if (g.n != n) return false;
    if (m == 1) {  // the 4-path
        if (!is_connected(g)) return false;
        int ones = 0, twos = 0;
        for (int v = 0; v < 4; ++v) {
            const int d = std::popcount(g.adj[v]);
            if (d == 1) ++ones;
            else if (d == 2) ++twos;
            else return false;
        }
        return ones == 2 && twos == 2;
    }
    if (m == 2) {  // the 6-cycle
        for (int v = 0; v < 6; ++v)
            if (std::popcount(g.adj[v]) != 2) return false;
        return is_connected(g);
    }
    int x = -1, y = -1;
    for (int v = 0; v < n; ++v) {
        const int d = std::popcount(g.adj[v]);
        if (d == m) {
            if (x < 0) x = v;
            else if (y < 0) y = v;
            else return false;
        } else if (d != 2) {
            return false;
        }
    }
    if (y < 0) return false;
    if (g.has_edge(x, y)) return false;
    if (g.adj[x] & g.adj[y]) return false;  // pages may not share a vertex
    const std::uint64_t xb = std::uint64_t{1} << x;
    // every page vertex on x's side runs x - v - w with w on y's side
    for (std::uint64_t side = g.adj[x]; side;) {
        const int v = std::countr_zero(side);
        side &= side - 1;
        if (std::popcount(g.adj[v]) != 2) return false;
        const std::uint64_t other = g.adj[v] ^ xb;
        if (std::popcount(other) != 1) return false;
        if (!(other & g.adj[y])) return false;
    }
    for (std::uint64_t side = g.adj[y]; side;) {
        const int w = std::countr_zero(side);
        side &= side - 1;
        if (std::popcount(g.adj[w]) != 2) return false;
    }
    return true;
}

}  // namespace

FamilyTag classify_family(const Graph& g) {
    if (g.n >= 3 && g.n % 2 == 1) {
        const int m = (g.n - 1) / 2;
        if (petal_shape(g, m)) return petal_tag(m);
    }
    if (g.n >= 4 && g.n % 2 == 0) {
        const int m = (g.n - 2) / 2;
        if (book_shape(g, m)) return book_tag(m);
    }
    return {Family::Other, 0, 0};
}

std::string family_to_string(const FamilyTag& tag) {
    char buf[48];
    switch (tag.kind) {
        case Family::Petal: std::snprintf(buf, sizeof buf, "Petal(%d)", tag.a); break;
        case Family::Book: std::snprintf(buf, sizeof buf, "Book(%d)", tag.a); break;
        case Family::Path: std::snprintf(buf, sizeof buf, "Path(%d)", tag.a); break;
        case Family::Cycle: std::snprintf(buf, sizeof buf, "Cycle(%d)", tag.a); break;
        case Family::Complete: std::snprintf(buf, sizeof buf, "Complete(%d)", tag.a); break;
        case Family::CompleteBipartite:
            std::snprintf(buf, sizeof buf, "CompleteBipartite(%d,%d)", tag.a, tag.b);
            break;
        case Family::Other: return "Other";
    }
    return buf;
}

std::string family_spelling(const FamilyTag& tag) {
    char buf[48];
    switch (tag.kind) {
        case Family::Petal: std::snprintf(buf, sizeof buf, "petal:%d", tag.a); break;
        case Family::Book: std::snprintf(buf, sizeof buf, "book:%d", tag.a); break;
        case Family::Path: std::snprintf(buf, sizeof buf, "path:%d", tag.a); break;
        case Family::Cycle: std::snprintf(buf, sizeof buf, "cycle:%d", tag.a); break;
        case Family::Complete: std::snprintf(buf, sizeof buf, "complete:%d", tag.a); break;
        case Family::CompleteBipartite:
            std::snprintf(buf, sizeof buf, "complete-bipartite:%d,%d", tag.a, tag.b);
            break;
        case Family::Other: return "other";
    }
    return buf;
}

FamilyTag family_from_string(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("family spelling is name:params, got '" + s + "'");
    const std::string name = s.substr(0, colon);
    const std::string params = s.substr(colon + 1);
    auto parse_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad family parameter '" + t + "'");
        }
        if (used != t.size()) throw std::invalid_argument("bad family parameter '" + t + "'");
        return v;
    };
    if (name == "complete-bipartite") {
        const auto comma = params.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("complete-bipartite needs two sides a,b");
        return {Family::CompleteBipartite, parse_int(params.substr(0, comma)),
                parse_int(params.substr(comma + 1))};
    }
    const int a = parse_int(params);
    if (name == "petal") return petal_tag(a);
    if (name == "book") return book_tag(a);
    if (name == "path") return {Family::Path, a, 0};
    if (name == "cycle") return {Family::Cycle, a, 0};
    if (name == "complete") return {Family::Complete, a, 0};
    throw std::invalid_argument("unknown family '" + name + "'");
}

}  // namespace specgap
