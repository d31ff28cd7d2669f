#include "specgap/graph_io.hpp"

#include <sstream>
#include <string>

namespace specgap {

Graph parse_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    Graph g;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, lineno); };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tok(line);
        if (n < 0) {
            long v;
            if (!(tok >> v)) {
                std::string rest;
                if (tok.clear(), tok >> rest) fail("expected vertex count, got '" + rest + "'");
                continue;  // blank line before the header
            }
            std::string extra;
            if (tok >> extra) fail("vertex count line has trailing token '" + extra + "'");
            if (v < 1 || v > kMaxVertices)
                fail("vertex count must be in [1, 64], got " + std::to_string(v));
            n = static_cast<int>(v);
            g = Graph(n);
            continue;
        }
        long u, v;
        if (!(tok >> u)) {
            std::string rest;
            if (tok.clear(), tok >> rest) fail("expected edge 'u v', got '" + rest + "'");
            continue;  // blank line
        }
        if (!(tok >> v)) fail("edge line needs two endpoints");
        std::string extra;
        if (tok >> extra) fail("edge line has trailing token '" + extra + "'");
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail("edge endpoint out of range [0, " + std::to_string(n) + ")");
        if (u == v) fail("self-loops are not allowed");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (n < 0) throw ParseError("input has no vertex count line");
    return g;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

std::string emit_edge_list(const Graph& g) {
    std::string out = std::to_string(g.n) + "\n";
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if ((g.adj[u] >> v) & 1u)
                out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

namespace {

constexpr int kG6Lo = 63, kG6Hi = 126;

int g6_value(unsigned char c, std::size_t pos) {
    if (c < kG6Lo || c > kG6Hi)
        throw ParseError("graph6 byte out of range at position " + std::to_string(pos));
    return c - kG6Lo;
}

}  // namespace

Graph parse_graph6(const std::string& input) {
    std::string s = input;
    if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
    if (s.empty()) throw ParseError("empty graph6 string");

    std::size_t pos = 0;
    long n;
    if (s[pos] == '~') {
        ++pos;
        if (pos < s.size() && s[pos] == '~')
            throw ParseError("graph6 vertex count beyond 64 is unsupported");
        if (pos + 3 > s.size()) throw ParseError("truncated graph6 vertex count");
        n = 0;
        for (int k = 0; k < 3; ++k, ++pos) n = (n << 6) | g6_value(s[pos], pos);
    } else {
        n = g6_value(s[pos], pos);
        ++pos;
    }
    if (n < 1 || n > kMaxVertices)
        throw ParseError("graph6 vertex count " + std::to_string(n) + " outside [1, 64]");

    Graph g(static_cast<int>(n));
    const long bits = n * (n - 1) / 2;
    const std::size_t nbytes = static_cast<std::size_t>((bits + 5) / 6);
    if (s.size() - pos != nbytes)
        throw ParseError("graph6 adjacency section has " + std::to_string(s.size() - pos) +
                         " bytes, expected " + std::to_string(nbytes));
    long k = 0;
    int j = 1, i = 0;
    for (std::size_t b = 0; b < nbytes; ++b, ++pos) {
        const int val = g6_value(s[pos], pos);
        for (int shift = 5; shift >= 0; --shift, ++k) {
            const bool bit = (val >> shift) & 1;
            if (k >= bits) {
                if (bit) throw ParseError("nonzero padding bits in graph6 string");
                continue;
            }
            if (bit) g.add_edge(i, j);
            if (++i == j) {
                i = 0;
                ++j;
            }
        }
    }
    return g;
}

std::string emit_graph6(const Graph& g) {
    std::string out;
    if (g.n >= 63) {
        out.push_back('~');
        out.push_back(static_cast<char>(kG6Lo + ((g.n >> 12) & 63)));
        out.push_back(static_cast<char>(kG6Lo + ((g.n >> 6) & 63)));
        out.push_back(static_cast<char>(kG6Lo + (g.n & 63)));
    } else {
        out.push_back(static_cast<char>(kG6Lo + g.n));
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < g.n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | static_cast<int>((g.adj[i] >> j) & 1u);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(kG6Lo + acc));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>(kG6Lo + (acc << (6 - nbits))));
    return out;
}

}  // namespace specgap
