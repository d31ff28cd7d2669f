#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "specgap/enumerate.hpp"
#include "specgap/graph_io.hpp"
#include "specgap/spectral.hpp"
#include "test_util.hpp"

using namespace specgap;
using nlohmann::json;

namespace {

// Connected labeled graph counts by the subtraction recurrence:
// C(n) = 2^binom(n,2) - sum_{k=1}^{n-1} binom(n-1,k-1) C(k) 2^binom(n-k,2),
// splitting off the component of vertex 0. Independent of the streaming code.
std::vector<std::uint64_t> connected_labeled_counts(int up_to) {
    std::vector<std::vector<std::uint64_t>> binom(up_to + 1);
    for (int i = 0; i <= up_to; ++i) {
        binom[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
    }
    auto all_graphs = [](int k) { return std::uint64_t{1} << (k * (k - 1) / 2); };
    std::vector<std::uint64_t> c(up_to + 1, 0);
    for (int n = 1; n <= up_to; ++n) {
        std::uint64_t total = all_graphs(n);
        for (int k = 1; k < n; ++k)
            total -= binom[n - 1][k - 1] * c[k] * all_graphs(n - k);
        c[n] = total;
    }
    return c;
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if (mask & (std::uint64_t{1} << k)) g.add_edge(i, j);
    return g;
}

// Brute-force scan of every edge mask; the second independent count oracle.
std::uint64_t connected_count_by_scan(int n) {
    const std::uint64_t top = std::uint64_t{1} << (n * (n - 1) / 2);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < top; ++mask)
        if (is_connected(graph_from_mask(n, mask))) ++count;
    return count;
}

std::uint64_t automorphism_count(const Graph& g) {
    std::vector<int> p(g.n);
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (int u = 0; u < g.n && ok; ++u)
            for (int v = u + 1; v < g.n && ok; ++v)
                if (g.has_edge(u, v) != g.has_edge(p[u], p[v])) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

json parsed_without_timing(const std::string& s) {
    json j = json::parse(s);
    j.erase("timing");
    return j;
}

}  // namespace

TEST_CASE("the two labeled-count oracles agree with each other") {
    auto rec = connected_labeled_counts(8);
    CHECK(rec[3] == 4);
    CHECK(rec[4] == 38);
    CHECK(rec[5] == 728);
    CHECK(rec[6] == 26704);
    CHECK(rec[7] == 1866256);
    CHECK(rec[8] == 251548592);
    for (int n = 1; n <= 6; ++n) CHECK(connected_count_by_scan(n) == rec[n]);
}

TEST_CASE("labeled stream hits every connected mask exactly once") {
    auto rec = connected_labeled_counts(7);
    CHECK_THROWS_AS(labeled_connected_stream(2, [](const Graph&) {}), std::invalid_argument);
    CHECK_THROWS_AS(labeled_connected_stream(9, [](const Graph&) {}), std::invalid_argument);
    for (int n = 3; n <= 6; ++n) {
        std::uint64_t count = 0;
        std::uint64_t last_mask = 0;
        bool first = true;
        labeled_connected_stream(n, [&](const Graph& g) {
            ++count;
            CHECK(g.n == n);
            CHECK(is_connected(g));
            // reconstruct the mask to confirm ascending order (no repeats, no gaps)
            std::uint64_t mask = 0;
            int k = 0;
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i, ++k)
                    if (g.has_edge(i, j)) mask |= std::uint64_t{1} << k;
            if (!first) CHECK(mask > last_mask);
            first = false;
            last_mask = mask;
        });
        CHECK(count == rec[n]);
    }
    std::uint64_t n7 = 0;
    labeled_connected_stream(7, [&](const Graph&) { ++n7; });
    CHECK(n7 == rec[7]);
}

TEST_CASE("canonical form is an isomorphism invariant and nothing more") {
    std::mt19937 rng(2026);
    SUBCASE("invariant under relabeling") {
        for (int rep = 0; rep < 200; ++rep) {
            const int n = 2 + rep % 7;
            Graph g = testutil::random_connected_graph(n, 0.4, rng);
            Graph h = testutil::permute_graph(g, testutil::random_permutation(n, rng));
            CHECK(canonical_form(g) == canonical_form(h));
            if (n <= 11) CHECK(canonical_key(g) == canonical_key(h));
        }
    }
    SUBCASE("separates non-isomorphic graphs (checked against brute force)") {
        for (int rep = 0; rep < 120; ++rep) {
            const int n = 4 + rep % 3;
            Graph a = testutil::random_connected_graph(n, 0.45, rng);
            Graph b = testutil::random_connected_graph(n, 0.45, rng);
            CHECK((canonical_form(a) == canonical_form(b)) ==
                  testutil::brute_force_isomorphic(a, b));
        }
    }
    SUBCASE("the form parses back to an isomorphic graph") {
        for (int rep = 0; rep < 40; ++rep) {
            const int n = 3 + rep % 5;
            Graph g = testutil::random_connected_graph(n, 0.5, rng);
            Graph back = parse_graph6(canonical_form(g));
            CHECK(testutil::brute_force_isomorphic(g, back));
        }
    }
    SUBCASE("key round-trips through graph_from_key") {
        for (int rep = 0; rep < 60; ++rep) {
            const int n = 2 + rep % 9;  // up to 10
            Graph g = testutil::random_connected_graph(n, 0.4, rng);
            const std::uint64_t key = canonical_key(g);
            Graph back = graph_from_key(n, key);
            CHECK(canonical_key(back) == key);
            if (n <= 7) CHECK(testutil::brute_force_isomorphic(g, back));
        }
    }
    SUBCASE("keys stop at 11 vertices") {
        Graph big(12);
        for (int v = 1; v < 12; ++v) big.add_edge(0, v);
        CHECK_THROWS_AS(canonical_key(big), std::invalid_argument);
        CHECK_THROWS_AS(graph_from_key(12, 0), std::invalid_argument);
    }
    SUBCASE("disconnected graphs canonicalize too") {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        Graph h(4);
        h.add_edge(0, 2);
        h.add_edge(1, 3);
        CHECK(canonical_form(g) == canonical_form(h));
    }
}

TEST_CASE("isomorph-free stream: counts, uniqueness, completeness") {
    const std::vector<std::uint64_t> classes = {0, 1, 1, 2, 6, 21, 112, 853, 11117};
    SUBCASE("class counts up to 8 vertices") {
        CHECK_THROWS_AS(isomorph_free_stream(2, [](const Graph&) {}), std::invalid_argument);
        CHECK_THROWS_AS(isomorph_free_stream(11, [](const Graph&) {}), std::invalid_argument);
        for (int n = 3; n <= 8; ++n) {
            std::uint64_t count = 0;
            std::uint64_t last_key = 0;
            isomorph_free_stream(n, [&](const Graph& g) {
                ++count;
                CHECK(is_connected(g));
                const std::uint64_t key = canonical_key(g);
                if (count > 1) CHECK(key > last_key);  // ascending = sorted + duplicate-free
                last_key = key;
            });
            CHECK(count == classes[n]);
        }
    }
    SUBCASE("representatives cover every connected labeled graph (dedup cross-check)") {
        for (int n = 3; n <= 7; ++n) {
            std::set<std::uint64_t> from_labeled;
            labeled_connected_stream(
                n, [&](const Graph& g) { from_labeled.insert(canonical_key(g)); });
            std::vector<std::uint64_t> from_stream;
            isomorph_free_stream(
                n, [&](const Graph& g) { from_stream.push_back(canonical_key(g)); });
            CHECK(from_labeled.size() == from_stream.size());
            CHECK(std::equal(from_labeled.begin(), from_labeled.end(), from_stream.begin(),
                             from_stream.end()));
        }
    }
    SUBCASE("orbit sizes add up: sum of n!/|Aut| recovers the labeled count") {
        auto rec = connected_labeled_counts(6);
        for (int n = 3; n <= 6; ++n) {
            std::uint64_t total = 0;
            isomorph_free_stream(n, [&](const Graph& g) {
                total += factorial(n) / automorphism_count(g);
            });
            CHECK(total == rec[n]);
        }
    }
}

TEST_CASE("gap theorem suite at small n") {
    SUBCASE("witness classes are exactly the expected families") {
        EnumReport r3 = verify_gap_theorem(3, EnumMode::Labeled, false, 1);
        REQUIRE(r3.extremal_witnesses.size() == 1);
        CHECK(r3.extremal_witnesses[0].family == petal_tag(1));
        CHECK(r3.violations.empty());
        CHECK(r3.max_epsilon == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(r3.connected_count == 4);
        CHECK(r3.labeled_total == 8);

        EnumReport r4 = verify_gap_theorem(4, EnumMode::Labeled, false, 1);
        REQUIRE(r4.extremal_witnesses.size() == 1);
        CHECK(r4.extremal_witnesses[0].family == book_tag(1));

        EnumReport r5 = verify_gap_theorem(5, EnumMode::IsomorphFree, false, 1);
        REQUIRE(r5.extremal_witnesses.size() == 1);
        CHECK(r5.extremal_witnesses[0].family == petal_tag(2));
        CHECK(r5.isomorphism_classes.has_value());
        CHECK(*r5.isomorphism_classes == 21);

        EnumReport r6 = verify_gap_theorem(6, EnumMode::Labeled, false, 1);
        REQUIRE(r6.extremal_witnesses.size() == 1);
        CHECK(r6.extremal_witnesses[0].family == book_tag(2));
        CHECK(r6.connected_count == 26704);
    }
    SUBCASE("pruned and unpruned runs agree exactly") {
        for (int n = 4; n <= 6; ++n) {
            EnumReport off = verify_gap_theorem(n, EnumMode::Labeled, false, 1);
            EnumReport on = verify_gap_theorem(n, EnumMode::Labeled, true, 1);
            CHECK(off.max_epsilon == on.max_epsilon);
            CHECK(off.extremal_witnesses == on.extremal_witnesses);
            CHECK(off.violations == on.violations);
            CHECK(off.connected_count == on.connected_count);
            CHECK(off.pruned_by_filter == 0);
            if (n >= 5) CHECK(on.pruned_by_filter > 0);
        }
    }
    SUBCASE("labeled and isomorph-free modes see the same extremes") {
        for (int n = 3; n <= 6; ++n) {
            EnumReport lab = verify_gap_theorem(n, EnumMode::Labeled, true, 1);
            EnumReport iso = verify_gap_theorem(n, EnumMode::IsomorphFree, true, 1);
            CHECK(lab.max_epsilon == doctest::Approx(iso.max_epsilon).epsilon(1e-12));
            CHECK(lab.extremal_witnesses == iso.extremal_witnesses);
        }
    }
    SUBCASE("thread count changes nothing but the timing") {
        EnumReport a = verify_gap_theorem(6, EnumMode::Labeled, true, 1);
        EnumReport b = verify_gap_theorem(6, EnumMode::Labeled, true, 3);
        CHECK(parsed_without_timing(report_to_json(a)) ==
              parsed_without_timing(report_to_json(b)));
    }
}

TEST_CASE("degree bound suite") {
    DegreeBoundReport r = verify_degree_bound(6, 2);
    CHECK(r.violations.empty());
    CHECK(r.n == 6);
    REQUIRE(!r.rows.empty());
    for (const auto& row : r.rows) {
        CHECK(row.bound == doctest::Approx(std::sqrt(double(row.min_deg - 1)) / row.min_deg));
        CHECK(row.max_epsilon <= row.bound + 1e-9);
        CHECK(row.graphs > 0);
        CHECK(!row.argmax_graph6.empty());
    }
    CHECK(r.rows.front().min_deg == 2);
    CHECK(r.rows.front().max_epsilon == doctest::Approx(0.5).epsilon(1e-10));  // book(2) is here
    CHECK(r.rows.back().min_deg == 5);  // K6
}

TEST_CASE("neighborhood suite") {
    NeighborhoodReport r = verify_neighborhood_theorem(5, 4, 2);
    CHECK(r.violations.empty());
    REQUIRE(int(r.rows.size()) == 4);
    const std::string petal2 = canonical_form(make_family(petal_tag(2)));
    for (const auto& row : r.rows) {
        CHECK(row.bound == doctest::Approx(std::ldexp(1.0, -row.ell)));
        CHECK(row.equality_attainments >= 1);  // petal(2) attains every ell
        CHECK(std::find(row.equality_examples.begin(), row.equality_examples.end(),
                        petal2) != row.equality_examples.end());
        CHECK(std::is_sorted(row.equality_examples.begin(), row.equality_examples.end()));
        if (row.ell % 2 == 0) CHECK(row.top_equality_attainments >= 1);
    }
}

TEST_CASE("equivalence suite keeps the two epsilon definitions glued") {
    EquivalenceReport r = verify_gap_equivalence(6, 2);
    CHECK(r.violations.empty());
    CHECK(r.max_abs_diff <= 1e-8);
    CHECK(r.connected_count == 26704);
}

TEST_CASE("csv export") {
    std::ostringstream out;
    enumerate_csv(4, EnumMode::IsomorphFree, 0.0, out);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "graph6,n,d_min,epsilon,family");
    int rows = 0, p4_rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.find("book:1") != std::string::npos) ++p4_rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 6);
    CHECK(p4_rows == 1);

    std::ostringstream filtered;
    enumerate_csv(4, EnumMode::IsomorphFree, 0.49, filtered);
    std::istringstream fin(filtered.str());
    std::getline(fin, line);  // header
    rows = 0;
    while (std::getline(fin, line)) {
        ++rows;
        CHECK(line.find("book:1") != std::string::npos);
    }
    CHECK(rows == 1);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_thread_count(4) == 4);
    CHECK(resolve_thread_count(1) == 1);
    setenv("SPECGAP_THREADS", "3", 1);
    CHECK(resolve_thread_count(0) == 3);
    setenv("SPECGAP_THREADS", "garbage", 1);
    CHECK(resolve_thread_count(0) >= 1);
    unsetenv("SPECGAP_THREADS");
    CHECK(resolve_thread_count(0) >= 1);
    CHECK(resolve_thread_count(-2) >= 1);
}

TEST_CASE("report json shape and determinism") {
    EnumReport r = verify_gap_theorem(5, EnumMode::Labeled, true, 2);
    json j = json::parse(report_to_json(r));
    CHECK(j["schema_version"] == 1);
    CHECK(j["kind"] == "gap_theorem");
    CHECK(j["n"] == 5);
    CHECK(j["mode"] == "labeled");
    CHECK(j["prune"] == true);
    CHECK(j["counts"]["connected"] == 728);
    CHECK(j["max_epsilon"].is_number());
    REQUIRE(j["extremal_witnesses"].is_array());
    CHECK(j["extremal_witnesses"][0]["family"] == "petal:2");
    CHECK(j["violations"].is_array());
    CHECK(j["timing"]["wall_time_seconds"].is_number());

    // byte-identical across repeat runs and thread counts, timing aside
    EnumReport r2 = verify_gap_theorem(5, EnumMode::Labeled, true, 3);
    CHECK(parsed_without_timing(report_to_json(r)) ==
          parsed_without_timing(report_to_json(r2)));

    json jd = json::parse(report_to_json(verify_degree_bound(5, 1)));
    CHECK(jd["kind"] == "degree_bound");
    CHECK(jd["schema_version"] == 1);
    REQUIRE(jd["rows"].is_array());
    CHECK(jd["rows"][0]["min_degree"].is_number());

    json jn = json::parse(report_to_json(verify_neighborhood_theorem(4, 3, 1)));
    CHECK(jn["kind"] == "neighborhood");
    CHECK(jn["ell_max"] == 3);

    json je = json::parse(report_to_json(verify_gap_equivalence(4, 1)));
    CHECK(je["kind"] == "gap_equivalence");
    CHECK(je["max_abs_diff"].is_number());
}
