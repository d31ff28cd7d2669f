#include "specgap/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "specgap/graph_io.hpp"

namespace specgap {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kDegreeBoundTol = 1e-9;
constexpr double kNeighborhoodTol = 1e-9;
constexpr std::size_t kExampleCap = 8;

void require_n(int n, int lo, int hi, const char* what) {
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(what) + " supports n in [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) +
                                    "], got " + std::to_string(n));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Edge index k <-> pair (i, j), i < j, in the graph6 bit order k = j(j-1)/2 + i.
struct EdgeTable {
    int ei[64];
    int ej[64];
    int m = 0;
    explicit EdgeTable(int n) {
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i, ++m) {
                ei[m] = i;
                ej[m] = j;
            }
    }
};

// Overwrites only the first n rows; the caller keeps reusing one Graph object.
void fill_from_mask(Graph& g, std::uint64_t mask, const EdgeTable& et) {
    for (int v = 0; v < g.n; ++v) g.adj[v] = 0;
    while (mask) {
        const int k = std::countr_zero(mask);
        mask &= mask - 1;
        g.adj[et.ei[k]] |= std::uint64_t{1} << et.ej[k];
        g.adj[et.ej[k]] |= std::uint64_t{1} << et.ei[k];
    }
}

void run_workers(int threads, const std::function<void(int)>& work) {
    if (threads <= 1) {
        work(0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&work, &errs, t] {
            try {
                work(t);
            } catch (...) {
                errs[std::size_t(t)] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// Chunked scan over all connected labeled graphs on n vertices. Workers grab chunks
// of the mask space from a shared counter and fold into a worker-local Partial; the
// caller merges those with an order-independent combine, so the result does not
// depend on the thread count or on which worker got which chunk.
template <typename Partial, typename Step>
std::vector<Partial> scan_labeled(int n, int threads, const Step& step) {
    const EdgeTable et(n);
    const std::uint64_t total = std::uint64_t{1} << et.m;
    const std::uint64_t chunk = 4096;
    const std::uint64_t nchunks = (total + chunk - 1) / chunk;
    std::vector<Partial> parts(static_cast<std::size_t>(threads));
    std::atomic<std::uint64_t> next{0};
    run_workers(threads, [&](int t) {
        Partial& p = parts[std::size_t(t)];
        Graph g(n);
        for (;;) {
            const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= nchunks) break;
            const std::uint64_t hi = std::min(total, (c + 1) * chunk);
            for (std::uint64_t mask = c * chunk; mask < hi; ++mask) {
                fill_from_mask(g, mask, et);
                if (!is_connected(g)) continue;
                step(p, g);
            }
        }
    });
    return parts;
}

// Same driver over a materialized list of canonical keys (isomorph-free mode).
template <typename Partial, typename Step>
std::vector<Partial> scan_keys(int n, const std::vector<std::uint64_t>& keys, int threads,
                               const Step& step) {
    const std::size_t chunk = 256;
    const std::size_t nchunks = (keys.size() + chunk - 1) / chunk;
    std::vector<Partial> parts(static_cast<std::size_t>(threads));
    std::atomic<std::size_t> next{0};
    run_workers(threads, [&](int t) {
        Partial& p = parts[std::size_t(t)];
        for (;;) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= nchunks) break;
            const std::size_t hi = std::min(keys.size(), (c + 1) * chunk);
            for (std::size_t i = c * chunk; i < hi; ++i) {
                const Graph g = graph_from_key(n, keys[i]);
                step(p, g);
            }
        }
    });
    return parts;
}

void compact(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

// Level-wise generation: attach vertex k-1 to every nonempty subset of every
// (k-1)-vertex representative, dedup by canonical key. Children of connected
// parents are connected, and every connected graph on k vertices shows up because
// deleting a spanning-tree leaf leaves a connected graph on k-1.
std::vector<std::uint64_t> isomorph_free_keys(int n) {
    std::vector<std::uint64_t> reps{canonical_key(Graph(1))};
    for (int k = 2; k <= n; ++k) {
        // Dedup in bounded chunks so the n=10 level (~133M candidate keys before
        // dedup) never holds the whole raw candidate list at once.
        constexpr std::size_t kCompactAt = std::size_t{1} << 25;
        std::vector<std::uint64_t> next;
        const std::uint32_t full = std::uint32_t{1} << (k - 1);
        for (const std::uint64_t pkey : reps) {
            const Graph parent = graph_from_key(k - 1, pkey);
            Graph child(k);
            for (std::uint32_t s = 1; s < full; ++s) {
                for (int v = 0; v < k - 1; ++v) child.adj[v] = parent.adj[v];
                child.adj[k - 1] = s;
                for (std::uint32_t rest = s; rest;) {
                    const int v = std::countr_zero(rest);
                    rest &= rest - 1;
                    child.adj[v] |= std::uint64_t{1} << (k - 1);
                }
                next.push_back(canonical_key(child));
                if (next.size() >= kCompactAt) compact(next);
            }
        }
        compact(next);
        reps = std::move(next);
    }
    return reps;
}

double epsilon_of(const Graph& g) {
    const Spectrum s = spectrum_of(g);
    return min_abs_deviation(s.values, 1.0).first;
}

// value-carrying dedup maps: combine must be associative and commutative so the
// merged result is independent of scan order and thread count
template <typename V, typename Combine>
void fold_in(std::map<std::string, V>& into, const std::string& key, const V& value,
             const Combine& combine) {
    auto [it, inserted] = into.emplace(key, value);
    if (!inserted) it->second = combine(it->second, value);
}

ordered_json violations_json(const std::vector<Violation>& violations) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : violations)
        arr.push_back({{"graph6", v.graph6}, {"value", v.value}, {"reason", v.reason}});
    return arr;
}

void sort_violations(std::vector<Violation>& violations) {
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.graph6, a.reason) < std::tie(b.graph6, b.reason);
    });
}

struct WitInfo {
    FamilyTag family;
    double eps;
};

struct GapPartial {
    std::uint64_t connected = 0;
    std::uint64_t pruned = 0;
    double max_eps = 0.0;
    std::map<std::string, WitInfo> witnesses;
    std::map<std::string, double> over_half;
};

struct DegCell {
    std::uint64_t graphs = 0;
    double max_eps = -1.0;
    std::string arg;  // canonical graph6 of the argmax; lex-min on exact ties
};

struct DegPartial {
    std::uint64_t connected = 0;
    std::array<DegCell, kMaxVertices> cell{};
    std::map<std::string, double> viol;
};

struct EllCell {
    std::uint64_t attain = 0;
    std::uint64_t top = 0;
    std::set<std::string> examples;
    std::map<std::string, double> viol;
};

struct NbrPartial {
    std::uint64_t count = 0;
    std::vector<EllCell> per_ell;
};

struct EqPartial {
    std::uint64_t connected = 0;
    double max_diff = 0.0;
    std::map<std::string, double> viol;
};

}  // namespace

void labeled_connected_stream(int n, const GraphSink& sink) {
    require_n(n, 3, 8, "labeled enumeration");
    const EdgeTable et(n);
    const std::uint64_t total = std::uint64_t{1} << et.m;
    Graph g(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        fill_from_mask(g, mask, et);
        if (is_connected(g)) sink(g);
    }
}

void isomorph_free_stream(int n, const GraphSink& sink) {
    require_n(n, 3, 10, "isomorph-free enumeration");
    for (const std::uint64_t key : isomorph_free_keys(n)) sink(graph_from_key(n, key));
}

EnumReport verify_gap_theorem(int n, EnumMode mode, bool prune, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    threads = std::max(1, threads);
    EnumReport r;
    r.n = n;
    r.prune = prune;
    r.mode = mode == EnumMode::Labeled ? "labeled" : "isomorph_free";

    const auto step = [prune](GapPartial& p, const Graph& g) {
        ++p.connected;
        if (prune && cheap_epsilon_upper_bound(g, kHalf - kPruneMargin)) {
            ++p.pruned;
            return;
        }
        const double eps = epsilon_of(g);
        if (eps > p.max_eps) p.max_eps = eps;
        if (eps >= kHalf - kWitnessTol) {
            const std::string cf = canonical_form(g);
            if (eps > kHalf + kViolationTol)
                fold_in(p.over_half, cf, eps, [](double a, double b) { return std::max(a, b); });
            fold_in(p.witnesses, cf, WitInfo{classify_family(g), eps},
                    [](const WitInfo& a, const WitInfo& b) {
                        return WitInfo{a.family, std::min(a.eps, b.eps)};
                    });
        }
    };

    std::vector<GapPartial> parts;
    if (mode == EnumMode::Labeled) {
        require_n(n, 3, 8, "labeled enumeration");
        parts = scan_labeled<GapPartial>(n, threads, step);
        r.labeled_total = std::uint64_t{1} << (n * (n - 1) / 2);
    } else {
        require_n(n, 3, 10, "isomorph-free enumeration");
        const std::vector<std::uint64_t> keys = isomorph_free_keys(n);
        parts = scan_keys<GapPartial>(n, keys, threads, step);
        r.labeled_total = keys.size();
        r.isomorphism_classes = keys.size();
    }

    GapPartial total;
    for (GapPartial& p : parts) {
        total.connected += p.connected;
        total.pruned += p.pruned;
        total.max_eps = std::max(total.max_eps, p.max_eps);
        for (const auto& [cf, wi] : p.witnesses)
            fold_in(total.witnesses, cf, wi, [](const WitInfo& a, const WitInfo& b) {
                return WitInfo{a.family, std::min(a.eps, b.eps)};
            });
        for (const auto& [cf, eps] : p.over_half)
            fold_in(total.over_half, cf, eps, [](double a, double b) { return std::max(a, b); });
    }

    r.connected_count = total.connected;
    r.pruned_by_filter = total.pruned;
    r.max_epsilon = total.max_eps;
    for (const auto& [cf, wi] : total.witnesses) {
        r.extremal_witnesses.push_back({cf, wi.family});
        if (wi.family.kind == Family::Other)
            r.violations.push_back({cf, wi.eps, "extremal graph outside the petal/book families"});
    }
    for (const auto& [cf, eps] : total.over_half)
        r.violations.push_back({cf, eps, "epsilon exceeds the half bound"});
    sort_violations(r.violations);
    r.wall_time_seconds = seconds_since(t0);
    return r;
}

DegreeBoundReport verify_degree_bound(int n, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    require_n(n, 3, 8, "the degree-bound suite");
    threads = std::max(1, threads);

    const auto step = [](DegPartial& p, const Graph& g) {
        ++p.connected;
        const int d = min_degree(g);
        if (d < 2) return;  // the bound only speaks from min degree 2 up
        const double eps = epsilon_of(g);
        DegCell& c = p.cell[std::size_t(d)];
        ++c.graphs;
        if (eps > c.max_eps) {
            c.max_eps = eps;
            c.arg = canonical_form(g);
        } else if (eps == c.max_eps) {
            std::string cf = canonical_form(g);
            if (cf < c.arg) c.arg = std::move(cf);
        }
        if (eps > std::sqrt(double(d - 1)) / d + kDegreeBoundTol)
            fold_in(p.viol, canonical_form(g), eps,
                    [](double a, double b) { return std::max(a, b); });
    };

    std::vector<DegPartial> parts = scan_labeled<DegPartial>(n, threads, step);

    DegPartial total;
    for (DegPartial& p : parts) {
        total.connected += p.connected;
        for (int d = 2; d < n; ++d) {
            const DegCell& c = p.cell[std::size_t(d)];
            if (c.graphs == 0) continue;
            DegCell& into = total.cell[std::size_t(d)];
            into.graphs += c.graphs;
            if (c.max_eps > into.max_eps) {
                into.max_eps = c.max_eps;
                into.arg = c.arg;
            } else if (c.max_eps == into.max_eps && c.arg < into.arg) {
                into.arg = c.arg;
            }
        }
        for (const auto& [cf, eps] : p.viol)
            fold_in(total.viol, cf, eps, [](double a, double b) { return std::max(a, b); });
    }

    DegreeBoundReport r;
    r.n = n;
    r.connected_count = total.connected;
    for (int d = 2; d < n; ++d) {
        const DegCell& c = total.cell[std::size_t(d)];
        if (c.graphs == 0) continue;
        r.rows.push_back({d, c.graphs, std::sqrt(double(d - 1)) / d, c.max_eps, c.arg});
    }
    for (const auto& [cf, eps] : total.viol)
        r.violations.push_back({cf, eps, "epsilon exceeds the minimum-degree bound"});
    sort_violations(r.violations);
    r.wall_time_seconds = seconds_since(t0);
    return r;
}

NeighborhoodReport verify_neighborhood_theorem(int n, int ell_max, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    require_n(n, 3, 7, "the neighborhood suite");
    if (ell_max < 1 || ell_max > 12)
        throw std::invalid_argument("ell_max must be in [1, 12], got " + std::to_string(ell_max));
    threads = std::max(1, threads);

    // One representative per class: every quantity checked here is label-invariant,
    // so attainment counts come out as class counts.
    const std::vector<std::uint64_t> keys = isomorph_free_keys(n);

    const auto step = [ell_max](NbrPartial& p, const Graph& g) {
        ++p.count;
        if (p.per_ell.empty()) p.per_ell.resize(std::size_t(ell_max) + 1);
        const std::string cf = canonical_form(g);
        for (int ell = 1; ell <= ell_max; ++ell) {
            const NeighborhoodGapCheck chk = neighborhood_gap_check(g, ell);
            EllCell& c = p.per_ell[std::size_t(ell)];
            const double bound = std::ldexp(1.0, -ell);
            if (!chk.holds)
                fold_in(c.viol, cf, chk.min_dist,
                        [](double a, double b) { return std::max(a, b); });
            if (std::abs(chk.min_dist - bound) <= kNeighborhoodTol) {
                ++c.attain;
                c.examples.insert(cf);
            }
            if (ell % 2 == 0 && std::abs(chk.lambda_max - (1.0 - bound)) <= kNeighborhoodTol)
                ++c.top;
        }
    };

    std::vector<NbrPartial> parts = scan_keys<NbrPartial>(n, keys, threads, step);

    NbrPartial total;
    total.per_ell.resize(std::size_t(ell_max) + 1);
    for (NbrPartial& p : parts) {
        total.count += p.count;
        if (p.per_ell.empty()) continue;
        for (int ell = 1; ell <= ell_max; ++ell) {
            EllCell& into = total.per_ell[std::size_t(ell)];
            EllCell& from = p.per_ell[std::size_t(ell)];
            into.attain += from.attain;
            into.top += from.top;
            into.examples.merge(from.examples);
            for (const auto& [cf, v] : from.viol)
                fold_in(into.viol, cf, v, [](double a, double b) { return std::max(a, b); });
        }
    }

    NeighborhoodReport r;
    r.n = n;
    r.ell_max = ell_max;
    r.connected_count = total.count;
    for (int ell = 1; ell <= ell_max; ++ell) {
        const EllCell& c = total.per_ell[std::size_t(ell)];
        NeighborhoodEllRow row;
        row.ell = ell;
        row.bound = std::ldexp(1.0, -ell);
        row.equality_attainments = c.attain;
        for (const std::string& cf : c.examples) {
            if (row.equality_examples.size() >= kExampleCap) break;
            row.equality_examples.push_back(cf);
        }
        row.top_equality_attainments = c.top;
        r.rows.push_back(std::move(row));
        for (const auto& [cf, v] : c.viol)
            r.violations.push_back(
                {cf, v, "no eigenvalue within the step bound of 1 (ell=" + std::to_string(ell) + ")"});
    }
    sort_violations(r.violations);
    r.wall_time_seconds = seconds_since(t0);
    return r;
}

EquivalenceReport verify_gap_equivalence(int n, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    require_n(n, 3, 8, "the equivalence suite");
    threads = std::max(1, threads);

    const auto step = [](EqPartial& p, const Graph& g) {
        ++p.connected;
        const double diff = std::abs(epsilon_of(g) - epsilon_via_M(g));
        if (diff > p.max_diff) p.max_diff = diff;
        if (diff > kViolationTol)
            fold_in(p.viol, canonical_form(g), diff,
                    [](double a, double b) { return std::max(a, b); });
    };

    std::vector<EqPartial> parts = scan_labeled<EqPartial>(n, threads, step);

    EquivalenceReport r;
    r.n = n;
    for (EqPartial& p : parts) {
        r.connected_count += p.connected;
        r.max_abs_diff = std::max(r.max_abs_diff, p.max_diff);
    }
    std::map<std::string, double> viol;
    for (EqPartial& p : parts)
        for (const auto& [cf, v] : p.viol)
            fold_in(viol, cf, v, [](double a, double b) { return std::max(a, b); });
    for (const auto& [cf, v] : viol)
        r.violations.push_back({cf, v, "the two epsilon computations disagree"});
    sort_violations(r.violations);
    r.wall_time_seconds = seconds_since(t0);
    return r;
}

void enumerate_csv(int n, EnumMode mode, double eps_min, std::ostream& out) {
    out << "graph6,n,d_min,epsilon,family\n";
    const auto emit = [&](const Graph& g) {
        const double eps = epsilon_of(g);
        if (eps < eps_min) return;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", eps);
        out << emit_graph6(g) << ',' << g.n << ',' << min_degree(g) << ',' << buf << ','
            << family_spelling(classify_family(g)) << '\n';
    };
    if (mode == EnumMode::Labeled)
        labeled_connected_stream(n, emit);
    else
        isomorph_free_stream(n, emit);
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SPECGAP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return int(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

std::string report_to_json(const EnumReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "gap_theorem";
    j["n"] = r.n;
    j["mode"] = r.mode;
    j["prune"] = r.prune;
    j["tolerances"] = {{"witness", kWitnessTol},
                       {"violation", kViolationTol},
                       {"prune_margin", kPruneMargin}};
    ordered_json counts;
    counts["labeled_total"] = r.labeled_total;
    counts["connected"] = r.connected_count;
    if (r.isomorphism_classes) counts["isomorphism_classes"] = *r.isomorphism_classes;
    counts["pruned_by_filter"] = r.pruned_by_filter;
    j["counts"] = counts;
    j["max_epsilon"] = r.max_epsilon;
    ordered_json wits = ordered_json::array();
    for (const auto& w : r.extremal_witnesses)
        wits.push_back({{"graph6", w.graph6}, {"family", family_spelling(w.family)}});
    j["extremal_witnesses"] = wits;
    j["violations"] = violations_json(r.violations);
    j["timing"] = {{"wall_time_seconds", r.wall_time_seconds}};
    return j.dump(2);
}

std::string report_to_json(const DegreeBoundReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "degree_bound";
    j["n"] = r.n;
    j["tolerances"] = {{"violation", kDegreeBoundTol}};
    j["counts"] = {{"connected", r.connected_count}};
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"min_degree", row.min_deg},
                        {"graphs", row.graphs},
                        {"bound", row.bound},
                        {"max_epsilon", row.max_epsilon},
                        {"argmax_graph6", row.argmax_graph6}});
    j["rows"] = rows;
    j["violations"] = violations_json(r.violations);
    j["timing"] = {{"wall_time_seconds", r.wall_time_seconds}};
    return j.dump(2);
}

std::string report_to_json(const NeighborhoodReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "neighborhood";
    j["n"] = r.n;
    j["ell_max"] = r.ell_max;
    j["tolerances"] = {{"equality", kNeighborhoodTol}, {"violation", kNeighborhoodTol}};
    j["counts"] = {{"connected", r.connected_count}};
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"ell", row.ell},
                        {"bound", row.bound},
                        {"equality_attainments", row.equality_attainments},
                        {"equality_examples", row.equality_examples},
                        {"top_equality_attainments", row.top_equality_attainments}});
    j["rows"] = rows;
    j["violations"] = violations_json(r.violations);
    j["timing"] = {{"wall_time_seconds", r.wall_time_seconds}};
    return j.dump(2);
}

std::string report_to_json(const EquivalenceReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "gap_equivalence";
    j["n"] = r.n;
    j["tolerances"] = {{"violation", kViolationTol}};
    j["counts"] = {{"connected", r.connected_count}};
    j["max_abs_diff"] = r.max_abs_diff;
    j["violations"] = violations_json(r.violations);
    j["timing"] = {{"wall_time_seconds", r.wall_time_seconds}};
    return j.dump(2);
}

}  // namespace specgap
