#include "specgap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specgap {

namespace {

// Householder reduction to tridiagonal form, eigenvalues-only variant: the
// classic symmetric reduction with the eigenvector accumulation stripped.
// Destroys a (row-major n*n), leaves the diagonal in d and the subdiagonal in
// e[1..n-1]. Templated on the scalar so the same code runs in double and, for
// callers that square-root near-zero eigenvalues, in 80-bit long double.
template <typename F>
void tridiagonalize(std::vector<F>& a, int n, std::vector<F>& d, std::vector<F>& e) {
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        F h = 0, scale = 0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
            if (scale == F(0)) {
                e[i] = a[i * n + l];
            } else {
                for (int k = 0; k <= l; ++k) {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                F f = a[i * n + l];
                F g = f >= F(0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                f = 0;
                for (int j = 0; j <= l; ++j) {
                    g = 0;
                    for (int k = 0; k <= j; ++k) g += a[j * n + k] * a[i * n + k];
                    for (int k = j + 1; k <= l; ++k) g += a[k * n + j] * a[i * n + k];
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                const F hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a[i * n + j];
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k)
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
    }
    e[0] = 0;
    for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues land in d
// unordered. Wilkinson-style shift from the leading 2x2, plane rotations chased
// bottom-up.
template <typename F>
void ql_implicit_shift(std::vector<F>& d, std::vector<F>& e, int n) {
    constexpr F eps = std::numeric_limits<F>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const F dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw NumericError("symmetric QL failed to converge in 50 sweeps");
                F g = (d[l + 1] - d[l]) / (2 * e[l]);
                F r = std::hypot(g, F(1));
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                F s = 1, c = 1, p = 0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    F f = s * e[i];
                    const F b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == F(0)) {  // rotation annihilated early; restart the sweep
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == F(0) && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
}

template <typename F>
std::vector<F> eigenvalues_core(const SymMatrix& m) {
    const int n = m.size();
    for (double v : m.data())
        if (!std::isfinite(v)) throw NumericError("matrix entry is not finite");
    if (n == 1) return {F(m(0, 0))};
    std::vector<F> a(m.data().begin(), m.data().end());
    std::vector<F> d(n), e(n);
    tridiagonalize(a, n, d, e);
    ql_implicit_shift(d, e, n);
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

std::vector<double> eigenvalues_sym(const SymMatrix& m) {
    return eigenvalues_core<double>(m);
}

std::vector<double> eigenvalues_sym_extended(const SymMatrix& m) {
    std::vector<long double> d = eigenvalues_core<long double>(m);
    return std::vector<double>(d.begin(), d.end());
}

std::vector<EigenGroup> cluster(const std::vector<double>& ascending, double tol) {
    if (tol < 0) throw std::invalid_argument("cluster tolerance must be nonnegative");
    if (!std::is_sorted(ascending.begin(), ascending.end()))
        throw std::invalid_argument("cluster input must be ascending");
    std::vector<EigenGroup> groups;
    std::size_t i = 0;
    while (i < ascending.size()) {
        const double anchor = ascending[i];
        double sum = 0.0;
        int count = 0;
        while (i < ascending.size() && ascending[i] - anchor <= tol) {
            sum += ascending[i];
            ++count;
            ++i;
        }
        groups.push_back({sum / count, count});
    }
    return groups;
}

Spectrum spectrum_from_values(std::vector<double> ascending, double tol) {
    if (!std::is_sorted(ascending.begin(), ascending.end()))
        throw std::invalid_argument("spectrum values must be ascending");
    Spectrum s;
    s.groups = cluster(ascending, tol);
    s.values = std::move(ascending);
    return s;
}

std::pair<double, std::size_t> min_abs_deviation(const std::vector<double>& values,
                                                 double center) {
    if (values.empty()) throw std::invalid_argument("deviation of an empty value list");
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dist = std::abs(center - values[i]);
        if (dist < best) {
            best = dist;
            arg = i;
        }
    }
    return {best, arg};
}

SymMatrix sym_product(const SymMatrix& a, const SymMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch in product");
    const int n = a.n_;
    SymMatrix c(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += a.a_[i * n + k] * b.a_[k * n + j];
            c.set(i, j, s);
        }
    }
    return c;
}

}  // namespace specgap
