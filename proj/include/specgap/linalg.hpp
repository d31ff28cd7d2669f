#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "specgap/errors.hpp"

namespace specgap {

// Dense symmetric matrix. set() writes both triangles, so symmetry is exact by
// construction, not by convention.
class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
    }

    int size() const { return n_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, double v) {
        a_[idx(i, j)] = v;
        a_[idx(j, i)] = v;
    }

    const std::vector<double>& data() const { return a_; }

    // C = A*B for symmetric A,B with symmetric product (used for polynomial powers
    // of one matrix, where commutativity makes the product symmetric).
    friend SymMatrix sym_product(const SymMatrix& a, const SymMatrix& b);

  private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw std::invalid_argument("matrix index out of range");
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_ = 0;
    std::vector<double> a_;
};

struct EigenGroup {
    double value;       // mean of the clustered values
    int multiplicity;
};

inline constexpr double kDefaultClusterTol = 1e-8;

struct Spectrum {
    std::vector<double> values;        // ascending
    std::vector<EigenGroup> groups;    // clustered; tol chosen by the producer
};

// All eigenvalues of a real symmetric matrix, ascending. Householder reduction to
// tridiagonal form followed by implicit-shift QL, eigenvalues only. Throws
// NumericError on non-finite input or non-convergence.
std::vector<double> eigenvalues_sym(const SymMatrix& a);

// Same reduction carried in 80-bit extended precision. Absolute error drops from
// ~1e-16 to ~1e-19 of the matrix norm, which matters to callers that take square
// roots of near-zero eigenvalues: sqrt turns a 1e-16 wobble into 1e-8.
std::vector<double> eigenvalues_sym_extended(const SymMatrix& a);

// Greedy left-to-right clustering of an ascending value list: a value joins the
// current group iff it lies within tol of the group's first element.
std::vector<EigenGroup> cluster(const std::vector<double>& ascending, double tol);

Spectrum spectrum_from_values(std::vector<double> ascending,
                              double tol = kDefaultClusterTol);

// min_i |center - values[i]| and the smallest index attaining it.
std::pair<double, std::size_t> min_abs_deviation(const std::vector<double>& values,
                                                 double center);

}  // namespace specgap
