#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pointspec/scalar.hpp"

namespace pointspec {

// Dense matrix over Q(sqrt(d)).  All algorithms are exact Gaussian
// elimination; sizes stay tiny (<= n-1 with n <= 8).
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(size_t rows, size_t cols, long d = 1)
        : rows_(rows), cols_(cols), data_(rows * cols, QuadScalar::rational(BigRat(0), d)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    QuadScalar& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const QuadScalar& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const QMat& o) const = default;

  private:
    size_t rows_, cols_;
    std::vector<QuadScalar> data_;
};

size_t rank(QMat m);                 // by value: elimination destroys the copy
QuadScalar determinant(QMat m);

// Symmetric decomposition G = L * diag(pivots) * L^T restricted to the
// positive pivots found; produced only when G is positive semidefinite.
struct SymFactor {
    size_t rank = 0;
    std::vector<size_t> pivot_order;       // indices pivoted, in order
    std::vector<QuadScalar> pivots;        // positive diagonal pivots
    std::vector<std::vector<QuadScalar>> cols;  // L columns (full height)
};

// Exact positive-semidefiniteness test with rank, via symmetric pivoting on
// positive diagonal entries.  Returns nullopt when G is not PSD.
std::optional<SymFactor> psd_factor(const QMat& g);

// Solves A x = b for square nonsingular A; throws RankDeficientError otherwise.
std::vector<QuadScalar> solve(QMat a, std::vector<QuadScalar> b);

}  // namespace pointspec
