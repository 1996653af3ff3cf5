#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pointspec/matrix.hpp"
#include "pointspec/scalar.hpp"

namespace pointspec {

// Ordered tuple of n points with m exact coordinates each, over one Q(sqrt(d)).
// The optional diagonal form weights replace the Euclidean inner product by
// sum_k w_k x_k y_k in all distance computations (volumes are unaffected).
class PointConfiguration {
  public:
    PointConfiguration(size_t m, long d, std::vector<std::vector<QuadScalar>> points,
                       std::vector<QuadScalar> form_weights = {});

    size_t n() const { return points_.size(); }
    size_t m() const { return m_; }
    long d() const { return d_; }
    const std::vector<std::vector<QuadScalar>>& points() const { return points_; }
    const std::vector<QuadScalar>& point(size_t i) const;  // 1-based
    const std::vector<QuadScalar>& form() const { return form_; }
    bool euclidean() const;

  private:
    size_t m_;
    long d_;
    std::vector<std::vector<QuadScalar>> points_;
    std::vector<QuadScalar> form_;
};

enum class SpectrumKind { distance, volume };

// Sorted multiset of exact values: all C(n,2) squared distances, or all
// C(n,m+1) squared signed volumes.
struct Spectrum {
    SpectrumKind kind;
    std::vector<QuadScalar> values;  // ascending

    bool operator==(const Spectrum& o) const { return kind == o.kind && values == o.values; }
    std::string key() const;  // canonical strings joined by ';' (hash basis)
};

// Lexicographically ordered unordered pairs {i,j}, 1 <= i < j <= n.
std::vector<std::pair<int, int>> pair_list(size_t n);
size_t pair_index(size_t n, int i, int j);

// Increasing k-element index tuples from 1..n, in lexicographic order.
std::vector<std::vector<int>> subset_list(size_t n, size_t k);

QuadScalar squared_distance(const PointConfiguration& p, int i, int j);
Spectrum distance_spectrum(const PointConfiguration& p);

// det(P_{i1} - P_{i0}, ..., P_{im} - P_{i0}) for strictly increasing idx;
// other orders pick up the sign of the sorting permutation.
QuadScalar signed_volume(const PointConfiguration& p, const std::vector<int>& idx);
Spectrum volume_spectrum(const PointConfiguration& p);

// Entries <P_i - P_base, P_j - P_base> via the half-sum distance identity.
QMat gram_matrix(const PointConfiguration& p, int base);
QMat gram_matrix(const PointConfiguration& p);  // base n

// (n-1)x(n-1) matrix d_{ij} - d_{in} - d_{jn} evaluated at the given distance
// values (lexicographic pair order, length C(n,2)).
QMat relation_matrix(const std::vector<QuadScalar>& distances, size_t n);
QMat relation_matrix(const PointConfiguration& p);

bool generic_rank_check(const PointConfiguration& p);  // rank == min(n-1, m)

// For n = 3: exact elementary symmetric polynomials of the three squared
// distances plus the double-precision elementary symmetric values of their
// square roots (order-independent congruence invariants).
struct TriangleInvariants {
    QuadScalar sym1, sym2, sym3;  // of squared distances, exact
    double e1, e2, e3;            // of root distances, approximate
};
TriangleInvariants symmetric_distance_invariants_n3(const PointConfiguration& p);

struct Histogram {
    double bin_size = 0;
    std::vector<std::pair<double, long>> counts;  // (bin lower edge, count), nonzero bins
};
Histogram histogram(const Spectrum& s, double bin_size, bool take_sqrt);

}  // namespace pointspec
