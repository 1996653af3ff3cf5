#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pointspec/config.hpp"

namespace pointspec {

// Sorted copy of the indices together with the sign of the sorting
// permutation (+1 even, -1 odd).
std::pair<std::vector<int>, int> reorder_sign(const std::vector<int>& idx);

// sum_k (-1)^k vol(idx with the k-th entry removed), for m+2 distinct point
// indices. Identically zero on every actual configuration, which makes it a
// complete unit-coefficient linear filter on candidate volume assignments.
QuadScalar alternating_sum(const PointConfiguration& p, const std::vector<int>& idx);

// Partial assignment of signed volumes to the increasing (m+1)-subsets of
// 1..n in lexicographic order (see subset_list); entries without a value are
// not yet assigned. Checks every (m+2)-subset whose full boundary is
// assigned and reports the first violation in lexicographic order.
struct RelationVerdict {
    bool consistent = true;
    std::vector<int> violated;  // offending (m+2)-subset when inconsistent
};

RelationVerdict linear_relation_filter(size_t n, size_t m,
                                       const std::vector<std::optional<QuadScalar>>& values);

}  // namespace pointspec
