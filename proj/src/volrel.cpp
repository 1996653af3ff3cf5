#include "pointspec/volrel.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pointspec/errors.hpp"

namespace pointspec {

std::pair<std::vector<int>, int> reorder_sign(const std::vector<int>& idx) {
    if (std::set<int>(idx.begin(), idx.end()).size() != idx.size())
        throw DuplicateIndexError("repeated index in tuple");
    std::vector<int> sorted = idx;
    int sign = 1;
    // selection sort; each executed swap is a transposition
    for (size_t i = 0; i < sorted.size(); ++i) {
        size_t best = i;
        for (size_t j = i + 1; j < sorted.size(); ++j)
            if (sorted[j] < sorted[best]) best = j;
        if (best != i) {
            std::swap(sorted[i], sorted[best]);
            sign = -sign;
        }
    }
    return {sorted, sign};
}

QuadScalar alternating_sum(const PointConfiguration& p, const std::vector<int>& idx) {
    if (idx.size() != p.m() + 2)
        throw WrongArityError("alternating sum needs m+2 indices, got " +
                              std::to_string(idx.size()));
    if (std::set<int>(idx.begin(), idx.end()).size() != idx.size())
        throw DuplicateIndexError("repeated index in tuple");
    QuadScalar total(BigRat(0), BigRat(0), p.d());
    for (size_t k = 0; k < idx.size(); ++k) {
        std::vector<int> face;
        for (size_t j = 0; j < idx.size(); ++j)
            if (j != k) face.push_back(idx[j]);
        const auto term = signed_volume(p, face);
        total = (k % 2 == 0) ? total + term : total - term;
    }
    return total;
}

RelationVerdict linear_relation_filter(size_t n, size_t m,
                                       const std::vector<std::optional<QuadScalar>>& values) {
    const auto subsets = subset_list(n, m + 1);
    if (values.size() != subsets.size())
        throw WrongArityError("expected one slot per (m+1)-subset: " +
                              std::to_string(subsets.size()));
    std::map<std::vector<int>, size_t> slot;
    for (size_t i = 0; i < subsets.size(); ++i) slot[subsets[i]] = i;

    for (const auto& big : subset_list(n, m + 2)) {
        bool all_assigned = true;
        QuadScalar total;
        bool first = true;
        for (size_t k = 0; k < big.size() && all_assigned; ++k) {
            std::vector<int> face;
            for (size_t j = 0; j < big.size(); ++j)
                if (j != k) face.push_back(big[j]);
            const auto& v = values[slot.at(face)];
            if (!v) {
                all_assigned = false;
                break;
            }
            if (first) {
                total = (k % 2 == 0) ? *v : -*v;
                first = false;
            } else {
                total = (k % 2 == 0) ? total + *v : total - *v;
            }
        }
        if (all_assigned && !total.is_zero()) return {false, big};
    }
    return {true, {}};
}

}  // namespace pointspec
