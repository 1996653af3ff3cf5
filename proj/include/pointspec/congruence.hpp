#pragma once

#include <optional>
#include <vector>

#include "pointspec/config.hpp"
#include "pointspec/matrix.hpp"

namespace pointspec {

// Three-valued answer for the volume-equivalence deciders: `indeterminate`
// means both configurations are flat (every volume vanishes), where the
// signed-volume criterion carries no information.
enum class Verdict { yes, no, indeterminate };

// Isometry x -> A x + t with A orthogonal for the configuration's diagonal
// form.  The map is emitted exactly when its entries lie in Q(sqrt(d)); for
// rank-deficient configurations the orthogonal extension may need square
// roots outside the field, in which case a double-precision matrix plus the
// max coordinatewise matching error are reported instead.
struct RigidWitness {
    bool exact = true;
    QMat map;
    std::vector<QuadScalar> shift;
    std::vector<double> map_approx;  // row-major m*m, inexact case only
    std::vector<double> shift_approx;
    double residual = 0;
};

// Affine map x -> map.x + shift with det(map) = det_sign in {+1,-1}; always exact.
struct AffineWitness {
    QMat map;
    std::vector<QuadScalar> shift;
    int det_sign = 1;
};

// New configuration whose i-th point is p's pi[i]-th point (0-based).
PointConfiguration reorder(const PointConfiguration& p, const std::vector<size_t>& pi);

// True iff every pair of identically-labeled squared distances agrees; over a
// real quadratic field this is exactly orbit membership under isometries with
// the identity relabeling.
bool labeled_congruent(const PointConfiguration& p, const PointConfiguration& q);

// Reconstructs the isometry carrying p onto q pointwise, or nullopt when the
// configurations are not labeled-congruent.
std::optional<RigidWitness> rigid_witness(const PointConfiguration& p,
                                          const PointConfiguration& q);

// Searches for a relabeling pi with labeled_congruent(reorder(p, pi), q),
// backtracking over point assignments pruned by per-point distance multisets.
// Deterministic: positions are processed rarest-multiset first and candidates
// tried in index order.
std::optional<std::vector<size_t>> orbit_congruent(const PointConfiguration& p,
                                                   const PointConfiguration& q);

// Decides whether q = sigma(p) + v pointwise for some linear sigma with
// det(sigma) = +-1, by comparing all signed volumes up to one global sign and
// reconstructing sigma from a nondegenerate frame (Cramer coefficients).
Verdict labeled_volume_equivalent(const PointConfiguration& p, const PointConfiguration& q,
                                  AffineWitness* witness = nullptr);

// Relabeled variant: searches for pi with labeled_volume_equivalent
// (reorder(p, pi), q) == yes, pruned by per-point squared-volume multisets.
Verdict orbit_volume_equivalent(const PointConfiguration& p, const PointConfiguration& q,
                                std::vector<size_t>* pi = nullptr,
                                AffineWitness* witness = nullptr);

}  // namespace pointspec
