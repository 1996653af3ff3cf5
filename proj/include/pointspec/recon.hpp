#pragma once

#include <optional>
#include <vector>

#include "pointspec/config.hpp"
#include "pointspec/matrix.hpp"

namespace pointspec {

// One congruence class realizing a distance spectrum. The verdict-carrying
// data is exact: the assignment of values to pair slots (lexicographic pair
// order) and its base-1 Gram matrix, positive semidefinite of rank <= m.
// Coordinates are a floating-point convenience (square roots generally leave
// the field); residual is the worst squared-distance reproduction error.
struct DistanceRealization {
    std::vector<QuadScalar> distances;
    QMat gram;
    std::vector<std::vector<double>> coords;  // n rows, m columns
    double residual = 0;
};

// All realizations of the multiset s as squared distances of n points in
// rank <= m, one representative per relabeling class. n <= 7.
std::vector<DistanceRealization> realize_from_distances(const Spectrum& s, size_t n, size_t m,
                                                        double tol = 1e-9);

// Permutation pi (0-based, new index -> old index) with
// w[{i,j}] = v[{pi(i),pi(j)}] for all pairs, if one exists.
std::optional<std::vector<size_t>> match_distance_assignments(const std::vector<QuadScalar>& v,
                                                              const std::vector<QuadScalar>& w,
                                                              size_t n);

struct DistanceReconReport {
    bool reconstructible = false;  // exactly one class realizes the spectrum
    std::vector<DistanceRealization> classes;
};
DistanceReconReport is_reconstructible_from_distances(const PointConfiguration& p,
                                                      double tol = 1e-9);

// All realizations of s as squared signed volumes of n points in dimension m,
// one exact configuration per affine x relabeling x global-sign class.
// Requires every spectrum value to own a square root in its field.
std::vector<PointConfiguration> realize_from_volumes(const Spectrum& s, size_t n, size_t m);

// Empirical falsification probe of local rigidity: perturb the configuration
// at descending noise levels and require that perturbed copies with matching
// distance spectra stay rigidly alignable. Not a proof in either direction.
struct LocalProbeReport {
    bool hypothesis_met = false;  // all distances distinct and generic rank
    size_t samples = 0;
    std::vector<double> noise_levels;    // descending
    std::vector<size_t> matching_pairs;  // spectra agreeing within tolerance, per level
    std::vector<size_t> violations;      // matching but not alignable, per level
    double largest_clean_noise = 0;      // largest level with zero violations
};
LocalProbeReport local_reconstructibility_radius(const PointConfiguration& p, size_t samples,
                                                 double noise);

}  // namespace pointspec
