#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pointspec/config.hpp"
#include "pointspec/congruence.hpp"

namespace pointspec {

enum class MineKind { distance, volume, both };

// Two grid configurations with identical spectra lying in different orbits.
// kind=distance pairs fail the rigid test keyed on the distance spectrum;
// kind=volume pairs fail the affine test keyed on the volume spectrum;
// kind=both pairs share both spectra, fail the rigid test, and carry the
// affine verdict as an annotation (the interesting pairs are precisely the
// rigid-inequivalent but affine-equivalent ones).
struct CollisionPair {
    PointConfiguration first, second;
    std::string spectrum_key;
    std::optional<Verdict> affine;  // annotation, kind=both only
};

struct MineResult {
    std::vector<CollisionPair> pairs;
    bool budget_exhausted = false;  // enumeration stopped early, results partial
    uint64_t subsets_enumerated = 0;
    uint64_t canonical_configs = 0;
    uint64_t buckets = 0;
};

// Lexicographically minimal coordinate list over the dihedral symmetries of
// the point set's bounding box plus translations. Idempotent; configurations
// equal up to these lattice symmetries share canonical form.
std::vector<std::pair<long, long>> lattice_canonical_form(
    std::vector<std::pair<long, long>> pts);

// Enumerates all n-subsets of the width x height integer grid (deduplicated
// by canonical form), buckets them by exact spectrum key, and reports orbit
// collisions within buckets. Deterministic output for fixed inputs,
// independent of the worker count.
MineResult mine(long width, long height, size_t n, MineKind kind,
                uint64_t budget = 50'000'000, unsigned jobs = 1);

}  // namespace pointspec
