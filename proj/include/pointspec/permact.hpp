#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pointspec/config.hpp"
#include "pointspec/relideal.hpp"

namespace pointspec {

// Permutation of the C(n,2) unordered point pairs, indexed lexicographically
// ({1,2},{1,3},...,{n-1,n}) and stored 0-based.
struct PairPermutation {
    size_t n = 0;
    std::vector<size_t> map;

    static PairPermutation identity(size_t n);
    bool is_identity() const;
    PairPermutation after(const PairPermutation& g) const;  // composition: this(g(.))
    PairPermutation inverse() const;
    std::string cycle_string() const;  // 1-based cycles, e.g. "(1,3)(2,5)"; "()" if trivial
    bool operator==(const PairPermutation&) const = default;
};

// Lehmer-code rank of a permutation of {0..size-1} (factorial number system);
// fits 32 bits for size <= 10.
uint32_t perm_rank(const std::vector<size_t>& p);
std::vector<size_t> perm_unrank(uint32_t r, size_t size);

// The pair permutation {i,j} -> {pi(i), pi(j)} induced by a point relabeling
// (pi holds 1-based images).  The induced map is a group homomorphism.
PairPermutation induced_from_point_permutation(size_t n, const std::vector<int>& pi);

// Generators of H, the image of S_n in the pair permutations: the maps
// induced by the transposition (1 2) and the full cycle (1 2 ... n).
std::vector<PairPermutation> point_group_pair_generators(size_t n);

// Generators of G, the full stabilizer of the labeled squared-distance
// function: for every class of equal-valued pair positions, a transposition
// of its first two members and the full cycle through the class.
std::vector<PairPermutation> distance_stabilizer(const PointConfiguration& p);

struct DoubleCosetDecomposition {
    std::vector<PairPermutation> g_generators, h_generators;
    std::vector<PairPermutation> representatives;  // identity first
    std::vector<uint64_t> sizes;                   // matching orbit sizes, summing to C(n,2)!
};

// Exhaustive sweep of S_{C(n,2)} marking each G psi H orbit once; bounded to
// n <= 5 (10! elements).
DoubleCosetDecomposition double_cosets(const std::vector<PairPermutation>& g_gens,
                                       const std::vector<PairPermutation>& h_gens, size_t n);

enum class CertifyVerdict { certified, inconclusive, not_applicable };

// Separation record for one nontrivial double-coset representative psi: a
// relation polynomial f (primitive part, so values are minimal integers) that
// vanishes on all rank-m distance data while its psi-image does not vanish at
// this configuration's distances.
struct CosetCertificate {
    PairPermutation psi;
    bool separated = false;
    std::string f_text;
    QuadScalar f_value;          // f at the configuration's distances (always 0)
    QuadScalar separated_value;  // (psi f) at the same distances (nonzero iff separated)
};

struct CertifyReport {
    CertifyVerdict verdict = CertifyVerdict::inconclusive;
    std::string reason;
    DoubleCosetDecomposition cosets;
    std::vector<CosetCertificate> certificates;
};

// One-sided reconstructibility certificate: Certified proves that no
// configuration with the same distance multiset lies outside the relabeled
// isometry orbit; Inconclusive proves nothing.  Requires 2 <= m <= n-2
// (NotApplicable otherwise), n <= 5 (TooLarge), and generic rank
// (RankDeficient).  The candidate search tries the (m+1)-minors of the
// symbolic relation matrix in lexicographic order, then minor*variable
// products, up to `budget_per_coset` candidates for each representative.
CertifyReport certify_reconstructible(const PointConfiguration& p,
                                      size_t budget_per_coset = 10000);

}  // namespace pointspec
