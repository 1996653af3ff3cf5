#include "pointspec/permact.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

constexpr uint64_t factorial(size_t k) {
    uint64_t f = 1;
    for (size_t i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

PairPermutation PairPermutation::identity(size_t n) {
    PairPermutation p{n, std::vector<size_t>(n * (n - 1) / 2)};
    std::iota(p.map.begin(), p.map.end(), 0);
    return p;
}

bool PairPermutation::is_identity() const {
    for (size_t k = 0; k < map.size(); ++k)
        if (map[k] != k) return false;
    return true;
}

PairPermutation PairPermutation::after(const PairPermutation& g) const {
    if (n != g.n) throw ShapeMismatchError("composing pair permutations of different settings");
    PairPermutation out{n, std::vector<size_t>(map.size())};
    for (size_t k = 0; k < map.size(); ++k) out.map[k] = map[g.map[k]];
    return out;
}

PairPermutation PairPermutation::inverse() const {
    PairPermutation out{n, std::vector<size_t>(map.size())};
    for (size_t k = 0; k < map.size(); ++k) out.map[map[k]] = k;
    return out;
}

std::string PairPermutation::cycle_string() const {
    std::string out;
    std::vector<bool> seen(map.size(), false);
    for (size_t start = 0; start < map.size(); ++start) {
        if (seen[start] || map[start] == start) continue;
        out += "(";
        size_t cur = start;
        bool first = true;
        while (!seen[cur]) {
            seen[cur] = true;
            if (!first) out += ",";
            out += std::to_string(cur + 1);
            first = false;
            cur = map[cur];
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

uint32_t perm_rank(const std::vector<size_t>& p) {
    const size_t n = p.size();
    uint32_t r = 0;
    for (size_t i = 0; i < n; ++i) {
        size_t smaller = 0;
        for (size_t j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        r = uint32_t(r * (n - i) + smaller);
    }
    return r;
}

std::vector<size_t> perm_unrank(uint32_t r, size_t size) {
    std::vector<size_t> digits(size, 0);
    for (size_t i = size; i-- > 0;) {
        digits[i] = r % (size - i);
        r /= uint32_t(size - i);
    }
    std::vector<size_t> pool(size);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<size_t> p;
    p.reserve(size);
    for (size_t i = 0; i < size; ++i) {
        p.push_back(pool[digits[i]]);
        pool.erase(pool.begin() + long(digits[i]));
    }
    return p;
}

PairPermutation induced_from_point_permutation(size_t n, const std::vector<int>& pi) {
    if (pi.size() != n) throw WrongArityError("point permutation arity differs from n");
    std::vector<bool> seen(n + 1, false);
    for (int v : pi) {
        if (v < 1 || v > int(n) || seen[size_t(v)])
            throw DuplicateIndexError("point relabeling is not a permutation");
        seen[size_t(v)] = true;
    }
    PairPermutation out{n, {}};
    for (auto [i, j] : pair_list(n))
        out.map.push_back(pair_index(n, pi[size_t(i) - 1], pi[size_t(j) - 1]));
    return out;
}

std::vector<PairPermutation> point_group_pair_generators(size_t n) {
    if (n < 2) return {};
    std::vector<int> swap01(n), cycle(n);
    std::iota(swap01.begin(), swap01.end(), 1);
    std::swap(swap01[0], swap01[1]);
    for (size_t i = 0; i < n; ++i) cycle[i] = int(i + 2 <= n ? i + 2 : 1);
    std::vector<PairPermutation> gens = {induced_from_point_permutation(n, swap01)};
    if (n >= 3) gens.push_back(induced_from_point_permutation(n, cycle));
    return gens;
}

std::vector<PairPermutation> distance_stabilizer(const PointConfiguration& p) {
    const size_t n = p.n();
    const auto pairs = pair_list(n);
    std::map<std::string, std::vector<size_t>> classes;  // canonical value -> positions
    for (size_t k = 0; k < pairs.size(); ++k)
        classes[squared_distance(p, pairs[k].first, pairs[k].second).str()].push_back(k);

    std::vector<PairPermutation> gens;
    for (const auto& [value, positions] : classes) {
        if (positions.size() < 2) continue;
        auto transposition = PairPermutation::identity(n);
        std::swap(transposition.map[positions[0]], transposition.map[positions[1]]);
        gens.push_back(std::move(transposition));
        if (positions.size() > 2) {
            auto rotation = PairPermutation::identity(n);
            for (size_t k = 0; k + 1 < positions.size(); ++k)
                rotation.map[positions[k]] = positions[k + 1];
            rotation.map[positions.back()] = positions[0];
            gens.push_back(std::move(rotation));
        }
    }
    return gens;
}

DoubleCosetDecomposition double_cosets(const std::vector<PairPermutation>& g_gens,
                                       const std::vector<PairPermutation>& h_gens, size_t n) {
    if (n > 5)
        throw TooLargeError("double-coset sweep covers all C(n,2)! pair permutations; "
                            "C(6,2)! = 15! is out of reach, so n <= 5");
    if (n < 2) throw DomainError("double cosets need n >= 2");
    const size_t np = n * (n - 1) / 2;
    const uint64_t total = factorial(np);

    DoubleCosetDecomposition out;
    out.g_generators = g_gens;
    out.h_generators = h_gens;

    std::vector<bool> visited(total, false);
    std::vector<uint32_t> stack;
    for (uint64_t start = 0; start < total; ++start) {
        if (visited[start]) continue;
        // new orbit: breadth-first closure under left-G and right-H moves
        uint64_t size = 0;
        visited[start] = true;
        stack.push_back(uint32_t(start));
        while (!stack.empty()) {
            const uint32_t cur = stack.back();
            stack.pop_back();
            ++size;
            const PairPermutation psi{n, perm_unrank(cur, np)};
            for (const auto& g : g_gens) {
                const uint32_t next = perm_rank(g.after(psi).map);
                if (!visited[next]) {
                    visited[next] = true;
                    stack.push_back(next);
                }
            }
            for (const auto& h : h_gens) {
                const uint32_t next = perm_rank(psi.after(h).map);
                if (!visited[next]) {
                    visited[next] = true;
                    stack.push_back(next);
                }
            }
        }
        out.representatives.push_back(PairPermutation{n, perm_unrank(uint32_t(start), np)});
        out.sizes.push_back(size);
    }
    return out;
}

CertifyReport certify_reconstructible(const PointConfiguration& p, size_t budget_per_coset) {
    const size_t n = p.n(), m = p.m();
    CertifyReport report;
    if (m < 2 || m + 2 > n) {
        report.verdict = CertifyVerdict::not_applicable;
        report.reason = "certificate route needs 2 <= m <= n-2";
        return report;
    }
    if (n > 5) throw TooLargeError("certification by double cosets is bounded to n <= 5");
    if (rank(relation_matrix(p)) != m)
        throw RankDeficientError("relation matrix rank differs from the dimension");

    std::vector<QuadScalar> dist;
    for (auto [i, j] : pair_list(n)) dist.push_back(squared_distance(p, i, j));

    report.cosets = double_cosets(distance_stabilizer(p), point_group_pair_generators(n), n);

    const auto sym = symbolic_relation_matrix(n);
    const auto row_subsets = subset_list(n - 1, m + 1);
    const auto pairs = pair_list(n);

    bool all_separated = true;
    for (const auto& psi : report.cosets.representatives) {
        if (psi.is_identity()) continue;
        CosetCertificate cert;
        cert.psi = psi;
        size_t budget = budget_per_coset;
        // candidates: (m+1)-minors in lexicographic order, then their
        // products with single pair variables
        for (int phase = 0; phase < 2 && !cert.separated && budget > 0; ++phase) {
            for (const auto& rows : row_subsets) {
                for (const auto& cols : row_subsets) {
                    const PairPolynomial base = minor(sym, rows, cols).primitive_part();
                    const size_t variants = phase == 0 ? 1 : pairs.size();
                    for (size_t v = 0; v < variants && budget > 0; --budget, ++v) {
                        PairPolynomial f =
                            phase == 0
                                ? base
                                : (base * PairPolynomial::variable(n, pairs[v].first,
                                                                   pairs[v].second))
                                      .primitive_part();
                        const QuadScalar val =
                            evaluate(apply_pair_permutation(f, psi.map), dist);
                        if (!val.is_zero()) {
                            cert.separated = true;
                            cert.f_text = f.str();
                            cert.f_value = evaluate(f, dist);
                            cert.separated_value = val;
                            break;
                        }
                    }
                    if (cert.separated || budget == 0) break;
                }
                if (cert.separated || budget == 0) break;
            }
        }
        if (!cert.separated) {
            all_separated = false;
            if (report.reason.empty())
                report.reason =
                    "no separating relation found for coset representative " + psi.cycle_string();
        }
        report.certificates.push_back(std::move(cert));
    }
    report.verdict = all_separated ? CertifyVerdict::certified : CertifyVerdict::inconclusive;
    return report;
}

}  // namespace pointspec
