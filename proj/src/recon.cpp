#include "pointspec/recon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "pointspec/congruence.hpp"
#include "pointspec/errors.hpp"
#include "pointspec/volrel.hpp"

namespace pointspec {

namespace {

size_t choose2(size_t n) { return n * (n - 1) / 2; }

// lift every value into one common field, complaining on true mixtures
std::pair<std::vector<QuadScalar>, long> to_common_field(const std::vector<QuadScalar>& vals) {
    // an irrational value pins the field; otherwise honor a declared one (the
    // realization may need square roots that only exist there)
    long d = 1;
    for (const auto& v : vals)
        if (!v.is_rational()) d = v.d();
    if (d == 1)
        for (const auto& v : vals)
            if (v.d() != 1) d = v.d();
    std::vector<QuadScalar> out;
    out.reserve(vals.size());
    for (const auto& v : vals) out.push_back(v.lift_to(d));
    return {out, d};
}

QuadScalar assigned_distance(const std::vector<QuadScalar>& assign, size_t n, long d, int i,
                             int j) {
    if (i == j) return QuadScalar::rational(BigRat(0), d);
    return assign[pair_index(n, i, j)];
}

// Gram matrix of the sub-configuration (base, rest...) read off a partial
// distance assignment via the half-sum identity
QMat sub_gram(const std::vector<QuadScalar>& assign, size_t n, long d, int base,
              const std::vector<int>& rest) {
    const QuadScalar half = QuadScalar::rational(BigRat(1, 2), d);
    QMat g(rest.size(), rest.size(), d);
    for (size_t a = 0; a < rest.size(); ++a)
        for (size_t b = a; b < rest.size(); ++b) {
            const auto v = (assigned_distance(assign, n, d, base, rest[a]) +
                            assigned_distance(assign, n, d, base, rest[b]) -
                            assigned_distance(assign, n, d, rest[a], rest[b])) *
                           half;
            g.at(a, b) = v;
            g.at(b, a) = v;
        }
    return g;
}

struct Pool {
    std::vector<QuadScalar> value;
    std::vector<int> count;
};

Pool make_pool(std::vector<QuadScalar> vals) {
    std::sort(vals.begin(), vals.end(), [](const QuadScalar& a, const QuadScalar& b) {
        return a <=> b == std::strong_ordering::greater;
    });
    Pool pool;
    for (const auto& v : vals) {
        if (!pool.value.empty() && pool.value.back() == v)
            ++pool.count.back();
        else {
            pool.value.push_back(v);
            pool.count.push_back(1);
        }
    }
    return pool;
}

// floating-point pivoted Cholesky of an exact PSD Gram matrix; rows are the
// recovered offset vectors of points 2..n (point 1 sits at the origin)
std::pair<std::vector<std::vector<double>>, double> recover_coords(
    const QMat& gram, const std::vector<QuadScalar>& assign, size_t n, size_t m) {
    const size_t q = gram.rows();
    std::vector<std::vector<double>> a(q, std::vector<double>(q));
    double scale = 1.0;
    for (size_t i = 0; i < q; ++i) {
        for (size_t j = 0; j < q; ++j) a[i][j] = gram.at(i, j).to_double();
        scale = std::max(scale, std::abs(a[i][i]));
    }
    std::vector<std::vector<double>> l(q, std::vector<double>(m, 0.0));
    std::vector<bool> done(q, false);
    for (size_t t = 0; t < std::min(q, m); ++t) {
        size_t p = q;
        for (size_t j = 0; j < q; ++j)
            if (!done[j] && (p == q || a[j][j] > a[p][p])) p = j;
        if (p == q || a[p][p] <= scale * 1e-12) break;
        const double root = std::sqrt(a[p][p]);
        std::vector<double> col(q);
        for (size_t j = 0; j < q; ++j) col[j] = done[j] ? 0.0 : a[j][p] / root;
        col[p] = root;
        for (size_t j = 0; j < q; ++j) l[j][t] = col[j];
        done[p] = true;
        for (size_t i = 0; i < q; ++i)
            for (size_t j = 0; j < q; ++j) a[i][j] -= col[i] * col[j];
    }
    std::vector<std::vector<double>> coords(n, std::vector<double>(m, 0.0));
    for (size_t j = 0; j < q; ++j) coords[j + 1] = l[j];
    double residual = 0;
    for (int i = 1; i <= int(n); ++i)
        for (int j = i + 1; j <= int(n); ++j) {
            double sq = 0;
            for (size_t k = 0; k < m; ++k) {
                const double diff = coords[size_t(i) - 1][k] - coords[size_t(j) - 1][k];
                sq += diff * diff;
            }
            residual = std::max(
                residual, std::abs(sq - assign[pair_index(n, i, j)].to_double()) / scale);
        }
    return {coords, residual};
}

struct DistanceSearch {
    size_t n, m;
    long d;
    Pool pool;
    std::vector<std::pair<int, int>> slots;
    std::vector<QuadScalar> assign;
    std::vector<DistanceRealization> found;
    double tol;
    uint64_t checks = 0;
    static constexpr uint64_t kBudget = 5'000'000;

    bool prefix_ok(int i, int k) {
        if (++checks > kBudget) throw SearchBudgetError("distance realization search budget hit");
        std::vector<int> rest;
        for (int t = 2; t <= i; ++t) rest.push_back(t);
        rest.push_back(k);
        const auto psd = psd_factor(sub_gram(assign, n, d, 1, rest));
        return psd && psd->rank <= m;
    }

    void leaf() {
        for (const auto& rep : found)
            if (match_distance_assignments(rep.distances, assign, n)) return;
        DistanceRealization r;
        r.distances = assign;
        std::vector<int> rest;
        for (int t = 2; t <= int(n); ++t) rest.push_back(t);
        r.gram = sub_gram(assign, n, d, 1, rest);
        auto [coords, residual] = recover_coords(r.gram, assign, n, m);
        r.coords = std::move(coords);
        r.residual = residual;
        found.push_back(std::move(r));
    }

    void dfs(size_t t) {
        if (t == slots.size()) {
            leaf();
            return;
        }
        const auto [i, k] = slots[t];
        const size_t limit = (t == 0) ? 1 : pool.value.size();  // largest value on {1,2}
        for (size_t c = 0; c < limit; ++c) {
            if (pool.count[c] == 0) continue;
            --pool.count[c];
            assign[pair_index(n, i, k)] = pool.value[c];
            if (prefix_ok(i, k)) dfs(t + 1);
            ++pool.count[c];
        }
    }
};

}  // namespace

std::vector<DistanceRealization> realize_from_distances(const Spectrum& s, size_t n, size_t m,
                                                        double tol) {
    if (s.kind != SpectrumKind::distance)
        throw DomainError("need a distance spectrum to realize distances");
    if (s.values.size() != choose2(n))
        throw WrongArityError("spectrum holds " + std::to_string(s.values.size()) +
                              " values, expected " + std::to_string(choose2(n)));
    if (n > 7) throw TooLargeError("distance realization limited to n <= 7");
    if (n < 2 || m < 1) throw DomainError("need n >= 2 points in dimension m >= 1");

    auto [vals, d] = to_common_field(s.values);
    for (const auto& v : vals)
        if (v.sign() < 0) return {};  // negative squared distance: nothing to find

    DistanceSearch search{n,
                          m,
                          d,
                          make_pool(vals),
                          {},
                          std::vector<QuadScalar>(choose2(n), QuadScalar::rational(BigRat(0), d)),
                          {},
                          tol};
    for (int k = 2; k <= int(n); ++k)
        for (int i = 1; i < k; ++i) search.slots.emplace_back(i, k);
    search.dfs(0);
    return std::move(search.found);
}

std::optional<std::vector<size_t>> match_distance_assignments(const std::vector<QuadScalar>& v,
                                                              const std::vector<QuadScalar>& w,
                                                              size_t n) {
    if (v.size() != choose2(n) || w.size() != choose2(n))
        throw WrongArityError("assignments must cover all pairs");
    std::vector<size_t> perm(n);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == n) return true;
        for (size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            bool ok = true;
            for (size_t a = 0; a < i && ok; ++a)
                ok = w[pair_index(n, int(a) + 1, int(i) + 1)] ==
                     v[pair_index(n, int(perm[a]) + 1, int(j) + 1)];
            if (!ok) continue;
            perm[i] = j;
            used[j] = true;
            if (self(self, i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    if (rec(rec, 0)) return perm;
    return std::nullopt;
}

DistanceReconReport is_reconstructible_from_distances(const PointConfiguration& p, double tol) {
    DistanceReconReport report;
    report.classes = realize_from_distances(distance_spectrum(p), p.n(), p.m(), tol);
    report.reconstructible = report.classes.size() == 1;
    return report;
}

namespace {

// one boundary relation, expressed over slot positions with its signs; it is
// checked as soon as its highest slot gets a value
struct SlotRelation {
    std::vector<std::pair<size_t, int>> terms;
};

struct VolumeSearch {
    size_t n, m;
    long d;
    std::vector<std::vector<int>> subsets;  // in slot order: grouped by max point
    std::map<std::vector<int>, size_t> slot_of;
    std::vector<std::vector<SlotRelation>> closing;  // relations per closing slot
    std::vector<int> block_check;      // per slot: sub-realization point count, 0 = none
    Pool squares;                      // squared values, descending
    std::vector<QuadScalar> roots;     // nonnegative root per pool entry
    std::vector<std::optional<QuadScalar>> slots;
    std::vector<PointConfiguration> found;
    uint64_t nodes = 0;
    static constexpr uint64_t kBudget = 10'000'000;

    enum class SubCheck { realizable, flat, impossible };

    // try to realize points 1..kmax from the slots assigned so far (those are
    // exactly the subsets with max point <= kmax, slots 0..upto). A frame is
    // pinned on the first nonzero subset; every remaining point solves
    // linearly from its volumes with the frame, then all assigned volumes are
    // verified. All-zero prefixes carry no frame and stay undecided.
    SubCheck try_realize(int kmax, size_t upto, std::vector<std::vector<QuadScalar>>* out) const {
        size_t star = upto + 1;
        for (size_t i = 0; i <= upto; ++i)
            if (!slots[i]->is_zero()) {
                star = i;
                break;
            }
        if (star > upto) return SubCheck::flat;
        const auto& t = subsets[star];
        const QuadScalar vstar = *slots[star];
        const QuadScalar zero = QuadScalar::rational(BigRat(0), d);
        const QuadScalar one = QuadScalar::rational(BigRat(1), d);
        std::vector<std::vector<QuadScalar>> pts(size_t(kmax), std::vector<QuadScalar>(m, zero));
        pts[size_t(t[1]) - 1][0] = vstar;
        for (size_t l = 2; l <= m; ++l) pts[size_t(t[l]) - 1][l - 1] = one;

        for (int j = 1; j <= kmax; ++j) {
            if (std::find(t.begin(), t.end(), j) != t.end()) continue;
            for (size_t i = 1; i <= m; ++i) {
                auto tuple = t;
                tuple[i] = j;
                const auto [sorted, sign] = reorder_sign(tuple);
                auto coeff = *slots[slot_of.at(sorted)];
                if (sign < 0) coeff = -coeff;
                pts[size_t(j) - 1][i - 1] = (i == 1) ? coeff : coeff / vstar;
            }
        }
        PointConfiguration cand(m, d, pts);
        for (size_t i = 0; i <= upto; ++i)
            if (signed_volume(cand, subsets[i]) != *slots[i]) return SubCheck::impossible;
        if (out) *out = std::move(pts);
        return SubCheck::realizable;
    }

    void leaf() {
        std::vector<std::vector<QuadScalar>> pts;
        if (try_realize(int(n), slots.size() - 1, &pts) != SubCheck::realizable) return;
        PointConfiguration cand(m, d, std::move(pts));
        for (const auto& rep : found)
            if (orbit_volume_equivalent(cand, rep) == Verdict::yes) return;
        found.push_back(std::move(cand));
    }

    bool closed_relations_hold(size_t s) const {
        for (const auto& rel : closing[s]) {
            QuadScalar total = QuadScalar::rational(BigRat(0), d);
            for (const auto& [slot, sign] : rel.terms)
                total = (sign > 0) ? total + *slots[slot] : total - *slots[slot];
            if (!total.is_zero()) return false;
        }
        return true;
    }

    void dfs(size_t s, bool any_nonzero) {
        if (++nodes > kBudget) throw SearchBudgetError("volume realization search budget hit");
        if (s == slots.size()) {
            leaf();
            return;
        }
        for (size_t c = 0; c < squares.value.size(); ++c) {
            if (squares.count[c] == 0) continue;
            const bool zero = roots[c].is_zero();
            const int variants = zero ? 1 : (any_nonzero ? 2 : 1);
            for (int v = 0; v < variants; ++v) {
                --squares.count[c];
                slots[s] = (v == 0) ? roots[c] : -roots[c];
                if (closed_relations_hold(s) &&
                    (block_check[s] == 0 ||
                     try_realize(block_check[s], s, nullptr) != SubCheck::impossible))
                    dfs(s + 1, any_nonzero || !zero);
                slots[s].reset();
                ++squares.count[c];
            }
        }
    }
};

}  // namespace

std::vector<PointConfiguration> realize_from_volumes(const Spectrum& s, size_t n, size_t m) {
    if (s.kind != SpectrumKind::volume)
        throw DomainError("need a volume spectrum to realize volumes");
    auto subsets = subset_list(n, m + 1);
    if (s.values.size() != subsets.size())
        throw WrongArityError("spectrum holds " + std::to_string(s.values.size()) +
                              " values, expected " + std::to_string(subsets.size()));
    if (subsets.size() > 20)
        throw TooLargeError("volume realization limited to 20 subset slots");
    if (m < 1) throw DomainError("need dimension m >= 1");

    auto [vals, d] = to_common_field(s.values);
    bool all_zero = true;
    for (const auto& v : vals) all_zero = all_zero && v.is_zero();
    if (all_zero) throw AllVolumesZeroError();

    // grouping slots by their largest point closes boundary relations as
    // early as possible during the search
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return a.back() != b.back() ? a.back() < b.back() : a < b;
    });

    VolumeSearch search;
    search.n = n;
    search.m = m;
    search.d = d;
    search.subsets = subsets;
    for (size_t i = 0; i < subsets.size(); ++i) search.slot_of[subsets[i]] = i;
    search.closing.resize(subsets.size());
    for (const auto& big : subset_list(n, m + 2)) {
        SlotRelation rel;
        size_t last = 0;
        for (size_t k = 0; k < big.size(); ++k) {
            std::vector<int> face;
            for (size_t j = 0; j < big.size(); ++j)
                if (j != k) face.push_back(big[j]);
            const size_t slot = search.slot_of.at(face);
            last = std::max(last, slot);
            rel.terms.emplace_back(slot, k % 2 == 0 ? 1 : -1);
        }
        search.closing[last].push_back(std::move(rel));
    }
    search.block_check.assign(subsets.size(), 0);
    for (size_t i = 0; i < subsets.size(); ++i) {
        const int k = subsets[i].back();
        if (size_t(k) >= m + 2 && size_t(k) < n &&
            (i + 1 == subsets.size() || subsets[i + 1].back() != k))
            search.block_check[i] = k;
    }
    search.squares = make_pool(vals);
    for (const auto& sq : search.squares.value) {
        const auto root = sqrt_in_field(sq);
        if (!root)
            throw DomainError("spectrum value " + sq.str() +
                              " has no square root in the field");
        search.roots.push_back(*root);
    }
    search.slots.resize(subsets.size());
    search.dfs(0, false);
    return std::move(search.found);
}

namespace {

using DMat = std::vector<std::vector<double>>;

DMat double_coords(const PointConfiguration& p) {
    DMat x(p.n(), std::vector<double>(p.m()));
    for (size_t i = 0; i < p.n(); ++i)
        for (size_t k = 0; k < p.m(); ++k) x[i][k] = p.points()[i][k].to_double();
    return x;
}

std::vector<double> sorted_squared_distances(const DMat& x) {
    std::vector<double> out;
    const size_t n = x.size(), m = x[0].size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            double sq = 0;
            for (size_t k = 0; k < m; ++k) sq += (x[i][k] - x[j][k]) * (x[i][k] - x[j][k]);
            out.push_back(sq);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// best rigid alignment of b onto a under a fixed row correspondence
double procrustes_residual(const DMat& a, const DMat& b, const std::vector<size_t>& perm) {
    const size_t n = a.size(), m = a[0].size();
    Eigen::MatrixXd ac(n, m), bc(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < m; ++k) {
            ac(long(i), long(k)) = a[i][k];
            bc(long(i), long(k)) = b[perm[i]][k];
        }
    const Eigen::RowVectorXd am = ac.colwise().mean(), bm = bc.colwise().mean();
    ac.rowwise() -= am;
    bc.rowwise() -= bm;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bc.transpose() * ac,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd rot = svd.matrixV() * svd.matrixU().transpose();
    const Eigen::MatrixXd diff = ac - bc * rot.transpose();
    double worst = 0;
    for (long i = 0; i < diff.rows(); ++i) worst = std::max(worst, diff.row(i).norm());
    return worst;
}

bool rigidly_alignable(const DMat& a, const DMat& b, double tol) {
    const size_t n = a.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (procrustes_residual(a, b, perm) <= tol) return true;
    do {
        if (procrustes_residual(a, b, perm) <= tol) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

LocalProbeReport local_reconstructibility_radius(const PointConfiguration& p, size_t samples,
                                                 double noise) {
    if (samples == 0 || noise <= 0) throw DomainError("need samples > 0 and noise > 0");
    LocalProbeReport report;
    report.samples = samples;

    std::map<std::string, int> seen;
    for (auto [i, j] : pair_list(p.n())) ++seen[squared_distance(p, i, j).str()];
    bool distinct = true;
    for (const auto& [key, cnt] : seen) distinct = distinct && cnt == 1;
    report.hypothesis_met = distinct && generic_rank_check(p);

    const DMat base = double_coords(p);
    double diam = 1.0;
    for (const auto& v : sorted_squared_distances(base)) diam = std::max(diam, std::sqrt(v));
    const double md = double(p.m());

    std::mt19937_64 rng(0xC0FFEE ^ (p.n() * 1315423911ULL) ^ (p.m() << 3));
    for (int level = 0; level < 4; ++level) {
        const double sigma = noise / double(1 << level);
        std::uniform_real_distribution<double> uni(-sigma, sigma);
        std::vector<DMat> configs = {base};
        for (size_t s = 0; s < samples; ++s) {
            DMat y = base;
            for (auto& row : y)
                for (auto& coord : row) coord += uni(rng);
            configs.push_back(std::move(y));
        }
        std::vector<std::vector<double>> spectra;
        for (const auto& c : configs) spectra.push_back(sorted_squared_distances(c));

        const double match_tol = 12.0 * md * (diam + 1.0) * sigma;
        const double rigid_tol = 8.0 * md * sigma + 1e-12;
        size_t matching = 0, bad = 0;
        for (size_t a = 0; a < configs.size(); ++a)
            for (size_t b = a + 1; b < configs.size(); ++b) {
                double gap = 0;
                for (size_t t = 0; t < spectra[a].size(); ++t)
                    gap = std::max(gap, std::abs(spectra[a][t] - spectra[b][t]));
                if (gap > match_tol) continue;
                ++matching;
                if (!rigidly_alignable(configs[a], configs[b], rigid_tol)) ++bad;
            }
        report.noise_levels.push_back(sigma);
        report.matching_pairs.push_back(matching);
        report.violations.push_back(bad);
        if (bad == 0) report.largest_clean_noise = std::max(report.largest_clean_noise, sigma);
    }
    return report;
}

}  // namespace pointspec
