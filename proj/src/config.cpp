#include "pointspec/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pointspec/errors.hpp"

namespace pointspec {

PointConfiguration::PointConfiguration(size_t m, long d,
                                       std::vector<std::vector<QuadScalar>> points,
                                       std::vector<QuadScalar> form_weights)
    : m_(m), d_(d), points_(std::move(points)), form_(std::move(form_weights)) {
    if (m_ < 1) throw DomainError("dimension must be >= 1");
    if (points_.empty()) throw DomainError("configuration needs at least one point");
    if (!is_square_free(d_)) throw DomainError("field parameter must be square-free and >= 1");
    for (auto& pt : points_) {
        if (pt.size() != m_) throw ShapeMismatchError("point arity differs from dimension");
        for (auto& c : pt)
            if (c.d() != d_) throw MixedFieldError("coordinate field differs from configuration");
    }
    if (form_.empty())
        form_.assign(m_, QuadScalar::rational(BigRat(1), d_));
    if (form_.size() != m_) throw ShapeMismatchError("form weight arity differs from dimension");
    for (auto& w : form_) {
        if (w.d() != d_) throw MixedFieldError("form weight field differs from configuration");
        if (w.is_zero()) throw DomainError("form weights must be nonzero");
    }
}

const std::vector<QuadScalar>& PointConfiguration::point(size_t i) const {
    if (i < 1 || i > n()) throw IndexOutOfRangeError("point index " + std::to_string(i));
    return points_[i - 1];
}

bool PointConfiguration::euclidean() const {
    const QuadScalar one = QuadScalar::rational(BigRat(1), d_);
    return std::all_of(form_.begin(), form_.end(), [&](const QuadScalar& w) { return w == one; });
}

std::string Spectrum::key() const {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ';';
        out += v.str();
    }
    return out;
}

std::vector<std::pair<int, int>> pair_list(size_t n) {
    std::vector<std::pair<int, int>> out;
    out.reserve(n * (n - 1) / 2);
    for (int i = 1; i <= int(n); ++i)
        for (int j = i + 1; j <= int(n); ++j) out.emplace_back(i, j);
    return out;
}

size_t pair_index(size_t n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > int(n) || j > int(n))
        throw IndexOutOfRangeError("pair {" + std::to_string(i) + "," + std::to_string(j) + "}");
    if (i > j) std::swap(i, j);
    // pairs with first element < i come first
    size_t before = size_t(i - 1) * n - size_t(i - 1) * i / 2;
    return before + size_t(j - i - 1);
}

std::vector<std::vector<int>> subset_list(size_t n, size_t k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    auto rec = [&](auto&& self, size_t depth, int next) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= int(n) - int(k - depth - 1); ++v) {
            cur[depth] = v;
            self(self, depth + 1, v + 1);
        }
    };
    if (k <= n) rec(rec, 0, 1);
    return out;
}

QuadScalar squared_distance(const PointConfiguration& p, int i, int j) {
    if (i == j) throw IndexOutOfRangeError("squared_distance needs distinct indices");
    const auto &pi = p.point(i), &pj = p.point(j);
    QuadScalar acc = QuadScalar::rational(BigRat(0), p.d());
    for (size_t k = 0; k < p.m(); ++k) {
        const QuadScalar diff = pi[k] - pj[k];
        acc += p.form()[k] * diff * diff;
    }
    return acc;
}

Spectrum distance_spectrum(const PointConfiguration& p) {
    if (p.n() < 2) throw WrongArityError("distance spectrum needs n >= 2");
    Spectrum s{SpectrumKind::distance, {}};
    for (auto [i, j] : pair_list(p.n())) s.values.push_back(squared_distance(p, i, j));
    std::sort(s.values.begin(), s.values.end());
    return s;
}

QuadScalar signed_volume(const PointConfiguration& p, const std::vector<int>& idx) {
    if (idx.size() != p.m() + 1)
        throw WrongArityError("signed_volume needs m+1 indices, got " +
                              std::to_string(idx.size()));
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DuplicateIndexError("signed_volume indices must be distinct");
    int sign = 1;
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b)
            if (idx[a] > idx[b]) sign = -sign;

    const auto& base = p.point(sorted[0]);
    QMat mat(p.m(), p.m(), p.d());
    for (size_t col = 0; col + 1 < sorted.size(); ++col) {
        const auto& pt = p.point(sorted[col + 1]);
        for (size_t row = 0; row < p.m(); ++row) mat.at(row, col) = pt[row] - base[row];
    }
    QuadScalar det = determinant(std::move(mat));
    return sign < 0 ? -det : det;
}

Spectrum volume_spectrum(const PointConfiguration& p) {
    if (p.n() <= p.m()) throw WrongArityError("volume spectrum needs n > m");
    Spectrum s{SpectrumKind::volume, {}};
    for (const auto& idx : subset_list(p.n(), p.m() + 1)) {
        const QuadScalar v = signed_volume(p, idx);
        s.values.push_back(v * v);
    }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

QMat gram_matrix(const PointConfiguration& p, int base) {
    if (base < 1 || base > int(p.n())) throw IndexOutOfRangeError("gram base point");
    std::vector<int> others;
    for (int i = 1; i <= int(p.n()); ++i)
        if (i != base) others.push_back(i);
    const QuadScalar half = QuadScalar::rational(make_rat(1, 2), p.d());
    QMat g(others.size(), others.size(), p.d());
    for (size_t a = 0; a < others.size(); ++a)
        for (size_t b = a; b < others.size(); ++b) {
            const QuadScalar v = half * (squared_distance(p, others[a], base) +
                                         squared_distance(p, others[b], base) -
                                         (a == b ? QuadScalar::rational(BigRat(0), p.d())
                                                 : squared_distance(p, others[a], others[b])));
            g.at(a, b) = v;
            g.at(b, a) = v;
        }
    return g;
}

QMat gram_matrix(const PointConfiguration& p) { return gram_matrix(p, int(p.n())); }

QMat relation_matrix(const std::vector<QuadScalar>& distances, size_t n) {
    if (distances.size() != n * (n - 1) / 2)
        throw MissingDistanceError("need all " + std::to_string(n * (n - 1) / 2) +
                                   " distance values");
    const long d = distances.empty() ? 1 : distances[0].d();
    auto dv = [&](int i, int j) -> QuadScalar {
        if (i == j) return QuadScalar::rational(BigRat(0), d);
        return distances[pair_index(n, i, j)];
    };
    QMat out(n - 1, n - 1, d);
    for (int i = 1; i <= int(n) - 1; ++i)
        for (int j = 1; j <= int(n) - 1; ++j)
            out.at(i - 1, j - 1) = dv(i, j) - dv(i, int(n)) - dv(j, int(n));
    return out;
}

QMat relation_matrix(const PointConfiguration& p) {
    std::vector<QuadScalar> dist;
    for (auto [i, j] : pair_list(p.n())) dist.push_back(squared_distance(p, i, j));
    return relation_matrix(dist, p.n());
}

bool generic_rank_check(const PointConfiguration& p) {
    return rank(relation_matrix(p)) == std::min(p.n() - 1, p.m());
}

TriangleInvariants symmetric_distance_invariants_n3(const PointConfiguration& p) {
    if (p.n() != 3) throw WrongArityError("triangle invariants need n = 3");
    const QuadScalar a = squared_distance(p, 1, 2);
    const QuadScalar b = squared_distance(p, 1, 3);
    const QuadScalar c = squared_distance(p, 2, 3);
    TriangleInvariants t{a + b + c, a * b + a * c + b * c, a * b * c, 0, 0, 0};
    const double ra = std::sqrt(a.to_double()), rb = std::sqrt(b.to_double()),
                 rc = std::sqrt(c.to_double());
    t.e1 = ra + rb + rc;
    t.e2 = ra * rb + ra * rc + rb * rc;
    t.e3 = ra * rb * rc;
    return t;
}

Histogram histogram(const Spectrum& s, double bin_size, bool take_sqrt) {
    if (!(bin_size > 0)) throw NonPositiveBinError();
    std::map<long, long> bins;
    for (const auto& v : s.values) {
        double x = v.to_double();
        if (take_sqrt) x = std::sqrt(std::max(x, 0.0));
        bins[long(std::floor(x / bin_size))] += 1;
    }
    Histogram h{bin_size, {}};
    for (auto [k, c] : bins) h.counts.emplace_back(double(k) * bin_size, c);
    return h;
}

}  // namespace pointspec
