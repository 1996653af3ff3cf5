#include "pointspec/congruence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

void check_shapes(const PointConfiguration& p, const PointConfiguration& q) {
    if (p.n() != q.n() || p.m() != q.m()) throw ShapeMismatchError("configuration sizes differ");
    if (p.d() != q.d()) throw ShapeMismatchError("configurations live in different fields");
    if (p.form() != q.form()) throw ShapeMismatchError("configurations carry different forms");
}

QuadScalar form_dot(const PointConfiguration& p, const std::vector<QuadScalar>& x,
                    const std::vector<QuadScalar>& y) {
    QuadScalar acc = QuadScalar(0).lift_to(p.d());
    for (size_t k = 0; k < x.size(); ++k) acc += p.form()[k] * x[k] * y[k];
    return acc;
}

std::vector<QuadScalar> diff(const std::vector<QuadScalar>& a, const std::vector<QuadScalar>& b) {
    std::vector<QuadScalar> out;
    out.reserve(a.size());
    for (size_t k = 0; k < a.size(); ++k) out.push_back(a[k] - b[k]);
    return out;
}

// Indices of a maximal linearly independent subset of the given vectors.
std::vector<size_t> independent_columns(const std::vector<std::vector<QuadScalar>>& vecs,
                                        size_t m) {
    std::vector<size_t> picked;
    std::vector<std::vector<QuadScalar>> rows;  // row-echelon workspace
    for (size_t c = 0; c < vecs.size(); ++c) {
        std::vector<QuadScalar> v = vecs[c];
        for (const auto& r : rows) {
            size_t lead = 0;
            while (lead < m && r[lead].is_zero()) ++lead;
            if (lead < m && !v[lead].is_zero()) {
                const QuadScalar f = v[lead] / r[lead];
                for (size_t k = lead; k < m; ++k) v[k] -= f * r[k];
            }
        }
        if (std::any_of(v.begin(), v.end(), [](const QuadScalar& x) { return !x.is_zero(); })) {
            picked.push_back(c);
            rows.push_back(std::move(v));
            // keep rows sorted by leading index so elimination above stays valid
            std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
                size_t la = 0, lb = 0;
                while (la < m && a[la].is_zero()) ++la;
                while (lb < m && b[lb].is_zero()) ++lb;
                return la < lb;
            });
        }
        if (picked.size() == m) break;
    }
    return picked;
}

// Orthogonalizes `vecs` in place against each other (no normalization) under
// the configuration's form; returns false if an isotropic vector shows up.
bool gram_schmidt(const PointConfiguration& ctx, std::vector<std::vector<QuadScalar>>& vecs) {
    for (size_t i = 0; i < vecs.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            const QuadScalar nj = form_dot(ctx, vecs[j], vecs[j]);
            if (nj.is_zero()) return false;
            const QuadScalar f = form_dot(ctx, vecs[i], vecs[j]) / nj;
            for (size_t k = 0; k < vecs[i].size(); ++k) vecs[i][k] -= f * vecs[j][k];
        }
    }
    return true;  // isotropy of the last vector surfaces later, in the complement step
}

// Extends the span of `basis` to all of R^m by form-orthogonal vectors drawn
// from the standard basis (unnormalized Gram-Schmidt).
std::vector<std::vector<QuadScalar>> orthogonal_complement(const PointConfiguration& ctx,
                                                           std::vector<std::vector<QuadScalar>> ortho) {
    const size_t m = ctx.m();
    const QuadScalar zero = QuadScalar(0).lift_to(ctx.d()), one = QuadScalar(1).lift_to(ctx.d());
    std::vector<std::vector<QuadScalar>> complement;
    for (size_t e = 0; e < m && ortho.size() < m; ++e) {
        std::vector<QuadScalar> v(m, zero);
        v[e] = one;
        for (const auto& o : ortho) {
            const QuadScalar no = form_dot(ctx, o, o);
            if (no.is_zero()) return {};  // isotropic direction: give up
            const QuadScalar f = form_dot(ctx, v, o) / no;
            for (size_t k = 0; k < m; ++k) v[k] -= f * o[k];
        }
        if (std::any_of(v.begin(), v.end(), [](const QuadScalar& x) { return !x.is_zero(); })) {
            complement.push_back(v);
            ortho.push_back(std::move(v));
        }
    }
    return complement;
}

QMat invert(const QMat& b) {
    const size_t m = b.rows();
    QMat inv(m, m, b.at(0, 0).d());
    for (size_t k = 0; k < m; ++k) {
        std::vector<QuadScalar> e(m, QuadScalar(0).lift_to(b.at(0, 0).d()));
        e[k] = QuadScalar(1).lift_to(b.at(0, 0).d());
        const auto col = solve(b, e);
        for (size_t r = 0; r < m; ++r) inv.at(r, k) = col[r];
    }
    return inv;
}

QMat matmul(const QMat& a, const QMat& b) {
    QMat out(a.rows(), b.cols(), a.at(0, 0).d());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) {
            QuadScalar acc = QuadScalar(0).lift_to(a.at(0, 0).d());
            for (size_t k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

std::vector<QuadScalar> apply(const QMat& a, const std::vector<QuadScalar>& x) {
    std::vector<QuadScalar> out(a.rows(), QuadScalar(0).lift_to(a.at(0, 0).d()));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) out[i] += a.at(i, k) * x[k];
    return out;
}

// Per-point sorted multiset of squared distances to all other points, as one
// canonical string per point (the backtracking candidate key).
std::vector<std::string> distance_keys(const PointConfiguration& p) {
    std::vector<std::string> keys;
    for (size_t i = 1; i <= p.n(); ++i) {
        std::vector<QuadScalar> row;
        for (size_t j = 1; j <= p.n(); ++j)
            if (j != i) row.push_back(squared_distance(p, int(i), int(j)));
        std::sort(row.begin(), row.end());
        std::string k;
        for (const auto& v : row) k += v.str() + ";";
        keys.push_back(std::move(k));
    }
    return keys;
}

// Per-point sorted multiset of squared volumes over all (m+1)-subsets through
// the point.
std::vector<std::string> volume_keys(const PointConfiguration& p,
                                     const std::vector<std::vector<int>>& subsets,
                                     const std::vector<QuadScalar>& sqvols) {
    std::vector<std::vector<QuadScalar>> rows(p.n());
    for (size_t s = 0; s < subsets.size(); ++s)
        for (int i : subsets[s]) rows[size_t(i) - 1].push_back(sqvols[s]);
    std::vector<std::string> keys;
    for (auto& row : rows) {
        std::sort(row.begin(), row.end());
        std::string k;
        for (const auto& v : row) k += v.str() + ";";
        keys.push_back(std::move(k));
    }
    return keys;
}

// Generic backtracking matcher: find pi with q-position i matched to p-index
// pi[i] (0-based), honoring per-position candidate lists and an incremental
// pairwise-consistency predicate.
template <typename Consistent>
std::optional<std::vector<size_t>> match_points(
    size_t n, const std::vector<std::vector<size_t>>& cand, Consistent&& consistent) {
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (cand[a].size() != cand[b].size()) return cand[a].size() < cand[b].size();
        return a < b;
    });
    std::vector<size_t> pi(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, size_t depth) -> bool {
        if (depth == n) return true;
        const size_t i = order[depth];
        for (size_t k : cand[i]) {
            if (used[k]) continue;
            pi[i] = k;
            if (consistent(i, pi)) {
                used[k] = true;
                if (self(self, depth + 1)) return true;
                used[k] = false;
            }
        }
        pi[i] = SIZE_MAX;
        return false;
    };
    if (rec(rec, 0)) return pi;
    return std::nullopt;
}

}  // namespace

PointConfiguration reorder(const PointConfiguration& p, const std::vector<size_t>& pi) {
    if (pi.size() != p.n()) throw WrongArityError("relabeling arity differs from point count");
    std::vector<bool> seen(p.n(), false);
    std::vector<std::vector<QuadScalar>> pts;
    for (size_t k : pi) {
        if (k >= p.n() || seen[k]) throw DuplicateIndexError("relabeling is not a permutation");
        seen[k] = true;
        pts.push_back(p.points()[k]);
    }
    return {p.m(), p.d(), std::move(pts), p.form()};
}

bool labeled_congruent(const PointConfiguration& p, const PointConfiguration& q) {
    check_shapes(p, q);
    for (auto [i, j] : pair_list(p.n()))
        if (squared_distance(p, i, j) != squared_distance(q, i, j)) return false;
    return true;
}

std::optional<RigidWitness> rigid_witness(const PointConfiguration& p,
                                          const PointConfiguration& q) {
    if (!labeled_congruent(p, q)) return std::nullopt;
    const size_t n = p.n(), m = p.m();
    const long d = p.d();
    const auto& pbase = p.points().back();
    const auto& qbase = q.points().back();

    std::vector<std::vector<QuadScalar>> u, w;
    for (size_t i = 0; i + 1 < n; ++i) {
        u.push_back(diff(p.points()[i], pbase));
        w.push_back(diff(q.points()[i], qbase));
    }
    const auto idx = independent_columns(u, m);

    // exact attempt: map the independent frame, extend form-orthogonally
    bool exact_ok = true;
    std::vector<std::vector<QuadScalar>> pcols, qcols;
    for (size_t c : idx) {
        pcols.push_back(u[c]);
        qcols.push_back(w[c]);
    }
    if (idx.size() < m) {
        auto portho = pcols, qortho = qcols;
        if (!pcols.empty() && (!gram_schmidt(p, portho) || !gram_schmidt(q, qortho)))
            exact_ok = false;
        if (exact_ok) {
            const auto pc = orthogonal_complement(p, portho);
            const auto qc = orthogonal_complement(q, qortho);
            if (pc.size() != m - idx.size() || qc.size() != m - idx.size()) exact_ok = false;
            for (size_t k = 0; exact_ok && k < pc.size(); ++k) {
                const QuadScalar np = form_dot(p, pc[k], pc[k]);
                const QuadScalar nq = form_dot(q, qc[k], qc[k]);
                if (nq.is_zero()) {
                    exact_ok = false;
                    break;
                }
                const auto lambda = sqrt_in_field(np / nq);
                if (!lambda) {
                    exact_ok = false;
                    break;
                }
                pcols.push_back(pc[k]);
                std::vector<QuadScalar> scaled;
                for (const auto& x : qc[k]) scaled.push_back(*lambda * x);
                qcols.push_back(std::move(scaled));
            }
        }
    }
    if (exact_ok && pcols.size() == m) {
        QMat b(m, m, d), c(m, m, d);
        for (size_t j = 0; j < m; ++j)
            for (size_t r = 0; r < m; ++r) {
                b.at(r, j) = pcols[j][r];
                c.at(r, j) = qcols[j][r];
            }
        const QMat a = matmul(c, invert(b));
        RigidWitness wit;
        wit.map = a;
        const auto apn = apply(a, pbase);
        for (size_t r = 0; r < m; ++r) wit.shift.push_back(qbase[r] - apn[r]);
        bool verified = true;
        for (size_t i = 0; i < n && verified; ++i) {
            const auto img = apply(a, p.points()[i]);
            for (size_t r = 0; r < m; ++r)
                if (img[r] + wit.shift[r] != q.points()[i][r]) verified = false;
        }
        if (verified) return wit;
    }

    // fallback: orthogonal Procrustes in double precision (positive form only)
    for (const auto& wgt : p.form())
        if (wgt.sign() <= 0)
            throw DomainError("approximate witness needs positive form weights");
    std::vector<double> wsqrt(m);
    for (size_t k = 0; k < m; ++k) wsqrt[k] = std::sqrt(p.form()[k].to_double());
    const long mm = long(m);
    Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(mm, mm);
    for (size_t i = 0; i + 1 < n; ++i) {
        Eigen::VectorXd ut(mm), wt(mm);
        for (size_t k = 0; k < m; ++k) {
            ut(long(k)) = u[i][k].to_double() * wsqrt[k];
            wt(long(k)) = w[i][k].to_double() * wsqrt[k];
        }
        cross += wt * ut.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd atilde = svd.matrixU() * svd.matrixV().transpose();
    Eigen::MatrixXd a(mm, mm);
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c)
            a(long(r), long(c)) = atilde(long(r), long(c)) * wsqrt[c] / wsqrt[r];

    RigidWitness wit;
    wit.exact = false;
    wit.map_approx.resize(m * m);
    wit.shift_approx.resize(m);
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c) wit.map_approx[r * m + c] = a(long(r), long(c));
    for (size_t r = 0; r < m; ++r) {
        double acc = qbase[r].to_double();
        for (size_t c = 0; c < m; ++c) acc -= a(long(r), long(c)) * pbase[c].to_double();
        wit.shift_approx[r] = acc;
    }
    double res = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t r = 0; r < m; ++r) {
            double img = wit.shift_approx[r];
            for (size_t c = 0; c < m; ++c)
                img += wit.map_approx[r * m + c] * p.points()[i][c].to_double();
            res = std::max(res, std::abs(img - q.points()[i][r].to_double()));
        }
    wit.residual = res;
    return wit;
}

std::optional<std::vector<size_t>> orbit_congruent(const PointConfiguration& p,
                                                   const PointConfiguration& q) {
    check_shapes(p, q);
    const size_t n = p.n();
    const auto kp = distance_keys(p), kq = distance_keys(q);
    std::vector<std::vector<size_t>> cand(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k)
            if (kp[k] == kq[i]) cand[i].push_back(k);
        if (cand[i].empty()) return std::nullopt;
    }
    // exact distance tables, 0-based
    std::vector<std::vector<QuadScalar>> dp(n, std::vector<QuadScalar>(n)),
        dq(n, std::vector<QuadScalar>(n));
    for (auto [i, j] : pair_list(n)) {
        dp[i - 1][j - 1] = dp[j - 1][i - 1] = squared_distance(p, i, j);
        dq[i - 1][j - 1] = dq[j - 1][i - 1] = squared_distance(q, i, j);
    }
    return match_points(n, cand, [&](size_t i, const std::vector<size_t>& pi) {
        for (size_t j = 0; j < n; ++j)
            if (j != i && pi[j] != SIZE_MAX && dq[i][j] != dp[pi[i]][pi[j]]) return false;
        return true;
    });
}

Verdict labeled_volume_equivalent(const PointConfiguration& p, const PointConfiguration& q,
                                  AffineWitness* witness) {
    check_shapes(p, q);
    const size_t n = p.n(), m = p.m();
    if (n <= m) throw WrongArityError("volume equivalence needs n > m");
    const long d = p.d();

    const auto subsets = subset_list(n, m + 1);
    std::vector<int> frame;
    QuadScalar volp = QuadScalar(0).lift_to(d);
    for (const auto& s : subsets) {
        volp = signed_volume(p, s);
        if (!volp.is_zero()) {
            frame = s;
            break;
        }
    }
    if (frame.empty()) {
        for (const auto& s : subsets)
            if (!signed_volume(q, s).is_zero()) return Verdict::no;
        return Verdict::indeterminate;  // both configurations are flat
    }
    const QuadScalar volq = signed_volume(q, frame);
    if (volq.is_zero()) return Verdict::no;
    const QuadScalar ratio = volq / volp;
    const QuadScalar one = QuadScalar(1).lift_to(d);
    if (ratio != one && ratio != -one) return Verdict::no;

    // reconstruct sigma from the frame and verify every point exactly
    QMat f(m, m, d), g(m, m, d);
    const auto& p0 = p.point(frame[0]);
    const auto& q0 = q.point(frame[0]);
    for (size_t j = 0; j < m; ++j) {
        const auto fu = diff(p.point(frame[j + 1]), p0);
        const auto gv = diff(q.point(frame[j + 1]), q0);
        for (size_t r = 0; r < m; ++r) {
            f.at(r, j) = fu[r];
            g.at(r, j) = gv[r];
        }
    }
    const QMat sigma = matmul(g, invert(f));
    std::vector<QuadScalar> shift;
    const auto sp0 = apply(sigma, p0);
    for (size_t r = 0; r < m; ++r) shift.push_back(q0[r] - sp0[r]);
    for (size_t i = 0; i < n; ++i) {
        const auto img = apply(sigma, p.points()[i]);
        for (size_t r = 0; r < m; ++r)
            if (img[r] + shift[r] != q.points()[i][r]) return Verdict::no;
    }
    if (witness) {
        witness->map = sigma;
        witness->shift = std::move(shift);
        witness->det_sign = ratio == one ? 1 : -1;
    }
    return Verdict::yes;
}

Verdict orbit_volume_equivalent(const PointConfiguration& p, const PointConfiguration& q,
                                std::vector<size_t>* pi_out, AffineWitness* witness) {
    check_shapes(p, q);
    const size_t n = p.n(), m = p.m();
    if (n <= m) throw WrongArityError("volume equivalence needs n > m");

    const auto subsets = subset_list(n, m + 1);
    std::vector<QuadScalar> sqp, sqq;
    bool p_flat = true, q_flat = true;
    for (const auto& s : subsets) {
        const QuadScalar a = signed_volume(p, s), b = signed_volume(q, s);
        if (!a.is_zero()) p_flat = false;
        if (!b.is_zero()) q_flat = false;
        sqp.push_back(a * a);
        sqq.push_back(b * b);
    }
    if (p_flat && q_flat) return Verdict::indeterminate;
    if (p_flat != q_flat) return Verdict::no;

    const auto kp = volume_keys(p, subsets, sqp);
    const auto kq = volume_keys(q, subsets, sqq);
    std::vector<std::vector<size_t>> cand(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k)
            if (kp[k] == kq[i]) cand[i].push_back(k);
        if (cand[i].empty()) return Verdict::no;
    }

    std::map<std::vector<int>, QuadScalar> sqp_by_set;
    for (size_t s = 0; s < subsets.size(); ++s) sqp_by_set[subsets[s]] = sqp[s];
    std::map<std::vector<int>, size_t> rank_of;
    for (size_t s = 0; s < subsets.size(); ++s) rank_of[subsets[s]] = s;

    Verdict result = Verdict::no;
    auto leaf_or_prune = [&](size_t i, const std::vector<size_t>& pi) {
        // squared volumes must agree on every fully-assigned subset through i
        for (size_t s = 0; s < subsets.size(); ++s) {
            bool through_i = false, complete = true;
            for (int e : subsets[s]) {
                if (size_t(e - 1) == i) through_i = true;
                if (pi[size_t(e - 1)] == SIZE_MAX) complete = false;
            }
            if (!through_i || !complete) continue;
            std::vector<int> mapped;
            for (int e : subsets[s]) mapped.push_back(int(pi[size_t(e - 1)]) + 1);
            std::sort(mapped.begin(), mapped.end());
            if (sqp_by_set.at(mapped) != sqq[s]) return false;
        }
        return true;
    };
    // depth-first over assignments; the leaf check settles the global sign
    std::vector<size_t> found;
    AffineWitness wit;
    auto all_assigned = [&](const std::vector<size_t>& pi) {
        return std::none_of(pi.begin(), pi.end(), [](size_t v) { return v == SIZE_MAX; });
    };
    const auto match = match_points(n, cand, [&](size_t i, const std::vector<size_t>& pi) {
        if (!leaf_or_prune(i, pi)) return false;
        if (all_assigned(pi))
            return labeled_volume_equivalent(reorder(p, pi), q, &wit) == Verdict::yes;
        return true;
    });
    if (match) {
        result = Verdict::yes;
        found = *match;
        if (pi_out) *pi_out = found;
        if (witness) *witness = wit;
    }
    return result;
}

}  // namespace pointspec
