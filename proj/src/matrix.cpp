#include "pointspec/matrix.hpp"

#include "pointspec/errors.hpp"

namespace pointspec {

size_t rank(QMat m) {
    size_t r = 0;
    for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        size_t piv = r;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        for (size_t i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, col).is_zero()) continue;
            const QuadScalar f = m.at(i, col) / m.at(r, col);
            for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

QuadScalar determinant(QMat m) {
    if (m.rows() != m.cols()) throw ShapeMismatchError("determinant of non-square matrix");
    const long d = m.rows() ? m.at(0, 0).d() : 1;
    QuadScalar det = QuadScalar::rational(BigRat(1), d);
    for (size_t col = 0; col < m.cols(); ++col) {
        size_t piv = col;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) return QuadScalar::rational(BigRat(0), d);
        if (piv != col) {
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        for (size_t i = col + 1; i < m.rows(); ++i) {
            if (m.at(i, col).is_zero()) continue;
            const QuadScalar f = m.at(i, col) / m.at(col, col);
            for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

std::optional<SymFactor> psd_factor(const QMat& g) {
    if (g.rows() != g.cols()) throw ShapeMismatchError("psd test of non-square matrix");
    const size_t n = g.rows();
    const long d = n ? g.at(0, 0).d() : 1;
    const QuadScalar zero = QuadScalar::rational(BigRat(0), d);
    QMat w = g;
    std::vector<bool> active(n, true);
    SymFactor f;
    for (;;) {
        size_t piv = n;
        for (size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            const int s = w.at(i, i).sign();
            if (s < 0) return std::nullopt;
            if (s > 0 && piv == n) piv = i;
        }
        if (piv == n) break;
        // Record the L column scaled by 1/pivot, then form the Schur complement.
        const QuadScalar p = w.at(piv, piv);
        std::vector<QuadScalar> col(n, zero);
        for (size_t i = 0; i < n; ++i)
            if (active[i]) col[i] = w.at(piv, i) / p;
        f.pivot_order.push_back(piv);
        f.pivots.push_back(p);
        f.cols.push_back(col);
        ++f.rank;
        active[piv] = false;
        for (size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (size_t j = 0; j < n; ++j) {
                if (!active[j]) continue;
                w.at(i, j) -= col[i] * col[j] * p;
            }
        }
    }
    // All remaining diagonal entries are zero; PSD forces their rows to vanish.
    for (size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (size_t j = 0; j < n; ++j)
            if (active[j] && !w.at(i, j).is_zero()) return std::nullopt;
    }
    return f;
}

std::vector<QuadScalar> solve(QMat a, std::vector<QuadScalar> b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw ShapeMismatchError("solve shape mismatch");
    const size_t n = a.rows();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw RankDeficientError("singular system");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            std::swap(b[piv], b[col]);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).is_zero()) continue;
            const QuadScalar f = a.at(i, col) / a.at(col, col);
            for (size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<QuadScalar> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a.at(i, i);
    return x;
}

}  // namespace pointspec
