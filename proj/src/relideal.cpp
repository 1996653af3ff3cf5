#include "pointspec/relideal.hpp"

#include <algorithm>
#include <cstdint>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

PairKey norm_pair(size_t n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > int(n) || j > int(n))
        throw IndexOutOfRangeError("pair {" + std::to_string(i) + "," + std::to_string(j) + "}");
    return {std::min(i, j), std::max(i, j)};
}

}  // namespace

PairPolynomial PairPolynomial::variable(size_t n, int i, int j) {
    PairPolynomial f(n);
    f.add_term({norm_pair(n, i, j)}, BigRat(1));
    return f;
}

PairPolynomial PairPolynomial::constant(size_t n, BigRat c) {
    PairPolynomial f(n);
    f.add_term({}, std::move(c));
    return f;
}

size_t PairPolynomial::degree() const {
    size_t deg = 0;
    for (const auto& [mono, c] : terms_) deg = std::max(deg, mono.size());
    return deg;
}

void PairPolynomial::add_term(Monomial mono, BigRat coeff) {
    for (auto& [i, j] : mono) std::tie(i, j) = norm_pair(n_, i, j);
    std::sort(mono.begin(), mono.end());
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(std::move(mono), std::move(coeff));
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

PairPolynomial PairPolynomial::operator+(const PairPolynomial& o) const {
    if (n_ != o.n_ && !is_zero() && !o.is_zero())
        throw ShapeMismatchError("polynomials over different point counts");
    PairPolynomial out = *this;
    if (out.n_ == 0) out.n_ = o.n_;
    for (const auto& [mono, c] : o.terms_) out.add_term(mono, c);
    return out;
}

PairPolynomial PairPolynomial::operator-(const PairPolynomial& o) const { return *this + (-o); }

PairPolynomial PairPolynomial::operator-() const {
    PairPolynomial out = *this;
    for (auto& [mono, c] : out.terms_) c = -c;
    return out;
}

PairPolynomial PairPolynomial::scaled(const BigRat& c) const {
    PairPolynomial out(n_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& [mono, coeff] : out.terms_) coeff *= c;
    return out;
}

PairPolynomial PairPolynomial::operator*(const PairPolynomial& o) const {
    if (n_ != o.n_ && !is_zero() && !o.is_zero())
        throw ShapeMismatchError("polynomials over different point counts");
    PairPolynomial out(std::max(n_, o.n_));
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add_term(std::move(m), ca * cb);
        }
    return out;
}

BigRat PairPolynomial::content() const {
    BigInt num(0), den(1);
    for (const auto& [mono, c] : terms_) {
        num = gcd(num, BigInt(c.get_num()));
        den = lcm(den, BigInt(c.get_den()));
    }
    if (num == 0) return BigRat(0);
    return make_rat(abs(num), den);
}

PairPolynomial PairPolynomial::primitive_part() const {
    const BigRat c = content();
    if (c == 0) return *this;
    BigRat inv = 1 / c;
    return scaled(inv);
}

std::string PairPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mono, c] : terms_) {
        const bool neg = c < 0;
        BigRat mag = neg ? BigRat(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string factors;
        for (const auto& [i, j] : mono) {
            if (!factors.empty()) factors += "*";
            factors += "D{" + std::to_string(i) + "," + std::to_string(j) + "}";
        }
        if (factors.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += factors;
        } else {
            out += mag.get_str() + "*" + factors;
        }
    }
    return out;
}

QuadScalar evaluate(const PairPolynomial& f, const std::vector<QuadScalar>& distances) {
    const size_t n = f.n();
    if (distances.size() != n * (n - 1) / 2)
        throw MissingDistanceError("need all " + std::to_string(n * (n - 1) / 2) +
                                   " distance values");
    const long d = distances.empty() ? 1 : distances[0].d();
    QuadScalar acc = QuadScalar(0).lift_to(d);
    for (const auto& [mono, c] : f.terms()) {
        QuadScalar term = QuadScalar::rational(c, d);
        for (const auto& [i, j] : mono) term *= distances[pair_index(n, i, j)];
        acc += term;
    }
    return acc;
}

std::vector<std::vector<PairPolynomial>> symbolic_relation_matrix(size_t n) {
    if (n < 2) throw DomainError("relation matrix needs n >= 2");
    std::vector<std::vector<PairPolynomial>> mat(n - 1,
                                                 std::vector<PairPolynomial>(n - 1));
    for (int i = 1; i <= int(n) - 1; ++i)
        for (int j = 1; j <= int(n) - 1; ++j) {
            PairPolynomial e(n);
            if (i != j) e = e + PairPolynomial::variable(n, i, j);
            e = e - PairPolynomial::variable(n, i, int(n));
            e = e - PairPolynomial::variable(n, j, int(n));
            mat[i - 1][j - 1] = std::move(e);
        }
    return mat;
}

PairPolynomial minor(const std::vector<std::vector<PairPolynomial>>& mat,
                     const std::vector<int>& rows, const std::vector<int>& cols) {
    const size_t size = mat.size();
    if (rows.size() != cols.size()) throw ShapeMismatchError("minor needs |rows| == |cols|");
    auto validate = [&](const std::vector<int>& v) {
        for (int x : v)
            if (x < 1 || size_t(x) > size)
                throw IndexOutOfRangeError("minor label " + std::to_string(x));
        for (size_t a = 0; a < v.size(); ++a)
            for (size_t b = a + 1; b < v.size(); ++b)
                if (v[a] == v[b]) throw DuplicateIndexError("repeated minor label");
    };
    validate(rows);
    validate(cols);
    const size_t n = size + 1;
    if (rows.empty()) return PairPolynomial::constant(n, BigRat(1));

    std::vector<int> r = rows, c = cols;
    std::sort(r.begin(), r.end());
    std::sort(c.begin(), c.end());
    // cofactor expansion along the first remaining row, memoized on the
    // surviving column set (the row set is determined by the recursion depth)
    std::map<uint64_t, PairPolynomial> memo;
    auto expand = [&](auto&& self, size_t depth, uint64_t colmask) -> PairPolynomial {
        if (depth == r.size()) return PairPolynomial::constant(n, BigRat(1));
        auto it = memo.find(colmask);
        if (it != memo.end()) return it->second;
        PairPolynomial acc(n);
        int pos = 0;
        for (size_t k = 0; k < c.size(); ++k) {
            if (!(colmask & (uint64_t(1) << k))) continue;
            const auto& entry = mat[size_t(r[depth]) - 1][size_t(c[k]) - 1];
            if (!entry.is_zero()) {
                PairPolynomial sub = self(self, depth + 1, colmask & ~(uint64_t(1) << k));
                PairPolynomial piece = entry * sub;
                acc = pos % 2 == 0 ? acc + piece : acc - piece;
            }
            ++pos;
        }
        memo.emplace(colmask, acc);
        return acc;
    };
    return expand(expand, 0, (uint64_t(1) << c.size()) - 1);
}

bool monomial_admissible(const MonomialSpec& t, size_t r, size_t n) {
    if (t.degree != t.factors.size() || t.degree != r)
        throw DegreeMismatchError("monomial degree differs from r");
    if (r < 1 || r > n - 1) throw DegreeMismatchError("need 1 <= r <= n-1");
    std::vector<size_t> count(n + 1, 0);
    for (const auto& [i, j] : t.factors) {
        const auto [a, b] = norm_pair(n, i, j);
        if (++count[size_t(a)] > 2) return false;
        if (++count[size_t(b)] > 2) return false;
    }
    return true;
}

bool monomial_occurs_bruteforce(const MonomialSpec& t, size_t r, size_t n) {
    if (n > 6) throw TooLargeError("brute-force monomial search bounded to n <= 6");
    if (t.degree != t.factors.size() || t.degree != r)
        throw DegreeMismatchError("monomial degree differs from r");
    if (r < 1 || r > n - 1) throw DegreeMismatchError("need 1 <= r <= n-1");
    Monomial key = t.factors;
    for (auto& [i, j] : key) std::tie(i, j) = norm_pair(n, i, j);
    std::sort(key.begin(), key.end());

    const auto mat = symbolic_relation_matrix(n);
    const auto subsets = subset_list(n - 1, r);
    for (const auto& rows : subsets)
        for (const auto& cols : subsets)
            if (minor(mat, rows, cols).terms().count(key)) return true;
    return false;
}

PairPolynomial apply_pair_permutation(const PairPolynomial& f, const std::vector<size_t>& phi) {
    const size_t n = f.n();
    const auto pairs = pair_list(n);
    if (phi.size() != pairs.size())
        throw ShapeMismatchError("pair permutation size differs from the pair set");
    PairPolynomial out(n);
    for (const auto& [mono, c] : f.terms()) {
        Monomial image;
        for (const auto& [i, j] : mono) {
            const size_t k = phi[pair_index(n, i, j)];
            if (k >= pairs.size()) throw IndexOutOfRangeError("pair permutation image");
            image.emplace_back(pairs[k]);
        }
        out.add_term(std::move(image), c);
    }
    return out;
}

}  // namespace pointspec
