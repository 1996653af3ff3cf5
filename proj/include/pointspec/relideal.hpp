#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pointspec/config.hpp"
#include "pointspec/scalar.hpp"

namespace pointspec {

// Unordered point pair {i,j}, stored with i < j, indices in 1..n.
using PairKey = std::pair<int, int>;

// Product of pair variables as a sorted multiset of factors.
using Monomial = std::vector<PairKey>;

struct MonomialSpec {
    size_t degree = 0;
    Monomial factors;
};

// Sparse polynomial in the pair variables D{i,j} of an n-point setting, with
// exact rational coefficients.  Zero coefficients are never stored.
class PairPolynomial {
  public:
    PairPolynomial() = default;  // zero polynomial of an unspecified setting
    explicit PairPolynomial(size_t n) : n_(n) {}
    static PairPolynomial variable(size_t n, int i, int j);
    static PairPolynomial constant(size_t n, BigRat c);

    size_t n() const { return n_; }
    const std::map<Monomial, BigRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t degree() const;

    PairPolynomial operator+(const PairPolynomial& o) const;
    PairPolynomial operator-(const PairPolynomial& o) const;
    PairPolynomial operator*(const PairPolynomial& o) const;
    PairPolynomial operator-() const;
    PairPolynomial scaled(const BigRat& c) const;
    bool operator==(const PairPolynomial& o) const = default;

    void add_term(Monomial mono, BigRat coeff);  // normalizes and drops zeros

    // positive gcd of the coefficients (0 for the zero polynomial), and the
    // polynomial divided by it
    BigRat content() const;
    PairPolynomial primitive_part() const;

    // "D{1,2}*D{1,2}-2*D{1,3}+D{2,3}": terms in canonical monomial order,
    // repeated factors written out, unit coefficients elided
    std::string str() const;

  private:
    size_t n_ = 0;
    std::map<Monomial, BigRat> terms_;
};

// Substitutes the given squared distances (lexicographic pair order, length
// C(n,2)) for the variables.
QuadScalar evaluate(const PairPolynomial& f, const std::vector<QuadScalar>& distances);

// The (n-1)x(n-1) symbolic matrix with entry (i,j) = D{i,j} - D{i,n} - D{j,n}
// and D{i,i} = 0; its (m+1)-minors cut out the distance relations in
// dimension m.
std::vector<std::vector<PairPolynomial>> symbolic_relation_matrix(size_t n);

// Exact determinant of the submatrix on the given 1-based row/column labels,
// expanded by memoized cofactors.
PairPolynomial minor(const std::vector<std::vector<PairPolynomial>>& mat,
                     const std::vector<int>& rows, const std::vector<int>& cols);

// Degree-r monomial criterion: every point index may appear at most twice
// across the factors.
bool monomial_admissible(const MonomialSpec& t, size_t r, size_t n);

// Brute-force ground truth for monomial_admissible: expands every r x r minor
// of the symbolic matrix and looks for the monomial.  Bounded to n <= 6.
bool monomial_occurs_bruteforce(const MonomialSpec& t, size_t r, size_t n);

// Variable substitution D_S -> D_phi(S), with phi given as a permutation of
// the lexicographic pair indices (0-based, length C(n,2)).
PairPolynomial apply_pair_permutation(const PairPolynomial& f, const std::vector<size_t>& phi);

}  // namespace pointspec
