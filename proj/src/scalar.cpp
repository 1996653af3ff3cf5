#include "pointspec/scalar.hpp"

#include <cmath>
#include <utility>

namespace pointspec {

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZeroError();
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

bool is_square_free(long d) {
    if (d < 1) return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

QuadScalar::QuadScalar(BigRat a, BigRat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (!is_square_free(d_))
        throw DomainError("field parameter must be a square-free integer >= 1, got " +
                          std::to_string(d_));
    if (d_ == 1 && b_ != 0) {  // sqrt(1) = 1
        a_ += b_;
        b_ = 0;
    }
}

void QuadScalar::check_same_field(const QuadScalar& o) const {
    if (d_ != o.d_)
        throw MixedFieldError("mixed field parameters " + std::to_string(d_) + " and " +
                              std::to_string(o.d_));
}

QuadScalar QuadScalar::lift_to(long d) const {
    if (d == d_) return *this;
    if (b_ != 0)
        throw MixedFieldError("cannot lift irrational value from sqrt(" + std::to_string(d_) +
                              ") to sqrt(" + std::to_string(d) + ")");
    return {a_, BigRat(0), d};
}

int QuadScalar::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against b^2 * d exactly.
    const BigRat lhs = a_ * a_;
    const BigRat rhs = b_ * b_ * d_;
    const int c = cmp(lhs, rhs);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
}

QuadScalar QuadScalar::operator+(const QuadScalar& o) const {
    check_same_field(o);
    return {a_ + o.a_, b_ + o.b_, d_};
}

QuadScalar QuadScalar::operator-(const QuadScalar& o) const {
    check_same_field(o);
    return {a_ - o.a_, b_ - o.b_, d_};
}

QuadScalar QuadScalar::operator*(const QuadScalar& o) const {
    check_same_field(o);
    return {a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_, d_};
}

QuadScalar QuadScalar::operator/(const QuadScalar& o) const {
    check_same_field(o);
    if (o.is_zero()) throw DivisionByZeroError();
    // Multiply by the conjugate; the norm e^2 - f^2 d vanishes only at zero.
    const BigRat norm = o.a_ * o.a_ - o.b_ * o.b_ * d_;
    return {(a_ * o.a_ - b_ * o.b_ * d_) / norm, (b_ * o.a_ - a_ * o.b_) / norm, d_};
}

bool QuadScalar::operator==(const QuadScalar& o) const {
    check_same_field(o);
    return a_ == o.a_ && b_ == o.b_;
}

std::strong_ordering QuadScalar::operator<=>(const QuadScalar& o) const {
    const int s = (*this - o).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

std::string rat_str(const BigRat& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

}  // namespace

std::string QuadScalar::str() const {
    if (b_ == 0) return rat_str(a_);
    std::string tail = rat_str(abs(b_)) + "*sqrt(" + std::to_string(d_) + ")";
    if (a_ == 0) return (sgn(b_) < 0 ? "-" : "") + tail;
    return rat_str(a_) + (sgn(b_) < 0 ? "-" : "+") + tail;
}

double QuadScalar::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(double(d_)); }

namespace {

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("scalar parse error at column " + std::to_string(pos + 1) + ": " + what +
                             " in \"" + std::string(s) + "\"",
                         1, int(pos + 1));
    }
};

BigInt parse_uint(Cursor& c) {
    size_t start = c.pos;
    while (!c.done() && c.peek() >= '0' && c.peek() <= '9') ++c.pos;
    if (c.pos == start) c.fail("expected digits");
    return BigInt(std::string(c.s.substr(start, c.pos - start)));
}

BigRat parse_rational(Cursor& c, int sign) {
    BigInt num = parse_uint(c);
    BigInt den = 1;
    if (c.peek() == '/') {
        ++c.pos;
        den = parse_uint(c);
        if (den == 0) c.fail("zero denominator");
    }
    return make_rat(sign < 0 ? BigInt(-num) : num, den);
}

long parse_sqrt_arg(Cursor& c) {
    static constexpr std::string_view kw = "sqrt(";
    if (c.s.substr(c.pos, kw.size()) != kw) c.fail("expected sqrt(");
    c.pos += kw.size();
    BigInt arg = parse_uint(c);
    if (c.peek() != ')') c.fail("expected )");
    ++c.pos;
    if (!arg.fits_slong_p()) c.fail("sqrt argument out of range");
    return arg.get_si();
}

// One signed term: either "r/s" or "[r/s*]sqrt(e)".  Returns (rational part,
// sqrt coefficient, sqrt argument or 0 when absent).
struct Term {
    BigRat value;
    bool has_sqrt = false;
    long sqrt_arg = 0;
};

Term parse_term(Cursor& c, int sign) {
    Term t;
    if (c.peek() == 's') {
        t.has_sqrt = true;
        t.sqrt_arg = parse_sqrt_arg(c);
        t.value = BigRat(sign);
        return t;
    }
    t.value = parse_rational(c, sign);
    if (c.peek() == '*') {
        ++c.pos;
        t.has_sqrt = true;
        t.sqrt_arg = parse_sqrt_arg(c);
    }
    return t;
}

}  // namespace

QuadScalar parse_scalar(std::string_view text, long d) {
    // Trim surrounding whitespace only; canonical form has none inside.
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw ParseError("empty scalar");
    Cursor c{text.substr(b, e - b + 1)};

    BigRat ra(0), rb(0);
    bool saw_rational = false, saw_sqrt = false;
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
        sign = c.peek() == '-' ? -1 : 1;
        ++c.pos;
    }
    for (int nterm = 0;; ++nterm) {
        if (nterm >= 2) c.fail("too many terms");
        Term t = parse_term(c, sign);
        if (t.has_sqrt) {
            if (saw_sqrt) c.fail("repeated sqrt term");
            if (t.sqrt_arg != d || d == 1)
                throw MixedFieldError("sqrt(" + std::to_string(t.sqrt_arg) +
                                      ") does not match field parameter d=" + std::to_string(d));
            rb += t.value;
            saw_sqrt = true;
        } else {
            if (saw_rational) c.fail("repeated rational term");
            ra += t.value;
            saw_rational = true;
        }
        if (c.done()) break;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.peek() == '-' ? -1 : 1;
            ++c.pos;
        } else {
            c.fail("unexpected character");
        }
    }
    return {ra, rb, d};
}

namespace {

// Exact square root of a nonnegative reduced rational, if rational.
std::optional<BigRat> sqrt_rational(const BigRat& r) {
    if (sgn(r) < 0) return std::nullopt;
    const BigInt num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    BigInt sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return make_rat(sn, sd);
}

}  // namespace

std::optional<QuadScalar> sqrt_in_field(const QuadScalar& value) {
    const int s = value.sign();
    if (s < 0) return std::nullopt;
    if (s == 0) return QuadScalar::rational(BigRat(0), value.d());
    const BigRat &A = value.a(), &B = value.b();
    const long d = value.d();
    if (B == 0) {
        if (auto x = sqrt_rational(A)) return QuadScalar(*x, BigRat(0), d);
        if (d > 1) {
            if (auto y = sqrt_rational(A / d)) return QuadScalar(BigRat(0), *y, d);
        }
        return std::nullopt;
    }
    // (x + y sqrt(d))^2 = A + B sqrt(d) forces x^2 to solve
    // t^2 - A t + B^2 d / 4 = 0, so the discriminant A^2 - B^2 d must be a
    // rational square.
    auto disc = sqrt_rational(A * A - B * B * d);
    if (!disc) return std::nullopt;
    const BigRat branches[] = {BigRat((A + *disc) / 2), BigRat((A - *disc) / 2)};
    for (const BigRat& root_sq : branches) {
        auto x = sqrt_rational(root_sq);
        if (!x || *x == 0) continue;
        QuadScalar cand(*x, B / (2 * *x), d);
        if (cand.square() == value) return cand.sign() >= 0 ? cand : -cand;
    }
    return std::nullopt;
}

}  // namespace pointspec
