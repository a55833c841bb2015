#include "nexp/surd.hpp"

#include <cctype>
#include <string>
#include <utility>

#include "nexp/errors.hpp"

namespace nexp {

namespace {

int sgn(const mpz_class& v) { return mpz_sgn(v.get_mpz_t()); }

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Real to_real_z(const mpz_class& v, Precision prec) {
  Real out(prec);
  mpfr_set_z(out.get(), v.get_mpz_t(), MPFR_RNDN);
  return out;
}

// Sign of p + q*sqrt(d) with d squarefree (or q == 0).
int sign_of(const mpz_class& p, const mpz_class& q, const mpz_class& d) {
  const int sp = sgn(p);
  const int sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const mpz_class p2 = p * p;
  const mpz_class q2d = q * q * d;
  return p2 > q2d ? sp : sq;
}

std::strong_ordering to_ordering(int s) {
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// Upper bound on (|p| + |q|sqrt(D)) / r, used to size refinement error bars.
Real magnitude(const Surd& s, Precision prec) {
  Real out = to_real_z(abs(s.q()), prec);
  Real root = to_real_z(s.radicand(), prec);
  out *= sqrt(root);
  out += to_real_z(abs(s.p()), prec);
  out /= to_real_z(s.r(), prec);
  return out;
}

std::strong_ordering refine_compare(const Surd& a, const Surd& b) {
  for (int bits = 128; bits <= kMaxPrecisionBits; bits *= 2) {
    const Precision prec(bits);
    const Real diff = a.to_real(prec) - b.to_real(prec);
    const Real bound = (magnitude(a, prec) + magnitude(b, prec)) * Real::pow2(6 - bits, prec);
    if (abs(diff) > bound) return to_ordering(diff.sign());
  }
  throw InvariantError("surd comparison did not resolve: " + a.str() + " vs " + b.str());
}

}  // namespace

SquarefreeSplit squarefree_split(const mpz_class& n) {
  if (n < 0) throw DomainError("negative radicand");
  if (n == 0) return {0, 0};
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return {root, 1};
  }
  SquarefreeSplit out{1, 1};
  mpz_class m = n;
  auto strip = [&](unsigned long f) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), f)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), f);
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) out.square *= f;
    if (e % 2 == 1) out.core *= f;
  };
  strip(2);
  constexpr unsigned long kTrialLimit = 1UL << 21;
  for (unsigned long f = 3; f <= kTrialLimit; f += 2) {
    if (mpz_cmp_ui(m.get_mpz_t(), f * f) < 0) break;
    strip(f);
  }
  if (m > 1) {
    // Every prime factor left exceeds the trial limit.
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
      out.square *= root;
    } else if (mpz_sizeinbase(m.get_mpz_t(), 2) > 3 * 21) {
      throw DomainError("radicand too large to factor: " + n.get_str());
    } else {
      out.core *= m;
    }
  }
  return out;
}

Surd::Surd(mpz_class p, mpz_class q, mpz_class r, mpz_class radicand)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(radicand)) {
  normalize();
}

void Surd::normalize() {
  if (r_ == 0) throw DomainError("surd denominator is zero");
  if (d_ < 0) throw DomainError("surd radicand is negative");
  if (q_ == 0 || d_ == 0) {
    q_ = 0;
    d_ = 0;
  } else {
    SquarefreeSplit split = squarefree_split(d_);
    q_ *= split.square;
    d_ = split.core;
    if (d_ == 1) {
      p_ += q_;
      q_ = 0;
      d_ = 0;
    }
  }
  mpz_class g = gcd(gcd(p_, q_), r_);
  if (g != 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
}

Surd Surd::rational(const mpz_class& num, const mpz_class& den) { return Surd(num, 0, den, 0); }

Surd Surd::sqrt_of(const mpz_class& radicand) { return Surd(0, 1, 1, radicand); }

Real Surd::to_real(Precision prec) const {
  const Precision work(prec.bits() + 32);
  Real out = to_real_z(p_, work);
  if (q_ != 0) {
    Real root = sqrt(to_real_z(d_, work));
    root *= to_real_z(q_, work);
    out += root;
  }
  out /= to_real_z(r_, work);
  return out.with_precision(prec);
}

mpz_class Surd::floor() const {
  if (is_rational()) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), p_.get_mpz_t(), r_.get_mpz_t());
    return out;
  }
  const size_t size = mpz_sizeinbase(p_.get_mpz_t(), 2) + mpz_sizeinbase(q_.get_mpz_t(), 2) +
                      mpz_sizeinbase(d_.get_mpz_t(), 2);
  const Real approx = to_real(Precision(static_cast<int>(std::max<size_t>(128, size + 64))));
  mpz_class m;
  mpfr_get_z(m.get_mpz_t(), approx.get(), MPFR_RNDD);
  while (Surd::rational(m) > *this) m -= 1;
  while (Surd::rational(m + 1) <= *this) m += 1;
  return m;
}

Surd Surd::conjugate() const { return Surd(p_, -q_, r_, d_); }

int Surd::sign() const { return sign_of(p_, q_, d_); }

std::string Surd::str() const {
  if (is_rational()) return r_ == 1 ? p_.get_str() : p_.get_str() + "/" + r_.get_str();
  std::string inner;
  if (p_ != 0) inner = p_.get_str();
  if (q_ < 0) {
    inner += "-";
  } else if (p_ != 0) {
    inner += "+";
  }
  const mpz_class aq = abs(q_);
  if (aq != 1) inner += aq.get_str() + "*";
  inner += "sqrt(" + d_.get_str() + ")";
  if (r_ == 1) return inner;
  return "(" + inner + ")/" + r_.get_str();
}

Surd operator-(const Surd& x) { return Surd(-x.p_, -x.q_, x.r_, x.d_); }

namespace {

const mpz_class& common_radicand(const Surd& a, const Surd& b) {
  if (!a.compatible(b)) {
    throw DomainError("surds with different radicands cannot be combined: " + a.str() + ", " + b.str());
  }
  return a.is_rational() ? b.radicand() : a.radicand();
}

}  // namespace

Surd operator+(const Surd& a, const Surd& b) {
  const mpz_class& d = common_radicand(a, b);
  return Surd(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, a.r_ * b.r_, d);
}

Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

Surd operator*(const Surd& a, const Surd& b) {
  const mpz_class& d = common_radicand(a, b);
  return Surd(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, a.r_ * b.r_, d);
}

Surd operator/(const Surd& a, const Surd& b) {
  const mpz_class& d = common_radicand(a, b);
  if (b.p_ == 0 && b.q_ == 0) throw DomainError("division by zero surd");
  // a / b = a * conj(b) * r_b / (p_b^2 - q_b^2 D)
  const mpz_class norm = b.p_ * b.p_ - b.q_ * b.q_ * d;
  const Surd scaled(b.p_ * b.r_, -b.q_ * b.r_, norm, d);
  return a * scaled;
}

std::strong_ordering surd_compare(const Surd& a, const Surd& b) {
  if (a.compatible(b)) {
    const mpz_class& d = a.is_rational() ? b.radicand() : a.radicand();
    // sign((p1 + q1 s)/r1 - (p2 + q2 s)/r2) with r1, r2 > 0
    return to_ordering(sign_of(a.p() * b.r() - b.p() * a.r(), a.q() * b.r() - b.q() * a.r(), d));
  }
  return refine_compare(a, b);
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) { return surd_compare(a, b); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class SurdParser {
 public:
  explicit SurdParser(std::string text) : text_(std::move(text)) {}

  Surd parse() {
    Surd value;
    if (peek() == '(') {
      ++pos_;
      value = sum();
      expect(')');
    } else {
      value = sum();
    }
    if (peek() == '/') {
      ++pos_;
      const mpz_class den = integer();
      if (den == 0) fail("zero denominator");
      value = value / Surd::rational(den);
    }
    if (pos_ != text_.size()) fail("trailing characters");
    return value;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("cannot parse surd '" + text_ + "': " + why);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept_word(std::string_view word) {
    if (text_.compare(pos_, word.size(), word) == 0) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  mpz_class integer() {
    const size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  Surd radical() {
    expect('(');
    const mpz_class d = integer();
    expect(')');
    return Surd::sqrt_of(d);
  }

  Surd term() {
    if (accept_word("sqrt")) return radical();
    const mpz_class coeff = integer();
    if (peek() == '*') {
      ++pos_;
      if (!accept_word("sqrt")) fail("expected sqrt after '*'");
      return Surd::rational(coeff) * radical();
    }
    return Surd::rational(coeff);
  }

  Surd sum() {
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = text_[pos_++] == '-';
    Surd total = negative ? -term() : term();
    while (peek() == '+' || peek() == '-') {
      negative = text_[pos_++] == '-';
      Surd next = term();
      total = negative ? total - next : total + next;
    }
    return total;
  }

  std::string text_;
  size_t pos_ = 0;
};

}  // namespace

Surd Surd::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty()) throw DomainError("empty surd literal");
  return SurdParser(std::move(compact)).parse();
}

}  // namespace nexp
