#pragma once

// Truncated multivariate power series with exact rational coefficients and
// the pole-cleared representation N / Π ⟨ξ, v⟩ used for meromorphic germs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eml/rational.hpp"

namespace eml {

/// Exponent vector packed into one word: byte 7 holds the total degree,
/// bytes 6..0 hold the exponents of variables 0..6. Adding two packed
/// monomials adds their exponents.
class Monomial {
 public:
  static constexpr std::size_t kMaxVars = 7;
  static constexpr unsigned kMaxExponent = 255;

  constexpr Monomial() = default;
  explicit Monomial(const std::vector<int>& exponents);
  static Monomial variable(std::size_t i) { return Monomial((std::uint64_t{1} << 56) | unit(i)); }

  int degree() const { return static_cast<int>(bits_ >> 56); }
  int exponent(std::size_t i) const { return static_cast<int>((bits_ >> shift(i)) & 0xff); }
  std::vector<int> exponents(std::size_t nvars) const;
  std::uint64_t bits() const { return bits_; }

  /// The monomial with exponent i lowered by one; requires exponent(i) > 0.
  Monomial without(std::size_t i) const { return Monomial(bits_ - (std::uint64_t{1} << 56) - unit(i)); }

  friend Monomial operator+(Monomial a, Monomial b) { return Monomial(a.bits_ + b.bits_); }
  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend bool operator<(Monomial a, Monomial b) { return a.bits_ < b.bits_; }

 private:
  explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
  static constexpr unsigned shift(std::size_t i) { return static_cast<unsigned>(48 - 8 * i); }
  static constexpr std::uint64_t unit(std::size_t i) { return std::uint64_t{1} << shift(i); }

  std::uint64_t bits_ = 0;
};

/// Deterministic graded-lex order used for printing: ascending total degree,
/// then descending exponent tuple (x² before xy before y²).
bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b);

using SeriesTerm = std::pair<std::vector<int>, Rat>;

/// ξ ↦ ⟨ξ, v⟩.
struct LinForm {
  RatVec coeffs;

  std::size_t nvars() const { return coeffs.size(); }
  bool is_zero() const;
  friend bool operator==(const LinForm&, const LinForm&) = default;
};

LinForm linform(const IntVec& v);

/// A power series in `nvars` variables, correct through total degree
/// `order`. Absent monomials have coefficient zero.
class TruncSeries {
 public:
  using Terms = std::map<Monomial, Rat>;

  TruncSeries(std::size_t nvars, int order);
  static TruncSeries constant(std::size_t nvars, int order, const Rat& c);
  /// The linear polynomial ⟨ξ, v⟩.
  static TruncSeries from_linform(const LinForm& v, int order);

  std::size_t nvars() const { return nvars_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  Rat coeff(Monomial m) const;
  Rat coeff(const std::vector<int>& exponents) const { return coeff(Monomial(exponents)); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c·m; drops the term if it exceeds the order or cancels.
  void add_term(Monomial m, const Rat& c);
  TruncSeries truncated(int order) const;
  /// Homogeneous part of the given degree.
  TruncSeries homogeneous_part(int degree) const;

  TruncSeries& operator+=(const TruncSeries& other);
  TruncSeries& operator-=(const TruncSeries& other);
  TruncSeries& operator*=(const Rat& c);

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  int order_;
  Terms terms_;
};

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const TruncSeries& a, const Rat& c);
TruncSeries negate(const TruncSeries& a);
/// a · ⟨ξ, v⟩. The product is exact through a.order() + 1.
TruncSeries mul_linform(const TruncSeries& a, const LinForm& v);
/// Quotient a / ⟨ξ, v⟩ through a.order() - 1. Throws InvariantError naming
/// the degree of the first nonzero remainder.
TruncSeries div_linform(const TruncSeries& a, const LinForm& v);
/// ξ ↦ a(L ξ) where L is a.nvars() x k.
TruncSeries subst_linear(const TruncSeries& a, const RatMat& l);
/// Coefficientwise equality through the given degree.
bool equal_through(const TruncSeries& a, const TruncSeries& b, int degree);

/// Nonzero terms as (exponents, coefficient) in graded-lex order.
std::vector<SeriesTerm> sorted_terms(const TruncSeries& a);
/// Deterministic one-line text form, e.g. "order 2: [0,0] 1/4; [1,0] -1/24".
std::string format_series(const TruncSeries& a);

/// exp(⟨ξ, v⟩) through order m.
TruncSeries exp_linform(const LinForm& v, int m);
/// t / (1 - e^t) at t = ⟨ξ, v⟩ through order m. Throws InputError on v == 0.
TruncSeries todd_one_var(const LinForm& v, int m);

/// Bernoulli number B_n with B_1 = -1/2. Cached process-wide.
Rat bernoulli(int n);
Rat factorial(int n);
Rat binomial(int n, int k);

/// scale · numerator / Π denoms, with every denominator stored as a primitive
/// integer form whose first nonzero coordinate is positive.
struct PoleCleared {
  TruncSeries numerator;
  std::vector<LinForm> denoms;
  Rat scale = 1;

  /// Normalises each denominator, moving the factors into `scale`.
  static PoleCleared make(TruncSeries numerator, const std::vector<LinForm>& denoms, Rat scale = 1);
  std::size_t nvars() const { return numerator.nvars(); }
};

/// Canonical form of a nonzero linear form: returns (c, λ) with v = λ c.
std::pair<LinForm, Rat> canonical_linform(const LinForm& v);

/// Divides out every denominator and returns the holomorphic germ through
/// order m. Throws OrderBudgetError when the numerator is too short.
TruncSeries extract_holomorphic(const PoleCleared& p, int m);

/// Brings all terms to the multiset-maximum common denominator and sums
/// them. If `required_order` is given, throws OrderBudgetError unless the
/// joined numerator is correct through that order.
PoleCleared join_denominators(const std::vector<PoleCleared>& terms, std::optional<int> required_order = {});

/// p + q, p - q via the common denominator.
PoleCleared sum(const PoleCleared& p, const PoleCleared& q);
PoleCleared difference(const PoleCleared& p, const PoleCleared& q);
PoleCleared times(const PoleCleared& p, const TruncSeries& s);

/// A polynomial with exact rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rat>;

  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const Rat& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  int degree() const;
  const Terms& terms() const { return terms_; }
  Rat coeff(const std::vector<int>& exponents) const;
  void add_term(Monomial m, const Rat& c);
  bool is_zero() const { return terms_.empty(); }

  Rat evaluate(const RatVec& x) const;
  Polynomial derivative(std::size_t var) const;
  /// x ↦ p(A u + b) where A is nvars x k; result has k variables.
  Polynomial subst_affine(const RatMat& a, const RatVec& b) const;
  TruncSeries as_series(int order) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rat& c, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  Terms terms_;
};

}  // namespace eml
