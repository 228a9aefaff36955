#include "eml/series.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "eml/errors.hpp"
#include "eml/ratlin.hpp"

namespace eml {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const std::vector<int>& exponents) {
  if (exponents.size() > kMaxVars) throw InputError("too many variables for a packed monomial");
  std::uint64_t deg = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > static_cast<int>(kMaxExponent))
      throw InputError("monomial exponent out of range");
    bits_ |= static_cast<std::uint64_t>(exponents[i]) << shift(i);
    deg += static_cast<std::uint64_t>(exponents[i]);
  }
  if (deg > kMaxExponent) throw InputError("monomial degree out of range");
  bits_ |= deg << 56;
}

std::vector<int> Monomial::exponents(std::size_t nvars) const {
  std::vector<int> e(nvars);
  for (std::size_t i = 0; i < nvars; ++i) e[i] = exponent(i);
  return e;
}

bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<SeriesTerm> sorted_terms(const TruncSeries& a) {
  std::vector<SeriesTerm> out;
  for (const auto& [m, c] : a.terms()) out.emplace_back(m.exponents(a.nvars()), c);
  std::sort(out.begin(), out.end(), [](const SeriesTerm& x, const SeriesTerm& y) { return graded_lex_less(x.first, y.first); });
  return out;
}

std::string format_series(const TruncSeries& a) {
  std::string s = "order " + std::to_string(a.order()) + ":";
  bool first = true;
  for (const auto& [e, c] : sorted_terms(a)) {
    s += first ? " [" : "; [";
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    s += "] " + format_rat(c);
  }
  return s;
}

bool LinForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

LinForm linform(const IntVec& v) { return LinForm{to_rat(v)}; }

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(std::size_t nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars > Monomial::kMaxVars) throw InputError("too many series variables");
  if (order < 0) throw OrderBudgetError("series order must be nonnegative");
}

TruncSeries TruncSeries::constant(std::size_t nvars, int order, const Rat& c) {
  TruncSeries s(nvars, order);
  s.add_term(Monomial(), c);
  return s;
}

TruncSeries TruncSeries::from_linform(const LinForm& v, int order) {
  TruncSeries s(v.nvars(), order);
  for (std::size_t i = 0; i < v.nvars(); ++i) s.add_term(Monomial::variable(i), v.coeffs[i]);
  return s;
}

Rat TruncSeries::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void TruncSeries::add_term(Monomial m, const Rat& c) {
  if (c == 0 || m.degree() > order_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

TruncSeries TruncSeries::truncated(int order) const {
  TruncSeries s(nvars_, std::min(order, order_));
  for (const auto& [m, c] : terms_) {
    if (m.degree() > s.order_) break;
    s.terms_.emplace_hint(s.terms_.end(), m, c);
  }
  return s;
}

TruncSeries TruncSeries::homogeneous_part(int degree) const {
  TruncSeries s(nvars_, order_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == degree) s.terms_.emplace_hint(s.terms_.end(), m, c);
  return s;
}

namespace {

void check_same_vars(const TruncSeries& a, const TruncSeries& b) {
  if (a.nvars() != b.nvars())
    throw InputError("series variable counts differ: " + std::to_string(a.nvars()) + " vs " +
                     std::to_string(b.nvars()));
}

}  // namespace

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
  check_same_vars(*this, other);
  *this = truncated(other.order_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
  check_same_vars(*this, other);
  *this = truncated(other.order_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r = a;
  r += b;
  return r;
}

TruncSeries sub(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r = a;
  r -= b;
  return r;
}

TruncSeries scale(const TruncSeries& a, const Rat& c) {
  TruncSeries r = a;
  r *= c;
  return r;
}

TruncSeries negate(const TruncSeries& a) { return scale(a, -1); }

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
  check_same_vars(a, b);
  const int order = std::min(a.order(), b.order());
  std::map<Monomial, Rat> acc;
  Rat prod;
  for (const auto& [ma, ca] : a.terms()) {
    const int da = ma.degree();
    if (da > order) break;
    for (const auto& [mb, cb] : b.terms()) {
      if (da + mb.degree() > order) break;  // terms are sorted by degree
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(ma + mb, prod);
      if (!inserted) it->second += prod;
    }
  }
  TruncSeries r(a.nvars(), order);
  for (auto& [m, c] : acc) r.add_term(m, c);
  return r;
}

TruncSeries mul_linform(const TruncSeries& a, const LinForm& v) {
  if (v.nvars() != a.nvars()) throw InputError("linear form and series variable counts differ");
  TruncSeries r(a.nvars(), a.order() + 1);
  for (const auto& [m, c] : a.terms())
    for (std::size_t i = 0; i < v.nvars(); ++i)
      if (v.coeffs[i] != 0) r.add_term(m + Monomial::variable(i), c * v.coeffs[i]);
  return r;
}

namespace {

/// Lex order in which the pivot variable is compared first.
struct PivotLexLess {
  std::size_t pivot;
  std::size_t nvars;
  bool operator()(Monomial a, Monomial b) const {
    if (a.exponent(pivot) != b.exponent(pivot)) return a.exponent(pivot) < b.exponent(pivot);
    for (std::size_t i = 0; i < nvars; ++i)
      if (i != pivot && a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
    return false;
  }
};

}  // namespace

TruncSeries div_linform(const TruncSeries& a, const LinForm& v) {
  if (v.nvars() != a.nvars()) throw InputError("linear form and series variable counts differ");
  if (v.is_zero()) throw InputError("division by the zero linear form");
  if (a.order() < 1) throw OrderBudgetError("division by a linear form needs a series of order >= 1");
  std::size_t pivot = 0;
  while (v.coeffs[pivot] == 0) ++pivot;

  std::map<Monomial, Rat, PivotLexLess> work(PivotLexLess{pivot, a.nvars()});
  for (const auto& [m, c] : a.terms()) work.emplace(m, c);

  TruncSeries q(a.nvars(), a.order() - 1);
  const Rat inv_pivot = 1 / v.coeffs[pivot];
  while (!work.empty()) {
    auto lead = std::prev(work.end());
    const Monomial m = lead->first;
    if (m.exponent(pivot) == 0)
      throw InvariantError("series is not divisible by the linear form: nonzero remainder in degree " +
                           std::to_string(m.degree()));
    const Rat factor = lead->second * inv_pivot;
    const Monomial base = m.without(pivot);
    q.add_term(base, factor);
    for (std::size_t i = 0; i < v.nvars(); ++i) {
      if (v.coeffs[i] == 0) continue;
      const Monomial target = base + Monomial::variable(i);
      auto [it, inserted] = work.try_emplace(target, -factor * v.coeffs[i]);
      if (!inserted) {
        it->second -= factor * v.coeffs[i];
        if (it->second == 0) work.erase(it);
      }
    }
  }
  return q;
}

namespace {

/// a · ℓ truncated back to a.order().
TruncSeries mul_linform_keep(const TruncSeries& a, const LinForm& v) {
  return mul_linform(a, v).truncated(a.order());
}

}  // namespace

TruncSeries subst_linear(const TruncSeries& a, const RatMat& l) {
  if (l.rows() != a.nvars()) throw InputError("substitution matrix has the wrong number of rows");
  const std::size_t k = l.cols();
  std::vector<LinForm> images(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) images[i].coeffs = l.row(i);

  // memo[m] = Π_i (L ξ)_i^{m_i}, built by peeling off the last variable.
  std::map<Monomial, TruncSeries> memo;
  memo.emplace(Monomial(), TruncSeries::constant(k, a.order(), 1));
  auto power = [&](auto&& self, Monomial m) -> const TruncSeries& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::size_t last = a.nvars();
    while (m.exponent(last - 1) == 0) --last;
    TruncSeries value = mul_linform_keep(self(self, m.without(last - 1)), images[last - 1]);
    return memo.emplace(m, std::move(value)).first->second;
  };

  TruncSeries r(k, a.order());
  for (const auto& [m, c] : a.terms()) {
    const TruncSeries& p = power(power, m);
    for (const auto& [pm, pc] : p.terms()) r.add_term(pm, c * pc);
  }
  return r;
}

bool equal_through(const TruncSeries& a, const TruncSeries& b, int degree) {
  if (a.nvars() != b.nvars()) return false;
  if (a.order() < degree || b.order() < degree) return false;
  return a.truncated(degree).terms() == b.truncated(degree).terms();
}

// ---------------------------------------------------------------------------
// Special series

namespace {

std::shared_mutex bernoulli_mutex;
std::vector<Rat> bernoulli_cache{Rat(1)};

}  // namespace

Rat factorial(int n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

Rat binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

Rat bernoulli(int n) {
  {
    std::shared_lock lock(bernoulli_mutex);
    if (n < static_cast<int>(bernoulli_cache.size())) return bernoulli_cache[n];
  }
  std::unique_lock lock(bernoulli_mutex);
  // Σ_{j=0}^{k} C(k+1, j) B_j = 0.
  for (int k = static_cast<int>(bernoulli_cache.size()); k <= n; ++k) {
    Rat s = 0;
    for (int j = 0; j < k; ++j) s += binomial(k + 1, j) * bernoulli_cache[j];
    bernoulli_cache.push_back(-s / (k + 1));
  }
  return bernoulli_cache[n];
}

TruncSeries exp_linform(const LinForm& v, int m) {
  TruncSeries power = TruncSeries::constant(v.nvars(), m, 1);
  TruncSeries r = power;
  for (int k = 1; k <= m; ++k) {
    power = mul_linform_keep(power, v);
    r += scale(power, 1 / factorial(k));
  }
  return r;
}

TruncSeries todd_one_var(const LinForm& v, int m) {
  if (v.is_zero()) throw InputError("todd_one_var needs a nonzero linear form");
  // t / (1 - e^t) = -Σ B_k t^k / k!
  TruncSeries power = TruncSeries::constant(v.nvars(), m, 1);
  TruncSeries r = scale(power, -bernoulli(0));
  for (int k = 1; k <= m; ++k) {
    power = mul_linform_keep(power, v);
    Rat c = -bernoulli(k) / factorial(k);
    if (c != 0) r += scale(power, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// PoleCleared

std::pair<LinForm, Rat> canonical_linform(const LinForm& v) {
  if (v.is_zero()) throw InputError("a pole along the zero linear form is meaningless");
  IntVec w = primitive(v.coeffs);
  std::size_t lead = 0;
  while (w[lead] == 0) ++lead;
  if (w[lead] < 0)
    for (auto& x : w) x = -x;
  Rat lambda = v.coeffs[lead] / Rat(w[lead]);
  return {linform(w), lambda};
}

PoleCleared PoleCleared::make(TruncSeries numerator, const std::vector<LinForm>& denoms, Rat scale) {
  PoleCleared p{std::move(numerator), {}, std::move(scale)};
  for (const auto& d : denoms) {
    auto [c, lambda] = canonical_linform(d);
    p.denoms.push_back(std::move(c));
    p.scale /= lambda;
  }
  return p;
}

TruncSeries extract_holomorphic(const PoleCleared& p, int m) {
  const int need = m + static_cast<int>(p.denoms.size());
  if (p.numerator.order() < need)
    throw OrderBudgetError("holomorphic extraction to order " + std::to_string(m) + " needs numerator order " +
                           std::to_string(need) + ", have " + std::to_string(p.numerator.order()));
  TruncSeries q = p.numerator.truncated(need);
  for (const auto& d : p.denoms) q = div_linform(q, d);
  q *= p.scale;
  return q.truncated(m);
}

namespace {

struct FormCount {
  LinForm form;
  int count;
};

void add_multiset(std::vector<FormCount>& target, const std::vector<LinForm>& forms) {
  std::vector<FormCount> local;
  for (const auto& f : forms) {
    auto it = std::find_if(local.begin(), local.end(), [&](const FormCount& fc) { return fc.form == f; });
    if (it == local.end())
      local.push_back({f, 1});
    else
      ++it->count;
  }
  for (const auto& fc : local) {
    auto it = std::find_if(target.begin(), target.end(), [&](const FormCount& t) { return t.form == fc.form; });
    if (it == target.end())
      target.push_back(fc);
    else
      it->count = std::max(it->count, fc.count);
  }
}

}  // namespace

PoleCleared join_denominators(const std::vector<PoleCleared>& terms, std::optional<int> required_order) {
  if (terms.empty()) throw InputError("cannot join an empty list of terms");
  std::vector<FormCount> target;
  for (const auto& t : terms) add_multiset(target, t.denoms);

  std::optional<TruncSeries> total;
  for (const auto& t : terms) {
    if (t.nvars() != terms.front().nvars()) throw InputError("joined terms have different variable counts");
    std::vector<FormCount> missing = target;
    for (const auto& d : t.denoms) {
      auto it = std::find_if(missing.begin(), missing.end(), [&](const FormCount& fc) { return fc.form == d; });
      --it->count;
    }
    TruncSeries n = scale(t.numerator, t.scale);
    for (const auto& fc : missing)
      for (int k = 0; k < fc.count; ++k) n = mul_linform(n, fc.form);
    if (total)
      *total += n;
    else
      total = std::move(n);
  }
  PoleCleared r{std::move(*total), {}, 1};
  for (const auto& fc : target)
    for (int k = 0; k < fc.count; ++k) r.denoms.push_back(fc.form);
  if (required_order && r.numerator.order() < *required_order)
    throw OrderBudgetError("joined numerator is correct through order " + std::to_string(r.numerator.order()) +
                           " but order " + std::to_string(*required_order) + " is required");
  return r;
}

PoleCleared sum(const PoleCleared& p, const PoleCleared& q) { return join_denominators({p, q}); }

PoleCleared difference(const PoleCleared& p, const PoleCleared& q) {
  PoleCleared neg = q;
  neg.scale = -neg.scale;
  return join_denominators({p, neg});
}

PoleCleared times(const PoleCleared& p, const TruncSeries& s) {
  return PoleCleared{mul(p.numerator, s), p.denoms, p.scale};
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rat& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  p.add_term(Monomial::variable(i), 1);
  return p;
}

int Polynomial::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

Rat Polynomial::coeff(const std::vector<int>& exponents) const {
  auto it = terms_.find(Monomial(exponents));
  return it == terms_.end() ? Rat(0) : it->second;
}

void Polynomial::add_term(Monomial m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rat Polynomial::evaluate(const RatVec& x) const {
  Rat total = 0;
  for (const auto& [m, c] : terms_) {
    Rat term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      Rat base = x[i];
      for (int e = 0; e < m.exponent(i); ++e) term *= base;
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial d(nvars_);
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(var);
    if (e == 0) continue;
    d.add_term(m.without(var), c * e);
  }
  return d;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw InputError("polynomial variable counts differ");
  Polynomial r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  return r;
}

Polynomial operator*(const Rat& c, const Polynomial& a) {
  Polynomial r(a.nvars_);
  if (c == 0) return r;
  r.terms_ = a.terms_;
  for (auto& [m, x] : r.terms_) x *= c;
  return r;
}

Polynomial Polynomial::subst_affine(const RatMat& a, const RatVec& b) const {
  if (a.rows() != nvars_ || b.size() != nvars_) throw InputError("affine substitution has the wrong shape");
  const std::size_t k = a.cols();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < nvars_; ++i) {
    Polynomial img = constant(k, b[i]);
    for (std::size_t j = 0; j < k; ++j) img.add_term(Monomial::variable(j), a(i, j));
    images.push_back(std::move(img));
  }
  std::map<Monomial, Polynomial> memo;
  memo.emplace(Monomial(), constant(k, 1));
  auto power = [&](auto&& self, Monomial m) -> const Polynomial& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::size_t last = nvars_;
    while (m.exponent(last - 1) == 0) --last;
    Polynomial value = self(self, m.without(last - 1)) * images[last - 1];
    return memo.emplace(m, std::move(value)).first->second;
  };
  Polynomial r(k);
  for (const auto& [m, c] : terms_) r = r + c * power(power, m);
  return r;
}

TruncSeries Polynomial::as_series(int order) const {
  TruncSeries s(nvars_, order);
  for (const auto& [m, c] : terms_) s.add_term(m, c);
  return s;
}

}  // namespace eml
