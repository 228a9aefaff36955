#include "eml/ratlin.hpp"

#include <algorithm>
#include <utility>

#include "eml/errors.hpp"

namespace eml {

// ---------------------------------------------------------------------------
// QSpace

QSpace::QSpace(RatMat gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.rows();
  if (gram_.cols() != n) throw InputError("scalar product matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw InputError("scalar product matrix is not symmetric");
  // Sylvester: every leading principal minor must be positive.
  for (std::size_t k = 1; k <= n; ++k) {
    RatMat minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram_(i, j);
    if (determinant(minor) <= 0) throw InputError("scalar product matrix is not positive definite");
  }
}

QSpace QSpace::standard(std::size_t dim) { return QSpace(RatMat::identity(dim)); }

Rat QSpace::product(const RatVec& x, const RatVec& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gaussian elimination

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rat inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMat& m) {
  RatMat w = m;
  return rref(w).size();
}

Rat determinant(RatMat m) {
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Int determinant(const IntMat& m) {
  Rat d = determinant(to_rat(m));
  return d.get_num();
}

std::optional<RatMat> inverse(const RatMat& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  if (n == 0) return RatMat();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<RatVec> kernel(const RatMat& m) {
  RatMat w = m;
  auto piv = rref(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -w(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatVec solve(const RatMat& a, const RatVec& b) {
  auto inv = inverse(a);
  if (!inv) throw InputError("singular linear system");
  return *inv * b;
}

std::optional<RatVec> coordinates(const RatMat& basis, const RatVec& x) {
  const std::size_t d = basis.rows(), k = basis.cols();
  RatMat aug(d, k + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(i, j);
    aug(i, k) = x[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  if (piv.size() != k) throw InputError("coordinate basis is not independent");
  RatVec c(k);
  for (std::size_t r = 0; r < k; ++r) c[piv[r]] = aug(r, k);
  return c;
}

std::vector<std::size_t> independent_subset(const std::vector<RatVec>& vectors, std::size_t dim) {
  std::vector<std::size_t> chosen;
  std::vector<RatVec> echelon;  // rows kept reduced against each other
  std::vector<std::size_t> lead;
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    RatVec v = vectors[idx];
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      if (v[lead[r]] == 0) continue;
      Rat f = v[lead[r]] / echelon[r][lead[r]];
      for (std::size_t j = 0; j < dim; ++j) v[j] -= f * echelon[r][j];
    }
    std::size_t l = 0;
    while (l < dim && v[l] == 0) ++l;
    if (l == dim) continue;
    echelon.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(idx);
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// Integer normal forms

namespace {

/// g = gcd(x, y) = s·x + u·y. When x divides y the trivial combination
/// (s, u) = (1, 0) is used so that a dividing pivot is never disturbed.
void gcd_coefficients(const Int& x, const Int& y, Int& g, Int& s, Int& u) {
  if (x != 0 && y % x == 0) {
    g = x;
    s = 1;
    u = 0;
    return;
  }
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

/// Column operation on columns a, b of m (and of t): replaces them by
/// (s·A + t·B, -(y/g)·A + (x/g)·B) where (x, y) = (m(row,a), m(row,b)).
void column_gcd_step(IntMat& m, IntMat& t, std::size_t row, std::size_t a, std::size_t b) {
  Int x = m(row, a), y = m(row, b);
  Int g, s, u;
  gcd_coefficients(x, y, g, s, u);
  Int xg = x / g, yg = y / g;
  auto apply = [&](IntMat& mat) {
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      Int ca = mat(i, a), cb = mat(i, b);
      mat(i, a) = s * ca + u * cb;
      mat(i, b) = xg * cb - yg * ca;
    }
  };
  apply(m);
  apply(t);
}

void row_gcd_step(IntMat& m, IntMat& t, std::size_t col, std::size_t a, std::size_t b) {
  Int x = m(a, col), y = m(b, col);
  Int g, s, u;
  gcd_coefficients(x, y, g, s, u);
  Int xg = x / g, yg = y / g;
  auto apply = [&](IntMat& mat) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      Int ra = mat(a, j), rb = mat(b, j);
      mat(a, j) = s * ra + u * rb;
      mat(b, j) = xg * rb - yg * ra;
    }
  };
  apply(m);
  apply(t);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.cols());
  std::size_t pc = 0;
  for (std::size_t row = 0; row < h.rows() && pc < h.cols(); ++row) {
    for (std::size_t j = pc + 1; j < h.cols(); ++j)
      if (h(row, j) != 0) column_gcd_step(h, u, row, pc, j);
    if (h(row, pc) == 0) continue;
    if (h(row, pc) < 0)
      for (auto* mat : {&h, &u})
        for (std::size_t i = 0; i < mat->rows(); ++i) (*mat)(i, pc) = -(*mat)(i, pc);
    for (std::size_t j = 0; j < pc; ++j) {
      Int q = floor_div(h(row, j), h(row, pc));
      if (q == 0) continue;
      for (auto* mat : {&h, &u})
        for (std::size_t i = 0; i < mat->rows(); ++i) (*mat)(i, j) -= q * (*mat)(i, pc);
    }
    ++pc;
  }
  return {std::move(h), std::move(u)};
}

SmithForm snf(const IntMat& m) {
  IntMat s = m;
  IntMat u = IntMat::identity(m.rows());
  IntMat v = IntMat::identity(m.cols());
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    // Bring some nonzero entry of the trailing block to (t, t).
    bool found = false;
    for (std::size_t i = t; i < s.rows() && !found; ++i)
      for (std::size_t j = t; j < s.cols() && !found; ++j)
        if (s(i, j) != 0) {
          if (i != t) {
            for (std::size_t c = 0; c < s.cols(); ++c) std::swap(s(i, c), s(t, c));
            for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(t, c));
          }
          if (j != t) {
            for (std::size_t r = 0; r < s.rows(); ++r) std::swap(s(r, j), s(r, t));
            for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, j), v(r, t));
          }
          found = true;
        }
    if (!found) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i)
        if (s(i, t) != 0) {
          row_gcd_step(s, u, t, t, i);
          clean = false;
        }
      for (std::size_t j = t + 1; j < s.cols(); ++j)
        if (s(t, j) != 0) {
          column_gcd_step(s, v, t, t, j);
          clean = false;
        }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      bool fixed = false;
      for (std::size_t i = t + 1; i < s.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < s.cols() && !fixed; ++j)
          if (s(i, j) % s(t, t) != 0) {
            for (std::size_t c = 0; c < s.cols(); ++c) s(t, c) += s(i, c);
            for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) += u(i, c);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (s(t, t) < 0) {
      for (std::size_t c = 0; c < s.cols(); ++c) s(t, c) = -s(t, c);
      for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = -u(t, c);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

IntVec clear_denominators(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num() * (l / v[i].get_den());
  return r;
}

IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw InputError("the zero vector has no primitive direction");
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntVec primitive(const RatVec& v) { return primitive(clear_denominators(v)); }

std::vector<IntVec> sublattice_basis(const std::vector<IntVec>& span, std::size_t dim) {
  if (span.empty()) return {};
  IntMat a = IntMat::from_columns(span, dim);
  SmithForm f = snf(a);
  std::size_t k = 0;
  while (k < std::min(a.rows(), a.cols()) && f.s(k, k) != 0) ++k;
  if (k == 0) return {};
  auto uinv = inverse(to_rat(f.u));
  IntMat basis(dim, k);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < k; ++j) basis(i, j) = (*uinv)(i, j).get_num();
  // Canonical representative of the same lattice.
  IntMat h = hnf(basis).h;
  std::vector<IntVec> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(h.col(j));
  return out;
}

std::vector<IntVec> sublattice_basis(const std::vector<RatVec>& span, std::size_t dim) {
  std::vector<IntVec> ints;
  for (const auto& v : span) ints.push_back(clear_denominators(v));
  return sublattice_basis(ints, dim);
}

// ---------------------------------------------------------------------------
// Models

RatVec SubspaceModel::coordinates_of(const RatVec& x) const {
  auto c = coordinates(to_rat(basis), x);
  if (!c) throw InputError("vector is outside the modelled subspace");
  return *c;
}

IntVec SubspaceModel::coordinates_of(const IntVec& x) const {
  RatVec c = coordinates_of(to_rat(x));
  IntVec r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].get_den() != 1) throw InvariantError("lattice vector has non-integral sublattice coordinates");
    r[i] = c[i].get_num();
  }
  return r;
}

RatMat SubspaceModel::pullback() const { return to_rat(basis).transpose(); }

SubspaceModel subspace_model(const QSpace& space, const std::vector<RatVec>& span) {
  auto b = sublattice_basis(span, space.dim());
  IntMat basis = IntMat::from_columns(b, space.dim());
  RatMat br = to_rat(basis);
  RatMat gram = br.transpose() * space.gram() * br;
  return SubspaceModel{space, std::move(basis), QSpace(std::move(gram))};
}

IntVec QuotientModel::project(const IntVec& x) const { return projection * x; }

RatVec QuotientModel::project(const RatVec& x) const { return to_rat(projection) * x; }

RatMat QuotientModel::pullback() const { return lattice_basis.transpose(); }

QuotientModel quotient_model(const QSpace& space, const std::vector<RatVec>& f_span) {
  const std::size_t d = space.dim();
  std::vector<RatVec> f_basis;
  for (auto i : independent_subset(f_span, d)) f_basis.push_back(f_span[i]);
  const std::size_t r = f_basis.size();
  const std::size_t m = d - r;

  // F^⊥ = kernel of the map x ↦ (Q(f_i, x))_i.
  RatMat fq(r, d);
  for (std::size_t i = 0; i < r; ++i) {
    RatVec row = space.gram() * f_basis[i];
    for (std::size_t j = 0; j < d; ++j) fq(i, j) = row[j];
  }
  std::vector<RatVec> comp = kernel(fq);
  RatMat c = RatMat::from_columns(comp, d);

  // Orthogonal projection of the standard basis, in comp coordinates.
  RatMat ctg = c.transpose() * space.gram();
  RatMat normal = ctg * c;
  RatMat normal_inv = *inverse(normal);
  RatMat p = normal_inv * ctg;  // m x d

  Int den = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p(i, j).get_den_mpz_t());
  IntMat pz(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) pz(i, j) = Rat(p(i, j) * den).get_num();
  IntMat h = hnf(pz).h;
  RatMat lat(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      lat(i, j) = Rat(h(i, j), den);
      lat(i, j).canonicalize();
    }

  RatMat lattice_basis = c * lat;
  RatMat coords = *inverse(lat) * p;
  IntMat projection(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (coords(i, j).get_den() != 1) throw InvariantError("projected lattice basis does not generate the projection");
      projection(i, j) = coords(i, j).get_num();
    }
  RatMat gram = lattice_basis.transpose() * space.gram() * lattice_basis;
  return QuotientModel{space,          std::move(f_basis), std::move(comp), std::move(lat),
                       std::move(lattice_basis), std::move(projection), QSpace(std::move(gram))};
}

RatVec orth_project(const QSpace& space, const std::vector<RatVec>& w_basis, const RatVec& x) {
  const std::size_t d = space.dim();
  if (w_basis.empty()) return RatVec(d);
  RatMat w = RatMat::from_columns(w_basis, d);
  RatMat wtg = w.transpose() * space.gram();
  RatVec a = solve(wtg * w, wtg * x);
  return w * a;
}

}  // namespace eml
