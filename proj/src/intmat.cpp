#include "conglab/intmat.h"

#include <algorithm>
#include <sstream>

#include "conglab/errors.h"

namespace conglab {

IntMatrix::IntMatrix(long r, long c, std::initializer_list<long> vals)
    : rows(r), cols(c), a(size_t(r) * size_t(c)) {
  long k = 0;
  for (long v : vals) {
    if (k >= r * c) break;
    a[k++] = v;
  }
}

IntMatrix IntMatrix::identity(long n) {
  IntMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols != o.rows) fail(errc::internal_invariant, "matrix shape mismatch in mul");
  IntMatrix r(rows, o.cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      const mpz_class& x = at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < o.cols; ++j) {
        if (o.at(k, j) != 0) r.at(i, j) += x * o.at(k, j);
      }
    }
  return r;
}

IntMatrix IntMatrix::add(const IntMatrix& o) const {
  if (rows != o.rows || cols != o.cols)
    fail(errc::internal_invariant, "matrix shape mismatch in add");
  IntMatrix r(rows, cols);
  for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] + o.a[k];
  return r;
}

IntMatrix IntMatrix::sub(const IntMatrix& o) const {
  if (rows != o.rows || cols != o.cols)
    fail(errc::internal_invariant, "matrix shape mismatch in sub");
  IntMatrix r(rows, cols);
  for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] - o.a[k];
  return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
  if (rows != o.rows) fail(errc::internal_invariant, "matrix shape mismatch in hstack");
  IntMatrix r(rows, cols + o.cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
    for (long j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
  }
  return r;
}

IntMatrix IntMatrix::scaled(const mpz_class& c) const {
  IntMatrix r(rows, cols);
  for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] * c;
  return r;
}

std::vector<mpz_class> IntMatrix::mul_vec(const std::vector<mpz_class>& v) const {
  if (long(v.size()) != cols)
    fail(errc::internal_invariant, "vector length mismatch in mul_vec");
  std::vector<mpz_class> r(rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::submatrix_cols(const std::vector<long>& keep) const {
  IntMatrix r(rows, long(keep.size()));
  for (long i = 0; i < rows; ++i)
    for (size_t j = 0; j < keep.size(); ++j) r.at(i, long(j)) = at(i, keep[j]);
  return r;
}

IntMatrix IntMatrix::submatrix_rows(const std::vector<long>& keep) const {
  IntMatrix r(long(keep.size()), cols);
  for (size_t i = 0; i < keep.size(); ++i)
    for (long j = 0; j < cols; ++j) r.at(long(i), j) = at(keep[i], j);
  return r;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (long i = 0; i < rows; ++i) {
    os << "[";
    for (long j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

mpz_class xgcd(const mpz_class& a, const mpz_class& b, mpz_class& s, mpz_class& t) {
  mpz_class g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

namespace {

// Row HNF in place: echelon, positive pivots, entries above a pivot
// reduced into [0, pivot). Returns pivot column per produced row.
std::vector<long> row_hnf_inplace(IntMatrix& m) {
  std::vector<long> pivots;
  long r = 0;
  mpz_class s, t, g, u, w, q;
  for (long c = 0; c < m.cols && r < m.rows; ++c) {
    long piv = -1;
    for (long i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    for (long i = r + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      g = xgcd(m.at(r, c), m.at(i, c), s, t);
      u = m.at(r, c) / g;
      w = m.at(i, c) / g;
      for (long j = c; j < m.cols; ++j) {
        mpz_class top = s * m.at(r, j) + t * m.at(i, j);
        mpz_class bot = u * m.at(i, j) - w * m.at(r, j);
        m.at(r, j) = top;
        m.at(i, j) = bot;
      }
    }
    if (m.at(r, c) < 0)
      for (long j = c; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
    for (long i = 0; i < r; ++i) {
      if (m.at(i, c) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
      if (q == 0) continue;
      for (long j = c; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

IntMatrix hermite_column_form(const IntMatrix& m) {
  IntMatrix t = m.transpose();
  std::vector<long> pivots = row_hnf_inplace(t);
  long r = long(pivots.size());
  IntMatrix h(m.rows, r);
  for (long j = 0; j < r; ++j)
    for (long i = 0; i < m.rows; ++i) h.at(i, j) = t.at(j, i);
  return h;
}

long rank(const IntMatrix& m) {
  IntMatrix t = m.transpose();
  return long(row_hnf_inplace(t).size());
}

SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult res;
  res.d = m;
  res.u = IntMatrix::identity(m.rows);
  res.v = IntMatrix::identity(m.cols);
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  auto row_sub = [&](long i, long t, const mpz_class& q) {  // row_i -= q*row_t
    if (q == 0) return;
    for (long j = 0; j < d.cols; ++j) d.at(i, j) -= q * d.at(t, j);
    for (long j = 0; j < u.cols; ++j) u.at(i, j) -= q * u.at(t, j);
  };
  auto col_sub = [&](long j, long t, const mpz_class& q) {  // col_j -= q*col_t
    if (q == 0) return;
    for (long i = 0; i < d.rows; ++i) d.at(i, j) -= q * d.at(i, t);
    for (long i = 0; i < v.rows; ++i) v.at(i, j) -= q * v.at(i, t);
  };
  auto row_swap = [&](long i, long t) {
    if (i == t) return;
    for (long j = 0; j < d.cols; ++j) std::swap(d.at(i, j), d.at(t, j));
    for (long j = 0; j < u.cols; ++j) std::swap(u.at(i, j), u.at(t, j));
  };
  auto col_swap = [&](long j, long t) {
    if (j == t) return;
    for (long i = 0; i < d.rows; ++i) std::swap(d.at(i, j), d.at(i, t));
    for (long i = 0; i < v.rows; ++i) std::swap(v.at(i, j), v.at(i, t));
  };
  auto row_neg = [&](long i) {
    for (long j = 0; j < d.cols; ++j) d.at(i, j) = -d.at(i, j);
    for (long j = 0; j < u.cols; ++j) u.at(i, j) = -u.at(i, j);
  };

  long n = std::min(m.rows, m.cols);
  mpz_class q;
  for (long t = 0; t < n; ++t) {
    // minimal nonzero pivot in the trailing block
    long pi = -1, pj = -1;
    for (long i = t; i < d.rows; ++i)
      for (long j = t; j < d.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        if (pi < 0 || cmpabs(d.at(i, j), d.at(pi, pj)) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool dirty = false;
      for (long i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
        row_sub(i, t, q);
        if (d.at(i, t) != 0) {  // remainder smaller than pivot: promote it
          row_swap(t, i);
          dirty = true;
        }
      }
      for (long j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
        col_sub(j, t, q);
        if (d.at(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // corner clean; enforce divisibility of the trailing block
      bool fixed = true;
      for (long i = t + 1; i < d.rows && fixed; ++i)
        for (long j = t + 1; j < d.cols && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_sub(t, i, mpz_class(-1));  // row_t += row_i
            fixed = false;
          }
      if (fixed) break;
    }
    if (d.at(t, t) < 0) row_neg(t);
  }
  return res;
}

std::vector<mpz_class> SmithResult::divisors() const {
  long n = std::min(d.rows, d.cols);
  std::vector<mpz_class> out(n);
  for (long i = 0; i < n; ++i) out[i] = d.at(i, i);
  return out;
}

mpz_class det(const IntMatrix& m) {
  if (m.rows != m.cols) fail(errc::internal_invariant, "det of non-square matrix");
  long n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  mpz_class prev = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      long piv = -1;
      for (long i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        mpz_class num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : mpz_class(-w.at(n - 1, n - 1));
}

std::optional<std::vector<mpz_class>> solve_in_columns(
    const IntMatrix& basis, const std::vector<mpz_class>& v) {
  if (long(v.size()) != basis.rows)
    fail(errc::internal_invariant, "solve_in_columns dimension mismatch");
  long n = basis.rows, r = basis.cols;
  // exact Gaussian elimination over Q on [basis | v]
  std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(r + 1));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < r; ++j) w[i][j] = mpq_class(basis.at(i, j));
    w[i][r] = mpq_class(v[i]);
  }
  std::vector<long> pivot_row(r, -1);
  long row = 0;
  for (long c = 0; c < r && row < n; ++c) {
    long piv = -1;
    for (long i = row; i < n; ++i)
      if (w[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[row], w[piv]);
    mpq_class inv = w[row][c];
    for (long j = c; j <= r; ++j) w[row][j] /= inv;
    for (long i = 0; i < n; ++i) {
      if (i == row || w[i][c] == 0) continue;
      mpq_class f = w[i][c];
      for (long j = c; j <= r; ++j) w[i][j] -= f * w[row][j];
    }
    pivot_row[c] = row;
    ++row;
  }
  // inconsistent?
  for (long i = row; i < n; ++i)
    if (w[i][r] != 0) return std::nullopt;
  std::vector<mpz_class> x(r, 0);
  for (long c = 0; c < r; ++c) {
    if (pivot_row[c] < 0) {
      // dependent column; a nonzero free coordinate is never required
      continue;
    }
    mpq_class val = w[pivot_row[c]][r];
    val.canonicalize();
    if (val.get_den() != 1) return std::nullopt;
    x[c] = val.get_num();
  }
  return x;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  long n = std::min(m.rows, m.cols);
  std::vector<long> keep;
  for (long j = 0; j < m.cols; ++j) {
    if (j >= n || s.d.at(j, j) == 0) keep.push_back(j);
  }
  return s.v.submatrix_cols(keep);
}

IntMatrix kernel_mod(const IntMatrix& m, const mpz_class& q) {
  if (q <= 0) fail(errc::internal_invariant, "kernel_mod needs positive modulus");
  SmithResult s = smith_normal_form(m);
  long n = std::min(m.rows, m.cols);
  IntMatrix out(m.cols, m.cols);
  for (long j = 0; j < m.cols; ++j) {
    mpz_class mult = 1;
    if (j < n && s.d.at(j, j) != 0) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), s.d.at(j, j).get_mpz_t(), q.get_mpz_t());
      mult = q / g;
    }
    for (long i = 0; i < m.cols; ++i) out.at(i, j) = s.v.at(i, j) * mult;
  }
  return hermite_column_form(out);
}

IntMatrix saturate_columns(const IntMatrix& m) {
  // columns of m span L; saturation = ker(proj to cokernel free part),
  // computed from the SNF of the transpose-kernel trick: use SNF of m.
  SmithResult s = smith_normal_form(m);
  long n = std::min(m.rows, m.cols);
  std::vector<long> nonzero;
  for (long i = 0; i < n; ++i)
    if (s.d.at(i, i) != 0) nonzero.push_back(i);
  // columns of u^{-1} at the nonzero-divisor positions span the saturation;
  // recover u^{-1} columns by solving u x = e_i  (u unimodular)
  IntMatrix out(m.rows, long(nonzero.size()));
  for (size_t k = 0; k < nonzero.size(); ++k) {
    std::vector<mpz_class> e(m.rows, 0);
    e[nonzero[k]] = 1;
    auto x = solve_in_columns(s.u, e);
    if (!x) fail(errc::internal_invariant, "unimodular solve failed");
    for (long i = 0; i < m.rows; ++i) out.at(i, long(k)) = (*x)[i];
  }
  return hermite_column_form(out);
}

IntMatrix intersect_columns(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows) fail(errc::internal_invariant, "ambient mismatch in intersect");
  IntMatrix stacked = a.hstack(b.scaled(-1));
  IntMatrix k = kernel_basis(stacked);
  // first block of each kernel column gives coefficients in a
  IntMatrix coeffs(a.cols, k.cols);
  for (long i = 0; i < a.cols; ++i)
    for (long j = 0; j < k.cols; ++j) coeffs.at(i, j) = k.at(i, j);
  return hermite_column_form(a.mul(coeffs));
}

std::vector<mpz_class> char_poly(const IntMatrix& m) {
  if (m.rows != m.cols) fail(errc::internal_invariant, "char_poly of non-square");
  long n = m.rows;
  std::vector<mpz_class> c(n + 1);
  c[n] = 1;
  if (n == 0) return c;
  IntMatrix mk = m;
  mpz_class tr = 0;
  for (long i = 0; i < n; ++i) tr += mk.at(i, i);
  c[n - 1] = -tr;
  for (long k = 2; k <= n; ++k) {
    // mk <- m * (mk + c_{n-k+1} I)
    IntMatrix tmp = mk;
    for (long i = 0; i < n; ++i) tmp.at(i, i) += c[n - k + 1];
    mk = m.mul(tmp);
    tr = 0;
    for (long i = 0; i < n; ++i) tr += mk.at(i, i);
    mpz_class kk(k);
    mpz_class ck;
    mpz_divexact(ck.get_mpz_t(), tr.get_mpz_t(), kk.get_mpz_t());
    c[n - k] = -ck;
  }
  return c;
}

}  // namespace conglab
