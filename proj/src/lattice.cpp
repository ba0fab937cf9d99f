#include "conglab/lattice.h"

#include <algorithm>

#include "conglab/errors.h"

namespace conglab {

LatticeBasis LatticeBasis::from_columns(long ambient, const IntMatrix& cols) {
  if (cols.rows != ambient) fail(errc::internal_invariant, "ambient mismatch");
  LatticeBasis l;
  l.ambient_rank = ambient;
  l.basis = hermite_column_form(cols);
  l.full_rank = (l.basis.cols == ambient);
  return l;
}

bool lattice_contains(const LatticeBasis& l, const std::vector<mpz_class>& v) {
  return solve_in_columns(l.basis, v).has_value();
}

bool is_sublattice(const LatticeBasis& inner, const LatticeBasis& outer) {
  if (inner.ambient_rank != outer.ambient_rank) return false;
  for (long j = 0; j < inner.basis.cols; ++j) {
    std::vector<mpz_class> col(inner.basis.rows);
    for (long i = 0; i < inner.basis.rows; ++i) col[i] = inner.basis.at(i, j);
    if (!lattice_contains(outer, col)) return false;
  }
  return true;
}

LatticeBasis lattice_sum(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.ambient_rank != b.ambient_rank)
    fail(errc::internal_invariant, "ambient mismatch in lattice_sum");
  return LatticeBasis::from_columns(a.ambient_rank, a.basis.hstack(b.basis));
}

LatticeBasis lattice_project(const LatticeBasis& l, const std::vector<long>& rows) {
  IntMatrix sub = l.basis.submatrix_rows(rows);
  return LatticeBasis::from_columns(long(rows.size()), sub);
}

long lattice_index(const LatticeBasis& l1, const LatticeBasis& l2, long p) {
  if (l1.ambient_rank != l2.ambient_rank)
    fail(errc::internal_invariant, "ambient mismatch in lattice_index");
  if (!l1.full_rank || !l2.full_rank)
    fail(errc::rank_deficient, "lattice_index needs full-rank lattices");
  if (!is_sublattice(l2, l1)) fail(errc::not_sublattice, "L2 is not inside L1");
  // [L1 : L2] = |det X| where B1 X = B2
  long n = l1.ambient_rank;
  IntMatrix x(n, n);
  for (long j = 0; j < n; ++j) {
    std::vector<mpz_class> col(n);
    for (long i = 0; i < n; ++i) col[i] = l2.basis.at(i, j);
    auto sol = solve_in_columns(l1.basis, col);
    if (!sol) fail(errc::not_sublattice, "column of L2 not in L1");
    for (long i = 0; i < n; ++i) x.at(i, j) = (*sol)[i];
  }
  mpz_class d = det(x);
  if (d == 0) fail(errc::rank_deficient, "degenerate index");
  if (d < 0) d = -d;
  if (d == 1) return 0;
  return valuation_z(d, p);
}

long fitting_order(const FinPresModule& m, long p) {
  if (m.relations.rows != m.generators)
    fail(errc::internal_invariant, "presentation shape mismatch");
  SmithResult s = smith_normal_form(m.relations);
  long n = std::min(m.relations.rows, m.relations.cols);
  if (m.relations.cols < m.generators)
    fail(errc::infinite_module, "fewer relations than generators");
  long total = 0;
  for (long i = 0; i < n; ++i) {
    const mpz_class& d = s.d.at(i, i);
    if (d == 0) fail(errc::infinite_module, "zero elementary divisor");
    if (d != 1) total += valuation_z(d, p);
  }
  // rows beyond the diagonal are impossible here (rows = generators <= n)
  return total;
}

Multiplier coordinatewise_multiplier() {
  return [](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
    return r;
  };
}

Multiplier matrix_multiplier(long r) {
  return [r](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> c(size_t(r) * r, 0);
    for (long i = 0; i < r; ++i)
      for (long k = 0; k < r; ++k) {
        const mpz_class& x = a[size_t(i) * r + k];
        if (x == 0) continue;
        for (long j = 0; j < r; ++j) c[size_t(i) * r + j] += x * b[size_t(k) * r + j];
      }
    return c;
  };
}

Multiplier extension_block_multiplier(long p, int prec,
                                      const std::vector<mpz_class>& modulus) {
  // modulus: monic, low-to-high, degree d >= 1
  long d = long(modulus.size()) - 1;
  if (d < 1 || modulus[d] != 1)
    fail(errc::internal_invariant, "extension modulus must be monic");
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)prec);
  auto g = modulus;
  return [d, g, pk](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    if (a.size() % d != 0) fail(errc::internal_invariant, "bad block length");
    size_t nblocks = a.size() / d;
    std::vector<mpz_class> out(a.size(), 0);
    std::vector<mpz_class> prod(2 * d - 1);
    for (size_t blk = 0; blk < nblocks; ++blk) {
      std::fill(prod.begin(), prod.end(), mpz_class(0));
      for (long i = 0; i < d; ++i) {
        const mpz_class& x = a[blk * d + i];
        if (x == 0) continue;
        for (long j = 0; j < d; ++j) prod[i + j] += x * b[blk * d + j];
      }
      // reduce mod g (monic)
      for (long i = 2 * d - 2; i >= d; --i) {
        if (prod[i] == 0) continue;
        mpz_class q = prod[i];
        for (long j = 0; j < d; ++j) prod[i - d + j] -= q * g[j];
        prod[i] = 0;
      }
      for (long i = 0; i < d; ++i) {
        mpz_mod(prod[i].get_mpz_t(), prod[i].get_mpz_t(), pk.get_mpz_t());
        out[blk * d + i] = prod[i];
      }
    }
    return out;
  };
}

LatticeBasis algebra_closure(const std::vector<mpz_class>& one,
                             const std::vector<std::vector<mpz_class>>& gens,
                             long p, int prec, const Multiplier& mul) {
  long n = long(one.size());
  IntMatrix cols(n, long(1 + gens.size()));
  for (long i = 0; i < n; ++i) cols.at(i, 0) = one[i];
  for (size_t g = 0; g < gens.size(); ++g) {
    if (long(gens[g].size()) != n) fail(errc::internal_invariant, "generator length");
    for (long i = 0; i < n; ++i) cols.at(i, long(1 + g)) = gens[g][i];
  }
  LatticeBasis cur = LatticeBasis::from_columns(n, cols);
  long max_rounds = n * long(gens.size() + 2) + 8;
  for (long round = 0; round < max_rounds; ++round) {
    IntMatrix ext = cur.basis;
    for (const auto& g : gens) {
      IntMatrix prods(n, cur.basis.cols);
      for (long j = 0; j < cur.basis.cols; ++j) {
        std::vector<mpz_class> col(n);
        for (long i = 0; i < n; ++i) col[i] = cur.basis.at(i, j);
        std::vector<mpz_class> pr = mul(g, col);
        for (long i = 0; i < n; ++i) prods.at(i, j) = pr[i];
      }
      ext = ext.hstack(prods);
    }
    LatticeBasis next = LatticeBasis::from_columns(n, ext);
    if (next == cur) {
      // stabilized; certify the index stays visible at this precision
      if (cur.full_rank) {
        mpz_class d = 1;
        for (long i = 0; i < cur.basis.cols; ++i) d *= cur.basis.at(i, i);
        if (d != 1 && d != -1 && valuation_z(d, p) >= prec)
          fail(errc::precision_exhausted, "closure index not certified below p^K");
      }
      return cur;
    }
    cur = next;
  }
  fail(errc::internal_invariant, "algebra closure did not stabilize");
}

std::vector<mpz_class> reduce_mod_lattice(const std::vector<mpz_class>& v,
                                          const IntMatrix& basis) {
  long n = basis.rows;
  if (basis.cols != n) fail(errc::rank_deficient, "reduce_mod_lattice needs full rank");
  // exact rational solve, floor the coordinates, subtract
  std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(n + 1));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) w[i][j] = mpq_class(basis.at(i, j));
    w[i][n] = mpq_class(v[i]);
  }
  long row = 0;
  std::vector<long> piv_col(n, -1);
  for (long c = 0; c < n && row < n; ++c) {
    long piv = -1;
    for (long i = row; i < n; ++i)
      if (w[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[row], w[piv]);
    mpq_class d = w[row][c];
    for (long j = c; j <= n; ++j) w[row][j] /= d;
    for (long i = 0; i < n; ++i) {
      if (i == row || w[i][c] == 0) continue;
      mpq_class f = w[i][c];
      for (long j = c; j <= n; ++j) w[i][j] -= f * w[row][j];
    }
    piv_col[c] = row;
    ++row;
  }
  std::vector<mpz_class> out = v;
  for (long c = 0; c < n; ++c) {
    if (piv_col[c] < 0) fail(errc::rank_deficient, "singular basis");
    mpq_class coord = w[piv_col[c]][n];
    coord.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), coord.get_num().get_mpz_t(), coord.get_den().get_mpz_t());
    if (fl == 0) continue;
    for (long i = 0; i < n; ++i) out[i] -= fl * basis.at(i, c);
  }
  return out;
}

}  // namespace conglab
