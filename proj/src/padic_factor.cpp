#include "conglab/padic_factor.h"

#include <algorithm>
#include <map>

#include "conglab/errors.h"
#include "conglab/intmat.h"

namespace conglab {

std::string cert_name(FactorCert c) {
  switch (c) {
    case FactorCert::linear: return "linear";
    case FactorCert::unramified_residue: return "unramified-residue";
    case FactorCert::eisenstein_shift: return "eisenstein-shift";
    case FactorCert::maximal_order: return "maximal-order";
  }
  return "?";
}

namespace {

// ---------- dense F_p linear algebra on small matrices ----------

struct FpMat {
  long rows = 0, cols = 0;
  std::vector<long> a;
  FpMat() = default;
  FpMat(long r, long c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
  long& at(long i, long j) { return a[size_t(i) * cols + j]; }
  long at(long i, long j) const { return a[size_t(i) * cols + j]; }
};

long to_fp(const mpz_class& x, long p) {
  mpz_class r = x % p;
  long v = r.get_si();
  return ((v % p) + p) % p;
}

long fp_inv(long x, long p) {
  long t = 0, newt = 1, r = p, newr = ((x % p) + p) % p;
  while (newr != 0) {
    long q = r / newr;
    long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail(errc::internal_invariant, "fp_inv of non-unit");
  return ((t % p) + p) % p;
}

FpMat fp_mul(const FpMat& x, const FpMat& y, long p) {
  FpMat z(x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      long v = x.at(i, k);
      if (!v) continue;
      for (long j = 0; j < y.cols; ++j)
        z.at(i, j) = (z.at(i, j) + v * y.at(k, j)) % p;
    }
  return z;
}

FpMat fp_pow(FpMat m, long e, long p) {
  FpMat r(m.rows, m.cols);
  for (long i = 0; i < m.rows; ++i) r.at(i, i) = 1;
  while (e > 0) {
    if (e & 1) r = fp_mul(r, m, p);
    m = fp_mul(m, m, p);
    e >>= 1;
  }
  return r;
}

// columns spanning the kernel of m over F_p
FpMat fp_kernel(FpMat m, long p) {
  long rows = m.rows, cols = m.cols;
  std::vector<long> pivot_of_col(cols, -1);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (m.at(i, c) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    long inv = fp_inv(m.at(r, c), p);
    for (long j = 0; j < cols; ++j) m.at(r, j) = (m.at(r, j) * inv) % p;
    for (long i = 0; i < rows; ++i) {
      if (i == r) continue;
      long f = m.at(i, c) % p;
      if (!f) continue;
      for (long j = 0; j < cols; ++j)
        m.at(i, j) = ((m.at(i, j) - f * m.at(r, j)) % p + p) % p;
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<long> free_cols;
  for (long c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  FpMat k(cols, long(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    long fc = free_cols[j];
    k.at(fc, long(j)) = 1;
    for (long c = 0; c < cols; ++c) {
      long pr = pivot_of_col[c];
      if (pr >= 0) k.at(c, long(j)) = ((-m.at(pr, fc)) % p + p) % p;
    }
  }
  return k;
}

long fp_rank(FpMat m, long p) {
  long rows = m.rows, cols = m.cols, r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (m.at(i, c) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    long inv = fp_inv(m.at(r, c), p);
    for (long j = 0; j < cols; ++j) m.at(r, j) = (m.at(r, j) * inv) % p;
    for (long i = r + 1; i < rows; ++i) {
      long f = m.at(i, c) % p;
      if (!f) continue;
      for (long j = 0; j < cols; ++j)
        m.at(i, j) = ((m.at(i, j) - f * m.at(r, j)) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// ---------- squarefree decomposition and DDF over F_p ----------

// pairwise-coprime parts (s, multiplicity) with f = prod s^mult
void fp_squarefree_decomp(const fp::Poly& f, long p,
                          std::vector<std::pair<fp::Poly, long>>& out,
                          long mult_scale) {
  fp::Poly ff = fp::trim(f);
  if (long(ff.size()) - 1 <= 0) return;
  // derivative
  fp::Poly d(ff.size() - 1, 0);
  for (size_t i = 1; i < ff.size(); ++i) d[i - 1] = (long(i) % p) * ff[i] % p;
  d = fp::trim(std::move(d));
  if (d.empty()) {
    // f = g(x^p) = (g~)^p with g~ = coefficientwise contraction
    fp::Poly g;
    for (size_t i = 0; i < ff.size(); i += p) g.push_back(ff[i]);
    fp_squarefree_decomp(g, p, out, mult_scale * p);
    return;
  }
  fp::Poly gg = fp::gcd(ff, d, p);
  fp::Poly w = fp::divrem(ff, gg, p).first;
  long i = 1;
  while (long(w.size()) - 1 > 0) {
    fp::Poly y = fp::gcd(w, gg, p);
    fp::Poly fac = fp::divrem(w, y, p).first;
    if (long(fac.size()) - 1 > 0) out.emplace_back(fac, i * mult_scale);
    w = std::move(y);
    gg = fp::divrem(gg, w, p).first;
    ++i;
  }
  if (long(gg.size()) - 1 > 0) fp_squarefree_decomp(gg, p, out, mult_scale * p);
}

// split a squarefree s into distinct-degree parts (prod of irreducibles of
// equal degree); returns list of (part, irreducible-degree)
std::vector<std::pair<fp::Poly, long>> fp_distinct_degree(fp::Poly s, long p) {
  std::vector<std::pair<fp::Poly, long>> out;
  fp::Poly x = {0, 1};
  fp::Poly h = x;
  long d = 0;
  while (long(s.size()) - 1 > 0) {
    ++d;
    if (2 * d > long(s.size()) - 1) {
      out.emplace_back(s, long(s.size()) - 1);
      break;
    }
    h = fp::powmod(h, mpz_class(p), s, p);
    fp::Poly g = fp::gcd(fp::sub(h, x, p), s, p);
    if (long(g.size()) - 1 > 0) {
      out.emplace_back(g, d);
      s = fp::divrem(s, g, p).first;
      h = fp::divrem(h, s, p).second;
    }
  }
  return out;
}

// ---------- p-maximal order engine ----------

struct OrderCtx {
  long p;
  int prec;        // working precision (digits)
  mpz_class pk;    // p^prec
  long n;
  IntMatrix theta;   // companion matrix of f mod p^prec
  IntMatrix basis;   // n x n, columns: order basis in power-basis coords, over p^den_exp
  long den_exp = 0;  // order = (1/p^den_exp) * col(basis)

  void reduce(mpz_class& x) const { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t()); }

  // product of order elements given by order coordinates, result in order coords
  std::vector<mpz_class> mult(const std::vector<mpz_class>& u,
                              const std::vector<mpz_class>& v) const {
    // w = (B u) * (B v) in the power basis = sum_i (Bu)_i theta^i (Bv)
    std::vector<mpz_class> bu = basis.mul_vec(u);
    std::vector<mpz_class> bv = basis.mul_vec(v);
    std::vector<mpz_class> acc(n, 0), cur = bv;
    for (long i = 0; i < n; ++i) {
      if (bu[i] != 0)
        for (long j = 0; j < n; ++j) acc[j] += bu[i] * cur[j];
      if (i + 1 < n) {
        cur = theta.mul_vec(cur);
        for (auto& x : cur) reduce(x);
      }
    }
    for (auto& x : acc) reduce(x);
    // acc = p^{2 den_exp} * (elt product in power basis); element of order
    // has power coords p^{den_exp} * B c  =>  solve B c = acc / p^{den_exp}
    if (den_exp > 0) {
      mpz_class pd;
      mpz_ui_pow_ui(pd.get_mpz_t(), (unsigned long)p, (unsigned long)den_exp);
      for (auto& x : acc) {
        if (x % pd != 0)
          fail(errc::precision_exhausted, "order product not integral at precision");
        x /= pd;
      }
    }
    return solve_tri(acc);
  }

  // solve basis * c = w for lower-triangular Hermite basis with p-power diagonal
  std::vector<mpz_class> solve_tri(std::vector<mpz_class> w) const {
    std::vector<mpz_class> c(n, 0);
    for (long i = 0; i < n; ++i) {
      mpz_class rhs = w[i];
      for (long j = 0; j < i; ++j) rhs -= basis.at(i, j) * c[j];
      const mpz_class& d = basis.at(i, i);
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rhs.get_mpz_t(), d.get_mpz_t());
      if (r != 0)
        fail(errc::precision_exhausted, "element not in order at this precision");
      c[i] = q;
      reduce(c[i]);
    }
    return c;
  }

  // x^p by binary powering in the order; x in order coords
  std::vector<mpz_class> pow_p(const std::vector<mpz_class>& x) const {
    std::vector<mpz_class> result(n, 0), base = x;
    // identity element of the order: solve B c = p^den_exp * e_0
    std::vector<mpz_class> one(n, 0);
    {
      std::vector<mpz_class> w(n, 0);
      mpz_class pd;
      mpz_ui_pow_ui(pd.get_mpz_t(), (unsigned long)p, (unsigned long)den_exp);
      w[0] = pd;
      one = solve_tri(std::move(w));
    }
    result = one;
    long e = p;
    while (e > 0) {
      if (e & 1) result = mult(result, base);
      e >>= 1;
      if (e) base = mult(base, base);
    }
    return result;
  }
};

// Hermite + normalize denominator: divide out common p if the whole basis
// admits it (keeps den_exp minimal).
void normalize_order(IntMatrix& basis, long& den_exp, long p) {
  basis = hermite_column_form(basis);
  while (den_exp > 0) {
    bool all = true;
    for (const auto& x : basis.a)
      if (x % p != 0) {
        all = false;
        break;
      }
    if (!all) break;
    for (auto& x : basis.a) x /= p;
    --den_exp;
  }
}

struct SplitComponent {
  std::vector<mpz_class> idem;  // order coords, idempotent mod p^lift_prec
  long dim = 0;                 // Z_p-rank of the component
  long res_deg = 0;             // residue field degree
};

// Full splitting of A = Q_p[x]/(f) via the p-maximal order.
std::vector<QpFactor> round2_split(const PadicPoly& f, long vdisc, int& emit_prec);

// ---------- recursive factorization ----------

void classify(QpFactor& qf) {
  const PadicPoly& g = qf.poly;
  long p = g.ring.p;
  long n = g.degree();
  if (n == 1) {
    qf.cert = FactorCert::linear;
    return;
  }
  fp::Poly gbar = fp::from_padic(g);
  if (long(gbar.size()) - 1 == n && fp::irreducible(gbar, p)) {
    qf.cert = FactorCert::unramified_residue;
    return;
  }
  // single residue root with full multiplicity -> try the shifted polygon
  for (long a = 0; a < p; ++a) {
    fp::Poly cof;
    if (fp::root_multiplicity(gbar, a, p, cof) == n) {
      PadicPoly sh = poly_shift(g, mpz_class(a));
      if (sh.c.empty() || sh.c[0] == 0) break;
      NewtonPolygon np = newton_polygon(sh);
      if (np.slopes.size() == 1 && np.slopes[0].first.get_den() == n) {
        qf.cert = FactorCert::eisenstein_shift;
        return;
      }
      break;
    }
  }
  qf.cert = FactorCert::maximal_order;
}

std::vector<QpFactor> factor_rec(const PadicPoly& f, long vdisc, int& emit_prec) {
  long p = f.ring.p;
  long n = f.degree();
  if (n <= 0) fail(errc::internal_invariant, "factor of constant");
  if (n == 1) return {QpFactor{f, 1, 1, FactorCert::linear}};

  fp::Poly fbar = fp::from_padic(f);
  if (long(fbar.size()) - 1 != n)
    fail(errc::internal_invariant, "non-monic reduction in factor_rec");

  // pairwise-coprime residue parts: squarefree decomposition + DDF grouping
  std::vector<std::pair<fp::Poly, long>> sqf;
  fp_squarefree_decomp(fbar, p, sqf, 1);
  std::vector<std::pair<fp::Poly, long>> parts;  // (part = s^m as fp poly, irr_deg or 0)
  std::vector<long> part_irr_deg;
  for (auto& [s, m] : sqf) {
    for (auto& [sd, d] : fp_distinct_degree(s, p)) {
      fp::Poly power = {1};
      for (long k = 0; k < m; ++k) power = fp::mul(power, sd, p);
      parts.emplace_back(power, m);
      part_irr_deg.push_back((long(sd.size()) - 1 == d) ? d : 0);  // 0: composite same-degree
    }
  }

  if (parts.size() >= 2) {
    // multifactor Hensel: split off parts one at a time
    std::vector<QpFactor> out;
    PadicPoly rest = f;
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
      fp::Poly a = parts[i].first;
      fp::Poly b = {1};
      for (size_t j = i + 1; j < parts.size(); ++j) b = fp::mul(b, parts[j].first, p);
      PadicPoly pa(rest.ring, std::vector<mpz_class>(a.begin(), a.end()));
      PadicPoly pb(rest.ring, std::vector<mpz_class>(b.begin(), b.end()));
      auto [fa, fb] = hensel_lift(rest, pa, pb);
      auto sub = factor_rec(fa, vdisc, emit_prec);
      out.insert(out.end(), sub.begin(), sub.end());
      rest = fb;
    }
    auto sub = factor_rec(rest, vdisc, emit_prec);
    out.insert(out.end(), sub.begin(), sub.end());
    return out;
  }

  // single residue part s^m
  const fp::Poly& s = sqf.empty() ? fbar : sqf[0].first;
  long m = sqf.empty() ? 1 : sqf[0].second;
  long sdeg = long(s.size()) - 1;

  if (m == 1 && part_irr_deg.size() == 1 && part_irr_deg[0] > 0) {
    // residue irreducible: unramified
    return {QpFactor{f, 1, n, FactorCert::unramified_residue}};
  }

  if (m >= 2 && sdeg == 1) {
    // residue (x - a)^n: shift and look at the polygon
    long a = ((-(s[0])) % p + p) % p;  // root of s
    PadicPoly sh = poly_shift(f, mpz_class(a));
    if (sh.c.empty() || sh.c[0] == 0) {
      // exact root at this precision: split off the linear factor
      auto [q, r] = poly_divrem_monic(sh, PadicPoly(sh.ring, {0, 1}));
      if (!r.is_zero()) fail(errc::internal_invariant, "zero-constant division");
      std::vector<QpFactor> out;
      out.push_back(QpFactor{
          PadicPoly(f.ring, {mpz_class(-a), mpz_class(1)}), 1, 1, FactorCert::linear});
      PadicPoly back = poly_shift(q, mpz_class(-a));
      auto sub = factor_rec(back, vdisc, emit_prec);
      out.insert(out.end(), sub.begin(), sub.end());
      return out;
    }
    NewtonPolygon np = newton_polygon(sh);
    if (np.slopes.size() == 1 && np.slopes[0].first.get_den() == n) {
      // single slope a/n in lowest terms: totally ramified, irreducible
      return {QpFactor{f, n, 1, FactorCert::eisenstein_shift}};
    }
  }

  // everything else: maximal-order engine (full split)
  return round2_split(f, vdisc, emit_prec);
}

std::vector<QpFactor> round2_split(const PadicPoly& f, long vdisc, int& emit_prec) {
  long p = f.ring.p;
  long n = f.degree();
  int K = f.ring.prec;

  OrderCtx ord;
  ord.p = p;
  ord.prec = K;
  ord.pk = f.ring.pk;
  ord.n = n;
  ord.theta = IntMatrix(n, n);
  for (long i = 0; i + 1 < n; ++i) ord.theta.at(i + 1, i) = 1;
  for (long i = 0; i < n; ++i) {
    mpz_class v = -f.c[i];
    ord.reduce(v);
    ord.theta.at(i, n - 1) = v;
  }
  ord.basis = IntMatrix::identity(n);
  ord.den_exp = 0;

  long frob_iters = 1;
  {
    long q = p;
    while (q < n) {
      q *= p;
      ++frob_iters;
    }
  }

  // ---- Round-2 loop: enlarge the order until p-maximal ----
  for (long round = 0; round <= vdisc + 1; ++round) {
    // Frobenius matrix on O/pO
    FpMat frob(n, n);
    for (long j = 0; j < n; ++j) {
      std::vector<mpz_class> e(n, 0);
      e[j] = 1;
      std::vector<mpz_class> fj = ord.pow_p(e);
      for (long i = 0; i < n; ++i) frob.at(i, j) = to_fp(fj[i], p);
    }
    FpMat frob_m = fp_pow(frob, frob_iters, p);
    FpMat rad = fp_kernel(frob_m, p);  // radical of O/pO, columns

    // radical lattice I in order coords: radical lifts + p*O
    IntMatrix bi(n, rad.cols + n);
    for (long j = 0; j < rad.cols; ++j)
      for (long i = 0; i < n; ++i) bi.at(i, j) = rad.at(i, j);
    for (long i = 0; i < n; ++i) bi.at(i, rad.cols + i) = p;
    bi = hermite_column_form(bi);

    // multiplier ring: y in O with y * I <= p * I, as mod-p kernel
    // build the stacked condition matrix: for each I-basis vector v_j the
    // map y -> coords_I(y * v_j) mod p
    FpMat cond(n * n, n);
    for (long j = 0; j < n; ++j) {
      std::vector<mpz_class> vj(n);
      for (long i = 0; i < n; ++i) vj[i] = bi.at(i, j);
      for (long k = 0; k < n; ++k) {
        std::vector<mpz_class> ek(n, 0);
        ek[k] = 1;
        std::vector<mpz_class> prod = ord.mult(ek, vj);
        // coords of prod in the I basis (triangular solve against bi)
        std::vector<mpz_class> c(n, 0);
        for (long i = 0; i < n; ++i) {
          mpz_class rhs = prod[i];
          for (long t = 0; t < i; ++t) rhs -= bi.at(i, t) * c[t];
          mpz_class q, r;
          mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rhs.get_mpz_t(),
                      bi.at(i, i).get_mpz_t());
          if (r != 0)
            fail(errc::precision_exhausted, "radical solve failed at precision");
          c[i] = q;
        }
        for (long i = 0; i < n; ++i) cond.at(j * n + i, k) = to_fp(c[i], p);
      }
    }
    FpMat ker = fp_kernel(cond, p);
    if (ker.cols == 0) break;  // multiplier ring has no new (1/p) elements

    // O' = O + (1/p)*span{kernel lifts}; in power-basis coords with den p^{d+1}
    IntMatrix bigger(n, n + ker.cols);
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i) bigger.at(i, j) = ord.basis.at(i, j) * p;
    for (long j = 0; j < ker.cols; ++j) {
      std::vector<mpz_class> y(n);
      for (long i = 0; i < n; ++i) y[i] = ker.at(i, j);
      std::vector<mpz_class> py = ord.basis.mul_vec(y);  // power coords * p^d
      for (long i = 0; i < n; ++i) bigger.at(i, n + j) = py[i];
    }
    long new_den = ord.den_exp + 1;
    normalize_order(bigger, new_den, p);
    if (new_den == ord.den_exp && bigger == ord.basis) break;  // stable
    ord.basis = bigger;
    ord.den_exp = new_den;
    if (round == vdisc + 1)
      fail(errc::precision_exhausted, "maximal order iteration did not stabilize");
  }

  // ---- split the residue algebra of the maximal order ----
  FpMat frob(n, n);
  for (long j = 0; j < n; ++j) {
    std::vector<mpz_class> e(n, 0);
    e[j] = 1;
    std::vector<mpz_class> fj = ord.pow_p(e);
    for (long i = 0; i < n; ++i) {
      mpz_class r = fj[i] % p;
      frob.at(i, j) = r.get_si();
    }
  }
  FpMat frob_m = fp_pow(frob, frob_iters, p);
  FpMat rad = fp_kernel(frob_m, p);
  long rad_dim = rad.cols;

  // fixed space of Frobenius in O/pO: t-dimensional with t = #residue fields
  FpMat frob_minus_id = frob;
  for (long i = 0; i < n; ++i)
    frob_minus_id.at(i, i) = ((frob_minus_id.at(i, i) - 1) % p + p) % p;

  // identity of the order, mod p and at full precision
  std::vector<mpz_class> one_full;
  {
    std::vector<mpz_class> w(n, 0);
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), (unsigned long)p, (unsigned long)ord.den_exp);
    w[0] = pd;
    one_full = ord.solve_tri(std::move(w));
  }

  struct Comp {
    std::vector<mpz_class> idem;  // order coords at full precision
  };
  std::vector<Comp> comps{Comp{one_full}};

  auto mult_mod_p = [&](const std::vector<mpz_class>& a,
                        const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r = ord.mult(a, b);
    for (auto& x : r) x %= p;
    return r;
  };

  // refine components until each has a 1-dimensional Frobenius-fixed part
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Comp> next;
    for (auto& comp : comps) {
      // subspace e*V of the Frobenius-fixed space V = ker(frob - id)
      FpMat fixed = fp_kernel(frob_minus_id, p);
      // project through the idempotent: candidates e*v for fixed vectors v
      std::vector<std::vector<mpz_class>> cand;
      for (long j = 0; j < fixed.cols; ++j) {
        std::vector<mpz_class> v(n);
        for (long i = 0; i < n; ++i) v[i] = fixed.at(i, j);
        cand.push_back(mult_mod_p(comp.idem, v));
      }
      FpMat cm(n, long(cand.size()));
      for (size_t j = 0; j < cand.size(); ++j)
        for (long i = 0; i < n; ++i) cm.at(i, long(j)) = to_fp(cand[j][i], p);
      long fdim = fp_rank(cm, p);
      if (fdim <= 1) {
        next.push_back(comp);
        continue;
      }
      // find z = e*v not a scalar multiple of e
      std::vector<mpz_class> z;
      {
        FpMat test(n, 2);
        for (size_t j = 0; j < cand.size(); ++j) {
          for (long i = 0; i < n; ++i) {
            test.at(i, 0) = to_fp(comp.idem[i], p);
            test.at(i, 1) = to_fp(cand[j][i], p);
          }
          if (fp_rank(test, p) == 2) {
            z = cand[j];
            break;
          }
        }
      }
      if (z.empty())
        fail(errc::internal_invariant, "fixed space has no non-scalar element");
      // values of z: a in F_p with z - a*e singular on the component; split by
      // Lagrange idempotents e_a = prod_{b != a} (z - b e) / (a - b)
      std::vector<long> values;
      for (long a = 0; a < p; ++a) {
        // z - a*e, as mult operator restricted to e*(O/p): singular iff
        // exists w with e*w != 0 and (z - a e) w = 0
        std::vector<mpz_class> za(n);
        for (long i = 0; i < n; ++i) za[i] = z[i] - a * comp.idem[i];
        // kernel of mult-by-za intersected with image of mult-by-e
        FpMat mz(n, n), me(n, n);
        for (long j = 0; j < n; ++j) {
          std::vector<mpz_class> ej(n, 0);
          ej[j] = 1;
          auto col1 = mult_mod_p(za, ej);
          auto col2 = mult_mod_p(comp.idem, ej);
          for (long i = 0; i < n; ++i) {
            mz.at(i, j) = to_fp(col1[i], p);
            me.at(i, j) = to_fp(col2[i], p);
          }
        }
        // restrict mz to the column space of me: singular on the component iff
        // rank(mz * me) < rank(me)
        if (fp_rank(fp_mul(mz, me, p), p) < fp_rank(me, p)) values.push_back(a);
      }
      if (values.size() < 2)
        fail(errc::internal_invariant, "non-scalar fixed element has one value");
      for (long a : values) {
        // Lagrange product at full precision, then idempotent-refine
        std::vector<mpz_class> ea = comp.idem;
        for (long b : values) {
          if (b == a) continue;
          std::vector<mpz_class> zb(n);
          for (long i = 0; i < n; ++i) zb[i] = z[i] - b * comp.idem[i];
          ea = ord.mult(ea, zb);
          long inv = fp_inv(((a - b) % p + p) % p, p);
          for (auto& x : ea) {
            x *= inv;
            ord.reduce(x);
          }
        }
        next.push_back(Comp{ea});
      }
      changed = true;
    }
    comps = std::move(next);
  }

  // lift idempotents: e <- 3e^2 - 2e^3 until stable mod p^K
  for (auto& comp : comps) {
    for (int it = 0; it < ord.prec + 4; ++it) {
      std::vector<mpz_class> e2 = ord.mult(comp.idem, comp.idem);
      std::vector<mpz_class> e3 = ord.mult(e2, comp.idem);
      std::vector<mpz_class> ne(n);
      bool stable = true;
      for (long i = 0; i < n; ++i) {
        ne[i] = 3 * e2[i] - 2 * e3[i];
        ord.reduce(ne[i]);
        if (ne[i] != comp.idem[i]) stable = false;
      }
      comp.idem = std::move(ne);
      if (stable) break;
    }
  }

  // ---- extract one factor per component ----
  long loss = 2 * ord.den_exp + vdisc + 2;
  int comp_prec = K - int(std::min<long>(loss, K - 4));
  if (comp_prec < 4)
    fail(errc::precision_exhausted, "insufficient precision for component split");
  mpz_class pk_comp;
  mpz_ui_pow_ui(pk_comp.get_mpz_t(), (unsigned long)p, (unsigned long)comp_prec);

  std::vector<QpFactor> out;
  long total_deg = 0;
  // theta in order coords
  std::vector<mpz_class> theta_coords;
  {
    std::vector<mpz_class> w(n, 0);
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), (unsigned long)p, (unsigned long)ord.den_exp);
    w[1] = pd;
    theta_coords = ord.solve_tri(std::move(w));
  }

  for (auto& comp : comps) {
    // component lattice: e*O + p^comp_prec * O, in order coords
    IntMatrix gen(n, 2 * n);
    for (long j = 0; j < n; ++j) {
      std::vector<mpz_class> ej(n, 0);
      ej[j] = 1;
      std::vector<mpz_class> col = ord.mult(comp.idem, ej);
      for (long i = 0; i < n; ++i) {
        mpz_class v = col[i];
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), pk_comp.get_mpz_t());
        gen.at(i, j) = v;
      }
      gen.at(j, n + j) = pk_comp;
    }
    IntMatrix h = hermite_column_form(gen);
    // visible rank: columns whose diagonal is not p^comp_prec
    // (h is n x n lower triangular, full rank: contains p^comp_prec I)
    std::vector<long> keep;
    for (long j = 0; j < h.cols; ++j) {
      // find pivot row of column j
      long pr = -1;
      for (long i = 0; i < h.rows; ++i)
        if (h.at(i, j) != 0) {
          pr = i;
          break;
        }
      if (pr < 0) continue;
      if (h.at(pr, j) % pk_comp != 0) keep.push_back(j);
    }
    long r = long(keep.size());
    if (r == 0) continue;  // numerically trivial component (should not happen)
    IntMatrix cb = h.submatrix_cols(keep);  // n x r

    // theta action on the component basis, mod p^comp_prec
    IntMatrix act(r, r);
    for (long j = 0; j < r; ++j) {
      std::vector<mpz_class> col(n);
      for (long i = 0; i < n; ++i) col[i] = cb.at(i, j);
      std::vector<mpz_class> tc = ord.mult(theta_coords, col);
      // solve cb * x = tc mod p^comp_prec: lift to exact solve over Z on
      // the augmented lattice [cb | p^comp_prec I]
      IntMatrix aug(n, r + n);
      for (long i = 0; i < n; ++i) {
        for (long k = 0; k < r; ++k) aug.at(i, k) = cb.at(i, k);
        aug.at(i, r + i) = pk_comp;
      }
      auto sol = solve_in_columns(aug, tc);
      if (!sol)
        fail(errc::precision_exhausted, "component not theta-stable at precision");
      for (long i = 0; i < r; ++i) {
        mpz_class v = (*sol)[i];
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), pk_comp.get_mpz_t());
        act.at(i, j) = v;
      }
    }
    std::vector<mpz_class> cp = char_poly(act);
    PadicPoly g(PadicRing(p, comp_prec), cp);

    // residue degree: Frobenius-fixed dimension inside the component mod p
    long fdeg;
    {
      FpMat fixed = fp_kernel(frob_minus_id, p);
      FpMat cm(n, fixed.cols);
      for (long j = 0; j < fixed.cols; ++j) {
        std::vector<mpz_class> v(n);
        for (long i = 0; i < n; ++i) v[i] = fixed.at(i, j);
        auto ev = mult_mod_p(comp.idem, v);
        for (long i = 0; i < n; ++i) cm.at(i, j) = to_fp(ev[i], p);
      }
      long nfields = fp_rank(cm, p);
      if (nfields != 1)
        fail(errc::internal_invariant, "component still composite after split");
      // residue field dim: component dim mod p minus its radical part;
      // equals r / e. Compute via the rank of e*(O/pO) minus e*rad.
      FpMat em(n, n), erad(n, rad_dim);
      for (long j = 0; j < n; ++j) {
        std::vector<mpz_class> ej(n, 0);
        ej[j] = 1;
        auto col = mult_mod_p(comp.idem, ej);
        for (long i = 0; i < n; ++i) em.at(i, j) = to_fp(col[i], p);
      }
      for (long j = 0; j < rad_dim; ++j) {
        std::vector<mpz_class> v(n);
        for (long i = 0; i < n; ++i) v[i] = rad.at(i, j);
        auto col = mult_mod_p(comp.idem, v);
        for (long i = 0; i < n; ++i) erad.at(i, j) = to_fp(col[i], p);
      }
      fdeg = fp_rank(em, p) - fp_rank(erad, p);
    }
    if (fdeg <= 0 || r % fdeg != 0)
      fail(errc::internal_invariant, "inconsistent residue degree in split");

    QpFactor qf;
    qf.poly = g;
    qf.res_degree = fdeg;
    qf.ram_index = r / fdeg;
    qf.cert = FactorCert::maximal_order;
    classify(qf);
    out.push_back(std::move(qf));
    total_deg += r;
  }
  if (total_deg != n)
    fail(errc::precision_exhausted, "component degrees do not sum to input degree");
  emit_prec = std::min(emit_prec, comp_prec);
  return out;
}

}  // namespace

QpFactorization factor_over_qp(const PadicPoly& f) {
  if (!f.is_monic()) fail(errc::internal_invariant, "factor_over_qp needs monic input");
  long n = f.degree();
  long p = f.ring.p;
  int K = f.ring.prec;
  if (n < 1) fail(errc::internal_invariant, "factor_over_qp needs degree >= 1");

  long vdisc = 0;
  if (n >= 2) {
    mpz_class disc = resultant_mod(f, poly_derivative(f));
    if (disc == 0)
      fail(errc::not_squarefree, "gcd(f, f') nontrivial at this precision");
    vdisc = valuation_z(disc, p);
  }
  if (K < 2 * vdisc + 10)
    fail(errc::precision_exhausted,
         "precision too small for certified factorization (need K > 2 v(disc) + 10)");

  int emit_prec = K;
  auto factors = factor_rec(f, vdisc, emit_prec);

  // certify: product of factors == f at the emitted precision
  PadicRing rr(p, emit_prec);
  PadicPoly prod(rr, {1});
  for (auto& qf : factors) {
    qf.poly = poly_reduce_prec(qf.poly, emit_prec);
    prod = poly_mul(prod, qf.poly);
  }
  if (!poly_sub(prod, poly_reduce_prec(f, emit_prec)).is_zero())
    fail(errc::precision_exhausted, "factor product check failed at emitted precision");

  std::sort(factors.begin(), factors.end(), [](const QpFactor& a, const QpFactor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return a.poly.c < b.poly.c;
  });
  return QpFactorization{std::move(factors), emit_prec};
}

}  // namespace conglab
