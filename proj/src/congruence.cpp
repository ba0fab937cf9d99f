#include "conglab/congruence.h"

#include <algorithm>
#include <random>

#include "conglab/errors.h"
#include "conglab/padic.h"

namespace conglab {

long BlockedAmbient::total_rank() const {
  long n = 0;
  for (long b : block_sizes) n += b;
  return n;
}

std::vector<long> BlockedAmbient::block_rows(long i) const {
  long start = 0;
  for (long k = 0; k < i; ++k) start += block_sizes[k];
  std::vector<long> rows(block_sizes[i]);
  for (long k = 0; k < block_sizes[i]; ++k) rows[k] = start + k;
  return rows;
}

namespace {

std::vector<mpz_class> column_of(const IntMatrix& m, long j) {
  std::vector<mpz_class> v(m.rows);
  for (long i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

std::vector<mpz_class> coordinatewise(const std::vector<mpz_class>& a,
                                      const std::vector<mpz_class>& b) {
  std::vector<mpz_class> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

std::vector<mpz_class> vec_sub(const std::vector<mpz_class>& a,
                               const std::vector<mpz_class>& b) {
  std::vector<mpz_class> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// lattice spanned by alpha * (columns of basis) under the coordinatewise product
LatticeBasis multiple_lattice(const std::vector<mpz_class>& alpha,
                              const LatticeBasis& l) {
  IntMatrix prods(l.basis.rows, l.basis.cols);
  for (long j = 0; j < l.basis.cols; ++j) {
    auto pr = coordinatewise(alpha, column_of(l.basis, j));
    for (long i = 0; i < l.basis.rows; ++i) prods.at(i, j) = pr[i];
  }
  return LatticeBasis::from_columns(l.ambient_rank, prods);
}

}  // namespace

Subalgebra make_subalgebra(const BlockedAmbient& amb, const IntMatrix& columns) {
  long n = amb.total_rank();
  if (columns.rows != n) fail(errc::internal_invariant, "ambient rank mismatch");
  Subalgebra t;
  t.ambient = amb;
  t.lattice = LatticeBasis::from_columns(n, columns);
  if (!t.lattice.full_rank)
    fail(errc::rank_deficient, "subalgebra lattice is not of full rank");
  t.one.assign(n, 1);
  if (!lattice_contains(t.lattice, t.one))
    fail(errc::not_subalgebra, "subalgebra does not contain 1");
  // multiplicative closure on basis pairs
  for (long i = 0; i < t.lattice.basis.cols; ++i)
    for (long j = i; j < t.lattice.basis.cols; ++j) {
      auto prod = coordinatewise(column_of(t.lattice.basis, i),
                                 column_of(t.lattice.basis, j));
      if (!lattice_contains(t.lattice, prod))
        fail(errc::not_subalgebra, "lattice not closed under multiplication");
    }
  // locality: residue field F_p, so all coordinates of any element agree
  // mod p, and basis elements minus their scalar part are nilpotent mod p
  long p = amb.p;
  IntMatrix p_basis = t.lattice.basis.scaled(p);
  for (long j = 0; j < t.lattice.basis.cols; ++j) {
    auto b = column_of(t.lattice.basis, j);
    mpz_class c0 = b[0] % p;
    if (c0 < 0) c0 += p;
    for (long i = 1; i < n; ++i) {
      mpz_class ci = b[i] % p;
      if (ci < 0) ci += p;
      if (ci != c0)
        fail(errc::not_local, "basis element has distinct residues across coordinates");
    }
    std::vector<mpz_class> x(n);
    for (long i = 0; i < n; ++i) x[i] = b[i] - c0;
    long steps = 1;
    while ((1L << steps) < n) ++steps;
    for (long k = 0; k < steps + 1; ++k)
      x = reduce_mod_lattice(coordinatewise(x, x), p_basis);
    for (const auto& xi : x)
      if (xi != 0) fail(errc::not_local, "augmentation complement is not nilpotent mod p");
  }
  return t;
}

FiniteIndexIdeal make_ideal(const Subalgebra& t, const IntMatrix& columns) {
  long n = t.ambient.total_rank();
  FiniteIndexIdeal j;
  j.lattice = LatticeBasis::from_columns(n, columns);
  if (!j.lattice.full_rank)
    fail(errc::infinite_module, "ideal does not have finite index");
  if (!is_sublattice(j.lattice, t.lattice))
    fail(errc::not_sublattice, "ideal lattice is not inside the subalgebra");
  for (long a = 0; a < t.lattice.basis.cols; ++a)
    for (long b = 0; b < j.lattice.basis.cols; ++b) {
      auto prod = coordinatewise(column_of(t.lattice.basis, a),
                                 column_of(j.lattice.basis, b));
      if (!lattice_contains(j.lattice, prod))
        fail(errc::not_ideal, "submodule is not an ideal: T*J escapes J");
    }
  return j;
}

LatticeBasis block_project(const BlockedAmbient& amb, const LatticeBasis& l, long i) {
  if (i < 0 || i >= amb.blocks()) fail(errc::internal_invariant, "bad block index");
  return lattice_project(l, amb.block_rows(i));
}

long quotient_order(const Subalgebra& t, const FiniteIndexIdeal& j) {
  long v = lattice_index(t.lattice, j.lattice, t.ambient.p);
  if (v >= t.ambient.prec)
    fail(errc::precision_exhausted, "quotient order reaches the working precision");
  return v;
}

namespace {

bool generates(const std::vector<mpz_class>& alpha, const LatticeBasis& t_i,
               const LatticeBasis& j_i) {
  return multiple_lattice(alpha, t_i) == j_i;
}

}  // namespace

GeneratorSearch find_block_generator(const LatticeBasis& t_i, const LatticeBasis& j_i,
                                     long p, uint64_t seed) {
  GeneratorSearch res;
  long ni = t_i.ambient_rank;
  if (ni == 1) {
    // T_i = O and J_i = p^m O: the single Hermite entry generates
    res.status = SearchStatus::found;
    res.generator = {j_i.basis.at(0, 0)};
    return res;
  }
  long r = j_i.basis.cols;
  long bound = p * p;
  // bounded enumeration of coefficient vectors over the J_i basis
  std::vector<long> coef(r, 0);
  for (;;) {
    // skip the zero vector
    bool all_zero = std::all_of(coef.begin(), coef.end(), [](long c) { return c == 0; });
    if (!all_zero) {
      std::vector<mpz_class> alpha(ni, 0);
      for (long k = 0; k < r; ++k)
        if (coef[k])
          for (long i = 0; i < ni; ++i) alpha[i] += coef[k] * j_i.basis.at(i, k);
      if (generates(alpha, t_i, j_i)) {
        res.status = SearchStatus::found;
        res.generator = std::move(alpha);
        return res;
      }
    }
    long k = 0;
    while (k < r && ++coef[k] == bound) coef[k++] = 0;
    if (k == r) break;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(0, p * p * p - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<mpz_class> alpha(ni, 0);
    for (long k = 0; k < r; ++k) {
      long c = dist(rng);
      for (long i = 0; i < ni; ++i) alpha[i] += c * j_i.basis.at(i, k);
    }
    if (generates(alpha, t_i, j_i)) {
      res.status = SearchStatus::found;
      res.generator = std::move(alpha);
      return res;
    }
  }
  res.status = SearchStatus::not_found_at_bound;
  return res;
}

namespace {

struct SimulCtx {
  const Subalgebra& t;
  const FiniteIndexIdeal& j;
  std::vector<LatticeBasis> t_blocks;
  std::vector<LatticeBasis> j_blocks;
  std::vector<std::vector<mpz_class>> block_gens;
  long p;

  std::vector<long> rows_of(const std::vector<long>& blocks) const {
    std::vector<long> rows;
    for (long b : blocks) {
      auto br = t.ambient.block_rows(b);
      rows.insert(rows.end(), br.begin(), br.end());
    }
    return rows;
  }

  // position of block b's rows inside the subset row list
  std::vector<long> block_rows_in_subset(const std::vector<long>& blocks, long b) const {
    std::vector<long> out;
    long off = 0;
    for (long x : blocks) {
      long sz = t.ambient.block_sizes[x];
      if (x == b)
        for (long k = 0; k < sz; ++k) out.push_back(off + k);
      off += sz;
    }
    return out;
  }

  bool block_good(const std::vector<mpz_class>& v, const std::vector<long>& blocks,
                  long b) const {
    auto rows = block_rows_in_subset(blocks, b);
    std::vector<mpz_class> proj(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) proj[k] = v[rows[k]];
    return generates(proj, t_blocks[b], j_blocks[b]);
  }

  bool all_good(const std::vector<mpz_class>& v, const std::vector<long>& blocks) const {
    for (long b : blocks)
      if (!block_good(v, blocks, b)) return false;
    return true;
  }

  // lift x from the projection of `lat` to subset_small into the projection
  // to subset_big (typically the full ambient)
  std::vector<mpz_class> lift(const LatticeBasis& full_lat,
                              const std::vector<long>& small_rows,
                              const std::vector<long>& big_rows,
                              const std::vector<mpz_class>& x) const {
    IntMatrix small = full_lat.basis.submatrix_rows(small_rows);
    auto coords = solve_in_columns(small, x);
    if (!coords) fail(errc::internal_invariant, "projection lift failed");
    IntMatrix big = full_lat.basis.submatrix_rows(big_rows);
    return big.mul_vec(*coords);
  }

  std::vector<mpz_class> solve(const std::vector<long>& blocks) const {
    auto rows = rows_of(blocks);
    if (blocks.size() == 1) {
      // J projected to a single block is J_i; its generator is the answer
      return block_gens[blocks[0]];
    }
    std::vector<long> s1(blocks.begin(), blocks.end() - 1);  // drop last
    std::vector<long> s2(blocks.begin() + 1, blocks.end());  // drop first
    long last = blocks.back();
    long first = blocks.front();

    auto x1 = solve(s1);
    auto y1 = lift(j.lattice, rows_of(s1), rows, x1);
    if (all_good(y1, blocks)) return y1;
    auto x2 = solve(s2);
    auto y2 = lift(j.lattice, rows_of(s2), rows, x2);
    if (all_good(y2, blocks)) return y2;

    // a_cand = y1 - z*y2 with z in T chosen so the last block cancels
    auto make_cand = [&](const std::vector<mpz_class>& ya,
                         const std::vector<mpz_class>& yb,
                         long cancel_block) -> std::vector<mpz_class> {
      auto brows = block_rows_in_subset(blocks, cancel_block);
      long sz = long(brows.size());
      std::vector<mpz_class> xv(sz), beta(sz);
      for (long k = 0; k < sz; ++k) {
        xv[k] = ya[brows[k]];
        beta[k] = yb[brows[k]];
      }
      // solve beta * t = xv with t in T_block
      const LatticeBasis& tb = t_blocks[cancel_block];
      IntMatrix cols(sz, tb.basis.cols);
      for (long jcol = 0; jcol < tb.basis.cols; ++jcol) {
        auto prod = coordinatewise(beta, column_of(tb.basis, jcol));
        for (long i = 0; i < sz; ++i) cols.at(i, jcol) = prod[i];
      }
      auto tc = solve_in_columns(cols, xv);
      if (!tc) fail(errc::internal_invariant, "block division failed in Kr11 repair");
      std::vector<mpz_class> z_block = tb.basis.mul_vec(*tc);
      // lift z_block from block projection of T to the subset projection
      auto z = lift(t.lattice, t.ambient.block_rows(cancel_block), rows, z_block);
      return vec_sub(ya, coordinatewise(z, yb));
    };

    auto a_cand = make_cand(y1, y2, last);   // zero on `last`
    auto b_cand = make_cand(y2, y1, first);  // zero on `first`

    for (long b : blocks) {
      if (b != last && !block_good(a_cand, blocks, b))
        fail(errc::internal_invariant, "Kr11 repair element a fails off-block");
      if (b != first && !block_good(b_cand, blocks, b))
        fail(errc::internal_invariant, "Kr11 repair element b fails off-block");
    }

    for (long u = 1; u < p; ++u) {
      std::vector<mpz_class> cand(a_cand.size());
      for (size_t i = 0; i < cand.size(); ++i) cand[i] = b_cand[i] + u * a_cand[i];
      if (all_good(cand, blocks)) return cand;
    }
    fail(errc::internal_invariant,
         "Kr11 unit scan exhausted: no simultaneous generator found");
  }
};

}  // namespace

std::vector<mpz_class> find_simultaneous_generator(const Subalgebra& t,
                                                   const FiniteIndexIdeal& j,
                                                   uint64_t seed) {
  long s = t.ambient.blocks();
  long q = t.ambient.residue_field_order();
  if (q - 1 < s - 1)
    fail(errc::hypothesis_violated,
         "residue field too small: #F^x < s - 1");
  SimulCtx ctx{t, j, {}, {}, {}, t.ambient.p};
  for (long i = 0; i < s; ++i) {
    ctx.t_blocks.push_back(block_project(t.ambient, t.lattice, i));
    ctx.j_blocks.push_back(block_project(t.ambient, j.lattice, i));
    auto gs = find_block_generator(ctx.t_blocks[i], ctx.j_blocks[i], t.ambient.p,
                                   seed + uint64_t(i));
    if (gs.status != SearchStatus::found)
      fail(errc::hypothesis_violated,
           "block ideal J_i has no generator within the search bound");
    ctx.block_gens.push_back(gs.generator);
  }

  // randomized trials first: unit combinations of the J basis
  std::mt19937_64 rng(seed);
  long p = t.ambient.p;
  std::uniform_int_distribution<long> unit(1, p - 1);
  std::uniform_int_distribution<long> scale(0, p - 1);
  std::vector<long> all_blocks(s);
  for (long i = 0; i < s; ++i) all_blocks[i] = i;
  long n = t.ambient.total_rank();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<mpz_class> alpha(n, 0);
    for (long k = 0; k < j.lattice.basis.cols; ++k) {
      long c = unit(rng) + p * scale(rng);
      for (long i = 0; i < n; ++i) alpha[i] += c * j.lattice.basis.at(i, k);
    }
    if (ctx.all_good(alpha, all_blocks)) return alpha;
  }
  // deterministic inductive repair from the proof
  return ctx.solve(all_blocks);
}

CongruenceReport verify_kr12(const Subalgebra& t, const FiniteIndexIdeal& j,
                             const std::optional<std::vector<mpz_class>>& generator,
                             uint64_t seed) {
  CongruenceReport rep;
  rep.precision = t.ambient.prec;
  long p = t.ambient.p;
  long s = t.ambient.blocks();
  rep.order_raw = quotient_order(t, j);
  rep.order = rep.order_raw;

  long block_sum = 0;
  bool all_blocks_principal = true;
  for (long i = 0; i < s; ++i) {
    LatticeBasis ti = block_project(t.ambient, t.lattice, i);
    LatticeBasis ji = block_project(t.ambient, j.lattice, i);
    long bi = lattice_index(ti, ji, p);
    rep.block_orders.push_back(bi);
    block_sum += bi;
    if (t.ambient.block_sizes[i] > 1) {
      auto gs = find_block_generator(ti, ji, p, seed + 1000 + uint64_t(i));
      if (gs.status != SearchStatus::found) all_blocks_principal = false;
    }
  }
  rep.total = block_sum;
  rep.hypothesis_ok =
      all_blocks_principal && (t.ambient.residue_field_order() - 1 >= s - 1);

  // principality of J itself
  std::vector<mpz_class> alpha;
  if (generator) {
    alpha = *generator;
    if (!(multiple_lattice(alpha, t.lattice) == j.lattice))
      fail(errc::internal_invariant, "supplied generator does not generate J");
    rep.principal = PrincipalStatus::yes;
  } else {
    // bounded randomized search for a single generator of J
    std::mt19937_64 rng(seed + 7);
    std::uniform_int_distribution<long> dist(0, p * p - 1);
    long n = t.ambient.total_rank();
    for (int trial = 0; trial < 400 && rep.principal != PrincipalStatus::yes; ++trial) {
      std::vector<mpz_class> cand(n, 0);
      for (long k = 0; k < j.lattice.basis.cols; ++k) {
        long c = dist(rng);
        for (long i = 0; i < n; ++i) cand[i] += c * j.lattice.basis.at(i, k);
      }
      if (multiple_lattice(cand, t.lattice) == j.lattice) {
        alpha = cand;
        rep.principal = PrincipalStatus::yes;
      }
    }
    if (rep.principal != PrincipalStatus::yes)
      rep.principal = PrincipalStatus::not_found_at_bound;
  }

  if (rep.principal == PrincipalStatus::yes) {
    // #T/alpha T = prod #T_i/alpha_i T_i (diagonal-multiplier determinant)
    LatticeBasis alpha_t = multiple_lattice(alpha, t.lattice);
    long idx = lattice_index(t.lattice, alpha_t, p);
    if (idx != block_sum)
      fail(errc::internal_invariant,
           "product identity violated: block sum != v_p(#T/alpha T)");
    if (idx != rep.order_raw)
      fail(errc::internal_invariant,
           "principal ideal equality violated: v_p(#T/J) != v_p(#T/alpha T)");
  }

  if (rep.hypothesis_ok && block_sum < rep.order_raw)
    fail(errc::internal_invariant,
         "inequality violated: block order sum below v_p(#T/J)");

  rep.verdict = (block_sum == rep.order_raw) ? Verdict::equality
                                             : Verdict::strict_inequality;
  return rep;
}

RandomInstance random_instance(const RandomInstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  long p = spec.p;
  std::uniform_int_distribution<long> block_size(1, spec.max_block);
  std::uniform_int_distribution<long> exp_dist(1, 2);
  std::uniform_int_distribution<long> coin(0, 1);

  BlockedAmbient amb;
  amb.p = p;
  amb.prec = spec.prec;
  for (long i = 0; i < spec.s; ++i) amb.block_sizes.push_back(block_size(rng));
  long n = amb.total_rank();

  // congruence-linked subalgebra: a random spanning tree of coordinate
  // congruences x_a = x_b mod p^r
  std::vector<std::array<long, 3>> edges;  // (a, b, r)
  long max_r = 1;
  for (long v = 1; v < n; ++v) {
    std::uniform_int_distribution<long> prev(0, v - 1);
    long a = prev(rng);
    long r = exp_dist(rng);
    edges.push_back({a, v, r});
    max_r = std::max(max_r, r);
  }
  mpz_class p_max_r;
  mpz_ui_pow_ui(p_max_r.get_mpz_t(), (unsigned long)p, (unsigned long)max_r);
  IntMatrix cond(n == 1 ? 1 : long(edges.size()), n);
  if (n == 1) {
    // no conditions: T = O
  } else {
    for (size_t e = 0; e < edges.size(); ++e) {
      auto [a, b, r] = edges[e];
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), (unsigned long)p, (unsigned long)(max_r - r));
      cond.at(long(e), a) = scale;
      cond.at(long(e), b) = -scale;
    }
  }
  IntMatrix t_cols = (n == 1) ? IntMatrix::identity(1) : kernel_mod(cond, p_max_r);
  Subalgebra t = make_subalgebra(amb, t_cols);

  RandomInstance inst{t, {}, false, {}};

  // alpha in T with every coordinate nonzero (bounded retries)
  std::uniform_int_distribution<long> coef(1, p * p);
  auto sample_elt = [&]() {
    for (int tries = 0; tries < 64; ++tries) {
      std::vector<mpz_class> a(n, 0);
      for (long k = 0; k < t.lattice.basis.cols; ++k) {
        long c = coef(rng);
        for (long i = 0; i < n; ++i) a[i] += c * t.lattice.basis.at(i, k);
      }
      bool ok = true;
      for (const auto& x : a)
        if (x == 0) ok = false;
      if (ok) return a;
    }
    fail(errc::internal_invariant, "failed to sample a nonzero-coordinate element");
  };

  std::vector<mpz_class> alpha = sample_elt();
  inst.principal_by_construction = coin(rng) == 0;
  LatticeBasis jl = multiple_lattice(alpha, t.lattice);
  if (!inst.principal_by_construction) {
    std::vector<mpz_class> beta = sample_elt();
    jl = lattice_sum(jl, multiple_lattice(beta, t.lattice));
  } else {
    inst.alpha = alpha;
  }
  inst.j = make_ideal(t, jl.basis);
  return inst;
}

Subalgebra strict_fixture_algebra(long p, int prec) {
  BlockedAmbient amb;
  amb.p = p;
  amb.prec = prec;
  amb.block_sizes = {1, 1};
  IntMatrix cols(2, 2, {1, 0, 1, p});
  return make_subalgebra(amb, cols);
}

FiniteIndexIdeal strict_fixture_ideal(const Subalgebra& t) {
  long p = t.ambient.p;
  IntMatrix cols(2, 2, {p, 0, 0, p});
  return make_ideal(t, cols);
}

IntMatrix strict_fixture_non_ideal_columns(const Subalgebra& t) {
  long p = t.ambient.p;
  IntMatrix cols(2, 2);
  cols.at(0, 0) = 1;
  cols.at(1, 0) = 1;
  cols.at(0, 1) = 0;
  cols.at(1, 1) = mpz_class(p) * p;
  return cols;
}

}  // namespace conglab
