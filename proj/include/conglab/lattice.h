#pragma once

#include <functional>
#include <vector>

#include "conglab/intmat.h"

namespace conglab {

// Sublattice of Z^ambient_rank given by a canonical (Hermite) column basis.
struct LatticeBasis {
  long ambient_rank = 0;
  IntMatrix basis;  // ambient_rank x rank, Hermite column form
  bool full_rank = false;

  long rank() const { return basis.cols; }
  static LatticeBasis from_columns(long ambient, const IntMatrix& cols);
  bool operator==(const LatticeBasis&) const = default;
};

bool lattice_contains(const LatticeBasis& l, const std::vector<mpz_class>& v);
bool is_sublattice(const LatticeBasis& inner, const LatticeBasis& outer);
LatticeBasis lattice_sum(const LatticeBasis& a, const LatticeBasis& b);
// keep only the listed ambient coordinates (block projection)
LatticeBasis lattice_project(const LatticeBasis& l, const std::vector<long>& rows);

// p-valuation of the index [l1 : l2]; l2 must be a full-rank sublattice of
// the full-rank l1 (same ambient).
long lattice_index(const LatticeBasis& l1, const LatticeBasis& l2, long p);

// Module Z^generators / (column span of relations).
struct FinPresModule {
  long generators = 0;
  IntMatrix relations;
};

// v_p(#M) via the Smith elementary divisors (Fitting ideal order).
long fitting_order(const FinPresModule& m, long p);

// Product on ambient coordinate vectors.
using Multiplier = std::function<std::vector<mpz_class>(
    const std::vector<mpz_class>&, const std::vector<mpz_class>&)>;

Multiplier coordinatewise_multiplier();
// ambient = r x r matrices flattened row-major
Multiplier matrix_multiplier(long r);
// ambient = consecutive blocks of size deg(g), each a Z_p[x]/(g) element in
// the power basis; entries reduced mod p^prec
Multiplier extension_block_multiplier(long p, int prec,
                                      const std::vector<mpz_class>& modulus);

// Smallest lattice containing `one` and closed under multiplication by each
// generator. Exact over Z; stabilization certified below p^prec for
// full-rank results (precision_exhausted otherwise).
LatticeBasis algebra_closure(const std::vector<mpz_class>& one,
                             const std::vector<std::vector<mpz_class>>& gens,
                             long p, int prec, const Multiplier& mul);

// Canonical representative of v modulo the full-rank column lattice of
// `basis` (zero iff v is in the lattice).
std::vector<mpz_class> reduce_mod_lattice(const std::vector<mpz_class>& v,
                                          const IntMatrix& basis);

}  // namespace conglab
