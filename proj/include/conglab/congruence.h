#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conglab/lattice.h"
#include "conglab/report.h"

namespace conglab {

// Blocked ambient A = prod O^{n_i} = O^n with coordinatewise product,
// O = Z_p at precision K, residue field F_p.
struct BlockedAmbient {
  long p = 0;
  int prec = 0;
  std::vector<long> block_sizes;

  long total_rank() const;
  long blocks() const { return long(block_sizes.size()); }
  long residue_field_order() const { return p; }  // q = #F
  std::vector<long> block_rows(long i) const;     // ambient rows of block i
};

// Local O-subalgebra of full rank containing (1,...,1).
struct Subalgebra {
  BlockedAmbient ambient;
  LatticeBasis lattice;
  std::vector<mpz_class> one;
};

struct FiniteIndexIdeal {
  LatticeBasis lattice;
};

// Constructors enforce the type invariants (full rank, contains 1,
// multiplicative closure, locality; resp. T*J <= J and finite index).
Subalgebra make_subalgebra(const BlockedAmbient& amb, const IntMatrix& columns);
FiniteIndexIdeal make_ideal(const Subalgebra& t, const IntMatrix& columns);

LatticeBasis block_project(const BlockedAmbient& amb, const LatticeBasis& l, long i);

// v_p(#T/J), certified below p^K.
long quotient_order(const Subalgebra& t, const FiniteIndexIdeal& j);

enum class SearchStatus { found, not_found_at_bound };
struct GeneratorSearch {
  SearchStatus status = SearchStatus::not_found_at_bound;
  std::vector<mpz_class> generator;  // coordinates in the block ambient
};

// Generator of J_i as an ideal of T_i, exact for rank-1 blocks, bounded
// search plus randomized trials otherwise.
GeneratorSearch find_block_generator(const LatticeBasis& t_i, const LatticeBasis& j_i,
                                     long p, uint64_t seed);

// Element alpha in J whose every block projection generates J_i.
// Requires q - 1 >= s - 1 and principal blocks (hypothesis_violated
// otherwise). Randomized trials first, then the inductive repair.
std::vector<mpz_class> find_simultaneous_generator(const Subalgebra& t,
                                                   const FiniteIndexIdeal& j,
                                                   uint64_t seed);

// Orders, block orders, principality and the Kr12 verdict.
CongruenceReport verify_kr12(const Subalgebra& t, const FiniteIndexIdeal& j,
                             const std::optional<std::vector<mpz_class>>& generator,
                             uint64_t seed);

struct RandomInstanceSpec {
  long s = 2;          // number of blocks
  long max_block = 3;  // block sizes drawn from [1, max_block]
  long p = 5;
  int prec = 32;
  uint64_t seed = 1;
};

struct RandomInstance {
  Subalgebra t;
  FiniteIndexIdeal j;
  bool principal_by_construction = false;
  std::vector<mpz_class> alpha;  // generator when principal_by_construction
};

RandomInstance random_instance(const RandomInstanceSpec& spec);

// Fixtures from the strictness counterexample: T = {(a,b): a = b mod p},
// J = pO x pO (a proper ideal, block sum 2 > order 1), and the
// non-ideal submodule J' = {(a,b): a = b mod p^2} the checker must reject.
Subalgebra strict_fixture_algebra(long p, int prec);
FiniteIndexIdeal strict_fixture_ideal(const Subalgebra& t);
IntMatrix strict_fixture_non_ideal_columns(const Subalgebra& t);

}  // namespace conglab
