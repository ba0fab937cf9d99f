#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace conglab {

// Dense matrix over Z with arbitrary-precision entries, row-major.
// All normal-form and solving routines are exact; no floating point.
struct IntMatrix {
  long rows = 0;
  long cols = 0;
  std::vector<mpz_class> a;

  IntMatrix() = default;
  IntMatrix(long r, long c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}
  IntMatrix(long r, long c, std::initializer_list<long> vals);

  mpz_class& at(long i, long j) { return a[size_t(i) * cols + j]; }
  const mpz_class& at(long i, long j) const { return a[size_t(i) * cols + j]; }

  static IntMatrix identity(long n);

  bool operator==(const IntMatrix& o) const = default;

  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix add(const IntMatrix& o) const;
  IntMatrix sub(const IntMatrix& o) const;
  IntMatrix hstack(const IntMatrix& o) const;
  IntMatrix scaled(const mpz_class& c) const;
  std::vector<mpz_class> mul_vec(const std::vector<mpz_class>& v) const;
  IntMatrix submatrix_cols(const std::vector<long>& keep) const;
  IntMatrix submatrix_rows(const std::vector<long>& keep) const;
  bool is_zero() const;
  std::string to_string() const;
};

// u * m * v = d with u, v unimodular, d diagonal, nonnegative,
// d_1 | d_2 | ... (trailing zeros last).
struct SmithResult {
  IntMatrix u, d, v;
  std::vector<mpz_class> divisors() const;  // min(rows,cols) diagonal entries
};

SmithResult smith_normal_form(const IntMatrix& m);

// Column-style Hermite form of the column lattice of m: canonical basis,
// zero columns dropped. Pivots positive, entries to the right of a pivot
// reduced into [0, pivot). Two matrices span the same column lattice iff
// their Hermite forms are identical.
IntMatrix hermite_column_form(const IntMatrix& m);

// Exact determinant (Bareiss, fraction-free). Square input required.
mpz_class det(const IntMatrix& m);

long rank(const IntMatrix& m);

// Coordinates of v in the column span of basis over Z, if any.
// basis need not be square but must have independent columns.
std::optional<std::vector<mpz_class>> solve_in_columns(
    const IntMatrix& basis, const std::vector<mpz_class>& v);

// Saturated basis of the integer kernel {x : m x = 0}, as columns.
IntMatrix kernel_basis(const IntMatrix& m);

// Basis (as columns) of {x : m x = 0 mod q}, q > 0. Contains q*I.
IntMatrix kernel_mod(const IntMatrix& m, const mpz_class& q);

// Saturation of the column lattice: (Q-span of columns) intersected with Z^n.
IntMatrix saturate_columns(const IntMatrix& m);

// Intersection of two column lattices in the same ambient Z^n.
IntMatrix intersect_columns(const IntMatrix& a, const IntMatrix& b);

// Characteristic polynomial of a square matrix, low-to-high degree
// coefficients, monic. Faddeev–LeVerrier; all divisions exact.
std::vector<mpz_class> char_poly(const IntMatrix& m);

mpz_class xgcd(const mpz_class& a, const mpz_class& b, mpz_class& s,
               mpz_class& t);

}  // namespace conglab
