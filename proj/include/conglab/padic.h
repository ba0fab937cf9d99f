#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conglab {

// Working ring Z/p^K viewed as O = Z_p known to K p-adic digits.
struct PadicRing {
  long p = 0;
  int prec = 0;       // K
  mpz_class pk;       // p^K

  PadicRing() = default;
  PadicRing(long p_, int prec_);
  bool operator==(const PadicRing&) const = default;
};

// Element of O at finite precision: residue in [0, p^K).
// An element with residue 0 is "zero at precision K", never exactly zero.
struct PadicElement {
  mpz_class residue;
  long prime = 0;
  int prec = 0;

  PadicElement() = default;
  PadicElement(const mpz_class& r, const PadicRing& ring);
  PadicElement(long r, const PadicRing& ring) : PadicElement(mpz_class(r), ring) {}

  PadicRing ring() const { return PadicRing(prime, prec); }
  bool is_zero() const { return residue == 0; }
};

// nullopt encodes the ">= K" flag (zero at this precision).
std::optional<long> valuation(const PadicElement& x);
// p-valuation of a nonzero exact integer.
long valuation_z(const mpz_class& x, long p);

PadicElement padd(const PadicElement& a, const PadicElement& b);
PadicElement psub(const PadicElement& a, const PadicElement& b);
PadicElement pmul(const PadicElement& a, const PadicElement& b);
PadicElement pneg(const PadicElement& a);
// inverse of a unit (valuation 0); errors otherwise
PadicElement punit_inv(const PadicElement& a);

// Dense polynomial over O at precision (p, K); coefficients low-to-high,
// reduced into [0, p^K), trailing zeros trimmed.
struct PadicPoly {
  PadicRing ring;
  std::vector<mpz_class> c;

  PadicPoly() = default;
  explicit PadicPoly(const PadicRing& r) : ring(r) {}
  PadicPoly(const PadicRing& r, std::vector<mpz_class> coeffs);
  PadicPoly(const PadicRing& r, std::initializer_list<long> coeffs);

  // -1 when all coefficients vanish at this precision
  long degree() const { return long(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const;
  PadicElement coeff(long i) const;
  mpz_class eval(const mpz_class& x) const;
  std::string to_string() const;
};

PadicPoly poly_add(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_sub(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_mul(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_scale(const PadicPoly& a, const mpz_class& s);
// division by a monic divisor; returns (quotient, remainder)
std::pair<PadicPoly, PadicPoly> poly_divrem_monic(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_derivative(const PadicPoly& a);
// f(x + a)
PadicPoly poly_shift(const PadicPoly& f, const mpz_class& a);
// f(p^v x) / p^(v deg f); requires the scaling to stay integral
PadicPoly poly_scale_root(const PadicPoly& f, long v);
PadicPoly poly_reduce_prec(const PadicPoly& f, int new_prec);

// Lower convex hull of {(i, v_p(c_i))}; slopes listed as root valuations,
// non-decreasing.
struct NewtonPolygon {
  std::vector<std::pair<long, long>> vertices;          // (index, valuation)
  std::vector<std::pair<mpq_class, long>> slopes;       // (root valuation, multiplicity)
};

NewtonPolygon newton_polygon(const PadicPoly& f);

// Lift f = f1bar * f2bar (mod p) to f = f1 * f2 (mod p^K); all monic,
// f1bar and f2bar coprime mod p.
std::pair<PadicPoly, PadicPoly> hensel_lift(const PadicPoly& f,
                                            const PadicPoly& f1_bar,
                                            const PadicPoly& f2_bar);

// Resultant Res_x(f, g) as a residue mod p^K (well-defined there).
mpz_class resultant_mod(const PadicPoly& f, const PadicPoly& g);

// v_p(Res(g, h)) for g monic irreducible, deg h < deg g, h nonzero at
// this precision. Dividing by the residue degree of g gives the
// uniformizer-valuation of h(theta); dividing by deg g the normalized
// p-valuation.
long norm_valuation(const PadicPoly& g, const PadicPoly& h);

// Element of O_K = Z_p[x]/(g) at finite precision.
struct ExtElement {
  PadicPoly modulus;
  PadicPoly value;  // degree < deg modulus

  ExtElement() = default;
  ExtElement(PadicPoly g, PadicPoly v);
};

ExtElement ext_add(const ExtElement& a, const ExtElement& b);
ExtElement ext_sub(const ExtElement& a, const ExtElement& b);
ExtElement ext_mul(const ExtElement& a, const ExtElement& b);

// ---- F_p[x] utilities (coefficients in [0, p), low-to-high) ----
namespace fp {

using Poly = std::vector<long>;

Poly trim(Poly a);
Poly from_padic(const PadicPoly& f);
Poly mul(const Poly& a, const Poly& b, long p);
Poly add(const Poly& a, const Poly& b, long p);
Poly sub(const Poly& a, const Poly& b, long p);
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b, long p);
Poly gcd(Poly a, Poly b, long p);
// g = gcd(a,b) = s a + t b
Poly xgcd(const Poly& a, const Poly& b, long p, Poly& s, Poly& t);
Poly powmod(const Poly& base, const mpz_class& e, const Poly& mod, long p);
bool irreducible(const Poly& f, long p);
long eval(const Poly& f, long x, long p);
// multiplicity of (x - r) in f, and the cofactor after removing it
long root_multiplicity(const Poly& f, long r, long p, Poly& cofactor);

}  // namespace fp

}  // namespace conglab
