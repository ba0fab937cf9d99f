#include "conglab/padic.h"

#include <algorithm>
#include <sstream>

#include "conglab/errors.h"
#include "conglab/intmat.h"

namespace conglab {

PadicRing::PadicRing(long p_, int prec_) : p(p_), prec(prec_) {
  if (p < 2) fail(errc::bad_prime, "prime must be >= 2");
  if (prec < 1) fail(errc::precision_exhausted, "precision must be >= 1");
  mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)prec);
}

PadicElement::PadicElement(const mpz_class& r, const PadicRing& ring)
    : prime(ring.p), prec(ring.prec) {
  mpz_mod(residue.get_mpz_t(), r.get_mpz_t(), ring.pk.get_mpz_t());
}

long valuation_z(const mpz_class& x, long p) {
  if (x == 0) fail(errc::internal_invariant, "valuation_z of exact zero");
  mpz_class q;
  mpz_class pp(p);
  return long(mpz_remove(q.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

std::optional<long> valuation(const PadicElement& x) {
  if (x.residue == 0) return std::nullopt;  // ">= K"
  return valuation_z(x.residue, x.prime);
}

namespace {
PadicRing ring_of(const PadicElement& a) { return PadicRing(a.prime, a.prec); }

void check_same_ring(const PadicElement& a, const PadicElement& b) {
  if (a.prime != b.prime || a.prec != b.prec)
    fail(errc::internal_invariant, "mixed p-adic rings");
}
}  // namespace

PadicElement padd(const PadicElement& a, const PadicElement& b) {
  check_same_ring(a, b);
  return PadicElement(a.residue + b.residue, ring_of(a));
}
PadicElement psub(const PadicElement& a, const PadicElement& b) {
  check_same_ring(a, b);
  return PadicElement(a.residue - b.residue, ring_of(a));
}
PadicElement pmul(const PadicElement& a, const PadicElement& b) {
  check_same_ring(a, b);
  return PadicElement(a.residue * b.residue, ring_of(a));
}
PadicElement pneg(const PadicElement& a) {
  return PadicElement(-a.residue, ring_of(a));
}
PadicElement punit_inv(const PadicElement& a) {
  PadicRing r = ring_of(a);
  if (a.residue % a.prime == 0)
    fail(errc::internal_invariant, "inverse of non-unit");
  mpz_class inv;
  if (!mpz_invert(inv.get_mpz_t(), a.residue.get_mpz_t(), r.pk.get_mpz_t()))
    fail(errc::internal_invariant, "inverse failed");
  return PadicElement(inv, r);
}

PadicPoly::PadicPoly(const PadicRing& r, std::vector<mpz_class> coeffs) : ring(r) {
  c = std::move(coeffs);
  for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), ring.pk.get_mpz_t());
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PadicPoly::PadicPoly(const PadicRing& r, std::initializer_list<long> coeffs) : ring(r) {
  for (long v : coeffs) c.emplace_back(v);
  for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), ring.pk.get_mpz_t());
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool PadicPoly::is_monic() const { return !c.empty() && c.back() == 1; }

PadicElement PadicPoly::coeff(long i) const {
  PadicElement e;
  e.prime = ring.p;
  e.prec = ring.prec;
  if (i >= 0 && i < long(c.size())) e.residue = c[i];
  return e;
}

mpz_class PadicPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (long i = long(c.size()) - 1; i >= 0; --i) {
    acc = acc * x + c[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), ring.pk.get_mpz_t());
  }
  return acc;
}

std::string PadicPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = long(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c[i] != 1) os << c[i].get_str();
    if (i > 0) {
      if (c[i] != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {
void check_same_ring(const PadicPoly& a, const PadicPoly& b) {
  if (!(a.ring == b.ring)) fail(errc::internal_invariant, "mixed p-adic rings");
}
}  // namespace

PadicPoly poly_add(const PadicPoly& a, const PadicPoly& b) {
  check_same_ring(a, b);
  std::vector<mpz_class> c(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.c.size()) c[i] += a.c[i];
    if (i < b.c.size()) c[i] += b.c[i];
  }
  return PadicPoly(a.ring, std::move(c));
}

PadicPoly poly_sub(const PadicPoly& a, const PadicPoly& b) {
  check_same_ring(a, b);
  std::vector<mpz_class> c(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.c.size()) c[i] += a.c[i];
    if (i < b.c.size()) c[i] -= b.c[i];
  }
  return PadicPoly(a.ring, std::move(c));
}

PadicPoly poly_mul(const PadicPoly& a, const PadicPoly& b) {
  check_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return PadicPoly(a.ring);
  std::vector<mpz_class> c(a.c.size() + b.c.size() - 1);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return PadicPoly(a.ring, std::move(c));
}

PadicPoly poly_scale(const PadicPoly& a, const mpz_class& s) {
  std::vector<mpz_class> c = a.c;
  for (auto& x : c) x *= s;
  return PadicPoly(a.ring, std::move(c));
}

std::pair<PadicPoly, PadicPoly> poly_divrem_monic(const PadicPoly& a, const PadicPoly& b) {
  check_same_ring(a, b);
  if (!b.is_monic()) fail(errc::internal_invariant, "divisor must be monic");
  std::vector<mpz_class> rem = a.c;
  long db = b.degree();
  if (long(rem.size()) - 1 < db) return {PadicPoly(a.ring), a};
  std::vector<mpz_class> quot(rem.size() - db, 0);
  for (long i = long(rem.size()) - 1; i >= db; --i) {
    mpz_class q = rem[i];
    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), a.ring.pk.get_mpz_t());
    if (q == 0) continue;
    quot[i - db] = q;
    for (long j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c[j];
  }
  return {PadicPoly(a.ring, std::move(quot)), PadicPoly(a.ring, std::move(rem))};
}

PadicPoly poly_derivative(const PadicPoly& a) {
  if (a.c.size() <= 1) return PadicPoly(a.ring);
  std::vector<mpz_class> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = mpz_class(long(i)) * a.c[i];
  return PadicPoly(a.ring, std::move(c));
}

PadicPoly poly_shift(const PadicPoly& f, const mpz_class& a) {
  // Taylor shift by repeated synthetic division by (x - a):
  // f(x) = sum_k work[k] (x - a)^k after the passes, so f(x + a) has
  // coefficients work[k].
  std::vector<mpz_class> work = f.c;
  long n = long(work.size());
  for (long k = 0; k < n; ++k) {
    for (long i = n - 2; i >= k; --i) {
      work[i] += a * work[i + 1];
      mpz_mod(work[i].get_mpz_t(), work[i].get_mpz_t(), f.ring.pk.get_mpz_t());
    }
  }
  return PadicPoly(f.ring, std::move(work));
}

PadicPoly poly_scale_root(const PadicPoly& f, long v) {
  if (f.is_zero()) return f;
  long n = f.degree();
  mpz_class p(f.ring.p);
  std::vector<mpz_class> c(f.c);
  int loss = 0;
  for (long i = 0; i <= n; ++i) {
    long shift = v * (n - i);
    if (shift == 0) continue;
    mpz_class ppow;
    mpz_ui_pow_ui(ppow.get_mpz_t(), (unsigned long)f.ring.p, (unsigned long)shift);
    if (c[i] % ppow != 0)
      fail(errc::internal_invariant, "poly_scale_root: non-integral scaling");
    c[i] /= ppow;
    loss = std::max<long>(loss, shift);
  }
  int new_prec = f.ring.prec - int(std::min<long>(loss, f.ring.prec - 1));
  return PadicPoly(PadicRing(f.ring.p, new_prec), std::move(c));
}

PadicPoly poly_reduce_prec(const PadicPoly& f, int new_prec) {
  return PadicPoly(PadicRing(f.ring.p, new_prec), f.c);
}

NewtonPolygon newton_polygon(const PadicPoly& f) {
  long n = f.degree();
  if (n < 1) fail(errc::indeterminate_precision, "polygon needs degree >= 1");
  if (f.c[0] == 0 || f.c[n] == 0)
    fail(errc::indeterminate_precision,
         "constant or leading coefficient is zero at this precision");
  std::vector<std::pair<long, long>> pts;
  for (long i = 0; i <= n; ++i) {
    if (f.c[i] == 0) continue;  // valuation >= K: lies above any certified hull
    pts.emplace_back(i, valuation_z(f.c[i], f.ring.p));
  }
  // lower convex hull, left to right (Andrew monotone chain, lower part)
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // keep b only if it is strictly below segment a->pt
      // cross product (b-a) x (pt-a) <= 0 means b is on/above the segment
      long long cross = (long long)(b.first - a.first) * (pt.second - a.second) -
                        (long long)(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  NewtonPolygon np;
  np.vertices = hull;
  // slopes read from the degree side: root valuations, non-decreasing
  for (long k = long(hull.size()) - 1; k >= 1; --k) {
    auto& a = hull[k - 1];
    auto& b = hull[k];
    mpq_class s(a.second - b.second, b.first - a.first);
    s.canonicalize();
    np.slopes.emplace_back(s, b.first - a.first);
  }
  return np;
}

// ---- F_p[x] utilities ----
namespace fp {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly from_padic(const PadicPoly& f) {
  Poly r(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) {
    mpz_class m = f.c[i] % f.ring.p;
    r[i] = m.get_si();
  }
  return trim(std::move(r));
}

Poly add(const Poly& a, const Poly& b, long p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    long v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    c[i] = v % p;
  }
  return trim(std::move(c));
}

Poly sub(const Poly& a, const Poly& b, long p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    long v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    c[i] = ((v % p) + p) % p;
  }
  return trim(std::move(c));
}

Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return trim(std::move(c));
}

namespace {
long inv_mod(long a, long p) {
  long t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
  while (newr != 0) {
    long q = r / newr;
    long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail(errc::internal_invariant, "inv_mod of non-unit");
  return ((t % p) + p) % p;
}
}  // namespace

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b, long p) {
  Poly bb = trim(b);
  if (bb.empty()) fail(errc::internal_invariant, "fp division by zero");
  Poly rem = trim(a);
  if (rem.size() < bb.size()) return {{}, rem};
  long lead_inv = inv_mod(bb.back(), p);
  Poly quot(rem.size() - bb.size() + 1, 0);
  for (long i = long(rem.size()) - 1; i >= long(bb.size()) - 1; --i) {
    if (long(rem.size()) <= i || rem[i] == 0) continue;
    long q = (rem[i] * lead_inv) % p;
    quot[i - (bb.size() - 1)] = q;
    for (size_t j = 0; j < bb.size(); ++j) {
      size_t k = i - (bb.size() - 1) + j;
      rem[k] = ((rem[k] - q * bb[j]) % p + p) % p;
    }
  }
  return {trim(std::move(quot)), trim(std::move(rem))};
}

Poly gcd(Poly a, Poly b, long p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = divrem(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {  // monic normalization
    long inv = inv_mod(a.back(), p);
    for (auto& x : a) x = (x * inv) % p;
  }
  return a;
}

Poly xgcd(const Poly& a, const Poly& b, long p, Poly& s, Poly& t) {
  Poly r0 = trim(a), r1 = trim(b);
  Poly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = divrem(r0, r1, p);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty()) {
    long inv = inv_mod(r0.back(), p);
    for (auto& x : r0) x = (x * inv) % p;
    for (auto& x : s0) x = (x * inv) % p;
    for (auto& x : t0) x = (x * inv) % p;
  }
  s = s0;
  t = t0;
  return r0;
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& mod, long p) {
  Poly result = {1};
  Poly b = divrem(base, mod, p).second;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (long i = long(bits) - 1; i >= 0; --i) {
    result = divrem(mul(result, result, p), mod, p).second;
    if (mpz_tstbit(e.get_mpz_t(), (mp_bitcnt_t)i))
      result = divrem(mul(result, b, p), mod, p).second;
  }
  return result;
}

bool irreducible(const Poly& f, long p) {
  Poly ff = trim(f);
  long n = long(ff.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly x = {0, 1};
  mpz_class pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), (unsigned long)p, (unsigned long)n);
  if (trim(sub(powmod(x, pn, ff, p), x, p)) != Poly{}) return false;
  // for each prime q | n, gcd(x^{p^{n/q}} - x, f) must be 1
  long m = n;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)(n / q));
    Poly g = gcd(sub(powmod(x, e, ff, p), x, p), ff, p);
    if (long(g.size()) - 1 != 0) return false;
  }
  if (m > 1) {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)(n / m));
    Poly g = gcd(sub(powmod(x, e, ff, p), x, p), ff, p);
    if (long(g.size()) - 1 != 0) return false;
  }
  return true;
}

long eval(const Poly& f, long x, long p) {
  long acc = 0;
  for (long i = long(f.size()) - 1; i >= 0; --i) acc = (acc * x + f[i]) % p;
  return ((acc % p) + p) % p;
}

long root_multiplicity(const Poly& f, long r, long p, Poly& cofactor) {
  Poly lin = {((-r % p) + p) % p, 1};
  cofactor = trim(f);
  long mult = 0;
  for (;;) {
    auto [q, rem] = divrem(cofactor, lin, p);
    if (!rem.empty()) break;
    cofactor = q;
    ++mult;
    if (cofactor.empty()) break;
  }
  return mult;
}

}  // namespace fp

// ---- Hensel lifting ----

namespace {

using ZPoly = std::vector<mpz_class>;

ZPoly ztrim(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zreduce(ZPoly a, const mpz_class& m) {
  for (auto& x : a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return ztrim(std::move(a));
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return zreduce(std::move(c), m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] += b[i];
  }
  return zreduce(std::move(c), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] -= b[i];
  }
  return zreduce(std::move(c), m);
}

// divrem by monic divisor, coefficients mod m
std::pair<ZPoly, ZPoly> zdivrem_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly rem = a;
  long db = long(b.size()) - 1;
  if (long(rem.size()) - 1 < db) return {{}, zreduce(std::move(rem), m)};
  ZPoly quot(rem.size() - db, 0);
  for (long i = long(rem.size()) - 1; i >= db; --i) {
    mpz_class q;
    mpz_mod(q.get_mpz_t(), rem[i].get_mpz_t(), m.get_mpz_t());
    if (q == 0) continue;
    quot[i - db] = q;
    for (long j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
  }
  return {ztrim(std::move(quot)), zreduce(std::move(rem), m)};
}

ZPoly zfrom_fp(const fp::Poly& a) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  return r;
}

}  // namespace

std::pair<PadicPoly, PadicPoly> hensel_lift(const PadicPoly& f,
                                            const PadicPoly& f1_bar,
                                            const PadicPoly& f2_bar) {
  long p = f.ring.p;
  if (!f.is_monic()) fail(errc::internal_invariant, "hensel_lift needs monic f");
  fp::Poly g0 = fp::from_padic(f1_bar);
  fp::Poly h0 = fp::from_padic(f2_bar);
  fp::Poly fbar = fp::from_padic(f);
  if (g0.empty() || h0.empty())
    fail(errc::not_coprime, "residue factor vanishes mod p");
  // normalize residue factors monic mod p
  auto monicize = [&](fp::Poly& a) {
    long inv = 1;
    long lead = a.back() % p;
    // inverse of lead
    long t = 0, newt = 1, r = p, newr = ((lead % p) + p) % p;
    while (newr != 0) {
      long q = r / newr;
      long tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    inv = ((t % p) + p) % p;
    for (auto& x : a) x = (x * inv) % p;
  };
  monicize(g0);
  monicize(h0);
  if (fp::trim(fp::sub(fp::mul(g0, h0, p), fbar, p)) != fp::Poly{})
    fail(errc::not_coprime, "f1_bar * f2_bar != f mod p");
  fp::Poly s0, t0;
  fp::Poly g = fp::xgcd(g0, h0, p, s0, t0);
  if (long(g.size()) - 1 != 0)
    fail(errc::not_coprime, "residue factors are not coprime mod p");
  // scale Bezout so that s0*g0 + t0*h0 = 1 exactly mod p (g is a nonzero constant)

  mpz_class m(p);
  const mpz_class target = f.ring.pk;
  ZPoly gg = zfrom_fp(g0), hh = zfrom_fp(h0);
  ZPoly ss = zfrom_fp(s0), tt = zfrom_fp(t0);
  ZPoly ff(f.c);

  while (m < target) {
    mpz_class m2 = m * m;
    if (m2 > target) m2 = target;
    // e = f - g*h mod m2
    ZPoly e = zsub(ff, zmul(gg, hh, m2), m2);
    // (q, r) = divrem(s*e, h); g' = g + t*e + q*g ; h' = h + r
    auto [q, r] = zdivrem_monic(zmul(ss, e, m2), hh, m2);
    ZPoly g2 = zadd(gg, zadd(zmul(tt, e, m2), zmul(q, gg, m2), m2), m2);
    ZPoly h2 = zadd(hh, r, m2);
    // Bezout update: b = s*g' + t*h' - 1 ; (c, d) = divrem(s*b, h') ;
    // s' = s - d ; t' = t - t*b - c*g'
    ZPoly b = zsub(zadd(zmul(ss, g2, m2), zmul(tt, h2, m2), m2), ZPoly{1}, m2);
    auto [cq, dq] = zdivrem_monic(zmul(ss, b, m2), h2, m2);
    ZPoly s2 = zsub(ss, dq, m2);
    ZPoly t2 = zsub(tt, zadd(zmul(tt, b, m2), zmul(cq, g2, m2), m2), m2);
    gg = std::move(g2);
    hh = std::move(h2);
    ss = std::move(s2);
    tt = std::move(t2);
    m = m2;
  }
  PadicPoly out1(f.ring, gg);
  PadicPoly out2(f.ring, hh);
  if (!out1.is_monic() || !out2.is_monic())
    fail(errc::internal_invariant, "hensel lift lost monicity");
  if (!poly_sub(f, poly_mul(out1, out2)).is_zero())
    fail(errc::internal_invariant, "hensel lift product check failed");
  return {out1, out2};
}

mpz_class resultant_mod(const PadicPoly& f, const PadicPoly& g) {
  check_same_ring(f, g);
  long df = f.degree(), dg = g.degree();
  if (df < 0 || dg < 0) return 0;
  if (df == 0) {
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), f.c[0].get_mpz_t(), (unsigned long)dg,
                f.ring.pk.get_mpz_t());
    return r;
  }
  if (dg == 0) {
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), g.c[0].get_mpz_t(), (unsigned long)df,
                f.ring.pk.get_mpz_t());
    return r;
  }
  long n = df + dg;
  IntMatrix syl(n, n);
  for (long i = 0; i < dg; ++i)
    for (long j = 0; j <= df; ++j) syl.at(i, i + j) = f.c[df - j];
  for (long i = 0; i < df; ++i)
    for (long j = 0; j <= dg; ++j) syl.at(dg + i, i + j) = g.c[dg - j];
  mpz_class d = det(syl);
  mpz_mod(d.get_mpz_t(), d.get_mpz_t(), f.ring.pk.get_mpz_t());
  return d;
}

long norm_valuation(const PadicPoly& g, const PadicPoly& h) {
  if (!g.is_monic()) fail(errc::internal_invariant, "norm_valuation: g must be monic");
  if (h.degree() >= g.degree())
    fail(errc::internal_invariant, "norm_valuation: deg h must be < deg g");
  if (h.is_zero())
    fail(errc::precision_exhausted, "norm_valuation: h vanishes at this precision");
  mpz_class r = resultant_mod(g, h);
  if (r == 0)
    fail(errc::precision_exhausted, "resultant vanishes at this precision");
  return valuation_z(r, g.ring.p);
}

ExtElement::ExtElement(PadicPoly g, PadicPoly v) : modulus(std::move(g)), value(std::move(v)) {
  if (!modulus.is_monic())
    fail(errc::internal_invariant, "extension modulus must be monic");
  value = poly_divrem_monic(value, modulus).second;
}

ExtElement ext_add(const ExtElement& a, const ExtElement& b) {
  return ExtElement(a.modulus, poly_add(a.value, b.value));
}
ExtElement ext_sub(const ExtElement& a, const ExtElement& b) {
  return ExtElement(a.modulus, poly_sub(a.value, b.value));
}
ExtElement ext_mul(const ExtElement& a, const ExtElement& b) {
  return ExtElement(a.modulus, poly_divrem_monic(poly_mul(a.value, b.value), a.modulus).second);
}

}  // namespace conglab
