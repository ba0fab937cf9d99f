#pragma once

#include <string>
#include <vector>

#include "conglab/padic.h"

namespace conglab {

// How a factor's irreducibility over Q_p was certified.
enum class FactorCert {
  linear,             // degree 1
  unramified_residue, // reduction mod p irreducible
  eisenstein_shift,   // after a shift, single Newton slope with denominator = degree
  maximal_order,      // split off a p-maximal order; component has one residue field
};

std::string cert_name(FactorCert c);

struct QpFactor {
  PadicPoly poly;       // monic, irreducible at the certified precision
  long ram_index = 1;   // e
  long res_degree = 1;  // f  (e * f = deg)
  FactorCert cert = FactorCert::linear;
};

struct QpFactorization {
  std::vector<QpFactor> factors;
  // product of the factors agrees with the input mod p^certified_prec
  int certified_prec = 0;
};

// Factor a monic squarefree polynomial into irreducibles over Q_p.
// Throws not_squarefree if gcd(f, f') is nontrivial at this precision,
// precision_exhausted if the working precision cannot certify the split.
QpFactorization factor_over_qp(const PadicPoly& f);

}  // namespace conglab
