#pragma once

#include <stdexcept>
#include <string>

namespace conglab {

// Stable error taxonomy shared by the library and the CLI exit-code
// contract: user/hypothesis errors exit 2, precision exhaustion exits 3,
// internal invariant violations exit 1.
enum class errc {
  // precision
  precision_exhausted,
  indeterminate_precision,
  // dvr / polynomial
  not_coprime,
  not_squarefree,
  no_primitive_element,
  // lattice
  not_sublattice,
  rank_deficient,
  infinite_module,
  // congruence algebra
  not_ideal,
  not_local,
  not_subalgebra,
  hypothesis_violated,
  infinite_quotient,
  // analyzer / invariants (bug-level)
  mazur_mismatch,
  internal_invariant,
  // user input
  composite_level,
  bad_prime,
  schema_violation,
};

class error : public std::runtime_error {
public:
  error(errc kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

  // 1 = internal invariant violation (bug), 2 = user/hypothesis, 3 = precision.
  int exit_code() const {
    switch (kind_) {
      case errc::precision_exhausted:
        return 3;
      case errc::mazur_mismatch:
      case errc::internal_invariant:
        return 1;
      default:
        return 2;
    }
  }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) {
  throw error(kind, what);
}

}  // namespace conglab
