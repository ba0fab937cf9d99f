#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace conglab {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "conglab 0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Verdict { equality, strict_inequality };
enum class PrincipalStatus { yes, not_found_at_bound, unknown };

std::string verdict_name(Verdict v);
std::string principal_name(PrincipalStatus s);

// Two sides of the congruence comparison: per-block orders of T_i/J_i
// against the order of T/J, plus normalized depths when eigensystems are
// in play. `total` and `order` are exact rationals in the same
// normalization, so the verdict is an exact comparison.
struct CongruenceReport {
  mpq_class order;                 // normalized v_p(#T/J)
  long order_raw = 0;              // v_p(#T/J) over the presented O
  std::vector<long> block_orders;  // v_p(#T_i/J_i)
  std::vector<mpq_class> depths;   // m_lambda / e (empty for synthetic runs)
  mpq_class total;                 // sum of the block side, normalized
  PrincipalStatus principal = PrincipalStatus::unknown;
  Verdict verdict = Verdict::equality;
  int precision = 0;
  bool hypothesis_ok = true;  // residue-field bound and block principality
  std::vector<std::string> notes;
};

struct OrbitSummary {
  long degree = 0;
  long ram_index = 1;
  long res_degree = 1;
  mpq_class depth;  // normalized orbit depth
  std::string certificate;
};

struct MazurRow {
  long level = 0;  // N
  long prime = 0;  // p
  long numerator_valuation = 0;
  long component_rank = 0;
  long order_t_mod_j = 0;
  mpq_class total_depth;
  std::vector<OrbitSummary> orbits;
  Verdict verdict = Verdict::equality;
  int precision = 0;
  std::string error;  // nonempty when this row failed
};

std::string mpq_str(const mpq_class& q);
ordered_json to_json(const CongruenceReport& r);
ordered_json to_json(const OrbitSummary& o);
ordered_json to_json(const MazurRow& row);

// Aligned text table for sweep rows (stable format for diffing).
std::string mazur_table(const std::vector<MazurRow>& rows);

// Envelope written by every CLI command. Timings are only attached when
// requested so that reports stay byte-identical for identical
// (inputs, seed, version).
struct ReportEnvelope {
  std::string command;
  ordered_json inputs;
  int precision = 0;
  ordered_json results;
  long cache_hits = 0;
  long cache_misses = 0;
  std::optional<double> elapsed_seconds;

  ordered_json to_json() const;
};

}  // namespace conglab
