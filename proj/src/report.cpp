#include "conglab/report.h"

#include <iomanip>
#include <sstream>

namespace conglab {

std::string verdict_name(Verdict v) {
  return v == Verdict::equality ? "equality" : "strict-inequality";
}

std::string principal_name(PrincipalStatus s) {
  switch (s) {
    case PrincipalStatus::yes: return "yes";
    case PrincipalStatus::not_found_at_bound: return "not-found-at-bound";
    case PrincipalStatus::unknown: return "unknown";
  }
  return "?";
}

std::string mpq_str(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

ordered_json to_json(const CongruenceReport& r) {
  ordered_json j;
  j["order"] = mpq_str(r.order);
  j["order_raw"] = std::to_string(r.order_raw);
  ordered_json blocks = ordered_json::array();
  for (long b : r.block_orders) blocks.push_back(std::to_string(b));
  j["block_orders"] = blocks;
  ordered_json depths = ordered_json::array();
  for (const auto& d : r.depths) depths.push_back(mpq_str(d));
  j["depths"] = depths;
  j["total"] = mpq_str(r.total);
  j["principal"] = principal_name(r.principal);
  j["verdict"] = verdict_name(r.verdict);
  j["precision"] = r.precision;
  j["hypothesis_ok"] = r.hypothesis_ok;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

ordered_json to_json(const OrbitSummary& o) {
  ordered_json j;
  j["degree"] = o.degree;
  j["e"] = o.ram_index;
  j["f"] = o.res_degree;
  j["depth"] = mpq_str(o.depth);
  j["certificate"] = o.certificate;
  return j;
}

ordered_json to_json(const MazurRow& row) {
  ordered_json j;
  j["level"] = row.level;
  j["prime"] = row.prime;
  j["numerator_valuation"] = row.numerator_valuation;
  j["component_rank"] = row.component_rank;
  j["order"] = std::to_string(row.order_t_mod_j);
  j["total_depth"] = mpq_str(row.total_depth);
  ordered_json orbits = ordered_json::array();
  for (const auto& o : row.orbits) orbits.push_back(to_json(o));
  j["orbits"] = orbits;
  j["verdict"] = verdict_name(row.verdict);
  j["precision"] = row.precision;
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

std::string mazur_table(const std::vector<MazurRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "N" << std::setw(5) << "p" << std::setw(8)
     << "val(N)" << std::setw(6) << "rank" << std::setw(7) << "order"
     << std::setw(7) << "total" << std::setw(20) << "orbits (deg,e;depth)"
     << "verdict\n";
  for (const auto& r : rows) {
    std::ostringstream orb;
    for (size_t i = 0; i < r.orbits.size(); ++i) {
      if (i) orb << "+";
      orb << "(" << r.orbits[i].degree << "," << r.orbits[i].ram_index << ";"
          << mpq_str(r.orbits[i].depth) << ")";
    }
    os << std::left << std::setw(6) << r.level << std::setw(5) << r.prime
       << std::setw(8) << r.numerator_valuation << std::setw(6)
       << r.component_rank << std::setw(7) << r.order_t_mod_j << std::setw(7)
       << mpq_str(r.total_depth) << std::setw(20) << orb.str()
       << (r.error.empty() ? verdict_name(r.verdict) : ("error: " + r.error))
       << "\n";
  }
  return os.str();
}

ordered_json ReportEnvelope::to_json() const {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  j["precision"] = precision;
  j["results"] = results;
  j["cache"] = {{"hits", cache_hits}, {"misses", cache_misses}};
  if (elapsed_seconds) j["elapsed_seconds"] = *elapsed_seconds;
  return j;
}

}  // namespace conglab
