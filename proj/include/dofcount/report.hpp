#ifndef DOFCOUNT_REPORT_HPP
#define DOFCOUNT_REPORT_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dofcount/tomography.hpp"

namespace dofcount {

inline constexpr const char* report_csv_header = "kind,N,V_or_M,K_rank,K_naive,K_paper,ensemble,saturated,seed";

inline std::string to_csv_row(const KReport& r) {
  std::ostringstream os;
  os << to_string(r.kind) << ',' << r.n << ',' << r.v_or_m << ',' << r.k_rank << ',' << r.k_naive << ','
     << r.k_paper << ',' << r.ensemble << ',' << (r.saturated ? "true" : "false") << ',' << r.seed;
  return os.str();
}

inline std::string to_csv(const std::vector<KReport>& reports) {
  std::string out = std::string(report_csv_header) + "\n";
  for (const auto& r : reports) out += to_csv_row(r) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const KReport& r) {
  return {{"kind", to_string(r.kind)}, {"N", r.n},           {"V_or_M", r.v_or_m},
          {"K_rank", r.k_rank},        {"K_naive", r.k_naive}, {"K_paper", r.k_paper},
          {"ensemble", r.ensemble},    {"saturated", r.saturated}, {"seed", r.seed}};
}

inline std::string to_json(const std::vector<KReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace dofcount

#endif  // DOFCOUNT_REPORT_HPP
