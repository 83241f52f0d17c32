#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qfrob/congruence.hpp"
#include "qfrob/frobenius.hpp"

namespace qfrob {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";

// integer, or the string "INFINITY"
Json to_json(const Valuation& v);
Json to_json(const CongruenceReport& r);
Json to_json(const DworkReport& r);
Json to_json(const FrobeniusCertificate& c);
Json to_json(const ConfluenceReport& r);
Json to_json(const LucasRelation& r);

struct RunReport {
  Json config = Json::object();
  std::vector<Json> checks;  // each carries a "kind" tag
  // wall clock per check, kept apart so the rest is byte-stable
  std::vector<std::pair<std::string, double>> timings;
  bool pass = true;

  void add(Json check, bool ok, const std::string& timing_name, double seconds);
  Json to_json(bool with_timings = true) const;
  std::string to_text() const;
};

}  // namespace qfrob
