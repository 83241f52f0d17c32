#include "qfrob/report.hpp"

#include <iomanip>
#include <sstream>

namespace qfrob {

Json to_json(const Valuation& v) {
  if (v.is_infinite()) return "INFINITY";
  return v.value();
}

Json to_json(const CongruenceReport& r) {
  Json j;
  j["kind"] = "congruence";
  j["identity"] = r.identity;
  Json params = Json::object();
  for (auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  Json coeffs = Json::array();
  for (auto& c : r.coefficients)
    coeffs.push_back({{"index", c.index},
                      {"certificate", to_string(c.kind)},
                      {"residual_valuation", to_json(c.residual_valuation)},
                      {"pass", c.pass}});
  j["coefficients"] = coeffs;
  j["fallbacks"] = r.fallbacks;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const DworkReport& r) {
  Json j;
  j["kind"] = "dwork";
  j["p"] = r.fam.ctx.p;
  j["alpha"] = r.fam.alpha().get_str();
  j["ranges"] = {{"n_max", r.n_max}, {"m_max", r.m_max}, {"s_max", r.s_max}, {"i_max", r.i_max},
                 {"r_max", r.r_max}, {"conclusion_s_max", r.conclusion_s_max}};
  Json conds = Json::object();
  for (int c = 1; c <= 4; ++c) {
    std::size_t total = 0, ok = 0;
    for (auto& cell : r.cells)
      if (cell.condition == c) {
        ++total;
        ok += cell.pass;
      }
    conds["condition" + std::to_string(c)] = {{"cells", total}, {"passed", ok}};
  }
  j["conditions"] = conds;
  Json concl = Json::array();
  for (auto& c : r.conclusion) concl.push_back(to_json(c));
  j["conclusion"] = concl;
  j["failing"] = r.failing;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const FrobeniusCertificate& c) {
  Json j;
  j["kind"] = "frobenius-structure";
  j["operator"] = c.operator_description;
  j["period"] = c.h;
  j["degree"] = c.D;
  j["mode"] = c.mode == CheckMode::Exact ? "exact" : "valuation";
  if (c.mode == CheckMode::Valuation) j["threshold"] = c.threshold;
  j["normalization"] = c.normalization;
  j["h0_invertible"] = c.h0_invertible;
  j["cleared_denominators"] = c.cleared_denominators;
  Json res = Json::array();
  for (std::size_t a = 0; a < c.residual_valuation.size(); ++a)
    for (std::size_t b = 0; b < c.residual_valuation[a].size(); ++b)
      res.push_back({{"entry", {a, b}},
                     {"zero", static_cast<bool>(c.residual_zero[a][b])},
                     {"valuation_of_truncation", to_json(c.residual_valuation[a][b])}});
  j["residuals"] = res;
  if (c.H.dim() > 0 && c.H.degree_bound() > 1) {
    Json head = Json::array();
    for (std::size_t n = 0; n < std::min<std::size_t>(3, c.H.degree_bound()); ++n)
      head.push_back(c.H(0, 0)[n].to_string());
    j["H_leading_coefficients"] = head;
  }
  j["pass"] = c.pass;
  return j;
}

Json to_json(const ConfluenceReport& r) {
  Json j;
  j["kind"] = "confluence";
  j["degree"] = r.D;
  j["identity_holds"] = r.identity_holds;
  j["ev_residual_matches"] = r.ev_matches;
  j["perturbed_ev_residual_matches"] = r.perturbed_ev_matches;
  j["perturbed_B_fails"] = r.perturbed_B_fails;
  std::size_t nonzero = 0;
  for (auto& x : r.residual) nonzero += (x != 0);
  j["nonzero_residual_coefficients"] = nonzero;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const LucasRelation& r) {
  Json j;
  j["kind"] = "relation";
  j["p"] = r.p;
  j["h"] = r.h;
  j["terms"] = r.terms;
  j["degree_bound"] = r.degree;
  j["a"] = r.a;
  j["solve_window"] = r.solve_window;
  j["verified_degree"] = r.verified_degree;
  j["verified"] = r.verified;
  j["pass"] = r.verified;
  return j;
}

void RunReport::add(Json check, bool ok, const std::string& timing_name, double seconds) {
  checks.push_back(std::move(check));
  timings.emplace_back(timing_name, seconds);
  pass = pass && ok;
}

Json RunReport::to_json(bool with_timings) const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["config"] = config;
  j["checks"] = checks;
  j["pass"] = pass;
  if (with_timings) {
    Json t = Json::object();
    for (auto& [k, v] : timings) t[k] = v;
    j["timings"] = t;
  }
  return j;
}

namespace {

std::string summary(const Json& c) {
  std::ostringstream os;
  std::string kind = c.value("kind", "");
  if (kind == "valuation") {
    os << "valuation " << c["expression"].get<std::string>() << " = "
       << (c["valuation"].is_string() ? c["valuation"].get<std::string>() : c["valuation"].dump());
    if (c.contains("numerator_digits")) os << "\n  (1-q)-digits: " << c["numerator_digits"].dump();
    if (c.contains("denominator_digits")) os << "\n  denominator digits: " << c["denominator_digits"].dump();
    return os.str();
  }
  os << kind;
  if (c.contains("identity")) os << " " << c["identity"].get<std::string>();
  if (c.contains("parameters"))
    for (auto& [k, v] : c["parameters"].items()) os << " " << k << "=" << v.get<std::string>();
  os << ": " << (c.value("pass", false) ? "PASS" : "FAIL");
  if (kind == "congruence") {
    Json worst;
    for (auto& e : c["coefficients"])
      if (!e["pass"].get<bool>()) {
        worst = e;
        break;
      }
    if (!worst.is_null())
      os << " (first failing index " << worst["index"].dump() << ", residual valuation "
         << worst["residual_valuation"].dump() << ")";
    if (!c["fallbacks"].empty()) os << " fallbacks " << c["fallbacks"].dump();
  } else if (kind == "dwork") {
    for (auto& [k, v] : c["conditions"].items())
      os << "\n  " << k << ": " << v["passed"].dump() << "/" << v["cells"].dump();
    for (auto& f : c["failing"]) os << "\n  failing: " << f.get<std::string>();
  } else if (kind == "relation") {
    os << " a = " << c["a"].dump() << " verified to z^" << c["verified_degree"].dump();
  } else if (kind == "frobenius-structure") {
    os << " (D=" << c["degree"].dump() << ", " << c["mode"].get<std::string>() << ")";
  }
  return os.str();
}

}  // namespace

std::string RunReport::to_text() const {
  std::ostringstream os;
  for (auto& c : checks) os << summary(c) << "\n";
  os << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
  for (auto& [k, v] : timings) os << "time " << k << ": " << std::fixed << std::setprecision(3) << v << " s\n";
  return os.str();
}

}  // namespace qfrob
