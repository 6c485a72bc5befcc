#include "dmod/report.hpp"

#include <sstream>
#include <stdexcept>

namespace dmod {

namespace {

template <class Ore>
json images_json(const std::vector<Ore>& images) {
  json out = json::array();
  for (auto& im : images) {
    json row = json::array();
    for (auto& c : im.coeffs()) row.push_back(c.str());
    out.push_back(row);
  }
  return out;
}

const char* verdict(bool b) { return b ? "PASS" : "FAIL"; }

}  // namespace

json to_json(const RunConfig& c) {
  return {{"q", c.q},         {"rho", c.rho},       {"prec", c.prec},     {"trunc", c.trunc},
          {"samples", c.samples}, {"report", c.report}, {"suites", c.suites}};
}

RunConfig config_from_json(const json& j) {
  try {
    RunConfig c;
    c.q = j.at("q").get<u32>();
    c.rho = j.at("rho").get<std::vector<u32>>();
    c.prec = j.at("prec").get<i64>();
    c.trunc = j.at("trunc").get<long>();
    c.samples = j.at("samples").get<std::vector<std::string>>();
    c.report = j.at("report").get<std::string>();
    c.suites = j.at("suites").get<std::vector<std::string>>();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed run configuration: ") + e.what());
  }
}

json to_json(const DrinfeldModule& M, const RunConfig& c) {
  return {{"q", c.q}, {"rho", c.rho}, {"twist", M.twist}, {"route", M.route}, {"images", images_json(M.images)}};
}

json to_json(const HayesModule& M, const RunConfig& c) {
  return {{"q", c.q}, {"rho", c.rho}, {"k", M.k}, {"mu", M.mu}, {"route", M.route}, {"images", images_json(M.images)}};
}

json to_json(const PeriodRow& r) {
  return {{"K", r.K},
          {"prec", r.prec},
          {"target", r.target},
          {"valuation", r.valuation.str()},
          {"floor", r.floor.str()},
          {"pass", r.pass}};
}

json to_json(const AGFReport& r) {
  json samples = json::array();
  for (auto& s : r.samples)
    samples.push_back({{"z", s.z},
                       {"check", s.check},
                       {"value-valuation", s.value_valuation.str()},
                       {"defect-valuation", s.defect_valuation.str()},
                       {"floor", s.floor.str()},
                       {"pass", s.pass}});
  json out = {{"which", r.which}, {"samples", samples}, {"pass", r.pass()}};
  out[r.which == "omega_f" ? "K" : "terms"] = r.trunc;
  if (r.has_residue)
    out["residue"] = {{"partial", r.residue_partial}, {"matches_pi_phi", r.residue_matches}};
  return out;
}

json to_json(const SuiteResult& s) {
  json checks = json::array();
  for (auto& c : s.checks) checks.push_back({{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
  json out = {{"name", s.name}, {"pass", s.pass()}, {"checks", checks}};
  if (!s.periods.empty()) {
    json rows = json::array();
    for (auto& p : s.periods) rows.push_back(to_json(p));
    out["periods"] = rows;
  }
  if (!s.agf.empty()) {
    json rows = json::array();
    for (auto& a : s.agf) rows.push_back(to_json(a));
    out["agf"] = rows;
  }
  return out;
}

json to_json(const VerifyReport& r) {
  json suites = json::array();
  for (auto& s : r.suites) suites.push_back(to_json(s));
  return {{"command", "verify"}, {"config", to_json(r.config)}, {"pass", r.pass()}, {"suites", suites}};
}

json to_json(const ConstructReport& r) {
  json out = {{"command", "construct"},
              {"config", to_json(r.config)},
              {"modules", {to_json(r.residue, r.config), to_json(r.factorization, r.config)}},
              {"hayes", {to_json(r.hayes, r.config), to_json(r.hayes_conjugation, r.config)}},
              {"routes_agree", r.routes_agree},
              {"pass", r.pass()}};
  out["closed_form_match"] = r.has_closed_form ? json(r.matches_closed_form) : json(nullptr);
  return out;
}

std::string to_text(const VerifyReport& r) {
  std::ostringstream os;
  os << "verify q=" << r.config.q << " rho=";
  for (std::size_t i = 0; i < r.config.rho.size(); ++i) os << (i ? "," : "") << r.config.rho[i];
  os << " prec=" << r.config.prec << " trunc=" << r.config.trunc << "\n";
  std::size_t total = 0, failed = 0;
  auto tally = [&](bool p) {
    ++total;
    failed += !p;
  };
  for (auto& s : r.suites) {
    os << "[" << s.name << "] " << verdict(s.pass()) << "\n";
    for (auto& c : s.checks) {
      tally(c.pass);
      os << "  " << verdict(c.pass) << "  " << c.label;
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
    }
    for (auto& p : s.periods) {
      tally(p.pass);
      os << "  " << verdict(p.pass) << "  " << p.target << " K=" << p.K << " prec=" << p.prec
         << " valuation=" << p.valuation.str() << " floor=" << p.floor.str() << "\n";
    }
    for (auto& a : s.agf) {
      for (auto& x : a.samples) {
        tally(x.pass);
        os << "  " << verdict(x.pass) << "  " << a.which << " " << (a.which == "omega_f" ? "K=" : "terms=") << a.trunc
           << " z=" << x.z << " " << x.check << " value-valuation=" << x.value_valuation.str()
           << " defect-valuation=" << x.defect_valuation.str() << " floor=" << x.floor.str() << "\n";
      }
      if (a.has_residue) {
        tally(a.residue_matches);
        os << "  " << verdict(a.residue_matches) << "  " << a.which << " K=" << a.trunc
           << " residue matches pi_phi partial: " << a.residue_partial << "\n";
      }
    }
  }
  os << (failed ? "FAIL" : "PASS") << ": " << (total - failed) << "/" << total << " identities hold\n";
  return os.str();
}

std::string to_text(const ConstructReport& r) {
  std::ostringstream os;
  const char* gens = "T_";
  auto module = [&](const std::string& title, const auto& images) {
    os << title << "\n";
    for (std::size_t i = 0; i < images.size(); ++i) os << "  " << gens << i << " -> " << images[i].str() << "\n";
  };
  module("Psi (route: residue)", r.residue.images);
  module("Psi (route: factorization)", r.factorization.images);
  module("psi^u, u = u_{0,1} (route: factorization)", r.hayes.images);
  module("psi^u, u = u_{0,1} (route: conjugation of Psi)", r.hayes_conjugation.images);
  os << "routes agree: " << (r.routes_agree ? "yes" : "no") << "\n";
  if (r.has_closed_form) os << "closed-form example: " << (r.matches_closed_form ? "matches" : "MISMATCH") << "\n";
  os << verdict(r.pass()) << "\n";
  return os.str();
}

}  // namespace dmod
