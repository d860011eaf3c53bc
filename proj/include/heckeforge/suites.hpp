#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heckeforge/config.hpp"
#include "heckeforge/ext.hpp"
#include "heckeforge/findim_cover.hpp"
#include "heckeforge/graded.hpp"

namespace heckeforge::suites {

using nlohmann::json;

struct SuiteResult {
  std::string name;
  std::string verdict;  // pass | fail | skipped | error
  std::string reason;
  json details = json::object();

  bool failed() const { return verdict == "fail" || verdict == "error"; }
};

// one fully constructed configuration
struct Instance {
  rootdata::RootDatum rd;
  weyl::Weyl w;
  apartment::Apartment ap;
  cli::RunConfig cfg;

  explicit Instance(const cli::RunConfig& c)
      : rd(rootdata::cartan_type_from_string(c.type), rootdata::isogeny_from_string(c.isogeny),
           c.central_rank),
        w(rd),
        ap(w),
        cfg(c) {}
};

SuiteResult run_suite(Instance& inst, const std::string& name);
json run_all(const cli::RunConfig& cfg);
std::string describe(const cli::RunConfig& cfg);
int count_failures(const json& report);

// serialization of a basis key as (omega_word, saff_word, translation, torus)
template <class F>
json key_json(const hecke::Algebra<F>& alg, const weyl::ProPElt& key) {
  const auto& w = alg.weyl();
  auto [om, aff] = w.split_omega(key.w);
  json out;
  out["omega_word"] = json::array();
  if (w.omega_infinite()) {
    for (int i = alg.rd().rank(); i < alg.rd().lattice_rank(); ++i)
      out["omega_word"].push_back(om.lambda[i]);
  } else {
    const auto& tors = w.omega_torsion();
    for (size_t i = 0; i < tors.size(); ++i)
      if (tors[i] == om) out["omega_word"].push_back(static_cast<long>(i));
  }
  out["saff_word"] = w.canonical_word(aff);
  out["translation"] = key.w.lambda;
  out["torus"] = key.torus;
  return out;
}

template <class F>
json elt_json(const hecke::Algebra<F>& alg, const typename hecke::Algebra<F>::Elt& e) {
  // report ordering: omega part, W_aff length, reduced word, torus
  std::vector<std::pair<json, std::string>> rows;
  for (const auto& [key, c] : e.terms)
    rows.emplace_back(key_json(alg, key), alg.field().to_string(c));
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    const json &ka = a.first, &kb = b.first;
    if (ka["omega_word"] != kb["omega_word"]) return ka["omega_word"] < kb["omega_word"];
    if (ka["saff_word"].size() != kb["saff_word"].size())
      return ka["saff_word"].size() < kb["saff_word"].size();
    if (ka["saff_word"] != kb["saff_word"]) return ka["saff_word"] < kb["saff_word"];
    return ka["torus"] < kb["torus"];
  });
  json terms = json::array();
  for (const auto& [k, c] : rows) {
    json t;
    t["key"] = k;
    t["coeff"] = c;
    terms.push_back(t);
  }
  return terms;
}

}  // namespace heckeforge::suites
