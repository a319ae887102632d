#pragma once

// Assembles the verify-all report. Suites run one after another in name
// order and nothing time-dependent is recorded, so equal configs give
// byte-identical JSON.

#include <string>
#include <vector>

#include "fmlab/serialize.hpp"
#include "fmlab/verify/suites.hpp"

namespace fmlab::verify {

struct Criterion {
  int number;
  const char* suite;
};

// Which suite carries each acceptance criterion. 8 is the determinism
// check appended by build_report.
inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "atom_action.laws"},     {2, "atom_action.remarks"},  {3, "supports.reduction"},
      {4, "thin_ideal.lemma4"},    {5, "thin_ideal.extraction"}, {6, "counterexample"},
      {7, "encoding.kuratowski"},  {8, "determinism"},
  };
  return c;
}

inline Json to_json(const SuiteResult& r) {
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats()) stats[k] = v;
  return Json{{"name", r.name()},
              {"passed", r.passed()},
              {"checks", r.checks()},
              {"failures", r.failures()},
              {"messages", r.messages()},
              {"stats", std::move(stats)}};
}

inline Json to_json(const Config& cfg) {
  return Json{{"p", cfg.p}, {"horizon", cfg.horizon}, {"seed", cfg.seed},
              {"cap_enum", cfg.cap_enum}, {"cap_tower", cfg.cap_tower}};
}

// Reruns two cheap seeded suites and compares their serializations.
inline SuiteResult determinism(const Config& cfg) {
  return detail::run_suite("determinism", [&](SuiteResult& r) {
    for (auto run : {config_action_laws, kuratowski}) {
      const auto a = to_json(run(cfg)).dump();
      const auto b = to_json(run(cfg)).dump();
      r.expect(a == b, [&] { return "suite output differs between runs with equal seeds"; });
    }
  });
}

/// Runs every suite; `on_suite` sees each result as it completes.
template <typename Callback>
Json build_report(const Config& cfg, Callback&& on_suite) {
  std::vector<SuiteResult> results;
  for (const auto& s : all_suites()) {
    results.push_back(s.run(cfg));
    on_suite(results.back());
  }
  results.push_back(determinism(cfg));
  on_suite(results.back());

  Json suites = Json::array();
  bool all = true;
  for (const auto& r : results) {
    suites.push_back(to_json(r));
    all = all && r.passed();
  }
  Json acceptance = Json::array();
  for (const auto& c : criteria()) {
    bool ok = false;
    for (const auto& r : results) {
      if (r.name() == c.suite) ok = r.passed();
    }
    acceptance.push_back(Json{{"criterion", c.number}, {"suite", c.suite}, {"passed", ok}});
  }
  return Json{{"command", "verify-all"},
              {"config", to_json(cfg)},
              {"suites", std::move(suites)},
              {"acceptance", std::move(acceptance)},
              {"passed", all}};
}

inline Json build_report(const Config& cfg) {
  return build_report(cfg, [](const SuiteResult&) {});
}

}  // namespace fmlab::verify
