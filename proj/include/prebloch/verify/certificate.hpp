#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace prebloch {

using json = nlohmann::json;

/// One compared observable. `necessary` marks checks that only test a necessary
/// condition for the stated membership, never the membership itself.
struct Check {
  std::string name;
  std::string observable;
  bool passed = false;
  bool necessary = false;
  json witness = json::object();
};

struct Certificate {
  std::string statement;
  std::uint64_t trial = 0;
  std::string field;
  std::uint64_t seed = 0;
  json instance = json::object();
  std::vector<Check> checks;
  int resamples = 0;
  std::vector<std::string> resample_reasons;

  bool verdict() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  Check& add(std::string name, std::string observable, bool passed, json witness = json::object(), bool necessary = false) {
    checks.push_back({std::move(name), std::move(observable), passed, necessary, std::move(witness)});
    return checks.back();
  }
};

struct Report {
  std::string suite;
  std::string field;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<Certificate> certificates;
  std::optional<double> elapsed_ms;

  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& c : certificates) n += c.verdict() ? 1 : 0;
    return n;
  }
  std::size_t failed() const { return certificates.size() - passed(); }
  bool all_passed() const { return failed() == 0; }
};

inline json to_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["observable"] = c.observable;
  j["pass"] = c.passed;
  j["kind"] = c.necessary ? "necessary-condition" : "exact";
  j["witness"] = c.witness;
  return j;
}

inline json to_json(const Certificate& c) {
  json j;
  j["statement"] = c.statement;
  j["trial"] = c.trial;
  j["field"] = c.field;
  j["seed"] = c.seed;
  j["instance"] = c.instance;
  j["checks"] = json::array();
  bool necessary_only = false;
  for (const auto& ch : c.checks) {
    j["checks"].push_back(to_json(ch));
    necessary_only = necessary_only || ch.necessary;
  }
  j["resamples"] = c.resamples;
  j["resample_reasons"] = c.resample_reasons;
  j["verdict"] = c.verdict() ? "pass" : "fail";
  if (necessary_only && c.verdict()) j["note"] = "necessary conditions verified";
  return j;
}

/// {suite, field, seed, trials, passed, failed, certificates, elapsed_ms}; keys are
/// emitted in sorted order so equal reports serialize to equal bytes.
inline json to_json(const Report& r) {
  json j;
  j["suite"] = r.suite;
  j["field"] = r.field;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["passed"] = r.passed();
  j["failed"] = r.failed();
  j["certificates"] = json::array();
  for (const auto& c : r.certificates) j["certificates"].push_back(to_json(c));
  j["elapsed_ms"] = r.elapsed_ms ? json(*r.elapsed_ms) : json(nullptr);
  return j;
}

}  // namespace prebloch
