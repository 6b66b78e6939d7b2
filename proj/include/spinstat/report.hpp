#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinstat/spectral2d.hpp"
#include "spinstat/version.hpp"

namespace spinstat {

using Json = nlohmann::ordered_json;

/// Structured verdict container emitted by theorem-level checks. Every
/// verdict is expected to ship with the evidence (a residual or a pair of
/// spectra) that produced it.
struct VerificationReport {
  Json params = Json::object();
  std::map<std::string, bool> verdicts;
  std::map<std::string, double> residuals;
  std::vector<std::pair<std::string, SpectrumWindow>> spectra;
  std::vector<std::string> notes;

  bool all_verdicts_hold() const {
    for (const auto& [name, ok] : verdicts)
      if (!ok) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["params"] = params;
    Json v = Json::object();
    for (const auto& [name, ok] : verdicts) v[name] = ok;
    j["verdicts"] = v;
    if (!residuals.empty()) {
      Json r = Json::object();
      for (const auto& [name, x] : residuals) r[name] = x;
      j["residuals"] = r;
    }
    if (!spectra.empty()) {
      Json s = Json::array();
      for (const auto& [name, w] : spectra) {
        Json values = Json::array();
        for (const auto& ev : w.values) values.push_back(ev.value());
        s.push_back(Json{{"operator", name}, {"tag", w.operator_tag}, {"values", values}});
      }
      j["spectra"] = s;
    }
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

}  // namespace spinstat
