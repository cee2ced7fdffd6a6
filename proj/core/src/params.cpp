#include "credence/params.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "json.hpp"

namespace credence {

using nlohmann::ordered_json;

std::string_view to_string(MenuKind kind) {
  switch (kind) {
    case MenuKind::Pm: return "Pm";
    case MenuKind::Pe: return "Pe";
    case MenuKind::Ps: return "Ps";
  }
  return "?";
}

MenuKind menu_from_string(std::string_view name) {
  if (name == "Pm") return MenuKind::Pm;
  if (name == "Pe") return MenuKind::Pe;
  if (name == "Ps") return MenuKind::Ps;
  throw ParamError("unknown menu kind '" + std::string(name) + "'");
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ParamError(std::string("invalid parameters: ") + what);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ParamError("override " + key + ": '" + value + "' is not a number");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  double x = parse_double(key, value);
  if (x != std::floor(x)) throw ParamError("override " + key + ": '" + value + "' is not an integer");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw ParamError("override " + key + ": '" + value + "' is not a boolean");
}

using Setter = std::function<void(MarketParams&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    auto real = [&m](const char* key, double MarketParams::*field) {
      m[key] = [field](MarketParams& p, const std::string& k, const std::string& v) {
        p.*field = parse_double(k, v);
      };
    };
    real("h", &MarketParams::h);
    real("v", &MarketParams::v);
    real("sigma", &MarketParams::sigma);
    real("c_hi", &MarketParams::c_hi);
    real("c_lo", &MarketParams::c_lo);
    real("p_hi", &MarketParams::p_hi);
    real("z", &MarketParams::z);
    real("q", &MarketParams::q);
    real("gamma", &MarketParams::gamma);
    real("d", &MarketParams::d);
    real("k_inv", &MarketParams::k_inv);
    m["p_lo_m"] = [](MarketParams& p, const std::string& k, const std::string& v) { p.p_lo_menu[0] = parse_double(k, v); };
    m["p_lo_e"] = [](MarketParams& p, const std::string& k, const std::string& v) { p.p_lo_menu[1] = parse_double(k, v); };
    m["p_lo_s"] = [](MarketParams& p, const std::string& k, const std::string& v) { p.p_lo_menu[2] = parse_double(k, v); };
    m["R"] = [](MarketParams& p, const std::string& k, const std::string& v) { p.R = parse_int(k, v); };
    m["phase1_rounds"] = [](MarketParams& p, const std::string& k, const std::string& v) {
      p.phase1_rounds = parse_int(k, v);
    };
    m["hs_uses_delta_c"] = [](MarketParams& p, const std::string& k, const std::string& v) {
      p.hs_uses_delta_c = parse_bool(k, v);
    };
    return m;
  }();
  return table;
}

ordered_json to_json_value(const MarketParams& p) {
  ordered_json j;
  j["h"] = p.h;
  j["v"] = p.v;
  j["sigma"] = p.sigma;
  j["c_hi"] = p.c_hi;
  j["c_lo"] = p.c_lo;
  j["p_hi"] = p.p_hi;
  j["p_lo_menu"] = {p.p_lo_menu[0], p.p_lo_menu[1], p.p_lo_menu[2]};
  j["z"] = p.z;
  j["q"] = p.q;
  j["gamma"] = p.gamma;
  j["d"] = p.d;
  j["k_inv"] = p.k_inv;
  j["R"] = p.R;
  j["phase1_rounds"] = p.phase1_rounds;
  j["hs_uses_delta_c"] = p.hs_uses_delta_c;
  return j;
}

}  // namespace

void validate(const MarketParams& p) {
  require(p.h > 0.0 && p.h < 1.0, "0 < h < 1");
  require(p.v > p.c_hi, "v > c_hi");
  require(p.c_hi > p.c_lo, "c_hi > c_lo");
  require(p.c_lo >= 0.0, "c_lo >= 0");
  for (double lo : p.p_lo_menu) require(p.p_hi >= lo, "p_hi >= every menu p_lo");
  require(p.q > 0.0 && p.q <= p.z && p.z <= 1.0, "0 < q <= z <= 1");
  require(p.z > p.q, "z > q");
  require(p.gamma >= 0.0 && p.gamma <= 1.0, "gamma in [0,1]");
  require(p.k_inv >= 0.0 && p.k_inv <= 1.0, "k_inv in [0,1]");
  require(p.d >= 0.0, "d >= 0");
  require(p.sigma >= 0.0, "sigma >= 0");
  require(p.R >= 1, "R >= 1");
  require(p.phase1_rounds >= 0, "phase1_rounds >= 0");
}

MarketParams default_params() { return MarketParams{}; }

MarketParams experiment2_params() {
  MarketParams p;
  p.d = 12.0;
  return p;
}

std::string params_to_json(const MarketParams& params, int indent) {
  return to_json_value(params).dump(indent);
}

MarketParams params_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParamError(std::string("parameter document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParamError("parameter document must be a JSON object");
  MarketParams p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& val = it.value();
    if (key == "p_lo_menu") {
      if (!val.is_array() || val.size() != 3) throw ParamError("p_lo_menu must be an array of three prices");
      for (std::size_t i = 0; i < 3; ++i) p.p_lo_menu[i] = val[i].get<double>();
      continue;
    }
    auto found = setters().find(key);
    if (found == setters().end()) throw ParamError("unknown parameter '" + key + "'");
    std::string raw = val.is_string() ? val.get<std::string>() : val.dump();
    found->second(p, key, raw);
  }
  validate(p);
  return p;
}

void apply_override(MarketParams& params, const std::string& key, const std::string& value) {
  auto found = setters().find(key);
  if (found == setters().end()) throw ParamError("unknown parameter '" + key + "'");
  found->second(params, key, value);
}

std::vector<std::string> param_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace credence
