#include "trapcert/cli_io/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trapcert/errors.hpp"

namespace trapcert::cli_io {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
  return v.get<long long>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

ExplicitTable table(const json& obj, const std::string& where) {
  only_keys(obj, {"family", "values"}, where);
  if (!obj.contains("values") || !obj.at("values").is_array()) throw ConfigError(where + ".values must be an array");
  ExplicitTable t;
  for (const json& v : obj.at("values")) {
    if (!v.is_number()) throw ConfigError(where + ".values must hold numbers");
    t.values.push_back(v.get<double>());
  }
  return t;
}

KFamily parse_k(const json& obj) {
  const std::string where = "schedule.k";
  const std::string fam = text(obj, "family", where);
  if (fam == "paper-default") {
    only_keys(obj, {"family", "c"}, where);
    return PaperDefaultK{obj.contains("c") ? number(obj, "c", where) : 2.0};
  }
  if (fam == "table") return table(obj, where);
  throw ConfigError(where + ".family must be 'paper-default' or 'table'");
}

AFamily parse_a(const json& obj) {
  const std::string where = "schedule.a";
  const std::string fam = text(obj, "family", where);
  if (fam == "power") {
    only_keys(obj, {"family", "A", "p"}, where);
    return PowerA{number(obj, "A", where), number(obj, "p", where)};
  }
  if (fam == "table") return table(obj, where);
  throw ConfigError(where + ".family must be 'power' or 'table'");
}

DFamily parse_d(const json& obj) {
  const std::string where = "schedule.d";
  const std::string fam = text(obj, "family", where);
  if (fam == "shifted-power") {
    only_keys(obj, {"family", "D", "s", "q"}, where);
    return ShiftedPowerD{number(obj, "D", where), number(obj, "s", where), number(obj, "q", where)};
  }
  if (fam == "table") return table(obj, where);
  throw ConfigError(where + ".family must be 'shifted-power' or 'table'");
}

std::optional<std::string> path_entry(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_string() || v.get<std::string>().empty())
    throw ConfigError(std::string("outputs.") + key + " must be a nonempty string");
  return v.get<std::string>();
}

SweepConfig parse_sweep(const json& obj) {
  const std::string where = "sweep";
  only_keys(obj, {"dimensions", "mMax", "rhoMin", "rhoMax", "rhoPoints", "alphas", "emit"}, where);
  SweepConfig s;
  if (obj.contains("dimensions")) {
    if (!obj.at("dimensions").is_array()) throw ConfigError("sweep.dimensions must be an array");
    s.spec.dimensions.clear();
    for (const json& v : obj.at("dimensions")) {
      const long long n = integer(v, "sweep.dimensions[]");
      if (n < 2 || n > 64) throw ConfigError("sweep.dimensions entries must lie in [2, 64]");
      s.spec.dimensions.push_back(static_cast<int>(n));
    }
  }
  if (obj.contains("mMax")) {
    const long long m = integer(obj.at("mMax"), "sweep.mMax");
    if (m < 0 || m > 10000) throw ConfigError("sweep.mMax must lie in [0, 10000]");
    s.spec.m_max = static_cast<int>(m);
  }
  if (obj.contains("rhoMin")) s.spec.rho_min = number(obj, "rhoMin", where);
  if (obj.contains("rhoMax")) s.spec.rho_max = number(obj, "rhoMax", where);
  if (obj.contains("rhoPoints")) {
    const long long p = integer(obj.at("rhoPoints"), "sweep.rhoPoints");
    if (p < 1 || p > 1000000) throw ConfigError("sweep.rhoPoints must lie in [1, 1e6]");
    s.spec.rho_points = static_cast<int>(p);
  }
  if (!(s.spec.rho_min > 0.0) || !(s.spec.rho_max >= s.spec.rho_min))
    throw ConfigError("sweep needs 0 < rhoMin <= rhoMax");
  if (obj.contains("alphas")) {
    if (!obj.at("alphas").is_array()) throw ConfigError("sweep.alphas must be an array");
    for (const json& v : obj.at("alphas")) {
      if (!v.is_number()) throw ConfigError("sweep.alphas must hold numbers");
      s.spec.alphas.push_back(v.get<double>());
    }
  }
  if (obj.contains("emit")) {
    const std::string e = text(obj, "emit", where);
    if (e == "all") s.emit = SweepEmit::All;
    else if (e == "violations") s.emit = SweepEmit::Violations;
    else if (e == "summary") s.emit = SweepEmit::Summary;
    else throw ConfigError("sweep.emit must be 'all', 'violations' or 'summary'");
  }
  return s;
}

ojson family_json(const KFamily& k) {
  if (auto* p = std::get_if<PaperDefaultK>(&k)) return {{"family", "paper-default"}, {"c", p->c}};
  return {{"family", "table"}, {"values", std::get<ExplicitTable>(k).values}};
}
ojson family_json(const AFamily& a) {
  if (auto* p = std::get_if<PowerA>(&a)) return {{"family", "power"}, {"A", p->A}, {"p", p->p}};
  return {{"family", "table"}, {"values", std::get<ExplicitTable>(a).values}};
}
ojson family_json(const DFamily& d) {
  if (auto* p = std::get_if<ShiftedPowerD>(&d)) return {{"family", "shifted-power"}, {"D", p->D}, {"s", p->s}, {"q", p->q}};
  return {{"family", "table"}, {"values", std::get<ExplicitTable>(d).values}};
}

}  // namespace

const char* sweep_emit_name(SweepEmit e) {
  switch (e) {
    case SweepEmit::All: return "all";
    case SweepEmit::Violations: return "violations";
    default: return "summary";
  }
}

Schedule RunConfig::schedule() const {
  try {
    return Schedule(dimension, k, a, d, precision_digits);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(std::string_view input) {
  json doc;
  try {
    doc = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc,
            {"dimension", "schedule", "layout", "layers", "boxCount", "precisionDigits", "growthFloorC", "outputs",
             "sweep"},
            "config");

  RunConfig cfg;
  if (doc.contains("dimension")) {
    const long long n = integer(doc.at("dimension"), "dimension");
    if (n < 2 || n > 64) throw ConfigError("dimension must lie in [2, 64]");
    cfg.dimension = static_cast<int>(n);
  }
  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    only_keys(s, {"k", "a", "d"}, "schedule");
    if (s.contains("k")) cfg.k = parse_k(s.at("k"));
    if (s.contains("a")) cfg.a = parse_a(s.at("a"));
    if (s.contains("d")) cfg.d = parse_d(s.at("d"));
  }
  if (doc.contains("layout")) {
    const std::string l = text(doc, "layout", "config");
    if (l == "layered") cfg.layout = Layout::Layered;
    else if (l == "stacked") cfg.layout = Layout::Stacked;
    else throw ConfigError("layout must be 'layered' or 'stacked'");
  }
  if (doc.contains("layers") && doc.contains("boxCount")) throw ConfigError("give either layers or boxCount, not both");
  if (doc.contains("layers")) {
    if (cfg.layout != Layout::Layered) throw ConfigError("'layers' applies to the layered layout; use 'boxCount'");
    cfg.truncation = integer(doc.at("layers"), "layers");
  } else if (doc.contains("boxCount")) {
    if (cfg.layout != Layout::Stacked) throw ConfigError("'boxCount' applies to the stacked layout; use 'layers'");
    cfg.truncation = integer(doc.at("boxCount"), "boxCount");
  } else if (cfg.layout == Layout::Stacked) {
    throw ConfigError("stacked layout needs 'boxCount'");
  }
  if (cfg.truncation < 1) throw ConfigError("truncation (layers / boxCount) must be >= 1");
  if (doc.contains("precisionDigits")) {
    const long long p = integer(doc.at("precisionDigits"), "precisionDigits");
    if (p < 15 || p > Schedule::kMaxPrecisionDigits)
      throw ConfigError("precisionDigits must lie in [15, " + std::to_string(Schedule::kMaxPrecisionDigits) + "]");
    cfg.precision_digits = static_cast<int>(p);
  }
  if (doc.contains("growthFloorC")) {
    cfg.growth_floor_c = number(doc, "growthFloorC", "config");
    if (!(cfg.growth_floor_c >= 0.0)) throw ConfigError("growthFloorC must be >= 0");
  }
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    only_keys(o, {"json", "csv", "svg", "report", "dtn", "selftest"}, "outputs");
    cfg.outputs.json = path_entry(o, "json");
    cfg.outputs.csv = path_entry(o, "csv");
    cfg.outputs.svg = path_entry(o, "svg");
    cfg.outputs.report = path_entry(o, "report");
    cfg.outputs.dtn = path_entry(o, "dtn");
    cfg.outputs.selftest = path_entry(o, "selftest");
  }
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"));

  cfg.schedule();  // validates families
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
  ojson doc;
  doc["dimension"] = cfg.dimension;
  doc["schedule"] = {{"k", family_json(cfg.k)}, {"a", family_json(cfg.a)}, {"d", family_json(cfg.d)}};
  doc["layout"] = layout_name(cfg.layout);
  doc[cfg.layout == Layout::Layered ? "layers" : "boxCount"] = cfg.truncation;
  doc["precisionDigits"] = cfg.precision_digits;
  doc["growthFloorC"] = cfg.growth_floor_c;
  return doc.dump(2);
}

}  // namespace trapcert::cli_io
