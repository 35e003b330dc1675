#include "qaecon/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qaecon {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
  throw parse_error(origin + ": " + (path.empty() ? "" : path + ": ") + what);
}

class Reader {
 public:
  Reader(const json& node, std::string origin, std::string path)
      : node_(node), origin_(std::move(origin)), path_(std::move(path)) {}

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  Reader child(const std::string& key) const {
    return Reader(node_.at(key), origin_, path_.empty() ? key : path_ + "." + key);
  }
  Reader element(std::size_t index) const {
    return Reader(node_[index], origin_, path_ + "[" + std::to_string(index) + "]");
  }

  void expect_object() const {
    if (!node_.is_object()) fail(origin_, path_, "expected an object");
  }
  void expect_array() const {
    if (!node_.is_array()) fail(origin_, path_, "expected an array");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  double number(const std::string& key) const {
    const json& v = field(key);
    if (!v.is_number()) fail(origin_, join(key), "expected a number");
    return v.get<double>();
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::string string(const std::string& key) const {
    const json& v = field(key);
    if (!v.is_string()) fail(origin_, join(key), "expected a string");
    return v.get<std::string>();
  }
  std::string string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? string(key) : fallback;
  }

  // Strict schema: anything outside `allowed` is rejected with its path.
  void allow_only(std::initializer_list<const char*> allowed) const {
    for (const auto& [key, _] : node_.items()) {
      bool known = false;
      for (const char* a : allowed)
        if (key == a) known = true;
      if (!known) fail(origin_, join(key), "unknown field");
    }
  }

  [[noreturn]] void reject(const std::string& what) const { fail(origin_, path_, what); }

 private:
  const json& field(const std::string& key) const {
    if (!node_.contains(key)) fail(origin_, join(key), "missing required field");
    return node_.at(key);
  }
  std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& node_;
  std::string origin_;
  std::string path_;
};

DifficultyCurve read_curve(const Reader& r) {
  r.expect_object();
  r.allow_only({"form", "theta0", "floor", "rate"});
  const std::string form = r.string("form");
  DifficultyCurve curve;
  curve.theta0 = r.number("theta0");
  if (form == "constant") {
    // Constant curves ignore rate and floor.
    curve.form = CurveForm::Constant;
    curve.floor = curve.theta0;
    curve.rate = 0.0;
  } else if (form == "linear" || form == "exponential") {
    curve.form = form == "linear" ? CurveForm::Linear : CurveForm::Exponential;
    curve.floor = r.number_or("floor", 0.0);
    curve.rate = r.number_or("rate", 0.0);
  } else {
    r.reject("unknown curve form '" + form + "' (constant, linear, exponential)");
  }
  return curve;
}

std::set<DocumentClass> read_classes(const Reader& parent, const std::string& key) {
  std::set<DocumentClass> classes;
  if (!parent.has(key)) return classes;
  const Reader arr = parent.child(key);
  arr.expect_array();
  for (std::size_t k = 0; k < arr.node().size(); ++k) {
    const Reader item = arr.element(k);
    if (!item.node().is_string()) item.reject("expected a string");
    classes.insert(item.node().get<std::string>());
  }
  return classes;
}

TechniqueApplication read_application(const Reader& r) {
  r.expect_object();
  r.allow_only({"id", "setup_cost", "exec_rate", "effort", "applicable_classes", "difficulty",
                "removal_cost"});
  TechniqueApplication app;
  app.id = r.string("id");
  app.setup_cost = r.number_or("setup_cost", 0.0);
  app.exec_rate = r.number_or("exec_rate", 0.0);
  app.effort = r.number_or("effort", 0.0);
  app.applicable_classes = read_classes(r, "applicable_classes");
  if (r.has("difficulty")) {
    const Reader map = r.child("difficulty");
    map.expect_object();
    for (const auto& [fault_id, _] : map.node().items())
      app.difficulty[fault_id] = read_curve(map.child(fault_id));
  }
  if (r.has("removal_cost")) {
    const Reader map = r.child("removal_cost");
    map.expect_object();
    for (const auto& [fault_id, _] : map.node().items()) app.removal_cost[fault_id] =
        map.number(fault_id);
  }
  return app;
}

FaultSpec read_fault(const Reader& r) {
  r.expect_object();
  r.allow_only({"id", "doc_class", "pi", "v_field", "f_effect", "predecessors"});
  FaultSpec fault;
  fault.id = r.string("id");
  fault.doc_class = r.string("doc_class");
  fault.pi = r.number_or("pi", 0.0);
  fault.v_field = r.number_or("v_field", 0.0);
  fault.f_effect = r.number_or("f_effect", 0.0);
  if (r.has("predecessors")) {
    const Reader arr = r.child("predecessors");
    arr.expect_array();
    for (std::size_t k = 0; k < arr.node().size(); ++k) {
      const Reader item = arr.element(k);
      if (!item.node().is_string()) item.reject("expected a string");
      fault.predecessors.push_back(item.node().get<std::string>());
    }
  }
  return fault;
}

DefectType read_defect_type(const Reader& r) {
  r.expect_object();
  r.allow_only({"name", "doc_class", "expected_count", "pi", "v_field", "f_effect",
                "removal_cost", "difficulty"});
  DefectType type;
  type.name = r.string("name");
  type.doc_class = r.string("doc_class");
  type.expected_count = r.number_or("expected_count", 0.0);
  type.pi = r.number_or("pi", 0.0);
  type.v_field = r.number_or("v_field", 0.0);
  type.f_effect = r.number_or("f_effect", 0.0);
  if (r.has("removal_cost")) {
    const Reader map = r.child("removal_cost");
    map.expect_object();
    for (const auto& [technique_id, _] : map.node().items())
      type.removal_cost[technique_id] = map.number(technique_id);
  }
  if (r.has("difficulty")) {
    const Reader map = r.child("difficulty");
    map.expect_object();
    for (const auto& [technique_id, _] : map.node().items())
      type.difficulty[technique_id] = read_curve(map.child(technique_id));
  }
  return type;
}

PracticalApplication read_practical_application(const Reader& r) {
  r.expect_object();
  r.allow_only({"id", "setup_cost", "exec_rate", "effort", "applicable_classes"});
  PracticalApplication app;
  app.id = r.string("id");
  app.setup_cost = r.number_or("setup_cost", 0.0);
  app.exec_rate = r.number_or("exec_rate", 0.0);
  app.effort = r.number_or("effort", 0.0);
  app.applicable_classes = read_classes(r, "applicable_classes");
  return app;
}

std::pair<std::string, std::string> read_units(const Reader& root) {
  std::string currency = "unit";
  std::string effort = "staff-hour";
  if (root.has("units")) {
    const Reader units = root.child("units");
    units.expect_object();
    units.allow_only({"currency", "effort"});
    currency = units.string_or("currency", currency);
    effort = units.string_or("effort", effort);
  }
  return {currency, effort};
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

LoadedScenario parse_scenario_json(const std::string& text, const std::string& origin) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw parse_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": " + e.what());
  }

  const Reader root(document, origin, "");
  root.expect_object();
  root.allow_only({"units", "faults", "defect_types", "applications"});

  const bool has_faults = root.has("faults");
  const bool has_types = root.has("defect_types");
  if (has_faults == has_types)
    root.reject("exactly one of 'faults' and 'defect_types' must be present");

  const auto [currency, effort] = read_units(root);

  LoadedScenario loaded;
  if (has_faults) {
    Scenario& s = loaded.scenario;
    s.currency_unit = currency;
    s.effort_unit = effort;
    const Reader faults = root.child("faults");
    faults.expect_array();
    for (std::size_t k = 0; k < faults.node().size(); ++k)
      s.faults.push_back(read_fault(faults.element(k)));
    if (root.has("applications")) {
      const Reader apps = root.child("applications");
      apps.expect_array();
      for (std::size_t k = 0; k < apps.node().size(); ++k)
        s.applications.push_back(read_application(apps.element(k)));
    }
  } else {
    PracticalScenario practical;
    practical.currency_unit = currency;
    practical.effort_unit = effort;
    const Reader types = root.child("defect_types");
    types.expect_array();
    for (std::size_t k = 0; k < types.node().size(); ++k)
      practical.types.push_back(read_defect_type(types.element(k)));
    if (root.has("applications")) {
      const Reader apps = root.child("applications");
      apps.expect_array();
      for (std::size_t k = 0; k < apps.node().size(); ++k)
        practical.applications.push_back(read_practical_application(apps.element(k)));
    }
    try {
      loaded.scenario = expand_to_scenario(practical);
    } catch (const lookup_error& e) {
      root.reject(e.what());
    } catch (const std::domain_error& e) {
      root.reject(e.what());
    }
    loaded.from_defect_types = true;
  }
  return loaded;
}

LoadedScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_json(buffer.str(), path);
}

std::string scenario_to_json(const Scenario& scenario) {
  json document;
  document["units"] = {{"currency", scenario.currency_unit},
                       {"effort", scenario.effort_unit}};

  json faults = json::array();
  for (const FaultSpec& fault : scenario.faults) {
    json f;
    f["id"] = fault.id;
    f["doc_class"] = fault.doc_class;
    f["pi"] = fault.pi;
    f["v_field"] = fault.v_field;
    f["f_effect"] = fault.f_effect;
    if (!fault.predecessors.empty()) f["predecessors"] = fault.predecessors;
    faults.push_back(std::move(f));
  }
  document["faults"] = std::move(faults);

  auto curve_json = [](const DifficultyCurve& curve) {
    json c;
    switch (curve.form) {
      case CurveForm::Constant: c["form"] = "constant"; break;
      case CurveForm::Linear: c["form"] = "linear"; break;
      case CurveForm::Exponential: c["form"] = "exponential"; break;
    }
    c["theta0"] = curve.theta0;
    if (curve.form != CurveForm::Constant) {
      c["floor"] = curve.floor;
      c["rate"] = curve.rate;
    }
    return c;
  };

  json applications = json::array();
  for (const TechniqueApplication& app : scenario.applications) {
    json a;
    a["id"] = app.id;
    a["setup_cost"] = app.setup_cost;
    a["exec_rate"] = app.exec_rate;
    a["effort"] = app.effort;
    if (!app.applicable_classes.empty())
      a["applicable_classes"] = app.applicable_classes;
    if (!app.difficulty.empty()) {
      json d = json::object();
      for (const auto& [fault_id, curve] : app.difficulty) d[fault_id] = curve_json(curve);
      a["difficulty"] = std::move(d);
    }
    if (!app.removal_cost.empty()) {
      json rc = json::object();
      for (const auto& [fault_id, cost] : app.removal_cost) rc[fault_id] = cost;
      a["removal_cost"] = std::move(rc);
    }
    applications.push_back(std::move(a));
  }
  document["applications"] = std::move(applications);
  return document.dump(2) + "\n";
}

}  // namespace qaecon
