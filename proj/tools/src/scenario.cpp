#include "scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace credeq::cli {

namespace {

using nlohmann::json;

struct Diag {
  std::vector<std::string> msgs;
  void add(const std::string& path, const std::string& what) {
    msgs.push_back(path + ": " + what);
  }
  void raise_if_any() const {
    if (msgs.empty()) return;
    std::string all;
    for (const auto& m : msgs) {
      if (!all.empty()) all += "\n";
      all += m;
    }
    throw scenario_error(all);
  }
};

double require_number(const json& obj, const std::string& path,
                      const std::string& key, Diag& d) {
  if (!obj.contains(key)) {
    d.add(path + "." + key, "missing required key");
    return 0.0;
  }
  if (!obj[key].is_number()) {
    d.add(path + "." + key, "expected a number");
    return 0.0;
  }
  return obj[key].get<double>();
}

void check_known_keys(const json& obj, const std::string& path,
                      const std::vector<std::string>& known, Diag& d) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : known)
      if (it.key() == k) ok = true;
    if (!ok) d.add(path + "." + it.key(), "unknown field");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw scenario_error(std::string("(document): ") + ex.what());
  }
  Diag d;
  Scenario sc;
  if (!root.is_object()) {
    d.add("(document)", "expected a JSON object");
    d.raise_if_any();
  }
  check_known_keys(root, "(root)", {"model", "agents", "horizon", "sweep"}, d);
  if (!root.contains("model") || !root["model"].is_string()) {
    d.add("model", "missing or not a string");
    d.raise_if_any();
  }
  sc.model = root["model"].get<std::string>();
  if (sc.model != "static" && sc.model != "ramsey")
    d.add("model", "expected \"static\" or \"ramsey\"");
  if (!root.contains("agents") || !root["agents"].is_array() ||
      root["agents"].empty()) {
    d.add("agents", "missing or empty array");
    d.raise_if_any();
  }

  int horizon = 100;
  if (root.contains("horizon")) {
    if (!root["horizon"].is_number_integer() || root["horizon"].get<int>() < 1)
      d.add("horizon", "expected a positive integer");
    else
      horizon = root["horizon"].get<int>();
  }

  const auto& agents = root["agents"];
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string path = "agents[" + std::to_string(i) + "]";
    const auto& a = agents[i];
    if (!a.is_object()) {
      d.add(path, "expected an object");
      continue;
    }
    if (sc.model == "static") {
      check_known_keys(a, path, {"id", "A", "alpha", "gamma", "S"}, d);
      StaticAgent ag;
      ag.id = a.contains("id") && a["id"].is_number_integer()
                  ? a["id"].get<int>()
                  : static_cast<int>(i) + 1;
      const double A = require_number(a, path, "A", d);
      ag.tech = a.contains("alpha")
                    ? Technology::cobb_douglas(A, require_number(a, path, "alpha", d))
                    : Technology::linear(A);
      ag.gamma = require_number(a, path, "gamma", d);
      ag.S = require_number(a, path, "S", d);
      sc.st.agents.push_back(std::move(ag));
    } else {
      check_known_keys(a, path, {"id", "A", "beta", "gamma", "w0"}, d);
      DynamicAgent ag;
      ag.id = a.contains("id") && a["id"].is_number_integer()
                  ? a["id"].get<int>()
                  : static_cast<int>(i) + 1;
      ag.beta = require_number(a, path, "beta", d);
      ag.gamma = require_number(a, path, "gamma", d);
      ag.w0 = require_number(a, path, "w0", d);
      if (a.contains("A") && a["A"].is_array()) {
        for (const auto& v : a["A"]) {
          if (!v.is_number()) {
            d.add(path + ".A", "expected numbers");
            break;
          }
          ag.A_path.push_back(v.get<double>());
        }
        if (ag.A_path.size() > 1 &&
            ag.A_path.size() < static_cast<std::size_t>(horizon))
          d.add(path + ".A", "A_path shorter than horizon");
      } else {
        ag.A_path.push_back(require_number(a, path, "A", d));
      }
      sc.dyn.agents.push_back(std::move(ag));
    }
  }
  sc.dyn.T = horizon;

  if (root.contains("sweep")) {
    const auto& sw = root["sweep"];
    if (!sw.is_object()) {
      d.add("sweep", "expected an object");
    } else {
      check_known_keys(sw, "sweep", {"agent", "param", "from", "to", "steps"}, d);
      SweepSpec spec;
      spec.agent_id = sw.contains("agent") && sw["agent"].is_number_integer()
                          ? sw["agent"].get<int>()
                          : (d.add("sweep.agent", "missing agent id"), 0);
      const std::string pname =
          sw.contains("param") && sw["param"].is_string()
              ? sw["param"].get<std::string>()
              : (d.add("sweep.param", "missing param name"), std::string());
      if (pname == "A")
        spec.param = Param::A;
      else if (pname == "gamma")
        spec.param = Param::Gamma;
      else if (!pname.empty())
        d.add("sweep.param", "expected \"A\" or \"gamma\"");
      spec.from = require_number(sw, "sweep", "from", d);
      spec.to = require_number(sw, "sweep", "to", d);
      spec.steps = sw.contains("steps") && sw["steps"].is_number_integer()
                       ? sw["steps"].get<int>()
                       : (d.add("sweep.steps", "missing step count"), 0);
      bool found = false;
      const auto has_id = [&](int id) {
        if (sc.model == "static") {
          for (const auto& ag : sc.st.agents)
            if (ag.id == id) return true;
        } else {
          for (const auto& ag : sc.dyn.agents)
            if (ag.id == id) return true;
        }
        return false;
      };
      found = has_id(spec.agent_id);
      if (!found) d.add("sweep.agent", "no agent with this id");
      sc.sweep = spec;
    }
  }
  d.raise_if_any();

  // Semantic validation through the solver-side validators, re-attributed to
  // field paths.
  if (sc.model == "static") {
    for (std::size_t i = 0; i < sc.st.agents.size(); ++i) {
      const auto& ag = sc.st.agents[i];
      const std::string path = "agents[" + std::to_string(i) + "]";
      if (!(ag.gamma > 0 && ag.gamma < 1)) d.add(path + ".gamma", "out of (0,1)");
      if (!(ag.S > 0)) d.add(path + ".S", "must be positive");
      if (!(ag.tech.A > 0)) d.add(path + ".A", "must be positive");
      if (ag.tech.kind == TechKind::CobbDouglas &&
          !(ag.tech.alpha > 0 && ag.tech.alpha < 1))
        d.add(path + ".alpha", "out of (0,1)");
    }
    d.raise_if_any();
    for (const auto& msg : validate_economy(sc.st)) d.add("agents", msg);
  } else {
    for (std::size_t i = 0; i < sc.dyn.agents.size(); ++i) {
      const auto& ag = sc.dyn.agents[i];
      const std::string path = "agents[" + std::to_string(i) + "]";
      if (!(ag.beta > 0 && ag.beta < 1)) d.add(path + ".beta", "out of (0,1)");
      if (!(ag.gamma > 0 && ag.gamma < 1)) d.add(path + ".gamma", "out of (0,1)");
      if (!(ag.w0 > 0)) d.add(path + ".w0", "must be positive");
      for (double A : ag.A_path)
        if (!(A > 0)) {
          d.add(path + ".A", "must be positive");
          break;
        }
    }
    d.raise_if_any();
    for (const auto& msg : validate_dynamic_economy(sc.dyn, sc.dyn.T))
      d.add("agents", msg);
  }
  d.raise_if_any();
  return sc;
}

Scenario load_scenario(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw scenario_error(file + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& sc) {
  json root;
  root["model"] = sc.model;
  root["agents"] = json::array();
  if (sc.model == "static") {
    for (const auto& ag : sc.st.agents) {
      json a;
      a["id"] = ag.id;
      a["A"] = ag.tech.A;
      if (ag.tech.kind == TechKind::CobbDouglas) a["alpha"] = ag.tech.alpha;
      a["gamma"] = ag.gamma;
      a["S"] = ag.S;
      root["agents"].push_back(std::move(a));
    }
  } else {
    root["horizon"] = sc.dyn.T;
    for (const auto& ag : sc.dyn.agents) {
      json a;
      a["id"] = ag.id;
      if (ag.A_path.size() == 1)
        a["A"] = ag.A_path[0];
      else
        a["A"] = ag.A_path;
      a["beta"] = ag.beta;
      a["gamma"] = ag.gamma;
      a["w0"] = ag.w0;
      root["agents"].push_back(std::move(a));
    }
  }
  if (sc.sweep) {
    json sw;
    sw["agent"] = sc.sweep->agent_id;
    sw["param"] = sc.sweep->param == Param::A ? "A" : "gamma";
    sw["from"] = sc.sweep->from;
    sw["to"] = sc.sweep->to;
    sw["steps"] = sc.sweep->steps;
    root["sweep"] = std::move(sw);
  }
  return root.dump(2) + "\n";
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace credeq::cli
