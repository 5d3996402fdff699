#include "equidivide/io.hpp"

#include <fstream>
#include <map>
#include <numeric>

#include "equidivide/errors.hpp"

namespace equidivide {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> real_list(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InputError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::shared_ptr<const Graph> graph_from_json(const Json& j, int m) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InputError("edges must be pairs of vertex numbers");
    }
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 1 || v < 1 || u > m || v > m) throw InputError("edge vertex out of range");
    edges.emplace_back(u - 1, v - 1);
  }
  try {
    return std::make_shared<const Graph>(m, std::move(edges));
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
}

// Wraps an exact rational "num/den" or a plain integer.
std::pair<std::int64_t, std::int64_t> parse_rational(const Json& j) {
  if (j.is_number_integer()) return {j.get<std::int64_t>(), 1};
  if (!j.is_string()) throw InputError("cut must be a \"num/den\" string");
  const std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) throw InputError("bad rational " + s);
    if (slash == std::string::npos) return {num, 1};
    std::int64_t den = std::stoll(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1 || den <= 0) throw InputError("bad rational " + s);
    return {num, den};
  } catch (const std::logic_error&) {
    throw InputError("bad rational " + s);
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

SetFunction set_function_from_json(const Json& j, int default_m) {
  const int m = j.is_object() && !j.contains("m") && default_m >= 0 ? default_m : int_field(j, "m");
  if (m < 0 || m > SubsetId::kMaxItems) throw InputError("m out of range");
  const Json& kind_json = field(j, "kind");
  if (!kind_json.is_string()) throw InputError("kind must be a string");
  const std::string kind = kind_json.get<std::string>();
  std::optional<SetFunction> f;
  try {
    if (kind == "table") {
      if (m > SetFunction::kMaxTableItems) throw InputError("table too large");
      const Json& values = field(j, "values");
      if (!values.is_object()) throw InputError("table values must be an object keyed by bitmask");
      const std::size_t count = std::size_t{1} << m;
      std::vector<double> table(count, 0.0);
      std::vector<char> seen(count, 0);
      for (const auto& [key, value] : values.items()) {
        std::size_t used = 0;
        unsigned long long mask = 0;
        try {
          mask = std::stoull(key, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used != key.size() || key.empty() || mask >= count) throw InputError("bad table key \"" + key + "\"");
        if (!value.is_number()) throw InputError("table value for \"" + key + "\" must be a number");
        table[mask] = value.get<double>();
        seen[mask] = 1;
      }
      for (std::size_t s = 1; s < count; ++s) {
        if (!seen[s]) throw InputError("table is missing key \"" + std::to_string(s) + "\"");
      }
      f = SetFunction::table(m, std::move(table));
    } else if (kind == "additive") {
      auto w = real_list(j, "weights");
      if (static_cast<int>(w.size()) != m) throw InputError("additive needs m weights");
      f = SetFunction::additive(std::move(w));
    } else if (kind == "cut") {
      f = SetFunction::cut(graph_from_json(j, m));
    } else if (kind == "density") {
      f = SetFunction::density(graph_from_json(j, m));
    } else if (kind == "quasilinear") {
      SetFunction reward = set_function_from_json(field(j, "reward"), m);
      if (reward.items() != m) throw InputError("reward must have the same m");
      auto costs = real_list(j, "costs");
      if (static_cast<int>(costs.size()) != m) throw InputError("quasilinear needs m costs");
      f = SetFunction::quasilinear(std::move(reward), std::move(costs));
    } else {
      throw InputError("unknown kind \"" + kind + "\"");
    }
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  if (j.contains("lambda")) {
    if (!j["lambda"].is_number()) throw InputError("lambda must be a number");
    f = f->with_marginal_bound(j["lambda"].get<double>());
  }
  return *f;
}

Json set_function_to_json(const SetFunction& f) {
  Json j;
  j["m"] = f.items();
  j["kind"] = kind_name(f.kind());
  switch (f.kind()) {
    case SetFunctionKind::kTable: {
      Json values = Json::object();
      const auto& t = f.table_values();
      for (std::size_t s = 1; s < t.size(); ++s) values[std::to_string(s)] = t[s];
      j["values"] = std::move(values);
      break;
    }
    case SetFunctionKind::kAdditive:
      j["weights"] = f.weights();
      break;
    case SetFunctionKind::kCut:
    case SetFunctionKind::kDensity: {
      Json edges = Json::array();
      for (auto [u, v] : f.graph()->edges()) edges.push_back({u + 1, v + 1});
      j["edges"] = std::move(edges);
      break;
    }
    case SetFunctionKind::kQuasilinear:
      j["reward"] = set_function_to_json(*f.reward());
      j["costs"] = f.weights();
      break;
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  const int n = int_field(j, "n");
  const int m = int_field(j, "m");
  if (n < 1) throw InputError("n must be positive");
  Instance inst;
  if (j.contains("identical")) {
    SetFunction v = set_function_from_json(j["identical"], m);
    if (v.items() != m) throw InputError("valuation m differs from instance m");
    inst = Instance::make_identical(v, n);
  } else {
    const Json& vals = field(j, "valuations");
    if (!vals.is_array() || static_cast<int>(vals.size()) != n) throw InputError("need n valuations");
    std::vector<SetFunction> fs;
    for (const auto& v : vals) {
      fs.push_back(set_function_from_json(v, m));
      if (fs.back().items() != m) throw InputError("valuation m differs from instance m");
    }
    inst = Instance::make(std::move(fs));
  }
  return inst;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.agents();
  j["m"] = inst.m;
  if (inst.identical) {
    j["identical"] = set_function_to_json(inst.valuations.front());
  } else {
    Json vals = Json::array();
    for (const auto& v : inst.valuations) vals.push_back(set_function_to_json(v));
    j["valuations"] = std::move(vals);
  }
  return j;
}

bool is_cake_instance(const Json& j) {
  if (!j.is_object()) return false;
  if (j.contains("cakes")) return true;
  if (!j.contains("identical") || !j["identical"].is_object()) return false;
  const Json& c = j["identical"];
  return c.contains("breakpoints") || (c.contains("kind") && c["kind"] == "length");
}

std::vector<CakeValuation> cakes_from_json(const Json& j) {
  const int n = j.contains("n") || !j.contains("cakes") || !j["cakes"].is_array() ? int_field(j, "n")
                                                                                   : static_cast<int>(j["cakes"].size());
  if (n < 1) throw InputError("n must be positive");
  auto one = [](const Json& c) {
    try {
      if (c.contains("kind")) {
        if (c["kind"] != "length") throw InputError("unknown cake kind");
        return CakeValuation::length();
      }
      return CakeValuation::density(real_list(c, "breakpoints"), real_list(c, "densities"));
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
  };
  if (j.contains("identical")) return std::vector<CakeValuation>(n, one(j["identical"]));
  const Json& cakes = field(j, "cakes");
  if (!cakes.is_array() || static_cast<int>(cakes.size()) != n) throw InputError("need n cakes");
  std::vector<CakeValuation> out;
  for (const auto& c : cakes) out.push_back(one(c));
  return out;
}

Json allocation_to_json(const Allocation& a) {
  Json bundles = Json::array();
  for (SubsetId b : a.bundles) {
    Json items = Json::array();
    for (int k : b.items()) items.push_back(k + 1);
    bundles.push_back(std::move(items));
  }
  Json j;
  j["bundles"] = std::move(bundles);
  j["values"] = a.values;
  j["gap"] = a.gap();
  j["nonempty"] = a.all_nonempty();
  return j;
}

std::vector<SubsetId> bundles_from_json(const Json& j, int m) {
  const Json& bundles = field(j, "bundles");
  if (!bundles.is_array()) throw InputError("bundles must be an array");
  std::vector<SubsetId> out;
  for (const auto& b : bundles) {
    if (!b.is_array()) throw InputError("each bundle must be an array of items");
    SubsetId s;
    for (const auto& item : b) {
      if (!item.is_number_integer()) throw InputError("items must be integers");
      int k = item.get<int>();
      if (k < 1 || k > m) throw InputError("item " + std::to_string(k) + " out of range");
      if (s.contains(k - 1)) throw InputError("item " + std::to_string(k) + " repeated in a bundle");
      s = s.with(k - 1);
    }
    out.push_back(s);
  }
  return out;
}

Json division_to_json(const CakeDivision& d) {
  Json j;
  j["cuts"] = d.cut_strings();
  if (!d.is_ordered()) {
    Json owners = Json::array();
    for (int o : d.owners()) owners.push_back(o + 1);
    j["owners"] = std::move(owners);
  }
  return j;
}

CakeDivision division_from_json(const Json& j) {
  const Json& cuts = field(j, "cuts");
  if (!cuts.is_array() || cuts.size() < 2) throw InputError("cuts must list at least two points");
  std::vector<std::pair<std::int64_t, std::int64_t>> parsed;
  std::int64_t den = 1;
  for (const auto& c : cuts) {
    parsed.push_back(parse_rational(c));
    den = std::lcm(den, parsed.back().second);
  }
  std::vector<std::int64_t> grid;
  for (auto [num, d] : parsed) grid.push_back(num * (den / d));
  std::vector<int> owners;
  if (j.contains("owners")) {
    for (const auto& o : j["owners"]) {
      if (!o.is_number_integer()) throw InputError("owners must be integers");
      owners.push_back(o.get<int>() - 1);
    }
  }
  try {
    return CakeDivision(den, std::move(grid), std::move(owners));
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
}

}  // namespace equidivide
