#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>

#include "equidivide/alloc_eq.hpp"
#include "equidivide/cake_eq.hpp"
#include "equidivide/errors.hpp"
#include "equidivide/graph_apps.hpp"
#include "equidivide/io.hpp"
#include "equidivide/oracles.hpp"
#include "equidivide/parallel.hpp"
#include "equidivide/rounding.hpp"
#include "equidivide/sperner_ef.hpp"

namespace equidivide {

namespace {

struct Args {
  std::string instance;
  std::string allocation;
  std::string graph;
  std::optional<double> epsilon_override;
  bool allow_empty = false;
  std::uint64_t seed = 1;
  int threads = 0;
  double epsilon = 0.0;
  std::optional<double> gamma;
  bool fixed_point = false;
  int k = 0;
  int depth = 6;
  int refine = 8;
  bool ef = false;
  bool eq = false;
  int budget = 3;
  double alpha = 0.0;
  std::optional<double> bound;
  int n = 2;
  int m = 8;
  std::string kind = "table";
};

Json alloc_result_json(const AllocResult& r) {
  Json j = allocation_to_json(r.allocation);
  j["bound"] = r.bound;
  j["lambda"] = r.lambda;
  j["path"] = path_name(r.path);
  j["certified"] = r.certified;
  if (r.division) {
    j["epsilon"] = r.epsilon;
    j["division"] = division_to_json(*r.division)["cuts"];
  }
  if (r.certificates) {
    const auto& c = *r.certificates;
    j["certificates"] = {{"cake_gap", c.cake_gap},         {"cake_bound", c.cake_bound},
                         {"unpadded_gap", c.unpadded_gap}, {"unpadded_bound", c.unpadded_bound},
                         {"min_length", c.min_length},     {"length_bound", c.length_bound}};
  }
  return j;
}

Json partition_json(const GraphPartition& p) {
  Json parts = Json::array();
  for (SubsetId s : p.parts) {
    Json items = Json::array();
    for (int v : s.items()) items.push_back(v + 1);
    parts.push_back(std::move(items));
  }
  return Json{{"parts", std::move(parts)}, {"values", p.values}, {"gap", p.gap},
              {"bound", p.bound},          {"nonempty", p.nonempty}, {"path", path_name(p.path)}};
}

int cmd_alloc(const Args& a, std::ostream& out) {
  Instance inst = instance_from_json(read_json_file(a.instance));
  AllocOptions opts;
  opts.require_nonempty = !a.allow_empty;
  opts.epsilon = a.epsilon_override;
  opts.threads = a.threads;
  opts.seed = a.seed;
  opts.check_certificates = true;
  AllocResult r = inst.identical && !is_nonnegative(inst.valuation(0), a.seed)
                      ? alloc_apx_eq_identical(inst.valuation(0), inst.agents(), opts)
                      : alloc_apx_eq(inst, opts);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  out << alloc_result_json(r).dump(2) << "\n";
  return 0;
}

int cmd_cake(const Args& a, std::ostream& out) {
  Json j = read_json_file(a.instance);
  std::vector<CakeValuation> fs;
  bool identical = false;
  bool burnt = false;
  if (is_cake_instance(j)) {
    fs = cakes_from_json(j);
    identical = j.contains("identical");
  } else {
    Instance inst = instance_from_json(j);
    fs = cake_construct(inst.valuations);
    identical = inst.identical;
  }
  for (const auto& f : fs) burnt = burnt || !f.is_nonnegative();
  double gamma = 0.0;
  for (const auto& f : fs) gamma = std::max(gamma, f.gamma());
  if (a.gamma) gamma = *a.gamma;

  Json result;
  if (a.fixed_point) {
    FixedPointOptions fp;
    fp.tol = a.epsilon / 2;  // values within tol of the mean
    auto r = fixed_point_eq(fs, gamma, fp);
    if (!r) throw GuaranteeError("fixed-point iteration did not converge");
    result["cuts"] = r->division.cut_strings();
    result["values"] = r->values;
    result["gap"] = r->gap;
    result["iterations"] = r->iterations;
  } else {
    EqParams p = EqParams::make(a.epsilon, gamma);
    CakeEqResult r = identical && burnt ? cake_apx_eq_identical(fs.front(), static_cast<int>(fs.size()), p, a.threads)
                                        : cake_apx_eq(fs, p, a.threads);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    result["cuts"] = r.division.cut_strings();
    result["values"] = r.values;
    result["gap"] = r.gap;
    result["tau"] = r.tau;
  }
  result["epsilon"] = a.epsilon;
  result["gamma"] = gamma;
  out << result.dump(2) << "\n";
  return 0;
}

std::shared_ptr<const Graph> load_graph(const std::string& path) {
  return std::make_shared<const Graph>(Graph::read_edge_list(path));
}

int cmd_graph_cut(const Args& a, std::ostream& out) {
  AllocOptions opts;
  opts.threads = a.threads;
  opts.check_certificates = true;
  GraphPartition p = equitable_cut_partition(load_graph(a.graph), a.k, opts);
  out << partition_json(p).dump(2) << "\n";
  return 0;
}

int cmd_graph_density(const Args& a, std::ostream& out) {
  AllocOptions opts;
  opts.threads = a.threads;
  opts.check_certificates = true;
  DensityPartition d = density_partition(load_graph(a.graph), a.k, opts);
  Json j = partition_json(d.nonempty);
  j["empty_allowed"] = partition_json(d.empty_allowed);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_ef3(const Args& a, std::ostream& out) {
  Instance inst = instance_from_json(read_json_file(a.instance));
  Ef3Result r = constructive_ef3(inst, a.depth, a.refine, a.threads);
  Json j = allocation_to_json(r.allocation);
  j["residual_envy"] = r.residual_envy;
  j["delta"] = r.delta;
  j["condition_met"] = r.condition_met;
  if (r.cake) {
    j["division"] = division_to_json(r.cake->division);
    j["refine_rounds_completed"] = r.cake->rounds_completed;
    j["refinement_stalled"] = r.cake->refinement_stalled;
  }
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"i", w.i + 1}, {"j", w.j + 1}, {"budget", w.budget()}});
  }
  j["witnesses"] = std::move(witnesses);
  Json unresolved = Json::array();
  for (auto [i, k] : r.unresolved) unresolved.push_back({i + 1, k + 1});
  j["unresolved"] = std::move(unresolved);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const Args& a, std::ostream& out) {
  Instance inst = instance_from_json(read_json_file(a.instance));
  Json aj = read_json_file(a.allocation);
  std::vector<SubsetId> bundles = bundles_from_json(aj, inst.m);
  Allocation alloc;
  try {
    alloc = Allocation::make(inst, bundles);
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  const bool eq = a.eq;
  Json pairs = Json::array();
  bool all = true;
  for (int i = 0; i < inst.agents(); ++i) {
    for (int j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      auto w = eq ? find_eqk_witness(inst.valuation(i), inst.valuation(j), alloc, i, j, a.budget, a.alpha)
                  : find_efk_witness(inst.valuation(i), alloc, i, j, a.budget, a.alpha);
      Json p{{"i", i + 1}, {"j", j + 1}, {"found", w.has_value()}};
      if (w) p["budget"] = w->budget();
      all = all && w.has_value();
      pairs.push_back(std::move(p));
    }
  }
  Json j{{"criterion", eq ? "EQ" : "EF"}, {"budget", a.budget}, {"alpha", a.alpha},
         {"gap", alloc.gap()},             {"pairs", std::move(pairs)}, {"pass", all}};
  out << j.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_count(const Args& a, std::ostream& out) {
  Instance inst = instance_from_json(read_json_file(a.instance));
  const double lambda = inst.marginal_bound();
  const double bound = a.bound.value_or(5.0 * lambda + 1.0);
  const std::uint64_t count = count_nearly_equitable(inst, bound, a.threads);
  const double lower = counting_lower_bound(inst.m, inst.agents());
  const bool applicable = inst.m >= 4 * inst.agents() && !a.bound;
  const bool pass = static_cast<double>(count) >= std::ceil(lower - 1e-9);
  Json j{{"count", count}, {"bound", bound}, {"lower_bound", std::ceil(lower - 1e-9)},
         {"applicable", applicable}, {"pass", pass}};
  out << j.dump(2) << "\n";
  return applicable && !pass ? 4 : 0;
}

// Random nonnegative instance for experiments.
int cmd_demo(const Args& a, std::ostream& out) {
  if (a.n < 1 || a.m < 1 || a.m > 14) throw PreconditionError("demo supports n >= 1 and 1 <= m <= 14");
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SetFunction> fs;
  for (int i = 0; i < a.n; ++i) {
    if (a.kind == "additive") {
      std::vector<double> w(a.m);
      for (double& x : w) x = std::round(unit(rng) * 100) / 100;
      fs.push_back(SetFunction::additive(std::move(w)));
    } else if (a.kind == "table") {
      std::vector<double> w(a.m);
      for (double& x : w) x = 2 * unit(rng) - 1;
      std::vector<double> t(std::size_t{1} << a.m, 0.0);
      for (std::size_t s = 1; s < t.size(); ++s) {
        double sum = 0.0;
        for (int k = 0; k < a.m; ++k) {
          if (s >> k & 1u) sum += w[k];
        }
        t[s] = std::round((std::abs(sum) + 0.5 * unit(rng)) * 1000) / 1000;
      }
      fs.push_back(SetFunction::table(a.m, std::move(t)));
    } else {
      throw PreconditionError("demo kind must be table or additive");
    }
  }
  out << instance_to_json(Instance::make(std::move(fs))).dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximately equitable and envy-free division of cakes and items"};
  app.require_subcommand(1);
  Args a;
  a.threads = default_threads();

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", a.threads, "Worker threads (default EQUIDIVIDE_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };

  auto* alloc = app.add_subcommand("alloc-eq", "Approximately equitable item allocation");
  alloc->add_option("instance", a.instance, "Instance JSON")->required();
  alloc->add_option("--epsilon-override", a.epsilon_override, "Cake accuracy instead of 1/(8 m Lambda)");
  alloc->add_flag("--allow-empty", a.allow_empty, "Allow empty bundles (bound 3 Lambda + 1)");
  alloc->add_option("--seed", a.seed, "Seed for sampled checks");
  add_threads(alloc);

  auto* cake = app.add_subcommand("cake-eq", "Approximately equitable contiguous cake division");
  cake->add_option("instance", a.instance, "Cake or item instance JSON")->required();
  cake->add_option("--epsilon", a.epsilon, "Target gap")->required()->check(CLI::PositiveNumber);
  cake->add_option("--gamma", a.gamma, "Lipschitz constant (default from the valuations)");
  cake->add_flag("--fixed-point", a.fixed_point, "Use the fixed-point iteration");
  add_threads(cake);

  auto* gcut = app.add_subcommand("graph-cut", "Partition with nearly equal cut values");
  gcut->add_option("graph", a.graph, "Edge list file")->required();
  gcut->add_option("-k", a.k, "Number of parts")->required();
  add_threads(gcut);

  auto* gden = app.add_subcommand("graph-density", "Partition with nearly equal densities");
  gden->add_option("graph", a.graph, "Edge list file")->required();
  gden->add_option("-k", a.k, "Number of parts")->required();
  add_threads(gden);

  auto* ef3 = app.add_subcommand("ef3", "Envy-free up to three items via Sperner search");
  ef3->add_option("instance", a.instance, "Instance JSON")->required();
  ef3->add_option("--depth", a.depth, "Subdivision depth");
  ef3->add_option("--refine", a.refine, "Refinement rounds");
  add_threads(ef3);

  auto* verify = app.add_subcommand("verify", "Search for EFk / EQk witnesses");
  verify->add_option("instance", a.instance, "Instance JSON")->required();
  verify->add_option("allocation", a.allocation, "Allocation JSON")->required();
  auto* ef_flag = verify->add_flag("--ef", a.ef, "Envy-freeness witnesses (default)");
  verify->add_flag("--eq", a.eq, "Equitability witnesses")->excludes(ef_flag);
  verify->add_option("--budget", a.budget, "Total moves allowed")->check(CLI::Range(0, 4));
  verify->add_option("--alpha", a.alpha, "Additive slack");

  auto* count = app.add_subcommand("count", "Count nearly equitable allocations");
  count->add_option("instance", a.instance, "Instance JSON")->required();
  count->add_option("--bound", a.bound, "Gap bound (default 5 Lambda + 1)");
  add_threads(count);

  auto* demo = app.add_subcommand("demo", "Print a random nonnegative instance");
  demo->add_option("--n", a.n, "Agents");
  demo->add_option("--m", a.m, "Items");
  demo->add_option("--kind", a.kind, "table or additive");
  demo->add_option("--seed", a.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*alloc) return cmd_alloc(a, out);
    if (*cake) return cmd_cake(a, out);
    if (*gcut) return cmd_graph_cut(a, out);
    if (*gden) return cmd_graph_density(a, out);
    if (*ef3) return cmd_ef3(a, out);
    if (*verify) return cmd_verify(a, out);
    if (*count) return cmd_count(a, out);
    if (*demo) return cmd_demo(a, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const GuaranteeError& e) {
    err << "internal failure: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace equidivide
