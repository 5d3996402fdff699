#include "equidivide/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "equidivide/errors.hpp"

namespace equidivide {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 0 || n_ > SubsetId::kMaxItems) {
    throw PreconditionError("graph must have between 0 and 64 vertices");
  }
  adjacency_.assign(n_, SubsetId());
  std::set<std::pair<int, int>> seen;
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw PreconditionError("edge endpoint out of range");
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw PreconditionError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    }
    adjacency_[u] = adjacency_[u].with(v);
    adjacency_[v] = adjacency_[v].with(u);
  }
  for (int v = 0; v < n_; ++v) max_degree_ = std::max(max_degree_, degree(v));
}

Graph Graph::parse_edge_list(std::istream& in) {
  std::string line;
  int n = -1;
  long declared = -1;
  std::vector<std::pair<int, int>> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == 'c' || head[0] == '#') continue;
    if (head == "p") {
      if (n >= 0) throw InputError("line " + std::to_string(lineno) + ": repeated header");
      if (!(ls >> n >> declared) || n < 0 || declared < 0) {
        throw InputError("line " + std::to_string(lineno) + ": expected 'p <vertices> <edges>'");
      }
      continue;
    }
    if (n < 0) throw InputError("line " + std::to_string(lineno) + ": edge before header");
    int u = 0, v = 0;
    std::istringstream es(line);
    std::string rest;
    if (!(es >> u >> v) || (es >> rest)) {
      throw InputError("line " + std::to_string(lineno) + ": expected 'u v'");
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw InputError("line " + std::to_string(lineno) + ": vertex out of range");
    }
    edges.emplace_back(u - 1, v - 1);
  }
  if (n < 0) throw InputError("missing 'p' header");
  if (static_cast<long>(edges.size()) != declared) {
    throw InputError("header declares " + std::to_string(declared) + " edges, found " +
                     std::to_string(edges.size()));
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
}

Graph Graph::read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_edge_list(in);
}

double cut_value(const Graph& g, SubsetId s) {
  SubsetId outside = SubsetId::full(g.vertex_count()).minus(s);
  int count = 0;
  for (int u : s.items()) count += (g.neighbors(u) & outside).size();
  return count;
}

double density_value(const Graph& g, SubsetId s) {
  if (s.is_empty()) return 0.0;
  int twice = 0;
  for (int u : s.items()) twice += (g.neighbors(u) & s).size();
  return (twice / 2) / static_cast<double>(s.size());
}

}  // namespace equidivide
