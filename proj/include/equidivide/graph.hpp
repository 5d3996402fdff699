#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "equidivide/subset.hpp"

namespace equidivide {

// Simple undirected graph on vertices 0..n-1. Vertices double as items,
// so n is limited to SubsetId::kMaxItems.
class Graph {
 public:
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

  // "p <n_vertices> <n_edges>" header, then one 1-indexed "u v" per line.
  // Blank lines and lines starting with 'c' or '#' are skipped.
  static Graph parse_edge_list(std::istream& in);
  static Graph read_edge_list(const std::string& path);

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int degree(int v) const { return adjacency_[v].size(); }
  SubsetId neighbors(int v) const { return adjacency_[v]; }
  int max_degree() const { return max_degree_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<SubsetId> adjacency_;
  int max_degree_ = 0;
};

// Number of edges with exactly one endpoint in s.
double cut_value(const Graph& g, SubsetId s);

// Edges inside s divided by |s|; 0 for the empty set.
double density_value(const Graph& g, SubsetId s);

}  // namespace equidivide
