#include "equidivide/sperner_ef.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "equidivide/alloc_eq.hpp"
#include "equidivide/errors.hpp"
#include "equidivide/parallel.hpp"

namespace equidivide {

namespace {

constexpr double kTieTol = 1e-12;
constexpr std::int64_t kOutputDen = std::int64_t{1} << 30;

struct CoordHash {
  std::size_t operator()(const std::vector<std::int64_t>& c) const {
    std::size_t h = 0;
    for (auto x : c) h ^= std::hash<std::int64_t>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Cut positions for piece lengths y, clamped so pieces stay valid intervals.
std::vector<double> cuts_from_lengths(std::span<const double> y) {
  std::vector<double> cuts(y.size() + 1, 0.0);
  for (std::size_t k = 0; k < y.size(); ++k) cuts[k + 1] = std::clamp(cuts[k] + y[k], cuts[k], 1.0);
  cuts.back() = 1.0;
  return cuts;
}

// Picks the label from per-piece values and which pieces are nonempty.
int choose_label(const std::vector<double>& values, const std::vector<bool>& nonempty) {
  const int n = static_cast<int>(values.size());
  int best = 0;
  for (int k = 1; k < n; ++k) {
    if (values[k] > values[best]) best = k;
  }
  if (nonempty[best]) return best;
  const double top = values[best];
  const double tol = kTieTol * std::max(1.0, std::abs(top));
  for (int k = 0; k < n; ++k) {
    if (nonempty[k] && values[k] >= top - tol) return k;
  }
  throw PreconditionError("only empty pieces attain the maximum; valuation is not hungry or not globally nonnegative");
}

}  // namespace

Triangulation barycentric_triangulate(int n, int depth, int owner_offset) {
  if (n < 2 || n > 4) throw PreconditionError("triangulation supports 2 <= n <= 4");
  if (depth < 1) throw PreconditionError("depth must be at least 1");
  const auto perms = permutations(n);
  double cells = std::pow(static_cast<double>(perms.size()), depth);
  if (cells > static_cast<double>(Triangulation::kMaxSimplices)) {
    throw PreconditionError("depth " + std::to_string(depth) + " gives too many simplices for n = " +
                            std::to_string(n));
  }
  std::int64_t lcm = 1;
  for (int k = 1; k <= n; ++k) lcm = std::lcm(lcm, static_cast<std::int64_t>(k));

  std::int64_t den = 1;
  std::vector<std::vector<std::int64_t>> coords(n, std::vector<std::int64_t>(n, 0));
  for (int j = 0; j < n; ++j) coords[j][j] = 1;
  std::vector<int> dims(n, 0);
  std::vector<int> cell_list(n);
  std::iota(cell_list.begin(), cell_list.end(), 0);

  for (int level = 1; level <= depth; ++level) {
    std::vector<std::vector<std::int64_t>> next_coords;
    std::vector<int> next_dims;
    std::vector<int> next_cells;
    next_cells.reserve(cell_list.size() * perms.size());
    std::unordered_map<std::vector<std::int64_t>, int, CoordHash> index;
    auto intern = [&](std::vector<std::int64_t>&& c, int dim) {
      auto [it, inserted] = index.try_emplace(c, static_cast<int>(next_coords.size()));
      if (inserted) {
        next_coords.push_back(std::move(c));
        next_dims.push_back(dim);
      } else if (next_dims[it->second] != dim) {
        throw GuaranteeError("inconsistent face dimension in subdivision");
      }
      return it->second;
    };
    const std::size_t count = cell_list.size() / n;
    std::vector<std::int64_t> sum(n);
    for (std::size_t c = 0; c < count; ++c) {
      const int* verts = cell_list.data() + c * n;
      for (const auto& p : perms) {
        std::fill(sum.begin(), sum.end(), 0);
        for (int k = 0; k < n; ++k) {
          const auto& v = coords[verts[p[k]]];
          for (int j = 0; j < n; ++j) sum[j] += v[j];
          std::vector<std::int64_t> bary(n);
          for (int j = 0; j < n; ++j) bary[j] = sum[j] * (lcm / (k + 1));
          next_cells.push_back(intern(std::move(bary), k));
        }
      }
    }
    den *= lcm;
    coords = std::move(next_coords);
    dims = std::move(next_dims);
    cell_list = std::move(next_cells);
  }

  Triangulation t;
  t.n = n;
  t.depth = depth;
  const int offset = owner_offset < 0 ? depth : owner_offset;
  t.vertices.resize(coords.size());
  for (std::size_t v = 0; v < coords.size(); ++v) {
    t.vertices[v] = SimplexVertex{std::move(coords[v]), den, dims[v], (dims[v] + offset) % n, -1};
  }
  t.cells = std::move(cell_list);
  return t;
}

int sperner_label(const SimplexVertex& v, std::span<const CakeValuation> fs) {
  const int n = static_cast<int>(v.coords.size());
  if (static_cast<int>(fs.size()) != n) throw PreconditionError("one valuation per agent");
  std::vector<double> values(n);
  std::vector<bool> nonempty(n);
  std::int64_t at = 0;
  for (int k = 0; k < n; ++k) {
    GridInterval piece{at, at + v.coords[k], v.den};
    values[k] = fs[v.owner].eval(piece);
    nonempty[k] = v.coords[k] > 0;
    at += v.coords[k];
  }
  return choose_label(values, nonempty);
}

int sperner_label(std::span<const double> y, int owner, std::span<const CakeValuation> fs) {
  const int n = static_cast<int>(y.size());
  if (static_cast<int>(fs.size()) != n) throw PreconditionError("one valuation per agent");
  auto cuts = cuts_from_lengths(y);
  std::vector<double> values(n);
  std::vector<bool> nonempty(n);
  for (int k = 0; k < n; ++k) {
    values[k] = fs[owner].eval(cuts[k], cuts[k + 1]);
    nonempty[k] = y[k] > 0.0;
  }
  return choose_label(values, nonempty);
}

double max_envy(std::span<const CakeValuation> fs, const CakeDivision& division) {
  const int n = division.agents();
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double own = fs[i].eval(division.interval_of(i));
    for (int k = 0; k < n; ++k) worst = std::max(worst, fs[i].eval(division.piece(k)) - own);
  }
  return worst;
}

namespace {

// Fully-labeled cell in the current zoom: corner points and agent -> piece.
struct Found {
  std::vector<std::vector<double>> corners;
  std::vector<int> owners;
  std::vector<int> labels;
};

std::optional<std::size_t> first_full_cell(std::size_t cells, int n, const std::vector<int>& cell_list,
                                           const std::vector<int>& labels) {
  const int full = (1 << n) - 1;
  for (std::size_t c = 0; c < cells; ++c) {
    int mask = 0;
    for (int k = 0; k < n; ++k) mask |= 1 << labels[cell_list[c * n + k]];
    if (mask == full) return c;
  }
  return std::nullopt;
}

}  // namespace

EfCakeResult approx_ef_cake(std::span<const CakeValuation> fs, int depth, int refine_rounds, int threads) {
  const int n = static_cast<int>(fs.size());
  if (refine_rounds < 0) throw PreconditionError("refine rounds must be nonnegative");
  if (n == 1) {
    CakeDivision d(1, {0, 1});
    return EfCakeResult{d, 0.0, 0, false, 0.0, {{1.0}}};
  }
  Triangulation t = barycentric_triangulate(n, depth);
  std::vector<int> labels(t.vertices.size());
  parallel_for(0, t.vertices.size(), threads, [&](std::size_t v) { labels[v] = sperner_label(t.vertices[v], fs); });
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    t.vertices[v].label = labels[v];
    if (t.vertices[v].coords[labels[v]] == 0) throw GuaranteeError("label on a facet it must avoid");
  }
  auto cell = first_full_cell(t.cell_count(), n, t.cells, labels);
  if (!cell) throw GuaranteeError("no fully-labeled simplex in a Sperner-labeled triangulation");

  Found found;
  for (int v : t.cell(*cell)) {
    const auto& sv = t.vertices[v];
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = static_cast<double>(sv.coords[k]) / static_cast<double>(sv.den);
    found.corners.push_back(std::move(y));
    found.owners.push_back(sv.owner);
    found.labels.push_back(sv.label);
  }

  EfCakeResult result{CakeDivision(1, {0, 1}), 0.0, 0, false, 0.0, {}};
  if (refine_rounds > 0) {
    const Triangulation unit = barycentric_triangulate(n, 1, 0);
    const std::size_t nv = unit.vertices.size();
    for (int round = 0; round < refine_rounds; ++round) {
      // Points of the unit subdivision mapped into the current cell.
      std::vector<std::vector<double>> points(nv, std::vector<double>(n, 0.0));
      for (std::size_t v = 0; v < nv; ++v) {
        const auto& sv = unit.vertices[v];
        for (int j = 0; j < n; ++j) {
          if (sv.coords[j] == 0) continue;
          double w = static_cast<double>(sv.coords[j]) / static_cast<double>(sv.den);
          for (int k = 0; k < n; ++k) points[v][k] += w * found.corners[j][k];
        }
      }
      // Labels for every possible owner; owner rotations reuse them.
      std::vector<std::vector<int>> by_owner(n, std::vector<int>(nv));
      parallel_for(0, nv * n, threads, [&](std::size_t job) {
        std::size_t v = job / n;
        int o = static_cast<int>(job % n);
        by_owner[o][v] = sperner_label(points[v], o, fs);
      });
      bool progressed = false;
      for (int offset = 0; offset < n && !progressed; ++offset) {
        std::vector<int> lab(nv);
        for (std::size_t v = 0; v < nv; ++v) lab[v] = by_owner[(unit.vertices[v].dim + offset) % n][v];
        auto c = first_full_cell(unit.cell_count(), n, unit.cells, lab);
        if (!c) continue;
        Found next;
        for (int v : unit.cell(*c)) {
          next.corners.push_back(points[v]);
          next.owners.push_back((unit.vertices[v].dim + offset) % n);
          next.labels.push_back(lab[v]);
        }
        found = std::move(next);
        progressed = true;
      }
      if (!progressed) {
        result.refinement_stalled = true;
        break;
      }
      ++result.rounds_completed;
    }
  }

  std::vector<double> centroid(n, 0.0);
  for (const auto& c : found.corners) {
    for (int k = 0; k < n; ++k) centroid[k] += c[k] / n;
  }
  for (int k = 0; k < n; ++k) {
    double lo = 1.0, hi = 0.0;
    for (const auto& c : found.corners) {
      lo = std::min(lo, c[k]);
      hi = std::max(hi, c[k]);
    }
    result.resolution = std::max(result.resolution, hi - lo);
  }
  std::vector<int> piece_owner(n, -1);
  for (int v = 0; v < n; ++v) piece_owner[found.labels[v]] = found.owners[v];
  result.division = CakeDivision::from_real_cuts(cuts_from_lengths(centroid), kOutputDen, piece_owner);
  result.max_envy = max_envy(fs, result.division);
  result.simplex = std::move(found.corners);
  return result;
}

std::optional<double> value_gap(const Instance& inst) {
  if (inst.m > 14) throw PreconditionError("value gap enumeration needs m <= 14");
  const std::uint64_t count = std::uint64_t{1} << inst.m;
  std::optional<double> delta;
  for (int i = 0; i < inst.agents(); ++i) {
    std::vector<double> values(count);
    for (std::uint64_t s = 0; s < count; ++s) values[s] = inst.valuation(i).eval(SubsetId(s));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 1; k < values.size(); ++k) {
      double d = values[k] - values[k - 1];
      if (!delta || d < *delta) delta = d;
    }
  }
  return delta;
}

Ef3Result constructive_ef3(const Instance& inst, int depth, int refine_rounds, int threads) {
  const int n = inst.agents();
  const int m = inst.m;
  for (int i = 0; i < n; ++i) {
    if (!is_nonnegative(inst.valuation(i))) throw PreconditionError("valuations must be nonnegative");
  }
  Ef3Result r;
  auto delta = value_gap(inst);
  if (!delta) {
    r.degenerate = true;
    r.condition_met = true;
    r.allocation = Allocation::make(inst, round_robin(m, n));
  } else {
    r.delta = *delta;
    const double eps = *delta / 2;
    std::vector<SetFunction> shifted;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (int i = 0; i < n; ++i) {
      std::vector<double> values(count, 0.0);
      for (std::uint64_t s = 1; s < count; ++s) values[s] = inst.valuation(i).eval(SubsetId(s)) + eps;
      shifted.push_back(SetFunction::table(m, std::move(values)));
    }
    Instance shifted_inst = Instance::make(shifted);
    std::vector<CakeValuation> fs = cake_construct(shifted);
    EfCakeResult cake = approx_ef_cake(fs, depth, refine_rounds, threads);
    r.residual_envy = std::max(cake.max_envy, 0.0);
    r.condition_met = r.residual_envy < eps;
    Allocation rounded = cake_rounding(shifted_inst, cake.division);
    r.allocation = Allocation::make(inst, rounded.bundles);
    r.cake = std::move(cake);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (auto w = find_efk_witness(inst.valuation(i), r.allocation, i, j, 3, 0.0)) {
        r.witnesses.push_back(*w);
      } else {
        r.unresolved.emplace_back(i, j);
      }
    }
  }
  if (r.condition_met && !r.unresolved.empty()) {
    throw GuaranteeError("residual envy is below delta/2 but some pair has no EF3 witness");
  }
  return r;
}

}  // namespace equidivide
