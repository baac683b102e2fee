#include "tielab/tie.hpp"

#include <algorithm>
#include <cmath>

#include "tielab/errors.hpp"
#include "tielab/parallel.hpp"

namespace tielab {

void TieSpec::validate() const {
  require(n >= 1, "strip width n must be >= 1");
  require(u >= 0.0 && u < 1.0, "u must lie in [0,1)");
  if (variant == TieVariant::upwards) {
    require(v == 1.0, "the upwards strip requires v = 1");
    require(x.empty(), "the upwards strip has no x parameters");
  } else {
    require(v >= 0.0 && v < 1.0, "v must lie in [0,1)");
    require(static_cast<int>(x.size()) == n, "need n x parameters");
    for (double xi : x) require(xi > 0.0 && xi < 1.0, "x parameters must lie in (0,1)");
  }
  require(static_cast<int>(y.size()) == n, "need n y parameters");
  for (double yi : y) require(yi > 0.0 && yi < 1.0, "y parameters must lie in (0,1)");
  for (double p : {a1, a2, b1, b2}) require(p > 0.0 && p <= 1.0, "boundary markers lie in (0,1]");
  require(tol_depth > 0.0, "truncation tolerance must be positive");
}

std::vector<int> row_positions(const TieSpec& spec, int row) {
  std::vector<int> out;
  int hi = std::min(row - 1, spec.n);
  int lo = spec.variant == TieVariant::updown ? -hi : 0;
  for (int p = lo; p <= hi; ++p)
    if ((p - (row - 1)) % 2 == 0) out.push_back(p);
  return out;
}

bool cell_valid(const TieSpec& spec, int row, int pos) {
  if (row < 1) return false;
  if ((pos - (row - 1)) % 2 != 0) return false;
  if (spec.variant == TieVariant::updown) return std::abs(pos) <= std::min(row - 1, spec.n);
  return pos >= 0 && pos <= std::min(row - 1, spec.n);
}

namespace {

// Membership of the upwards cell (local row rho = r - n s, wall distance d)
// in triangle block s: even blocks grow off the reflecting wall d = 0, odd
// ones off d = n.
bool upwards_in_triangle(int n, int s, int rho, int d) {
  if (rho < 1 || rho > 2 * n - 1) return false;
  int reach = std::min(rho - 1, 2 * n - 1 - rho);
  int dd = (s % 2 == 0) ? d : n - d;
  return dd <= reach;
}

}  // namespace

Cell classify_cell(const TieSpec& spec, int row, int pos) {
  require(cell_valid(spec, row, pos), "invalid cell coordinates");
  const int n = spec.n;
  Cell c{row, pos, CellKind::square_in_big_square, CellSide::both, 0};
  if (spec.variant == TieVariant::updown) {
    if (std::abs(pos) == n) {
      c.kind = CellKind::boundary_triangle;
      c.side = pos < 0 ? CellSide::x_side : CellSide::y_side;
      c.block_depth = (row - n - 1) / (2 * n);
      return c;
    }
    int d = (row - 1) / (2 * n);
    int m = row - 2 * n * d;
    if (m <= 2 * n - 1 && std::abs(pos) <= std::min(m, 2 * n - m) - 1) {
      c.kind = CellKind::square_in_big_square;
      c.side = CellSide::both;
      c.block_depth = d;
      return c;
    }
    c.kind = CellKind::square_in_big_triangle;
    c.side = pos < 0 ? CellSide::x_side : CellSide::y_side;
    c.block_depth = (row - n - 1) / (2 * n);
    return c;
  }
  // upwards: triangle block s sits on rows [ns+1, ns+2n-1]
  c.side = CellSide::y_side;
  if (pos == 0) {
    c.kind = CellKind::boundary_triangle;
    c.block_depth = 2 * ((row - 1) / (2 * n));
    return c;
  }
  if (pos == n) {
    c.kind = CellKind::boundary_triangle;
    c.block_depth = 2 * ((row - n - 1) / (2 * n)) + 1;
    return c;
  }
  c.kind = CellKind::square_in_big_triangle;
  int found = -1;
  int s_hi = (row - 1) / n;
  int s_lo = std::max(0, (row - (2 * n - 1) + n - 1) / n);
  for (int s = s_lo; s <= s_hi; ++s) {
    if (upwards_in_triangle(n, s, row - n * s, pos)) {
      require(found < 0, "strip tiling assigned a cell twice");
      found = s;
    }
  }
  require(found >= 0, "strip tiling left a cell unassigned");
  c.block_depth = found;
  return c;
}

RayHit ray_trace(const TieSpec& spec, const Cell& cell, int direction) {
  require(direction == 1 || direction == -1, "ray direction must be +1 (NE) or -1 (NW)");
  require(cell_valid(spec, cell.row, cell.pos), "invalid cell");
  const int n = spec.n;
  const bool upwards = spec.variant == TieVariant::upwards;
  const int left_wall = upwards ? 0 : -n;
  int r = cell.row, p = cell.pos, dir = direction;
  RayHit hit{};
  for (int guard = 0; guard <= cell.row + 1; ++guard) {
    // reflect first if the ray stands on a wall cell and points into the wall
    if (p == left_wall && dir == -1) {
      dir = 1;
      ++hit.bounces_left;
    } else if (p == n && dir == 1) {
      dir = -1;
      ++hit.bounces_right;
    }
    // exit through the free border above the knot
    if (r <= n) {
      if (dir == 1 && p == r - 1) {
        hit.border = upwards ? 'y' : 'x';
        hit.index = (r + p + 1) / 2;
        return hit;
      }
      if (!upwards && dir == -1 && p == -(r - 1)) {
        hit.border = 'y';
        hit.index = (r - p + 1) / 2;
        return hit;
      }
    }
    r -= 1;
    p += dir;
  }
  throw DiagnosticError("ray_trace: ray failed to exit");
}

namespace {

double border_param(const TieSpec& spec, const RayHit& hit) {
  const auto& v = hit.border == 'x' ? spec.x : spec.y;
  require(hit.index >= 1 && hit.index <= static_cast<int>(v.size()),
          "ray exit index out of range");
  return v[hit.index - 1];
}

}  // namespace

CellLaw cell_parameter(const TieSpec& spec, const Cell& cell) {
  const double uv = spec.uv();
  const int s = cell.block_depth;
  CellLaw law;
  if (cell.kind != CellKind::boundary_triangle) {
    RayHit ne = ray_trace(spec, cell, +1);
    RayHit nw = ray_trace(spec, cell, -1);
    double base = border_param(spec, ne) * border_param(spec, nw);
    if (cell.kind == CellKind::square_in_big_square) {
      law.z = std::pow(uv, 2 * s) * base;
    } else if (spec.variant == TieVariant::upwards) {
      law.z = std::pow(spec.u, 2 * s) * base;
    } else {
      // both rays of a triangle square exit through the same border; the
      // prefix letter is the opposite one (rays bounce off the u-weighted
      // wall before exiting through the y border, and vice versa)
      if (ne.border != nw.border)
        throw DiagnosticError("triangle-square rays exited through different borders");
      double wall2 = ne.border == 'y' ? spec.u * spec.u : spec.v * spec.v;
      law.z = wall2 * std::pow(uv, 2 * s) * base;
    }
    require(law.z >= 0.0 && law.z < 1.0, "cell parameter escaped [0,1)");
    return law;
  }
  // boundary halves: the parameter index follows the ray's exit border while
  // the letter prefix is the opposite one (u rides with the y parameters and
  // v with the x ones), and the marker side flips with the band parity; in
  // the upwards strip the single border alternates roles by block parity
  RayHit ray = ray_trace(spec, cell, +1);
  bool first_marker;  // a1/b1 as opposed to a2/b2
  double base;
  if (spec.variant == TieVariant::upwards) {
    base = std::pow(spec.u, s) * border_param(spec, ray);
    first_marker = (s % 2 == 1);
  } else {
    double wall = ray.border == 'y' ? spec.u : spec.v;
    base = wall * std::pow(uv, s) * border_param(spec, ray);
    first_marker = (ray.border == 'y') == (s % 2 == 0);
  }
  bool a_marker = false, b_marker = false;
  switch (spec.label) {
    case BoundaryLabel::none:
      break;
    case BoundaryLabel::aa:
      a_marker = true;
      break;
    case BoundaryLabel::bb:
      b_marker = true;
      break;
    case BoundaryLabel::ab:
      a_marker = first_marker;
      b_marker = !first_marker;
      break;
  }
  if (b_marker) {
    law.z = base;
    law.b = first_marker ? spec.b1 : spec.b2;
    law.tilted = true;
  } else if (a_marker) {
    law.z = (first_marker ? spec.a1 : spec.a2) * base;
  } else {
    law.z = base;
  }
  require(law.z >= 0.0 && law.z < 1.0, "cell parameter escaped [0,1)");
  return law;
}

namespace {

double positive_mass(const CellLaw& law) {
  if (!law.tilted) return law.z;
  // 1 - P(weight = 0) = 1 - (1 - z^2) / (1 + b z)
  return (law.b * law.z + law.z * law.z) / (1.0 + law.b * law.z);
}

struct BlockUnit {
  double mass = 0.0;
  int end_row = 0;
};

// The cells of block-depth s, grouped into units that end at different rows:
// for the folded strip the interior diamond ends n rows before the triangle
// band, for the upwards strip the whole block is one triangle.
std::vector<BlockUnit> block_units(const TieSpec& spec, int s) {
  const int n = spec.n;
  std::vector<BlockUnit> units;
  if (spec.variant == TieVariant::updown) {
    BlockUnit diamond{0.0, 2 * n * s + 2 * n - 1};
    for (int r = 2 * n * s + 1; r <= diamond.end_row; ++r)
      for (int p : row_positions(spec, r)) {
        Cell c = classify_cell(spec, r, p);
        if (c.kind == CellKind::square_in_big_square && c.block_depth == s)
          diamond.mass += cell_parameter(spec, c).z;
      }
    BlockUnit band{0.0, 2 * n * s + 3 * n - 1};
    for (int r = 2 * n * s + n + 1; r <= band.end_row; ++r)
      for (int p : row_positions(spec, r)) {
        Cell c = classify_cell(spec, r, p);
        if (c.block_depth != s || c.kind == CellKind::square_in_big_square) continue;
        band.mass += positive_mass(cell_parameter(spec, c));
      }
    units.push_back(diamond);
    units.push_back(band);
  } else {
    BlockUnit tri{0.0, n * s + 2 * n - 1};
    for (int r = n * s + 1; r <= tri.end_row; ++r)
      for (int p : row_positions(spec, r)) {
        Cell c = classify_cell(spec, r, p);
        if (c.block_depth == s) tri.mass += positive_mass(cell_parameter(spec, c));
      }
    units.push_back(tri);
  }
  return units;
}

}  // namespace

int truncation_depth(const TieSpec& spec) {
  spec.validate();
  const double uv = spec.uv();
  int depth = 1;
  for (int s = 0;; ++s) {
    double total = 0.0;
    for (const BlockUnit& unit : block_units(spec, s)) {
      total += unit.mass;
      if (unit.mass > 0.0) depth = std::max(depth, unit.end_row);
    }
    // each cell's positive-weight probability shrinks by at least a factor
    // uv from block to block, so sum_{j >= s+1} mass(j) <= mass(s) uv/(1-uv)
    if (total * uv / (1.0 - uv) < spec.tol_depth) break;
    if (s > 100000) throw DiagnosticError("truncation_depth: strip mass does not decay");
  }
  return depth;
}

WeightField sample_weight_field(const TieSpec& spec, std::mt19937_64& eng, int depth) {
  WeightField field;
  field.depth = depth;
  field.weights.resize(depth);
  for (int r = 1; r <= depth; ++r) {
    auto positions = row_positions(spec, r);
    auto& row = field.weights[r - 1];
    row.resize(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) {
      CellLaw law = cell_parameter(spec, classify_cell(spec, r, positions[k]));
      row[k] = law.tilted ? geom_b_sample(eng, law.b, law.z) : geom_sample(eng, law.z);
    }
  }
  return field;
}

long long lpp_value(const TieSpec& spec, const WeightField& field) {
  const int depth = field.depth;
  std::vector<long long> below;  // values over row r+1
  for (int r = depth; r >= 1; --r) {
    auto positions = row_positions(spec, r);
    auto next_positions = row_positions(spec, r + 1);
    std::vector<long long> cur(positions.size(), 0);
    for (std::size_t k = 0; k < positions.size(); ++k) {
      long long best = 0;  // rows past the truncation depth contribute nothing
      if (!below.empty()) {
        for (int step : {-1, +1}) {
          int child = positions[k] + step;
          if (!cell_valid(spec, r + 1, child)) continue;
          std::size_t idx = static_cast<std::size_t>(
              std::lower_bound(next_positions.begin(), next_positions.end(), child) -
              next_positions.begin());
          best = std::max(best, below[idx]);
        }
      }
      cur[k] = field.weights[r - 1][k] + best;
    }
    below = std::move(cur);
  }
  return below.empty() ? 0 : below[0];
}

Lambda1Sample sample_lambda1_at_depth(const TieSpec& spec, int depth, std::uint64_t seed,
                                      std::uint64_t index) {
  std::mt19937_64 eng = make_engine(seed, index);
  WeightField field = sample_weight_field(spec, eng, depth);
  Lambda1Sample out;
  out.L = lpp_value(spec, field);
  Partition kappa = sample_q_partition(eng, spec.uv());
  out.kappa1 = part(kappa, 1);
  out.lambda1 = out.L + out.kappa1;
  return out;
}

Lambda1Sample sample_lambda1(const TieSpec& spec, std::uint64_t seed, std::uint64_t index) {
  spec.validate();
  return sample_lambda1_at_depth(spec, truncation_depth(spec), seed, index);
}

std::vector<Lambda1Sample> sample_many(const TieSpec& spec, std::uint64_t seed, long long count,
                                       int threads) {
  spec.validate();
  const int depth = truncation_depth(spec);
  std::vector<Lambda1Sample> out(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](long long i) {
    out[static_cast<std::size_t>(i)] =
        sample_lambda1_at_depth(spec, depth, seed, static_cast<std::uint64_t>(i));
  });
  return out;
}

}  // namespace tielab
