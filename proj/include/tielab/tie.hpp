#pragma once

#include <cstdint>
#include <vector>

#include "tielab/partition.hpp"
#include "tielab/rng.hpp"

namespace tielab {

enum class TieVariant { upwards, updown };
enum class BoundaryLabel { none, aa, ab, bb };

// The reflecting strip and everything needed to assign cell distributions.
// Boundary convention: in the folded coordinate pos = i - j, the up-down
// strip spans [-n, n] and the NE exit border holds the x parameters, the NW
// one the y parameters.  A wall cell's law takes its parameter index from
// the border its ray exits through and its letter from the opposite wall
// (u with y exits, v with x exits); the boundary marker side is first
// (a1/b1) on even bands for y exits and on odd bands for x exits, second
// (a2/b2) otherwise.  The upwards strip spans [0, n]; there the even blocks
// touch pos = 0 and carry the second marker, the odd blocks touch pos = n
// and carry the first.
struct TieSpec {
  TieVariant variant = TieVariant::updown;
  int n = 1;
  double u = 0.0;
  double v = 0.0;  // must be 1 for the upwards variant
  std::vector<double> x;  // n entries in (0,1); unused for upwards
  std::vector<double> y;  // n entries in (0,1)
  BoundaryLabel label = BoundaryLabel::none;
  double a1 = 1.0, a2 = 1.0, b1 = 1.0, b2 = 1.0;
  double tol_depth = 1e-8;

  void validate() const;
  double uv() const { return variant == TieVariant::upwards ? u : u * v; }
};

enum class CellKind { square_in_big_square, square_in_big_triangle, boundary_triangle };
enum class CellSide { x_side, y_side, both };

struct Cell {
  int row;  // r >= 1, counted downward from the knot
  int pos;  // up-down: i - j in [-n, n]; upwards: i - j in [0, n]
  CellKind kind;
  CellSide side;
  int block_depth;  // s index of the big square / big triangle
};

// positions of the valid cells in a row, ascending
std::vector<int> row_positions(const TieSpec& spec, int row);
bool cell_valid(const TieSpec& spec, int row, int pos);
Cell classify_cell(const TieSpec& spec, int row, int pos);

struct RayHit {
  char border;  // 'x' or 'y'
  int index;    // 1..n
  int bounces_right = 0;
  int bounces_left = 0;
};

// direction +1 = NE, -1 = NW
RayHit ray_trace(const TieSpec& spec, const Cell& cell, int direction);

// The sampling law of one cell: Geom(z) normally, the parity-tilted
// Geom^(b)(z) for boundary triangles on a b-labelled wall.
struct CellLaw {
  double z = 0.0;
  double b = 1.0;
  bool tilted = false;
};
CellLaw cell_parameter(const TieSpec& spec, const Cell& cell);

// Smallest depth D such that the total Prob(weight > 0) mass of all cells
// below D is < tol_depth.
int truncation_depth(const TieSpec& spec);

struct WeightField {
  int depth = 0;
  // weights[r-1][k] aligned with row_positions(spec, r)
  std::vector<std::vector<long long>> weights;
};

// One uniform is consumed per cell in row-major order, so fields with the
// same seed stay coupled when a single parameter moves.
WeightField sample_weight_field(const TieSpec& spec, std::mt19937_64& eng, int depth);

// longest SE/SW path value from the top cell, weights beyond the field = 0
long long lpp_value(const TieSpec& spec, const WeightField& field);

struct Lambda1Sample {
  long long L = 0;
  long long kappa1 = 0;
  long long lambda1 = 0;
};

Lambda1Sample sample_lambda1(const TieSpec& spec, std::uint64_t seed, std::uint64_t index);

// same, with the truncation depth fixed by the caller (coupling studies)
Lambda1Sample sample_lambda1_at_depth(const TieSpec& spec, int depth, std::uint64_t seed,
                                      std::uint64_t index);

// deterministic across thread counts: sample i always uses stream i
std::vector<Lambda1Sample> sample_many(const TieSpec& spec, std::uint64_t seed, long long count,
                                       int threads);

}  // namespace tielab
