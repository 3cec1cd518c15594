#include "hardy/field.hpp"

#include "hardy/rng.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

namespace hardy {

Grid::Grid(int nx_, int ny_, Scalar a_, Scalar b_) : nx(nx_), ny(ny_), a(a_), b(b_) {
  if (nx < 4 || ny < 4) throw ConfigError("grid must be at least 4x4");
  if (!(a > 0) || !(b > 0)) throw ConfigError("grid dimensions must be positive");
}

void check_alignment(const Grid& grid, const GeometryConfig& config) {
  if (grid.ny % config.N != 0) {
    throw ConfigError("grid.ny = " + std::to_string(grid.ny) +
                      " is not a multiple of N = " + std::to_string(config.N));
  }
  if (grid.a != config.a || grid.b != config.b) {
    throw ConfigError("grid extents do not match the geometry");
  }
}

BoolColumn dirichlet_faces(const Grid& grid, const GeometryConfig& config) {
  BoolColumn mask(grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    const Scalar yc = (j + 0.5) * grid.hy();
    mask[j] = classify_strip(yc, config) == StripClass::Pi1;
  }
  return mask;
}

ScalarField ScalarField::zeros(const Grid& grid) {
  return {grid, Array::Zero(grid.nx, grid.ny), BoolColumn::Constant(grid.ny, false)};
}

ScalarField ScalarField::zeros(const Grid& grid, const GeometryConfig& config) {
  check_alignment(grid, config);
  return {grid, Array::Zero(grid.nx, grid.ny), dirichlet_faces(grid, config)};
}

Scalar ScalarField::extended_value(int i, int j) const {
  // Fold j first (top/bottom are even), then i; each crossing of the left
  // boundary flips the sign when that row's face is Dirichlet.
  const int nx = grid.nx, ny = grid.ny;
  while (j < 0 || j >= ny) j = (j < 0) ? -1 - j : 2 * ny - 1 - j;
  int sign = 1;
  while (i < 0 || i >= nx) {
    if (i < 0) {
      if (dirichlet_mask[j]) sign = -sign;
      i = -1 - i;
    } else {
      i = 2 * nx - 1 - i;
    }
  }
  return sign * values(i, j);
}

VectorField gradient(const ScalarField& u) {
  const Grid& g = u.grid;
  const Array& v = u.values;
  const Scalar hx = g.hx(), hy = g.hy();
  Array g1(g.nx, g.ny), g2(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i == 0) {
        g1(i, j) = u.dirichlet_mask[j] ? (v(1, j) + v(0, j)) / (2 * hx)
                                       : (-3 * v(0, j) + 4 * v(1, j) - v(2, j)) / (2 * hx);
      } else if (i == g.nx - 1) {
        g1(i, j) = (3 * v(i, j) - 4 * v(i - 1, j) + v(i - 2, j)) / (2 * hx);
      } else {
        g1(i, j) = (v(i + 1, j) - v(i - 1, j)) / (2 * hx);
      }
      if (j == 0) {
        g2(i, j) = (-3 * v(i, 0) + 4 * v(i, 1) - v(i, 2)) / (2 * hy);
      } else if (j == g.ny - 1) {
        g2(i, j) = (3 * v(i, j) - 4 * v(i, j - 1) + v(i, j - 2)) / (2 * hy);
      } else {
        g2(i, j) = (v(i, j + 1) - v(i, j - 1)) / (2 * hy);
      }
    }
  }
  return {g, std::move(g1), std::move(g2)};
}

ScalarField gradient_magnitude_field(const ScalarField& u) {
  VectorField gv = gradient(u);
  // Magnitudes of the reflected extension are even across every face.
  return {u.grid, gv.magnitude(), BoolColumn::Constant(u.grid.ny, false)};
}

Array distance_power_array(const Grid& grid, const GeometryConfig& config, DistanceVariant variant,
                           Scalar exponent) {
  check_alignment(grid, config);
  Array out(grid.nx, grid.ny);
  const Scalar shift = (1 - config.delta) * config.epsilon() / 2;
  for (int j = 0; j < grid.ny; ++j) {
    const bool pi2 = classify_strip((j + 0.5) * grid.hy(), config) == StripClass::Pi2;
    for (int i = 0; i < grid.nx; ++i) {
      Scalar d = (i + 0.5) * grid.hx();
      if (variant == DistanceVariant::Eps && pi2) d += shift;
      out(i, j) = exponent == 0 ? Scalar(1) : std::pow(d, exponent);
    }
  }
  return out;
}

namespace {

struct Mode {
  Scalar amp;
  int dx, mx;
  Scalar tx;
  int dy, my;
  Scalar ty;
};

Scalar eval_modes(const std::vector<Mode>& modes, Scalar tx, Scalar ty) {
  Scalar s = 0;
  for (const Mode& m : modes) {
    const Scalar fx = std::pow(tx, m.dx) * std::sin(m.mx * kPi * tx + m.tx);
    const Scalar fy = std::pow(ty, m.dy) * std::sin(m.my * kPi * ty + m.ty);
    s += m.amp * fx * fy;
  }
  return s;
}

}  // namespace

ScalarField generate_test_function(std::uint64_t seed, const Grid& grid,
                                   const GeometryConfig& config, int modes,
                                   Scalar h_cut_fraction) {
  if (modes < 1) throw PreconditionError("modes must be at least 1");
  check_alignment(grid, config);
  const Scalar h_cut = config.epsilon() * config.delta * h_cut_fraction;

  for (int attempt = 0; attempt < 8; ++attempt) {
    UniformRng rng(attempt == 0 ? seed : mix_seed(seed, attempt));
    std::vector<Mode> drawn;
    drawn.reserve(modes);
    for (int k = 0; k < modes; ++k) {
      Mode m;
      m.amp = rng.range(-1, 1);
      m.dx = rng.integer(0, 2);
      m.mx = rng.integer(1, 3);
      m.tx = rng.range(0, 2 * kPi);
      m.dy = rng.integer(0, 2);
      m.my = rng.integer(1, 3);
      m.ty = rng.range(0, 2 * kPi);
      drawn.push_back(m);
    }

    ScalarField field = ScalarField::zeros(grid, config);
    bool nonzero = false;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const Vec2 c = grid.center(i, j);
        const Scalar r2 = dirichlet_distance(c, config);
        if (r2 < h_cut / 8) continue;
        const Scalar chi = std::pow(std::min(r2 / h_cut, Scalar(1)), 3);
        const Scalar v = chi * eval_modes(drawn, c.x() / config.a, c.y() / config.b);
        field.values(i, j) = v;
        if (std::abs(v) > 1e-12) nonzero = true;
      }
    }
    if (nonzero) return field;
  }
  throw DegenerateInputError("test-function generator drew an identically-zero field 8 times");
}

Array materialize_extension(const ScalarField& f, int left, int right, int bottom, int top) {
  Array ext(f.grid.nx + left + right, f.grid.ny + bottom + top);
  for (int j = -bottom; j < f.grid.ny + top; ++j)
    for (int i = -left; i < f.grid.nx + right; ++i)
      ext(i + left, j + bottom) = f.extended_value(i, j);
  return ext;
}

void write_field_csv(std::ostream& os, const ScalarField& field) {
  os << "x1,x2,value\n";
  os.precision(17);
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      const Vec2 c = field.grid.center(i, j);
      os << c.x() << ',' << c.y() << ',' << field.values(i, j) << '\n';
    }
  }
}

ScalarField read_field_csv(std::istream& is, const Grid& grid, const GeometryConfig& config) {
  ScalarField field = ScalarField::zeros(grid, config);
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("field CSV: missing header");
  int count = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Scalar x1, x2, v;
    char c1, c2;
    if (!(ss >> x1 >> c1 >> x2 >> c2 >> v) || c1 != ',' || c2 != ',') {
      throw ConfigError("field CSV: malformed row '" + line + "'");
    }
    const int i = static_cast<int>(x1 / grid.hx());
    const int j = static_cast<int>(x2 / grid.hy());
    if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny) {
      throw ConfigError("field CSV: point outside grid in row '" + line + "'");
    }
    field.values(i, j) = v;
    ++count;
  }
  if (count != grid.cells()) {
    throw ConfigError("field CSV: expected " + std::to_string(grid.cells()) + " rows, got " +
                      std::to_string(count));
  }
  return field;
}

}  // namespace hardy
