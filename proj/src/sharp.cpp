#include "hardy/sharp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardy/rng.hpp"

namespace hardy {

namespace {

using SparseMatrix = Eigen::SparseMatrix<Scalar>;

// Face difference delta = coef * (u[ca] - u[cb]); cb = -1 encodes the
// Dirichlet ghost term 2u/hx.
struct Face {
  int ca;
  int cb;
  Scalar coef;
};

struct Forms {
  Grid grid;
  std::vector<Face> faces;
  Vector wa;  // stiffness weight per cell
  Vector wb;  // mass weight per cell
  Scalar p = 2;
  Scalar area = 0;
};

Forms build_forms(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                  const Grid& grid) {
  w.validate();
  if (kind != QuotientKind::Friedrichs && !(w.alpha < w.p)) {
    throw PreconditionError("sharp quotient requires alpha < p");
  }
  check_alignment(grid, config);

  Forms f;
  f.grid = grid;
  f.p = w.p;
  f.area = grid.cell_area();
  const int n = grid.cells();
  const auto idx = [&](int i, int j) { return i + grid.nx * j; };

  const auto flat = [&](const Array& arr) {
    Vector out(n);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) out[idx(i, j)] = arr(i, j);
    return out;
  };

  if (kind == QuotientKind::Friedrichs) {
    f.wa = Vector::Ones(n);
    Vector wb = Vector::Zero(n);
    for (int j = 0; j < grid.ny; ++j) {
      if (classify_strip((j + 0.5) * grid.hy(), config) == StripClass::Pi2) {
        for (int i = 0; i < grid.nx; ++i) wb[idx(i, j)] = 1;
      }
    }
    f.wb = std::move(wb);
  } else {
    const DistanceVariant variant =
        kind == QuotientKind::HardyEps ? DistanceVariant::Eps : DistanceVariant::Rho;
    f.wa = flat(distance_power_array(grid, config, variant, w.alpha));
    f.wb = flat(distance_power_array(grid, config, variant, w.alpha - w.p));
  }

  const BoolColumn mask = dirichlet_faces(grid, config);
  const Scalar hx = grid.hx(), hy = grid.hy();
  f.faces.reserve(2 * n);
  for (int j = 0; j < grid.ny; ++j) {
    if (mask[j]) f.faces.push_back({idx(0, j), -1, 2 / hx});
    for (int i = 1; i < grid.nx; ++i) f.faces.push_back({idx(i, j), idx(i - 1, j), 1 / hx});
  }
  for (int j = 1; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) f.faces.push_back({idx(i, j), idx(i, j - 1), 1 / hy});
  }
  return f;
}

Scalar mass(const Forms& f, const Vector& u) {
  Scalar n = 0;
  for (int c = 0; c < u.size(); ++c) {
    if (f.wb[c] != 0) n += f.wb[c] * std::pow(std::abs(u[c]), f.p);
  }
  return n * f.area;
}

// sq_c = half-sum of squared face differences meeting cell c.
Vector face_square_sums(const Forms& f, const Vector& u) {
  Vector sq = Vector::Zero(u.size());
  for (const Face& face : f.faces) {
    const Scalar d = face.coef * (face.cb >= 0 ? u[face.ca] - u[face.cb] : u[face.ca]);
    const Scalar half = Scalar(0.5) * d * d;
    sq[face.ca] += half;
    if (face.cb >= 0) sq[face.cb] += half;
  }
  return sq;
}

Scalar stiffness(const Forms& f, const Vector& u) {
  const Vector sq = face_square_sums(f, u);
  Scalar d = 0;
  for (int c = 0; c < u.size(); ++c) {
    if (sq[c] > 0) d += f.wa[c] * std::pow(sq[c], f.p / 2);
  }
  return d * f.area;
}

struct Evaluation {
  Scalar num = 0;
  Scalar den = 0;
  Scalar value = 0;
};

Evaluation evaluate(const Forms& f, const Vector& u) {
  Evaluation e;
  e.num = mass(f, u);
  e.den = stiffness(f, u);
  if (!(e.den > 0)) throw DegenerateInputError("sharp quotient: zero gradient energy");
  e.value = e.num / e.den;
  return e;
}

QuotientGradient evaluate_with_gradient(const Forms& f, const Vector& u) {
  const int n = static_cast<int>(u.size());
  const Scalar p = f.p;

  Scalar num = 0;
  Vector gnum = Vector::Zero(n);
  for (int c = 0; c < n; ++c) {
    if (f.wb[c] == 0) continue;
    const Scalar au = std::abs(u[c]);
    num += f.wb[c] * std::pow(au, p);
    if (au > 0) {
      gnum[c] = f.area * p * f.wb[c] * std::pow(au, p - 1) * (u[c] > 0 ? 1 : -1);
    }
  }
  num *= f.area;

  const Vector sq = face_square_sums(f, u);
  Scalar den = 0;
  Vector psi = Vector::Zero(n);
  for (int c = 0; c < n; ++c) {
    if (sq[c] > 0) {
      den += f.wa[c] * std::pow(sq[c], p / 2);
      psi[c] = f.area * f.wa[c] * (p / 2) * std::pow(sq[c], p / 2 - 1);
    }
  }
  den *= f.area;
  if (!(den > 0)) throw DegenerateInputError("sharp quotient: zero gradient energy");

  Vector gden = Vector::Zero(n);
  for (const Face& face : f.faces) {
    const Scalar d = face.coef * (face.cb >= 0 ? u[face.ca] - u[face.cb] : u[face.ca]);
    if (d == 0) continue;
    const Scalar t = d * (psi[face.ca] + (face.cb >= 0 ? psi[face.cb] : 0)) * face.coef;
    gden[face.ca] += t;
    if (face.cb >= 0) gden[face.cb] -= t;
  }

  QuotientGradient out;
  out.value = num / den;
  out.gradient = (gnum * den - num * gden) / (den * den);
  return out;
}

SparseMatrix assemble_stiffness(const Forms& f) {
  std::vector<Eigen::Triplet<Scalar>> trips;
  trips.reserve(4 * f.faces.size());
  for (const Face& face : f.faces) {
    const Scalar wf = Scalar(0.5) * (f.wa[face.ca] + (face.cb >= 0 ? f.wa[face.cb] : 0));
    const Scalar v = wf * f.area * face.coef * face.coef;
    trips.emplace_back(face.ca, face.ca, v);
    if (face.cb >= 0) {
      trips.emplace_back(face.cb, face.cb, v);
      trips.emplace_back(face.ca, face.cb, -v);
      trips.emplace_back(face.cb, face.ca, -v);
    }
  }
  SparseMatrix A(f.wa.size(), f.wa.size());
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

Vector seeded_start(const Forms& f, std::uint64_t seed) {
  UniformRng rng(seed);
  Vector u(f.wa.size());
  for (int c = 0; c < u.size(); ++c) u[c] = rng.range(-0.5, 0.5);
  return u;
}

ConstantEstimate inverse_power_estimate(const Forms& f, Scalar tol, int max_iter,
                                        std::uint64_t seed) {
  if (f.wb.maxCoeff() <= 0) {
    throw AssemblyError("sharp estimate: mass form vanishes identically");
  }
  const SparseMatrix A = assemble_stiffness(f);
  const Vector b_diag = f.wb * f.area;

  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<Scalar>>
      cg;
  cg.compute(A);

  Vector u = seeded_start(f, seed);
  u.normalize();
  Scalar value = 0;
  Scalar residual = 1;
  int it = 0;
  for (; it < max_iter; ++it) {
    cg.setTolerance(std::clamp(Scalar(1e-2) * residual, Scalar(1e-14), Scalar(0.1)));
    cg.setMaxIterations(500);
    const Vector rhs = b_diag.cwiseProduct(u);
    Vector z = cg.solveWithGuess(rhs, u);
    const Scalar zn = z.norm();
    if (!(zn > 0)) throw AssemblyError("sharp estimate: inverse iteration collapsed");
    z /= zn;
    const Scalar znum = z.dot(b_diag.cwiseProduct(z));
    const Scalar zden = z.dot(A * z);
    const Scalar next = znum / zden;
    residual = std::abs(next - value) / std::max(std::abs(next), Scalar(1e-300));
    value = next;
    u = z;
    if (residual < tol) break;
  }
  if (residual >= tol) {
    throw ConvergenceError("sharp estimate: inverse power iteration did not converge", value,
                           residual);
  }
  ConstantEstimate est;
  est.value = value;
  est.iterations = it + 1;
  est.residual = residual;
  est.grid = f.grid;
  est.method = EstimateMethod::Eig2;
  est.iterate = u;
  return est;
}

struct AscentResult {
  Scalar value = 0;
  Vector iterate;
  int iterations = 0;
  Scalar residual = 0;
  bool converged = false;
};

// Backtracking gradient ascent with p-norm renormalization; stops after
// `streak` consecutive relative changes below tol or when the line search
// finds no ascent direction.
AscentResult ascend(const Forms& f, Vector u, Scalar tol, int max_iter, int streak = 10) {
  AscentResult res;
  if (mass(f, u) <= 0) return res;
  u /= std::pow(mass(f, u), 1 / f.p);

  Scalar step = 1.0;
  Scalar value = 0;
  int small_changes = 0;
  for (int it = 0; it < max_iter; ++it) {
    QuotientGradient qg = evaluate_with_gradient(f, u);
    if (qg.value < value * (1 - 1e-13)) {
      throw Error("sharp ascent lost monotonicity");  // accepted steps only improve
    }
    res.residual = std::abs(qg.value - value) / std::max(qg.value, Scalar(1e-300));
    value = qg.value;
    res.iterations = it + 1;
    if (it > 0 && res.residual < tol) {
      if (++small_changes >= streak) {
        res.converged = true;
        break;
      }
    } else {
      small_changes = 0;
    }

    const Scalar gnorm = qg.gradient.norm();
    if (!(gnorm > 0)) {
      res.converged = true;
      break;
    }
    bool improved = false;
    while (step > 1e-16) {
      Vector cand = u + step * qg.gradient;
      const Scalar m = mass(f, cand);
      if (m > 0) {
        cand /= std::pow(m, 1 / f.p);
        const Scalar cval = evaluate(f, cand).value;
        if (cval > value) {
          u = std::move(cand);
          step *= 2;
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) {
      res.converged = true;  // numerically stationary
      break;
    }
  }
  res.value = value;
  res.iterate = std::move(u);
  return res;
}

Vector field_start(const Forms& f, const GeometryConfig& config, std::uint64_t seed) {
  const ScalarField field = generate_test_function(seed, f.grid, config, 6);
  Vector u(f.grid.cells());
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) u[i + f.grid.nx * j] = field.values(i, j);
  return u;
}

ConstantEstimate ascent_estimate(const Forms& f, const GeometryConfig& config, Scalar tol,
                                 int max_iter, std::uint64_t seed, int starts,
                                 bool polish) {
  if (f.wb.maxCoeff() <= 0) {
    throw AssemblyError("sharp estimate: mass form vanishes identically");
  }

  std::vector<Vector> initial;
  // The p = 2 eigenvector is an excellent warm start for nearby exponents.
  try {
    Forms f2 = f;
    f2.p = 2;
    initial.push_back(inverse_power_estimate(f2, 1e-8, 10000, seed).iterate);
  } catch (const Error&) {
  }
  for (int k = 0; k < starts; ++k) initial.push_back(field_start(f, config, mix_seed(seed, k)));

  AscentResult best;
  int total_iterations = 0;
  for (const Vector& u0 : initial) {
    AscentResult r = ascend(f, u0, tol, max_iter);
    total_iterations += r.iterations;
    if (r.iterate.size() > 0 && (best.iterate.size() == 0 || r.value > best.value)) best = r;
  }
  if (best.iterate.size() == 0) {
    throw DegenerateInputError("sharp estimate: every start had zero mass");
  }

  if (polish) {
    UniformRng rng(mix_seed(seed, 777));
    const Scalar scale = best.iterate.norm();
    for (int t = 0; t < 64; ++t) {
      Vector dir(best.iterate.size());
      for (int c = 0; c < dir.size(); ++c) dir[c] = rng.range(-1, 1);
      const Scalar sigma = 0.25 * std::pow(0.92, t);
      AscentResult r = ascend(f, best.iterate + sigma * scale * dir, tol, 4000);
      total_iterations += r.iterations;
      if (r.value > best.value) best = r;
    }
  }

  if (!best.converged) {
    throw ConvergenceError("sharp estimate: ascent did not converge", best.value, best.residual);
  }
  ConstantEstimate est;
  est.value = best.value;
  est.iterations = total_iterations;
  est.residual = best.residual;
  est.grid = f.grid;
  est.method = polish ? EstimateMethod::Oracle : EstimateMethod::GradAscent;
  est.iterate = best.iterate;
  return est;
}

}  // namespace

Scalar sharp_quotient(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                      const Grid& grid, const Vector& u) {
  const Forms f = build_forms(kind, config, w, grid);
  return evaluate(f, u).value;
}

Scalar sharp_quotient(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                      const ScalarField& u) {
  Vector flat(u.grid.cells());
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) flat[i + u.grid.nx * j] = u.values(i, j);
  return sharp_quotient(kind, config, w, u.grid, flat);
}

QuotientGradient sharp_quotient_gradient(QuotientKind kind, const GeometryConfig& config,
                                         const WeightSpec& w, const Grid& grid, const Vector& u) {
  const Forms f = build_forms(kind, config, w, grid);
  return evaluate_with_gradient(f, u);
}

ConstantEstimate estimate_sharp(QuotientKind kind, const GeometryConfig& config,
                                const WeightSpec& w, const Grid& grid, Scalar tol, int max_iter,
                                std::uint64_t seed) {
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  if (max_iter < 1) throw PreconditionError("max_iter must be positive");
  const Forms f = build_forms(kind, config, w, grid);
  if (w.p == 2) return inverse_power_estimate(f, tol, max_iter, seed);
  return ascent_estimate(f, config, tol, max_iter, seed, 4, /*polish=*/false);
}

ConstantEstimate oracle_sharp(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                              const Grid& grid, std::uint64_t seed) {
  if (grid.nx > 12 || grid.ny > 12) {
    throw SizeError("oracle_sharp accepts grids up to 12x12");
  }
  const Forms f = build_forms(kind, config, w, grid);
  if (f.wb.maxCoeff() <= 0) {
    throw AssemblyError("sharp oracle: mass form vanishes identically");
  }

  if (w.p == 2) {
    const Eigen::MatrixXd A = Eigen::MatrixXd(assemble_stiffness(f));
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    B.diagonal() = f.wb * f.area;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(B, A);
    if (ges.info() != Eigen::Success) throw AssemblyError("sharp oracle: eigensolve failed");
    ConstantEstimate est;
    est.value = ges.eigenvalues().maxCoeff();
    est.iterations = 1;
    est.residual = 0;
    est.grid = grid;
    est.method = EstimateMethod::Oracle;
    const Eigen::Index top = ges.eigenvalues().size() - 1;
    est.iterate = ges.eigenvectors().col(top);
    return est;
  }
  return ascent_estimate(f, config, 1e-9, 100000, seed, 32, /*polish=*/true);
}

}  // namespace hardy
