// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 only if all pass.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lswg/polynomial.hpp"
#include "lswg/study.hpp"
#include "oracle/brute_force.hpp"

using namespace lswg;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = seconds <= limit_seconds;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %d %s | %s | %.1f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(),
              seconds, limit_seconds);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Studies shared by the SPD and convergence criteria.
struct Key {
  std::string problem;
  int k;
  GridFamily family;
  auto operator<=>(const Key&) const = default;
};

struct Series {
  std::vector<double> h, h2w;
  double max_asymmetry = 0.0;
  double min_pivot = INFINITY;
  bool solved = true;
  std::string error;
};

std::map<Key, Series> studies;

constexpr int kFinestLevel = 5;

const Series& study(const std::string& problem, int k, GridFamily family) {
  const Key key{problem, k, family};
  auto it = studies.find(key);
  if (it != studies.end()) return it->second;
  Series s;
  const Problem p = problem_by_name(problem);
  LevelOptions opt;
  opt.solver.method = SolverMethod::cholesky;
  opt.compute_energy_error = false;
  for (int level = 2; level <= kFinestLevel; ++level) {
    try {
      LevelRun run = run_level(p, family, level, SpaceConfig::make(k), opt);
      const SparseMatrix At = run.system.A.transpose();
      const SparseMatrix diff = run.system.A - At;
      for (Eigen::Index i = 0; i < diff.nonZeros(); ++i) {
        s.max_asymmetry = std::max(s.max_asymmetry, std::abs(diff.valuePtr()[i]));
      }
      s.min_pivot = std::min(s.min_pivot, run.solve.min_pivot);
      s.h.push_back(run.disc.mesh->h());
      s.h2w.push_back(run.h2w_error);
    } catch (const std::exception& e) {
      s.solved = false;
      s.error = e.what();
      break;
    }
  }
  return studies.emplace(key, std::move(s)).first->second;
}

double finest_rate(const Series& s) {
  const std::size_t n = s.h2w.size();
  if (n < 2) return NAN;
  return std::log(s.h2w[n - 2] / s.h2w[n - 1]) / std::log(s.h[n - 2] / s.h[n - 1]);
}

Mesh single_element(std::vector<Point2> pts) {
  Box box{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const auto& p : pts) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  std::vector<int> ids(pts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return Mesh(std::move(pts), {ids}, box);
}

Mesh random_element(std::mt19937_64& rng, bool pentagon) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = 0.2 + u(rng), ox = 2.0 * u(rng) - 1.0, oy = 2.0 * u(rng) - 1.0;
  auto jitter = [&](double x, double y) { return Point2{ox + s * (x + 0.05 * (u(rng) - 0.5)), oy + s * (y + 0.05 * (u(rng) - 0.5))}; };
  if (pentagon) return single_element({jitter(0, 0), jitter(1.0 / 3, 0.5), jitter(2.0 / 3, 0.5), jitter(1, 1), jitter(0, 1)});
  return single_element({jitter(0.3 * u(rng), 0.3 * u(rng)), jitter(0.7 + 0.3 * u(rng), 0.3 * u(rng)),
                         jitter(0.2 + 0.3 * u(rng), 0.7 + 0.3 * u(rng))});
}

Outcome polynomial_exactness() {
  Eigen::Matrix2d a;
  a << 2, 1, 1, 2;
  const Problem p = problem_polynomial(2, a);
  LevelOptions opt;
  opt.solver.method = SolverMethod::cholesky;
  const LevelRun run = run_level(p, GridFamily::triangular, 2, SpaceConfig::make(4), opt);
  const WeakFunction qh = interpolate_Qh(p.exact.u, p.exact.grad, *run.disc.space);
  const double qnorm = triple_norm(qh, *run.disc.space, run.disc.ops, p.coefficient);
  const double ratio = run.energy_error / qnorm;
  constexpr double kEnergyTol = 1e-8, kL2Tol = 1e-9;
  Outcome o;
  o.pass = ratio <= kEnergyTol && run.l2_error <= kL2Tol;
  o.detail = "|||Q_h u - u_h|||/|||Q_h u||| = " + fmt("%.2e", ratio) + " (tol 1e-08), l2 = " +
             fmt("%.2e", run.l2_error) + " (tol 1e-09)";
  return o;
}

Outcome spd_structure() {
  Outcome o;
  int cases = 0;
  double worst_asym = 0.0, worst_pivot = INFINITY;
  for (const std::string problem : {"smooth", "discontinuous"}) {
    for (int k = 2; k <= 5; ++k) {
      for (const GridFamily f : {GridFamily::triangular, GridFamily::polygonal}) {
        const Series& s = study(problem, k, f);
        ++cases;
        if (!s.solved) {
          o.pass = false;
          o.detail += problem + " k=" + std::to_string(k) + " " + to_string(f) + ": " + s.error + "; ";
          continue;
        }
        worst_asym = std::max(worst_asym, s.max_asymmetry);
        worst_pivot = std::min(worst_pivot, s.min_pivot);
      }
    }
  }
  o.pass = o.pass && worst_asym == 0.0 && worst_pivot > 0.0;
  o.detail += std::to_string(cases) + " configurations x levels 2-5, max|A-A^T| = " + fmt("%.1e", worst_asym) +
              " (required 0), min Cholesky pivot = " + fmt("%.2e", worst_pivot) + " (required > 0)";
  return o;
}

Outcome commutativity() {
  std::mt19937_64 rng(20240611);
  double worst = 0.0, worst_rel = 0.0;
  std::string per_degree;
  int cases = 0;
  for (int k = 2; k <= 4; ++k) {
    for (int r = k - 2; r <= k - 1; ++r) {
      double dev = 0.0;
      for (int c = 0; c < 50; ++c, ++cases) {
        const Mesh mesh = random_element(rng, c % 2 == 1);
        const WeakSpace space(mesh, SpaceConfig::make(k, r));
        const Polynomial2 w = Polynomial2::random(k, rng);
        const WeakFunction qh = interpolate_Qh([&](Point2 p) { return w(p); }, [&](Point2 p) { return w.gradient(p); }, space);
        const WeakHessianOperator op = build_local_operator(space, 0);
        const Eigen::VectorXd local = qh.gather(mesh, 0);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            const Eigen::VectorXd weak = apply_weak_hessian(op, local, i, j);
            const Eigen::VectorXd ref = project_element([&](Point2 p) { return w.hessian(p)(i, j); }, mesh, 0, r,
                                                        space.config().quad_order + 4);
            const double d = (weak - ref).lpNorm<Eigen::Infinity>();
            dev = std::max(dev, d);
            worst_rel = std::max(worst_rel, d / std::max(1.0, ref.lpNorm<Eigen::Infinity>()));
          }
        }
      }
      worst = std::max(worst, dev);
      per_degree += " k" + std::to_string(k) + "r" + std::to_string(r) + "=" + fmt("%.1e", dev);
    }
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = std::to_string(cases) + " cases (k=2..4, r=k-2,k-1), max coefficient deviation " + fmt("%.2e", worst) +
             " (tol 1e-10), relative " + fmt("%.1e", worst_rel) + ";" + per_degree;
  return o;
}

Outcome smooth_interior() {
  std::mt19937_64 rng(7031);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0, worst_rel = 0.0;
  std::array<double, 3> by_offset{};
  constexpr int kCases = 50;
  for (int c = 0; c < kCases; ++c) {
    const int k = 2 + c % 3;
    const int r = k - (c / 3) % 3;
    const Mesh mesh = random_element(rng, c % 2 == 0);
    const WeakSpace space(mesh, SpaceConfig::make(k, r));
    const auto& basis = space.element(0).interior_basis;
    Eigen::VectorXd v0(basis.size());
    for (auto& x : v0) x = u(rng);
    WeakFunction v(space.dofs());
    v.interior(0) = v0;
    const int q = space.config().quad_order;
    for (int e = 0; e < mesh.num_edges(); ++e) {
      v.trace(e) = project_edge([&](Point2 p) { return basis.evaluate(v0, p); }, mesh, e, k, q);
      for (int comp = 0; comp < 2; ++comp) {
        v.gradient(e, comp) = project_edge([&](Point2 p) { return (basis.gradients(p) * v0)(comp); }, mesh, e, k - 1, q);
      }
    }
    const WeakHessianOperator op = build_local_operator(space, 0);
    const Eigen::VectorXd local = v.gather(mesh, 0);
    const int row[2][2] = {{0, 1}, {1, 2}};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Eigen::VectorXd weak = apply_weak_hessian(op, local, i, j);
        const Eigen::VectorXd ref = project_element(
            [&](Point2 p) { return basis.hessians(p).row(row[i][j]).dot(v0); }, mesh, 0, r, q + 4);
        const double d = (weak - ref).lpNorm<Eigen::Infinity>();
        worst = std::max(worst, d);
        worst_rel = std::max(worst_rel, d / std::max(1.0, ref.lpNorm<Eigen::Infinity>()));
        by_offset[static_cast<std::size_t>(k - r)] = std::max(by_offset[static_cast<std::size_t>(k - r)], d);
      }
    }
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = std::to_string(kCases) + " cases (k=2..4, r=k-2..k), max deviation " + fmt("%.2e", worst) +
             " (tol 1e-10), relative " + fmt("%.1e", worst_rel) + "; r=k " + fmt("%.1e", by_offset[0]) + ", r=k-1 " +
             fmt("%.1e", by_offset[1]) + ", r=k-2 " + fmt("%.1e", by_offset[2]);
  return o;
}

struct RateCheck {
  std::string problem;
  int k;
  GridFamily family;
  double lo, hi;
};

Outcome rate_checks(const std::vector<RateCheck>& checks) {
  Outcome o;
  for (const auto& c : checks) {
    const Series& s = study(c.problem, c.k, c.family);
    const double rate = s.solved ? finest_rate(s) : NAN;
    const bool ok = s.solved && rate >= c.lo && rate <= c.hi;
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += "k=" + std::to_string(c.k) + " " + to_string(c.family) + " rate " + fmt("%.2f", rate) + " in [" +
                fmt("%.2f", c.lo) + ", " + (std::isinf(c.hi) ? std::string("inf") : fmt("%.2f", c.hi)) + "]" +
                (ok ? "" : " <-- out of range");
  }
  return o;
}

Outcome zero_data() {
  double worst = 0.0;
  int cases = 0;
  for (const std::string name : {"smooth", "discontinuous"}) {
    Problem p = problem_by_name(name);
    p.source = [](Point2) { return 0.0; };
    for (const GridFamily f : {GridFamily::triangular, GridFamily::polygonal}) {
      LevelOptions opt;
      opt.compute_energy_error = false;
      const LevelRun run = run_level(p, f, 3, SpaceConfig::make(2), opt);
      worst = std::max(worst, run.solve.solution.lpNorm<Eigen::Infinity>());
      ++cases;
    }
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = std::to_string(cases) + " runs at level 3, max ||u_h||_inf = " + fmt("%.1e", worst) + " (tol 1e-12)";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (const std::string name : {"smooth", "discontinuous"}) {
    const Problem p = problem_by_name(name);
    const Mesh mesh = generate_grid(GridFamily::polygonal, 1, p.domain);
    const SpaceConfig cfg = SpaceConfig::make(2);
    const WeakSpace space(mesh, cfg);
    AssemblyOptions aopt;
    aopt.eliminate_boundary = false;
    const SparseSystem sys = assemble(space, build_operators(space), p.coefficient, p.source, aopt);
    const oracle::FullSystem ref = oracle::assemble(mesh, cfg.k, cfg.r, p.coefficient, p.source, cfg.quad_order + 6);
    const Eigen::MatrixXd A = Eigen::MatrixXd(sys.A);
    const double rel = (A - ref.A).cwiseAbs().maxCoeff() / ref.A.cwiseAbs().maxCoeff();
    o.pass = o.pass && A.rows() == ref.A.rows() && rel <= 1e-10;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += name + " (" + std::to_string(A.rows()) + " dofs) matrix max-norm rel diff " + fmt("%.2e", rel) +
                " (tol 1e-10)";
    if (name == "smooth") {
      // Polynomial source: the load is integrated exactly by both codes.
      const double brel = (sys.b - ref.b).lpNorm<Eigen::Infinity>() / ref.b.lpNorm<Eigen::Infinity>();
      o.pass = o.pass && brel <= 1e-10;
      o.detail += ", load rel diff " + fmt("%.2e", brel);
    }
  }
  return o;
}

}  // namespace

int main() {
  report(1, "polynomial exactness (k=4, triangular level 2)", 5, polynomial_exactness);
  // Runs every (problem, k, grid) study over levels 2-5; criteria 5 and 6 reuse them.
  report(2, "symmetric positive definite systems", 900, spd_structure);
  report(3, "commutativity of weak Hessian and projection", 10, commutativity);
  report(4, "smooth-interior identity", 5, smooth_interior);
  report(5, "smooth problem convergence (levels 2-5)", 300, [] {
    return rate_checks({{"smooth", 2, GridFamily::triangular, 2 - 1.25, INFINITY},
                        {"smooth", 3, GridFamily::triangular, 1.8, 2.3},
                        {"smooth", 4, GridFamily::triangular, 4 - 1.25, INFINITY},
                        {"smooth", 3, GridFamily::polygonal, 1.8, 2.2}});
  });
  report(6, "discontinuous coefficient convergence (levels 2-5)", 600, [] {
    return rate_checks({{"discontinuous", 2, GridFamily::polygonal, 0.8, 1.2},
                        {"discontinuous", 3, GridFamily::triangular, 1.8, 2.3},
                        {"discontinuous", 5, GridFamily::triangular, 3.7, 4.4}});
  });
  report(7, "zero data gives zero solution", 30, zero_data);
  report(8, "brute-force assembly oracle (pentagon level 1, k=2)", 30, oracle_equivalence);

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
