#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "music/common.hpp"
#include "music/solvers/solvers.hpp"

namespace music::solvers {

std::pair<FieldSeries, FieldSeries> solve_fn_fd(const FnSolverConfig& cfg) {
  const int n = cfg.n;
  if (n < 4 || cfg.downsample < 1 || n % cfg.downsample != 0)
    throw std::invalid_argument("solve_fn_fd: bad grid configuration");
  const double dx = cfg.length / n;
  const double gmax = std::max(cfg.constants.gamma_u, cfg.constants.gamma_v);
  if (cfg.dt > dx * dx / (4.0 * gmax))
    throw std::invalid_argument("solve_fn_fd: dt violates the diffusion stability bound dx^2/(4*gamma)");

  const int m = n / cfg.downsample;
  GridSpec grid;
  grid.nx = m;
  grid.ny = m;
  grid.nt = cfg.save_count;
  grid.x0 = 0.0;
  grid.dx = dx * cfg.downsample;
  grid.y0 = 0.0;
  grid.dy = dx * cfg.downsample;
  grid.t0 = cfg.save_t0;
  grid.dt_save = cfg.save_spacing;
  grid.solver_dt = cfg.dt;

  FieldSeries U("u", grid), V("v", grid);

  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<double> u(cells), v(cells), un(cells), vn(cells);
  Rng rng(cfg.seed);
  const double ic_std = std::sqrt(cfg.ic_variance);
  for (auto& x : u) x = rng.normal(0.0, ic_std);
  for (auto& x : v) x = rng.normal(0.0, ic_std);

  const double inv_dx2 = 1.0 / (dx * dx);
  const auto& c = cfg.constants;

  // save step indices (guard against dt not dividing the spacing exactly)
  std::vector<long> save_steps(cfg.save_count);
  for (int j = 0; j < cfg.save_count; ++j)
    save_steps[j] = std::lround((cfg.save_t0 + j * cfg.save_spacing) / cfg.dt);

  auto save_frame = [&](int frame) {
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) {
        const std::size_t s = static_cast<std::size_t>(j * cfg.downsample) * n + i * cfg.downsample;
        U.at(frame, j, i) = u[s];
        V.at(frame, j, i) = v[s];
      }
  };

  int next_save = 0;
  if (save_steps[0] == 0) save_frame(next_save++);

  const long total_steps = save_steps.back();
  for (long step = 1; step <= total_steps; ++step) {
    for (int j = 0; j < n; ++j) {
      const int jm = (j == 0 ? n - 1 : j - 1) * n;
      const int jp = (j == n - 1 ? 0 : j + 1) * n;
      const int jc = j * n;
      for (int i = 0; i < n; ++i) {
        const int im = i == 0 ? n - 1 : i - 1;
        const int ip = i == n - 1 ? 0 : i + 1;
        const double uc = u[jc + i];
        const double vc = v[jc + i];
        const double lap_u = (u[jc + im] + u[jc + ip] + u[jm + i] + u[jp + i] - 4.0 * uc) * inv_dx2;
        const double lap_v = (v[jc + im] + v[jc + ip] + v[jm + i] + v[jp + i] - 4.0 * vc) * inv_dx2;
        un[jc + i] = uc + cfg.dt * (c.gamma_u * lap_u + uc - uc * uc * uc - vc + c.alpha);
        vn[jc + i] = vc + cfg.dt * (c.gamma_v * lap_v + c.beta * (uc - vc));
      }
    }
    u.swap(un);
    v.swap(vn);
    if (next_save < cfg.save_count && step == save_steps[next_save]) {
      for (double x : u)
        if (!(std::abs(x) < 1e3))
          throw std::runtime_error("solve_fn_fd: blow-up detected at step " + std::to_string(step));
      save_frame(next_save++);
    }
  }

  U.check_finite();
  V.check_finite();
  return {std::move(U), std::move(V)};
}

}  // namespace music::solvers
