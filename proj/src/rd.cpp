#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "music/solvers/solvers.hpp"

namespace music::solvers {

std::pair<FieldSeries, FieldSeries> solve_rd_fd(const RdSolverConfig& cfg) {
  const int n = cfg.n;
  if (n < 4 || cfg.downsample < 1 || n % cfg.downsample != 0 || cfg.save_count < 2)
    throw std::invalid_argument("solve_rd_fd: bad grid configuration");
  const double dx = 2.0 * cfg.half_length / n;
  const double d = cfg.constants.diffusion;
  if (cfg.dt > dx * dx / (4.0 * d))
    throw std::invalid_argument("solve_rd_fd: dt violates the diffusion stability bound");
  const double spacing = cfg.t_end / (cfg.save_count - 1);
  const long stride = std::lround(spacing / cfg.dt);
  if (stride < 1 || std::abs(stride * cfg.dt - spacing) > 1e-12)
    throw std::invalid_argument("solve_rd_fd: dt must divide the save spacing");

  const int m = n / cfg.downsample;
  GridSpec grid;
  grid.nx = m;
  grid.ny = m;
  grid.nt = cfg.save_count;
  grid.x0 = -cfg.half_length;
  grid.dx = dx * cfg.downsample;
  grid.y0 = -cfg.half_length;
  grid.dy = dx * cfg.downsample;
  grid.t0 = 0.0;
  grid.dt_save = spacing;
  grid.solver_dt = cfg.dt;

  FieldSeries U("u", grid), V("v", grid);

  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<double> u(cells), v(cells), un(cells), vn(cells);
  for (int j = 0; j < n; ++j) {
    const double y = -cfg.half_length + j * dx;
    for (int i = 0; i < n; ++i) {
      const double x = -cfg.half_length + i * dx;
      const double r = std::sqrt(x * x + y * y);
      const double th = std::atan2(y, x);
      u[static_cast<std::size_t>(j) * n + i] = std::tanh(r) * std::cos(th - r);
      v[static_cast<std::size_t>(j) * n + i] = std::tanh(r) * std::sin(th - r);
    }
  }

  auto save_frame = [&](int frame) {
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) {
        const std::size_t s = static_cast<std::size_t>(j * cfg.downsample) * n + i * cfg.downsample;
        U.at(frame, j, i) = u[s];
        V.at(frame, j, i) = v[s];
      }
  };
  save_frame(0);

  const double inv_dx2 = 1.0 / (dx * dx);
  const long total_steps = stride * (cfg.save_count - 1);
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
        const double a2u = uc * vc * vc + uc * uc * uc;
        const double a2v = vc * uc * uc + vc * vc * vc;
        un[jc + i] = uc + cfg.dt * (d * lap_u - a2u + vc * vc * vc + uc * uc * vc + uc);
        vn[jc + i] = vc + cfg.dt * (d * lap_v - uc * vc * vc - uc * uc * uc - a2v + vc);
      }
    }
    u.swap(un);
    v.swap(vn);
    if (step % stride == 0) {
      for (double x : u)
        if (!(std::abs(x) < 1e3))
          throw std::runtime_error("solve_rd_fd: blow-up detected at step " + std::to_string(step));
      save_frame(static_cast<int>(step / stride));
    }
  }

  U.check_finite();
  V.check_finite();
  return {std::move(U), std::move(V)};
}

}  // namespace music::solvers
