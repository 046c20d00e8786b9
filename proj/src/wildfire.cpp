#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "music/common.hpp"
#include "music/solvers/solvers.hpp"

namespace music::solvers {

WindField make_wind(WindKind kind, int nx, int ny, std::uint64_t seed, double fixed_vx,
                    double fixed_vy) {
  WindField w;
  w.kind = kind;
  w.vx = Eigen::ArrayXXd::Zero(ny, nx);
  w.vy = Eigen::ArrayXXd::Zero(ny, nx);
  if (kind == WindKind::kFixed) {
    w.vx.setConstant(fixed_vx);
    w.vy.setConstant(fixed_vy);
  } else {
    Rng rng(seed);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double v1 = rng.normal(0.0, 0.5);
        const double v2 = rng.normal(0.0, 0.5);
        w.vx(j, i) = v1 * v1;
        w.vy(j, i) = v2 * v2;
      }
  }
  return w;
}

std::pair<FieldSeries, FieldSeries> solve_wildfire_fd(const WildfireSolverConfig& cfg,
                                                      const WindField& wind) {
  const int n = cfg.n;
  if (n < 4) throw std::invalid_argument("solve_wildfire_fd: grid too small");
  if (wind.vx.rows() != n || wind.vx.cols() != n)
    throw std::invalid_argument("solve_wildfire_fd: wind field does not match the grid");
  const double dx = cfg.length / (n - 1);
  const auto& c = cfg.constants;

  // sub-stepping to satisfy both diffusion and advection bounds
  const double vmax = std::max(wind.vx.maxCoeff(), wind.vy.maxCoeff());
  double bound = dx * dx / (4.0 * c.kappa);
  if (vmax > 0.0) bound = std::min(bound, dx / vmax);
  bound *= 0.9;
  const int n_sub = std::max(1, static_cast<int>(std::ceil(cfg.dt_save / bound)));
  const double dt = cfg.dt_save / n_sub;

  const int total_frames = static_cast<int>(std::lround(cfg.t_end / cfg.dt_save));
  const int skip_frames = static_cast<int>(std::lround(cfg.discard_before / cfg.dt_save));
  const int saved_frames = total_frames - skip_frames;
  if (saved_frames < 1)
    throw std::invalid_argument("solve_wildfire_fd: nothing left after the discard window");

  GridSpec grid;
  grid.nx = n;
  grid.ny = n;
  grid.nt = saved_frames;
  grid.x0 = 0.0;
  grid.dx = dx;
  grid.y0 = 0.0;
  grid.dy = dx;
  grid.t0 = (skip_frames + 1) * cfg.dt_save;
  grid.dt_save = cfg.dt_save;
  grid.solver_dt = dt;

  FieldSeries U("u", grid), B("b", grid);

  Eigen::ArrayXXd u = Eigen::ArrayXXd::Zero(n, n), b = Eigen::ArrayXXd::Zero(n, n);
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const double x = i * dx, y = j * dx;
      const double r2 = (x - cfg.ic_x) * (x - cfg.ic_x) + (y - cfg.ic_y) * (y - cfg.ic_y);
      u(j, i) = cfg.ic_amplitude * std::exp(-r2 / (cfg.ic_sigma * cfg.ic_sigma));
      b(j, i) = cfg.beta0;
    }

  Eigen::ArrayXXd un = u, bn = b;
  const double inv_dx2 = 1.0 / (dx * dx), inv_dx = 1.0 / dx;

  int saved = 0;
  for (int frame = 1; frame <= total_frames; ++frame) {
    for (int sub = 0; sub < n_sub; ++sub) {
      for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
          const double uc = u(j, i);
          const double bc = b(j, i);
          const double lap =
              (u(j, i - 1) + u(j, i + 1) + u(j - 1, i) + u(j + 1, i) - 4.0 * uc) * inv_dx2;
          const double wx = wind.vx(j, i), wy = wind.vy(j, i);
          const double dudx = wx >= 0.0 ? (uc - u(j, i - 1)) * inv_dx : (u(j, i + 1) - uc) * inv_dx;
          const double dudy = wy >= 0.0 ? (uc - u(j - 1, i)) * inv_dx : (u(j + 1, i) - uc) * inv_dx;
          const bool burning = uc >= c.u_pc;
          const double ex = burning ? std::exp(uc / (1.0 + c.eps * uc)) : 0.0;
          const double f = (burning ? bc * ex : 0.0) - c.alpha * uc;
          const double g = burning ? -(c.eps / c.q) * bc * ex : 0.0;
          un(j, i) = uc + dt * (c.kappa * lap - wx * dudx - wy * dudy + f);
          bn(j, i) = bc + dt * g;
          if (bn(j, i) < -1e-12 || bn(j, i) > cfg.beta0 + 1e-9)
            throw std::runtime_error("solve_wildfire_fd: fuel out of range at frame " +
                                     std::to_string(frame));
        }
      u.swap(un);
      b.swap(bn);
    }
    if (frame > skip_frames) {
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          U.at(saved, j, i) = u(j, i);
          B.at(saved, j, i) = b(j, i);
        }
      ++saved;
    }
  }

  U.check_finite();
  B.check_finite();
  return {std::move(U), std::move(B)};
}

}  // namespace music::solvers
