#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "music/solvers/solvers.hpp"

namespace music::solvers {

namespace {

constexpr double kDryDepth = 1e-12;

inline double velocity(double h, double hu) { return h > kDryDepth ? hu / h : 0.0; }

struct Flux {
  double mass, momentum;
};

inline Flux physical_flux(double h, double hu, double g) {
  const double u = velocity(h, hu);
  return {hu, hu * u + 0.5 * g * h * h};
}

}  // namespace

std::pair<FieldSeries, FieldSeries> solve_swe_rusanov(const SweSolverConfig& cfg) {
  if (cfg.nx < 2 || cfg.nt_save < 1 || cfg.save_stride < 1 || cfg.dt <= 0.0)
    throw std::invalid_argument("solve_swe_rusanov: bad grid configuration");
  const double dx = (cfg.x1 - cfg.x0) / cfg.nx;

  GridSpec grid;
  grid.nx = cfg.nx;
  grid.ny = 1;
  grid.nt = cfg.nt_save;
  grid.x0 = cfg.x0 + 0.5 * dx;  // cell centers
  grid.dx = dx;
  grid.t0 = 0.0;
  grid.dt_save = cfg.dt * cfg.save_stride;
  grid.solver_dt = cfg.dt;

  FieldSeries H("h", grid), HU("hu", grid);

  std::vector<double> h(cfg.nx), hu(cfg.nx, 0.0);
  for (int i = 0; i < cfg.nx; ++i) h[i] = grid.x(i) <= cfg.dam_x ? cfg.h_left : cfg.h_right;

  auto save_frame = [&](int k) {
    for (int i = 0; i < cfg.nx; ++i) {
      H.at(k, i) = h[i];
      HU.at(k, i) = hu[i];
    }
  };
  save_frame(0);

  const int total_steps = (cfg.nt_save - 1) * cfg.save_stride;
  std::vector<double> fm(cfg.nx + 1), fq(cfg.nx + 1);  // interface fluxes

  for (int step = 1; step <= total_steps; ++step) {
    // interface states with reflective ghosts: h copied, momentum negated
    double a_max = 0.0;
    for (int f = 0; f <= cfg.nx; ++f) {
      const double hl = f == 0 ? h[0] : h[f - 1];
      const double ql = f == 0 ? -hu[0] : hu[f - 1];
      const double hr = f == cfg.nx ? h[cfg.nx - 1] : h[f];
      const double qr = f == cfg.nx ? -hu[cfg.nx - 1] : hu[f];
      const double al = std::abs(velocity(hl, ql)) + std::sqrt(cfg.g * std::max(hl, 0.0));
      const double ar = std::abs(velocity(hr, qr)) + std::sqrt(cfg.g * std::max(hr, 0.0));
      const double a = std::max(al, ar);
      a_max = std::max(a_max, a);
      const Flux fl = physical_flux(hl, ql, cfg.g);
      const Flux fr = physical_flux(hr, qr, cfg.g);
      fm[f] = 0.5 * (fl.mass + fr.mass) - 0.5 * a * (hr - hl);
      fq[f] = 0.5 * (fl.momentum + fr.momentum) - 0.5 * a * (qr - ql);
    }
    if (a_max * cfg.dt / dx > 1.0)
      throw std::runtime_error("solve_swe_rusanov: CFL violation at step " + std::to_string(step) +
                               " (a*dt/dx = " + std::to_string(a_max * cfg.dt / dx) + ")");
    const double c = cfg.dt / dx;
    for (int i = 0; i < cfg.nx; ++i) {
      h[i] -= c * (fm[i + 1] - fm[i]);
      hu[i] -= c * (fq[i + 1] - fq[i]);
      if (h[i] < 0.0)
        throw std::runtime_error("solve_swe_rusanov: negative depth at step " +
                                 std::to_string(step) + ", cell " + std::to_string(i));
    }
    if (step % cfg.save_stride == 0) save_frame(step / cfg.save_stride);
  }

  H.check_finite();
  HU.check_finite();
  return {std::move(H), std::move(HU)};
}

}  // namespace music::solvers
