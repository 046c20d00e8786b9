#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "music/solvers/field.hpp"
#include "music/systems/system.hpp"

namespace music::solvers {

// ============================================================================
// Ground-truth generators for the four systems. All solvers are
// deterministic given their config and seed; reruns are bitwise identical.
// ============================================================================

// ---- 1D shallow water, Rusanov (local Lax-Friedrichs) finite volume -------

struct SweSolverConfig {
  int nx = 200;                 // cells; values stored at cell centers
  double x0 = 0.0, x1 = 10.0;
  double dt = 0.001;
  int nt_save = 1000;           // frames at t = k*save_stride*dt, k = 0..nt_save-1
  int save_stride = 1;
  double g = 9.81;
  double dam_x = 5.0;
  double h_left = 1.0, h_right = 0.0;
};

/// Dam-break IC, reflective walls (no flow through the boundary).
/// Returns (h, hu). Aborts on CFL violation or negative depth.
std::pair<FieldSeries, FieldSeries> solve_swe_rusanov(const SweSolverConfig& cfg);

// ---- Fitzhugh-Nagumo, explicit FD, periodic ---------------------------------

struct FnSolverConfig {
  int n = 200;                  // periodic solve grid per axis, domain [0, length)
  double length = 100.0;
  double dt = 0.0005;
  systems::FnConstants constants;
  std::uint64_t seed = 1;
  double ic_variance = 0.2;
  // dataset recipe: frames at save_t0 + j*save_spacing, downsampled sites
  double save_t0 = 10.0;
  int save_count = 50;
  double save_spacing = 1.0;
  int downsample = 2;
};

std::pair<FieldSeries, FieldSeries> solve_fn_fd(const FnSolverConfig& cfg);

// ---- lambda-omega reaction-diffusion, explicit FD, periodic ----------------

struct RdSolverConfig {
  int n = 256;                  // periodic solve grid per axis, domain [-L, L)
  double half_length = 10.0;
  double dt = 0.005;
  systems::RdConstants constants;
  double t_end = 10.0;
  int save_count = 101;         // frames every t_end/(save_count-1)
  int downsample = 2;           // -> 128 x 128
};

/// Spiral IC: u = tanh(r) cos(th - r), v = tanh(r) sin(th - r).
std::pair<FieldSeries, FieldSeries> solve_rd_fd(const RdSolverConfig& cfg);

// ---- wildfire reaction-advection-diffusion, Dirichlet ----------------------

enum class WindKind { kFixed, kStochastic };

struct WindField {
  WindKind kind = WindKind::kFixed;
  Eigen::ArrayXXd vx, vy;  // per node, (ny, nx)
};

/// Fixed kind: constant vector. Stochastic: per-cell (v1^2, v2^2) with
/// v1, v2 ~ N(0, 0.5), frozen in time.
WindField make_wind(WindKind kind, int nx, int ny, std::uint64_t seed,
                    double fixed_vx = 0.3, double fixed_vy = 0.3);

struct WildfireSolverConfig {
  int n = 51;                   // nodes per axis over [0, 10]
  double length = 10.0;
  double t_end = 10.0;
  double dt_save = 0.1;
  double discard_before = 2.0;  // frames with t <= this are dropped
  systems::WildfireConstants constants;
  // Gaussian hot spot IC
  double ic_amplitude = 6.0, ic_x = 2.0, ic_y = 2.0, ic_sigma = 0.5;
  double beta0 = 1.0;
};

/// Returns (u, b); frames cover t in (discard_before, t_end].
std::pair<FieldSeries, FieldSeries> solve_wildfire_fd(const WildfireSolverConfig& cfg,
                                                      const WindField& wind);

}  // namespace music::solvers
