#pragma once

#include <span>
#include <vector>

#include "polexp/linalg.hpp"
#include "polexp/time_interval.hpp"

namespace polexp {

/// Initial-value problem u' + L u = 0 on [-1,1]^2 with homogeneous Dirichlet
/// boundary: L is the five-point discretization of -0.2*Laplace on a g x g
/// interior grid and u0 samples (1-x^2)(1-y^2)e^x.
struct IvpProblem {
  int grid_width = 0;
  SpdOperator op;
  std::vector<double> u0;
  double diffusion = 0.2;
};

/// Scaled 2D Dirichlet Laplacian: mesh h = 2/(g+1), diagonal 0.2*4/h^2,
/// neighbors -0.2/h^2, bandwidth hint g.
SpdOperator build_laplacian(int g);

IvpProblem make_ivp_problem(int g = 69);

/// exp(-t*L)*u0 through the discrete sine eigenbasis of the Kronecker
/// structure; exact to rounding, used as the reference for error curves.
std::vector<double> reference_solution(const IvpProblem& problem, double t);

struct ExperimentRow {
  int n = 0;
  double t = 0.0;
  double err_cheb = 0.0;
  double err_arnoldi = 0.0;
  double bound = 0.0;  // scalar sup error * ||u0||_2
};

/// Error curves of both evaluation schemes against the reference, with the
/// scalar error bound, over a log time grid. Rows ordered by degree then
/// time.
std::vector<ExperimentRow> run_experiment(const IvpProblem& problem, std::span<const int> degrees,
                                          const TimeInterval& interval = TimeInterval(1e-3, 1.0),
                                          int grid = 41);

}  // namespace polexp
