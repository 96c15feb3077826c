#pragma once

// Thin wrapper over Eigen's MINPACK-derived Levenberg-Marquardt for the small
// whitened problems in the analysis module.

#include <Eigen/Dense>
#include <functional>
#include <unsupported/Eigen/NonLinearOptimization>

namespace franson::analysis::detail {

// residuals(x, r) fills whitened residuals; jacobian(x, J) their derivatives.
struct Problem {
  int parameters = 0;
  int observations = 0;
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> residuals;
  std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)> jacobian;
};

struct Solution {
  Eigen::VectorXd x;
  Eigen::MatrixXd covariance;
  // J^T J at the solution, whitened.
  Eigen::MatrixXd normal;
  double chi_square = 0.0;
  int evaluations = 0;
  bool converged = false;
  bool covariance_ok = false;
};

struct LmFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  const Problem* p;
  int inputs() const { return p->parameters; }
  int values() const { return p->observations; }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    p->residuals(x, f);
    return 0;
  }
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
    p->jacobian(x, j);
    return 0;
  }
};

inline Solution solve(const Problem& problem, Eigen::VectorXd x0,
                      int max_evaluations = 400) {
  LmFunctor functor{&problem};
  Eigen::LevenbergMarquardt<LmFunctor> lm(functor);
  lm.parameters.maxfev = max_evaluations;
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  const auto status = lm.minimize(x0);

  Solution out;
  out.x = x0;
  out.evaluations = static_cast<int>(lm.nfev);
  using Status = Eigen::LevenbergMarquardtSpace::Status;
  out.converged = status != Status::ImproperInputParameters &&
                  status != Status::TooManyFunctionEvaluation &&
                  status != Status::UserAsked;

  Eigen::VectorXd r(problem.observations);
  problem.residuals(out.x, r);
  out.chi_square = r.squaredNorm();
  Eigen::MatrixXd j(problem.observations, problem.parameters);
  problem.jacobian(out.x, j);
  out.normal = j.transpose() * j;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(out.normal);
  out.covariance_ok = lu.isInvertible();
  if (out.covariance_ok) out.covariance = lu.inverse();
  return out;
}

}  // namespace franson::analysis::detail
