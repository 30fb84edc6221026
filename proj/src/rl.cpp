#include "pursuitsim/rl.hpp"

#include <cmath>
#include <utility>

#include "pursuitsim/errors.hpp"
#include "rng_util.hpp"

namespace pursuitsim {

namespace {

Eigen::VectorXd stack_z(const Eigen::VectorXd& E, double u) {
  Eigen::VectorXd z(E.size() + 1);
  z.head(E.size()) = E;
  z(E.size()) = u;
  return z;
}

}  // namespace

double stage_cost_n(const Eigen::VectorXd& E, double u, const Eigen::MatrixXd& Q,
                    double R) {
  return 0.5 * ((E.transpose() * Q * E)(0) + R * u * u);
}

double value_n(const Eigen::VectorXd& E, double u, const Eigen::MatrixXd& W) {
  const Eigen::VectorXd z = stack_z(E, u);
  return 0.5 * (z.transpose() * W * z)(0);
}

double actor_target_n(const Eigen::VectorXd& E, const Eigen::MatrixXd& W) {
  const auto n = E.size();
  const double w_uu = W(n, n);
  if (w_uu <= kWuuFloor)
    throw SimulationError("actor_target: W_uu not invertible");
  const double w_uE_dot_E = (W.row(n).head(n) * E)(0);
  return -w_uE_dot_E / w_uu;
}

double critic_target_n(const Eigen::VectorXd& E_next, double u_next,
                       const Eigen::VectorXd& E, double u,
                       const Eigen::MatrixXd& W, const Eigen::MatrixXd& Q,
                       double R) {
  return stage_cost_n(E, u, Q, R) + value_n(E_next, u_next, W);
}

Eigen::MatrixXd critic_update_n(const Eigen::MatrixXd& W, const Eigen::VectorXd& E,
                                double u, double target, double alpha_c,
                                UpdateRule rule) {
  const Eigen::VectorXd z = stack_z(E, u);
  const double e_c = value_n(E, u, W) - target;
  Eigen::MatrixXd next;
  if (rule == UpdateRule::kSignedError) {
    next = W - (alpha_c * e_c * 0.5) * (z * z.transpose());
  } else {
    next = W - (alpha_c * 0.5 * e_c * e_c) * (z * z.transpose());
  }
  return 0.5 * (next + next.transpose());
}

Eigen::RowVectorXd actor_update_n(const Eigen::RowVectorXd& K,
                                  const Eigen::VectorXd& E, double u_hat,
                                  double u_tilde, double alpha_a,
                                  UpdateRule rule) {
  const double e_a = u_hat - u_tilde;
  if (rule == UpdateRule::kSignedError)
    return K - alpha_a * e_a * E.transpose();
  return K - alpha_a * 0.5 * e_a * e_a * E.transpose();
}

double stage_cost(const ErrorWindow& E, double u, const CostParams& cp) {
  return stage_cost_n(E.vec(), u, cp.Q, cp.R);
}

double value(const ErrorWindow& E, double u, const CriticWeights& W) {
  return value_n(E.vec(), u, W.W);
}

double actor_target(const ErrorWindow& E, const CriticWeights& W) {
  return actor_target_n(E.vec(), W.W);
}

double critic_target(const ErrorWindow& E_next, double u_next, const ErrorWindow& E,
                     double u, const CriticWeights& W, const CostParams& cp) {
  return critic_target_n(E_next.vec(), u_next, E.vec(), u, W.W, cp.Q, cp.R);
}

CriticWeights critic_update(const CriticWeights& W, const ErrorWindow& E, double u,
                            double target, double alpha_c, UpdateRule rule) {
  return {critic_update_n(W.W, E.vec(), u, target, alpha_c, rule)};
}

ActorWeights actor_update(const ActorWeights& K, const ErrorWindow& E, double u_hat,
                          double u_tilde, double alpha_a, UpdateRule rule) {
  return {actor_update_n(K.K, E.vec(), u_hat, u_tilde, alpha_a, rule)};
}

Learner::Learner(int dim, Eigen::MatrixXd Q, double R, LearnerConfig cfg)
    : dim_(dim), Q_(std::move(Q)), R_(R), cfg_(cfg), rng_(cfg.rng_seed) {
  reinitialize();
  reinits_ = 0;
}

void Learner::reinitialize() {
  W_.setZero(dim_ + 1, dim_ + 1);
  for (int i = 0; i <= dim_; ++i) {
    for (int j = i; j <= dim_; ++j) {
      const double w = detail::uniform(rng_, -cfg_.init_scale, cfg_.init_scale);
      W_(i, j) = w;
      W_(j, i) = w;
    }
  }
  W_(dim_, dim_) = 1.0;  // keeps the actor target invertible from the start

  K_.resize(dim_);
  for (int i = 0; i < dim_; ++i)
    K_(i) = detail::uniform(rng_, -cfg_.init_scale, cfg_.init_scale);

  critic_history_.clear();
  critic_history_.push_back(W_);
  actor_history_.clear();
  actor_history_.push_back(K_);
  r_ = 0;
  critic_converged_ = false;
  actor_converged_ = false;
  stopped_ = false;
  ++reinits_;
}

double Learner::step(const Transition& t) {
  if (stopped_) return policy(t.E_next);

  if (W_(dim_, dim_) <= kWuuFloor) {
    // Lost invertibility: treated like hitting the iteration cap.
    reinitialize();
    return policy(t.E_next);
  }

  ++r_;

  // All quantities are computed against the pre-update weights, then the
  // critic and actor move together.
  const double u_hat_next = policy(t.E_next);
  const double target =
      critic_target_n(t.E_next, u_hat_next, t.E, t.u, W_, Q_, R_);
  const double u_hat = policy(t.E);
  const double u_tilde = actor_target_n(t.E, W_);

  W_ = critic_update_n(W_, t.E, t.u, target, cfg_.alpha_c);
  K_ = actor_update_n(K_, t.E, u_hat, u_tilde, cfg_.alpha_a);

  critic_history_.push_back(W_);
  if (static_cast<int>(critic_history_.size()) > cfg_.L + 2)
    critic_history_.pop_front();
  actor_history_.push_back(K_);
  if (static_cast<int>(actor_history_.size()) > cfg_.L + 2)
    actor_history_.pop_front();

  if (r_ > cfg_.L) {
    if (!critic_converged_ && converged(critic_history_, cfg_.Delta, cfg_.L))
      critic_converged_ = true;
    if (!actor_converged_ && converged(actor_history_, cfg_.Delta, cfg_.L))
      actor_converged_ = true;
  }

  if (critic_converged_ && actor_converged_) {
    stopped_ = true;
  } else if (r_ >= cfg_.N_t) {
    reinitialize();
  }

  return policy(t.E_next);
}

RiccatiSolution riccati_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                               const Eigen::MatrixXd& Q, double R) {
  constexpr int kMaxSweeps = 1'000'000;
  constexpr double kTol = 1e-12;

  Eigen::MatrixXd P = Q;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Eigen::VectorXd PB = P * B;
    const double den = R + (B.transpose() * PB)(0);
    if (den <= 0.0)
      throw SimulationError("riccati_oracle: R + B'PB not positive");
    const Eigen::RowVectorXd BtPA = PB.transpose() * A;
    const Eigen::MatrixXd next =
        Q + A.transpose() * P * A - BtPA.transpose() * BtPA / den;
    const double diff = (next - P).cwiseAbs().maxCoeff();
    P = 0.5 * (next + next.transpose());
    if (diff <= kTol) {
      const Eigen::VectorXd PB2 = P * B;
      const double den2 = R + (B.transpose() * PB2)(0);
      RiccatiSolution sol;
      sol.P = P;
      sol.K = (PB2.transpose() * A) / den2;
      return sol;
    }
  }
  throw SimulationError("riccati_oracle: no fixed point after iteration cap");
}

}  // namespace pursuitsim
