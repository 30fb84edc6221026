#pragma once

#include <cstdint>
#include <deque>
#include <random>

#include <Eigen/Dense>

namespace pursuitsim {

/// Window of the three most recent tracking errors for one axis,
/// newest first: e0 = e_k, e1 = e_{k-1}, e2 = e_{k-2}.
struct ErrorWindow {
  double e0 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;

  Eigen::Vector3d vec() const { return {e0, e1, e2}; }

  /// Inserts a new sample, evicting the oldest.
  void push(double e) {
    e2 = e1;
    e1 = e0;
    e0 = e;
  }

  /// Window primed by replicating one sample three times.
  static ErrorWindow primed(double e) { return {e, e, e}; }
};

/// Quadratic stage-cost weights: error weight Q (positive definite) and
/// control weight R > 0.
struct CostParams {
  Eigen::Matrix3d Q = Eigen::Matrix3d::Identity();
  double R = 1.0;
};

/// Symmetric 4x4 critic matrix over z = (e0, e1, e2, u).
struct CriticWeights {
  Eigen::Matrix4d W = Eigen::Matrix4d::Identity();

  Eigen::Matrix3d W_EE() const { return W.topLeftCorner<3, 3>(); }
  Eigen::Vector3d W_Eu() const { return W.topRightCorner<3, 1>(); }
  Eigen::RowVector3d W_uE() const { return W.bottomLeftCorner<1, 3>(); }
  double W_uu() const { return W(3, 3); }
};

/// Actor gain row: u = K * E.
struct ActorWeights {
  Eigen::RowVector3d K = Eigen::RowVector3d::Zero();
};

/// Learning hyperparameters.
struct LearnerConfig {
  double alpha_a = 0.01;     // actor rate, in (0,1)
  double alpha_c = 1e-6;     // critic rate, in (0,1)
  double Delta = 1e-8;       // convergence threshold, > 0
  int L = 20;                // convergence window width, >= 1
  long N_t = 6000;           // max iterations before reinitialization, >= 1
  double init_scale = 0.1;   // weight init half-range, > 0
  std::uint64_t rng_seed = 0;
};

/// Selects between the descent direction used in production (signed error)
/// and the literal squared-error weighting kept for comparison runs.
enum class UpdateRule { kSignedError, kLiteralSquared };

#ifdef PURSUITSIM_LITERAL_PAPER_UPDATES
inline constexpr UpdateRule kDefaultUpdateRule = UpdateRule::kLiteralSquared;
#else
inline constexpr UpdateRule kDefaultUpdateRule = UpdateRule::kSignedError;
#endif

// --- Dimension-generic core (window length n, z = (E, u) of length n+1) ---
// The 3-window typed wrappers below delegate to these.

double stage_cost_n(const Eigen::VectorXd& E, double u, const Eigen::MatrixXd& Q,
                    double R);
double value_n(const Eigen::VectorXd& E, double u, const Eigen::MatrixXd& W);
double actor_target_n(const Eigen::VectorXd& E, const Eigen::MatrixXd& W);
double critic_target_n(const Eigen::VectorXd& E_next, double u_next,
                       const Eigen::VectorXd& E, double u,
                       const Eigen::MatrixXd& W, const Eigen::MatrixXd& Q,
                       double R);
Eigen::MatrixXd critic_update_n(const Eigen::MatrixXd& W, const Eigen::VectorXd& E,
                                double u, double target, double alpha_c,
                                UpdateRule rule = kDefaultUpdateRule);
Eigen::RowVectorXd actor_update_n(const Eigen::RowVectorXd& K,
                                  const Eigen::VectorXd& E, double u_hat,
                                  double u_tilde, double alpha_a,
                                  UpdateRule rule = kDefaultUpdateRule);

// --- 3-window typed interface ---

/// Stage cost U(E, u) = 1/2 (E' Q E + R u^2).
double stage_cost(const ErrorWindow& E, double u, const CostParams& cp);

/// Value estimate V(E, u) = 1/2 z' W z with z = (E, u).
double value(const ErrorWindow& E, double u, const CriticWeights& W);

/// Greedy control u~ = -(W_uu)^-1 W_uE E.
/// Throws SimulationError when W_uu <= kWuuFloor.
double actor_target(const ErrorWindow& E, const CriticWeights& W);

/// Bellman target V~ = U(E, u) + V(E_next, u_next).
double critic_target(const ErrorWindow& E_next, double u_next,
                     const ErrorWindow& E, double u, const CriticWeights& W,
                     const CostParams& cp);

/// One critic step toward `target`, symmetrized. Signed-error rule:
/// W' = W - alpha_c * e_c * 1/2 z z' with e_c = value(E,u,W) - target.
CriticWeights critic_update(const CriticWeights& W, const ErrorWindow& E, double u,
                            double target, double alpha_c,
                            UpdateRule rule = kDefaultUpdateRule);

/// One actor step: K' = K - alpha_a * e_a * E' with e_a = u_hat - u_tilde.
ActorWeights actor_update(const ActorWeights& K, const ErrorWindow& E, double u_hat,
                          double u_tilde, double alpha_a,
                          UpdateRule rule = kDefaultUpdateRule);

/// Invertibility floor for W_uu.
inline constexpr double kWuuFloor = 1e-9;

/// True iff every successive difference over the last L+1 pairs in `history`
/// has max-abs-element <= Delta. Histories shorter than L+2 entries are
/// never converged.
template <typename Matrix>
bool converged(const std::deque<Matrix>& history, double Delta, int L) {
  if (static_cast<int>(history.size()) < L + 2) return false;
  auto it = history.rbegin();
  for (int j = 0; j <= L; ++j) {
    const Matrix& newer = *it;
    const Matrix& older = *std::next(it);
    if (((newer - older).cwiseAbs().maxCoeff()) > Delta) return false;
    ++it;
  }
  return true;
}

/// One observed transition: control u was applied at window E and produced
/// window E_next.
struct Transition {
  Eigen::VectorXd E;
  double u = 0.0;
  Eigen::VectorXd E_next;
};

/// Online value-iteration actor-critic for one control axis, dimension
/// generic (window length n >= 1). Owns the weight matrices, the two
/// convergence windows, the iteration counter and the init RNG.
class Learner {
 public:
  Learner(int dim, Eigen::MatrixXd Q, double R, LearnerConfig cfg);

  /// One learning pass on an observed transition. Computes the Bellman
  /// target with the current actor evaluated at E_next, updates critic then
  /// actor, advances the convergence windows, freezes once both converge,
  /// and reinitializes with random weights when the iteration counter hits
  /// N_t (or when W_uu falls below the invertibility floor).
  /// Returns the control for E_next under the post-update (or frozen) actor.
  double step(const Transition& t);

  /// Control for a window under the current actor, without learning.
  double policy(const Eigen::VectorXd& E) const { return (K_ * E)(0); }

  bool critic_converged() const { return critic_converged_; }
  bool actor_converged() const { return actor_converged_; }
  bool stopped() const { return stopped_; }
  long iteration() const { return r_; }
  long reinit_count() const { return reinits_; }

  const Eigen::MatrixXd& critic() const { return W_; }
  const Eigen::RowVectorXd& actor() const { return K_; }

 private:
  void reinitialize();

  int dim_;
  Eigen::MatrixXd Q_;
  double R_;
  LearnerConfig cfg_;
  std::mt19937_64 rng_;

  Eigen::MatrixXd W_;
  Eigen::RowVectorXd K_;
  std::deque<Eigen::MatrixXd> critic_history_;
  std::deque<Eigen::RowVectorXd> actor_history_;
  long r_ = 0;
  long reinits_ = 0;
  bool critic_converged_ = false;
  bool actor_converged_ = false;
  bool stopped_ = false;
};

/// Discrete algebraic Riccati solution for x' = A x + B u with stage cost
/// 1/2 (x' Q x + R u^2): P from fixed-point iteration to 1e-12, and the
/// optimal gain K = (R + B' P B)^-1 B' P A (so u* = -K x).
struct RiccatiSolution {
  Eigen::MatrixXd P;
  Eigen::RowVectorXd K;
};

/// Throws SimulationError if the iteration has not settled after a bounded
/// number of sweeps.
RiccatiSolution riccati_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                               const Eigen::MatrixXd& Q, double R);

}  // namespace pursuitsim
