#pragma once

#include <cstddef>
#include <vector>

#include "tcclab/errors.hpp"

namespace tcclab {

/// Discrete probability distribution: non-negative entries summing to 1
/// within 1e-12.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  std::size_t support_size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

 private:
  std::vector<double> p_;
};

/// Prior over states plus a row-stochastic likelihood P(o|s),
/// states x outcomes.
struct GenerativeModel {
  GenerativeModel(Distribution prior, std::vector<std::vector<double>> likelihood);

  std::size_t states() const { return prior.support_size(); }
  std::size_t outcomes() const { return likelihood.front().size(); }

  /// Marginal P(o); DomainError when zero.
  double evidence(std::size_t o) const;
  /// Bayes posterior P(s|o).
  Distribution posterior(std::size_t o) const;

  Distribution prior;
  std::vector<std::vector<double>> likelihood;
};

/// D_KL[q || p] in nats; 0 ln 0 = 0; requires equal support and p > 0
/// wherever q > 0 (absolute continuity), else DomainError.
double kl_divergence(const Distribution& q, const Distribution& p);

/// F = -ln P(o) + D_KL[Q(s) || P(s|o)], nats.
double variational_free_energy(const GenerativeModel& model, const Distribution& q,
                               std::size_t o);

/// The four algebraically equal free-energy forms.
struct FreeEnergyForms {
  double joint;                  // E_Q[ln Q(s) - ln P(o|s) - ln P(s)]
  double posterior;              // E_Q[ln Q(s) - ln P(s|o) - ln P(o)]
  double divergence_evidence;    // D_KL[Q||P(s|o)] - ln P(o)
  double complexity_accuracy;    // D_KL[Q||P(s)] - E_Q[ln P(o|s)]
};

FreeEnergyForms free_energy_decompositions(const GenerativeModel& model,
                                           const Distribution& q, std::size_t o);

/// Single-timestep policy model: predictive state posterior Q(s|pi), the
/// outcome model Q(o|s,pi) (row-stochastic), and the outcome prior P(o)
/// (preferences). Q(o|pi) and Q(s|o,pi) are derived by marginalization and
/// Bayes inversion.
class PolicyModel {
 public:
  PolicyModel(Distribution q_states, std::vector<std::vector<double>> likelihood,
              Distribution outcome_prior);

  /// Validates caller-supplied posterior rows Q(s|o,pi) against the Bayes
  /// inversion of (q_states, likelihood); throws ValidationError beyond tol.
  static PolicyModel with_posterior(Distribution q_states,
                                    std::vector<std::vector<double>> likelihood,
                                    Distribution outcome_prior,
                                    const std::vector<std::vector<double>>& q_s_given_o,
                                    double tol = 1e-9);

  std::size_t states() const { return q_states_.support_size(); }
  std::size_t outcomes() const { return outcome_prior_.support_size(); }

  const Distribution& state_posterior() const { return q_states_; }
  const Distribution& outcome_prior() const { return outcome_prior_; }
  const std::vector<std::vector<double>>& likelihood() const { return likelihood_; }
  /// Predictive outcome posterior Q(o|pi).
  const std::vector<double>& predictive_outcomes() const { return q_o_; }
  /// Bayes posterior Q(s|o,pi); DomainError when Q(o|pi) = 0.
  std::vector<double> state_posterior_given(std::size_t o) const;

 private:
  Distribution q_states_;
  std::vector<std::vector<double>> likelihood_;
  Distribution outcome_prior_;
  std::vector<double> q_o_;
};

struct ExpectedFreeEnergyReport {
  double G;                   // -epistemic - extrinsic
  double epistemic;           // E_Q[ln Q(s|o,pi) - ln Q(s|pi)]
  double extrinsic;           // E_Q[ln P(o)]
  double mutual_information;  // I(S;O|pi), equals epistemic
};

/// Expected free energy of one timestep under the policy model.
ExpectedFreeEnergyReport expected_free_energy(const PolicyModel& policy);

/// Degree of belief updating: D_KL[posterior || prior].
double belief_update_complexity(const Distribution& prior,
                                const Distribution& posterior);

}  // namespace tcclab
