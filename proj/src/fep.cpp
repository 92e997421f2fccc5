#include "tcclab/fep.hpp"

#include <cmath>
#include <numeric>

namespace tcclab {

namespace {

constexpr double kNormalizationTol = 1e-12;

void check_rows(const std::vector<std::vector<double>>& m, std::size_t rows,
                const char* what) {
  if (m.size() != rows) throw ValidationError(std::string(what) + ": wrong row count");
  if (m.empty() || m.front().empty())
    throw ValidationError(std::string(what) + ": empty matrix");
  std::size_t cols = m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols)
      throw ValidationError(std::string(what) + ": ragged rows");
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0) throw ValidationError(std::string(what) + ": negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError(std::string(what) + ": row not normalized");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw ValidationError("distribution: empty support");
  double sum = 0.0;
  for (double v : p_) {
    if (v < 0.0) throw ValidationError("distribution: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw ValidationError("distribution: probabilities do not sum to 1");
  // renormalize residual numeric error below the documented tolerance
  if (std::abs(sum - 1.0) > kNormalizationTol)
    for (double& v : p_) v /= sum;
}

GenerativeModel::GenerativeModel(Distribution prior_,
                                 std::vector<std::vector<double>> likelihood_)
    : prior(std::move(prior_)), likelihood(std::move(likelihood_)) {
  check_rows(likelihood, prior.support_size(), "likelihood");
}

double GenerativeModel::evidence(std::size_t o) const {
  if (o >= outcomes()) throw IndexError("evidence: outcome index out of range");
  double p = 0.0;
  for (std::size_t s = 0; s < states(); ++s) p += likelihood[s][o] * prior[s];
  if (p <= 0.0)
    throw DomainError("evidence: observation has zero probability under the model");
  return p;
}

Distribution GenerativeModel::posterior(std::size_t o) const {
  double z = evidence(o);
  std::vector<double> post(states());
  for (std::size_t s = 0; s < states(); ++s)
    post[s] = likelihood[s][o] * prior[s] / z;
  return Distribution(std::move(post));
}

double kl_divergence(const Distribution& q, const Distribution& p) {
  if (q.support_size() != p.support_size())
    throw DomainError("kl_divergence: support mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < q.support_size(); ++i) {
    if (q[i] == 0.0) continue;  // 0 ln 0 = 0
    if (p[i] == 0.0)
      throw DomainError("kl_divergence: q puts mass where p has none "
                        "(absolute continuity violated)");
    d += q[i] * std::log(q[i] / p[i]);
  }
  return d < 0.0 && d > -1e-15 ? 0.0 : d;
}

double variational_free_energy(const GenerativeModel& model, const Distribution& q,
                               std::size_t o) {
  if (q.support_size() != model.states())
    throw DomainError("variational_free_energy: q has wrong support");
  return -std::log(model.evidence(o)) + kl_divergence(q, model.posterior(o));
}

FreeEnergyForms free_energy_decompositions(const GenerativeModel& model,
                                           const Distribution& q, std::size_t o) {
  if (q.support_size() != model.states())
    throw DomainError("free_energy_decompositions: q has wrong support");
  const double ln_po = std::log(model.evidence(o));
  Distribution post = model.posterior(o);

  double joint = 0.0, posterior_form = 0.0, accuracy = 0.0;
  for (std::size_t s = 0; s < model.states(); ++s) {
    if (q[s] == 0.0) continue;
    const double lq = std::log(q[s]);
    const double ls = model.prior[s] > 0.0
                          ? std::log(model.prior[s])
                          : throw DomainError("free_energy_decompositions: q puts "
                                              "mass on a zero-prior state");
    if (model.likelihood[s][o] <= 0.0)
      throw DomainError("free_energy_decompositions: q puts mass on a state "
                        "that cannot generate the observation");
    const double lo_s = std::log(model.likelihood[s][o]);
    joint += q[s] * (lq - lo_s - ls);
    posterior_form += q[s] * (lq - std::log(post[s]));
    accuracy += q[s] * lo_s;
  }
  posterior_form -= ln_po;

  FreeEnergyForms forms;
  forms.joint = joint;
  forms.posterior = posterior_form;
  forms.divergence_evidence = kl_divergence(q, post) - ln_po;
  forms.complexity_accuracy = kl_divergence(q, model.prior) - accuracy;
  return forms;
}

// ---------------------------------------------------------------------------
// Expected free energy
// ---------------------------------------------------------------------------

PolicyModel::PolicyModel(Distribution q_states,
                         std::vector<std::vector<double>> likelihood,
                         Distribution outcome_prior)
    : q_states_(std::move(q_states)),
      likelihood_(std::move(likelihood)),
      outcome_prior_(std::move(outcome_prior)) {
  check_rows(likelihood_, q_states_.support_size(), "policy likelihood");
  if (likelihood_.front().size() != outcome_prior_.support_size())
    throw ValidationError("policy: outcome prior size does not match likelihood");
  q_o_.assign(outcomes(), 0.0);
  for (std::size_t s = 0; s < states(); ++s)
    for (std::size_t o = 0; o < outcomes(); ++o)
      q_o_[o] += likelihood_[s][o] * q_states_[s];
}

PolicyModel PolicyModel::with_posterior(
    Distribution q_states, std::vector<std::vector<double>> likelihood,
    Distribution outcome_prior, const std::vector<std::vector<double>>& q_s_given_o,
    double tol) {
  PolicyModel model(std::move(q_states), std::move(likelihood),
                    std::move(outcome_prior));
  if (q_s_given_o.size() != model.outcomes())
    throw ValidationError("policy posterior: wrong number of outcome rows");
  for (std::size_t o = 0; o < model.outcomes(); ++o) {
    if (model.predictive_outcomes()[o] == 0.0) continue;
    std::vector<double> bayes = model.state_posterior_given(o);
    if (q_s_given_o[o].size() != model.states())
      throw ValidationError("policy posterior: wrong row length");
    for (std::size_t s = 0; s < model.states(); ++s) {
      if (std::abs(q_s_given_o[o][s] - bayes[s]) > tol)
        throw ValidationError(
            "policy posterior: row " + std::to_string(o) +
            " is not the Bayes posterior of Q(s|pi) under the likelihood");
    }
  }
  return model;
}

std::vector<double> PolicyModel::state_posterior_given(std::size_t o) const {
  if (o >= outcomes()) throw IndexError("state_posterior_given: bad outcome");
  if (q_o_[o] <= 0.0)
    throw DomainError("state_posterior_given: outcome has zero predictive mass");
  std::vector<double> post(states());
  for (std::size_t s = 0; s < states(); ++s)
    post[s] = likelihood_[s][o] * q_states_[s] / q_o_[o];
  return post;
}

ExpectedFreeEnergyReport expected_free_energy(const PolicyModel& policy) {
  // epistemic value over the joint Q(s,o); mutual information over the
  // outcome marginal. The two routes are algebraically equal (Eq. 6 style
  // identity) and kept separate so the report exposes a real residual.
  double epistemic = 0.0;
  double extrinsic = 0.0;
  double mutual_information = 0.0;

  std::vector<std::vector<double>> posteriors(policy.outcomes());
  for (std::size_t o = 0; o < policy.outcomes(); ++o) {
    const double qo = policy.predictive_outcomes()[o];
    if (qo == 0.0) continue;
    if (policy.outcome_prior()[o] <= 0.0)
      throw DomainError("expected_free_energy: predicted outcome has zero "
                        "prior preference probability");
    extrinsic += qo * std::log(policy.outcome_prior()[o]);
    posteriors[o] = policy.state_posterior_given(o);
  }

  // route 1: E_{Q(s,o)}[ln Q(s|o) - ln Q(s)]
  for (std::size_t s = 0; s < policy.states(); ++s) {
    const double qs = policy.state_posterior()[s];
    if (qs == 0.0) continue;
    for (std::size_t o = 0; o < policy.outcomes(); ++o) {
      const double joint = policy.likelihood()[s][o] * qs;
      if (joint == 0.0) continue;
      epistemic += joint * (std::log(posteriors[o][s]) - std::log(qs));
    }
  }

  // route 2: E_{Q(o)} D_KL[Q(s|o) || Q(s)]
  for (std::size_t o = 0; o < policy.outcomes(); ++o) {
    const double qo = policy.predictive_outcomes()[o];
    if (qo == 0.0) continue;
    double kl = 0.0;
    for (std::size_t s = 0; s < policy.states(); ++s) {
      if (posteriors[o][s] == 0.0) continue;
      kl += posteriors[o][s] *
            std::log(posteriors[o][s] / policy.state_posterior()[s]);
    }
    mutual_information += qo * kl;
  }

  ExpectedFreeEnergyReport rep;
  rep.epistemic = epistemic;
  rep.extrinsic = extrinsic;
  rep.mutual_information = mutual_information;
  rep.G = -epistemic - extrinsic;
  return rep;
}

double belief_update_complexity(const Distribution& prior,
                                const Distribution& posterior) {
  return kl_divergence(posterior, prior);
}

}  // namespace tcclab
