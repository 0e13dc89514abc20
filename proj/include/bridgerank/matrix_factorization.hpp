#pragma once
// Intercept + latent-factor model of approval:
//   r_ui ≈ mu + b_u + b_i + p_u · q_i
// with Agree -> 1, Disagree -> 0 targets (Pass excluded). The item intercept
// b_i is the part of approval that the viewpoint factors do not explain, so it
// is used as a bridging score.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <vector>

#include "bridgerank/vote_matrix.hpp"

namespace bridgerank {

struct MFHyperparams {
    int factors = 2;
    double lambda_intercept = 0.15;
    double lambda_factor = 0.03;
    // Fraction of the curvature-scaled step taken per block, in (0, 1].
    double learning_rate = 1.0;
    int epochs = 500;
    uint64_t seed = 0;
    // Trailing loss change above this sets `non_converged`.
    double tolerance = 1e-6;
    double init_scale = 0.1;
};

struct MFModel {
    double mu = 0.0;
    std::map<PersonId, double> person_intercepts;
    std::map<ItemId, double> item_intercepts;
    std::map<PersonId, Eigen::VectorXd> person_factors;
    std::map<ItemId, Eigen::VectorXd> item_factors;
    MFHyperparams hyperparams;
    std::vector<double> loss_trace;
    bool non_converged = false;

    double predict(const PersonId& p, const ItemId& i) const;
};

// Block-coordinate descent over (mu, person intercepts, item intercepts,
// person factors, item factors); each block takes a curvature-scaled gradient
// step, so the objective is non-increasing. Intercepts are centred afterwards
// (means folded into mu). Throws EmptyInput when no non-pass vote exists.
MFModel fit_matrix_factorization(const VoteMatrix& m, const MFHyperparams& h = {});

// Objective value for given parameters under `h`, on the matrix's non-pass votes.
double mf_objective(const VoteMatrix& m, const MFModel& model, const MFHyperparams& h);

// Item intercept. Throws UnknownItem.
double mf_bridging_score(const MFModel& model, const ItemId& item);

}  // namespace bridgerank
