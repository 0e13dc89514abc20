#pragma once
// Recursive credibility: people are credible when credible people from other
// groups endorse what they author.

#include <map>

#include "bridgerank/relation_model.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace bridgerank {

using Authorship = std::map<ItemId, PersonId>;

struct CredibilityOptions {
    double damping = 0.85;
    double tolerance = 1e-10;
    int max_iterations = 10000;
};

struct CredibilityScores {
    std::map<PersonId, double> scores;
    int iterations = 0;
    double residual = 0.0;
};

// Endorsement E[v,u] = v's Agree votes on items authored by u, counted only
// when v and u are in different groups. Each endorser's row is normalised
// (endorsers with nothing to give spread uniformly) and
//   c <- damping * E^T c + (1 - damping) / n
// is iterated to a fixed point. Throws NoAuthorship, InvalidArgument,
// NonConvergence.
CredibilityScores credibility_scores(const VoteMatrix& m, const Clustering& c,
                                     const Authorship& authorship,
                                     const CredibilityOptions& opts = {});

}  // namespace bridgerank
