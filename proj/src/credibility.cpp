#include "bridgerank/credibility.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace bridgerank {

CredibilityScores credibility_scores(const VoteMatrix& m, const Clustering& c,
                                     const Authorship& authorship, const CredibilityOptions& opts) {
    if (authorship.empty()) throw Error(ErrorCode::NoAuthorship, "no item authorship supplied");
    if (!(opts.damping > 0.0 && opts.damping < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "damping must be in (0, 1)");
    }
    if (c.groups().size() < 2) throw Error(ErrorCode::InvalidArgument, "credibility needs at least 2 groups");

    // Canonical order keeps the iteration independent of input order.
    std::vector<PersonId> people = m.people();
    std::sort(people.begin(), people.end());
    const auto n = static_cast<Eigen::Index>(people.size());
    auto index_of = [&](const PersonId& p) -> std::optional<Eigen::Index> {
        auto it = std::lower_bound(people.begin(), people.end(), p);
        if (it == people.end() || *it != p) return std::nullopt;
        return it - people.begin();
    };
    std::vector<GroupId> group(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto g = c.group_of(people[i]);
        if (!g) throw Error(ErrorCode::UnlabeledPerson, people[i].str());
        group[i] = *g;
    }

    // endorse(v, u): endorser v -> author u.
    Eigen::MatrixXd endorse = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : m.entries()) {
        if (e.value != Vote::Agree) continue;
        auto it = authorship.find(m.items()[e.item]);
        if (it == authorship.end()) continue;
        const auto author = index_of(it->second);
        const auto voter = index_of(m.people()[e.person]);
        if (!author || !voter || group[*author] == group[*voter]) continue;
        endorse(*voter, *author) += 1.0;
    }

    // transition(u, v) = share of v's endorsement given to u (column-stochastic).
    Eigen::MatrixXd transition(n, n);
    for (Eigen::Index v = 0; v < n; ++v) {
        const double out = endorse.row(v).sum();
        if (out > 0) {
            transition.col(v) = endorse.row(v).transpose() / out;
        } else {
            transition.col(v).setConstant(1.0 / static_cast<double>(n));
        }
    }

    const double teleport = (1.0 - opts.damping) / static_cast<double>(n);
    Eigen::VectorXd score = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    CredibilityScores result;
    bool converged = false;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        Eigen::VectorXd next = opts.damping * (transition * score);
        next.array() += teleport;
        next /= next.sum();
        result.residual = (next - score).lpNorm<1>();
        score = next;
        result.iterations = iter;
        if (result.residual < opts.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NonConvergence,
                    "credibility did not converge in " + std::to_string(opts.max_iterations) + " iterations");
    }
    for (Eigen::Index i = 0; i < n; ++i) result.scores[people[i]] = score(i);
    return result;
}

}  // namespace bridgerank
