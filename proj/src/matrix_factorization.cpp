#include "bridgerank/matrix_factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bridgerank/random.hpp"

namespace bridgerank {

namespace {

struct Rating {
    size_t user;
    size_t item;
    double target;
};

// Canonical (id-sorted) view of the training data so results do not depend
// on input record order.
struct TrainingData {
    std::vector<PersonId> users;
    std::vector<ItemId> items;
    std::vector<Rating> ratings;
    std::vector<std::vector<size_t>> by_user;
    std::vector<std::vector<size_t>> by_item;
};

TrainingData canonical_data(const VoteMatrix& m) {
    TrainingData d;
    d.users = m.people();
    d.items = m.items();
    std::sort(d.users.begin(), d.users.end());
    std::sort(d.items.begin(), d.items.end());
    std::vector<size_t> user_rank(m.people().size()), item_rank(m.items().size());
    for (size_t p = 0; p < m.people().size(); ++p) {
        user_rank[p] = std::lower_bound(d.users.begin(), d.users.end(), m.people()[p]) - d.users.begin();
    }
    for (size_t i = 0; i < m.items().size(); ++i) {
        item_rank[i] = std::lower_bound(d.items.begin(), d.items.end(), m.items()[i]) - d.items.begin();
    }
    for (const auto& e : m.entries()) {
        if (e.value == Vote::Pass) continue;
        d.ratings.push_back({user_rank[e.person], item_rank[e.item], e.value == Vote::Agree ? 1.0 : 0.0});
    }
    std::sort(d.ratings.begin(), d.ratings.end(), [](const Rating& a, const Rating& b) {
        return std::tie(a.user, a.item) < std::tie(b.user, b.item);
    });
    d.by_user.resize(d.users.size());
    d.by_item.resize(d.items.size());
    for (size_t r = 0; r < d.ratings.size(); ++r) {
        d.by_user[d.ratings[r].user].push_back(r);
        d.by_item[d.ratings[r].item].push_back(r);
    }
    return d;
}

struct Params {
    double mu = 0.0;
    Eigen::VectorXd bu, bi;
    Eigen::MatrixXd pu, qi;  // rows are factor vectors

    double residual(const Rating& r) const {
        double pred = mu + bu(r.user) + bi(r.item);
        if (pu.cols() > 0) pred += pu.row(r.user).dot(qi.row(r.item));
        return r.target - pred;
    }
};

double objective(const TrainingData& d, const Params& p, const MFHyperparams& h) {
    double loss = 0.0;
    for (const auto& r : d.ratings) {
        const double e = p.residual(r);
        loss += e * e;
    }
    loss += h.lambda_intercept * (p.bu.squaredNorm() + p.bi.squaredNorm());
    loss += h.lambda_factor * (p.pu.squaredNorm() + p.qi.squaredNorm());
    return loss;
}

// One curvature-scaled step on every intercept in a block. Members of a block
// never share a rating, so the block Hessian is diagonal.
void step_intercepts(const TrainingData& d, Params& p, const MFHyperparams& h, bool users) {
    const auto& groups = users ? d.by_user : d.by_item;
    Eigen::VectorXd& b = users ? p.bu : p.bi;
    for (size_t g = 0; g < groups.size(); ++g) {
        double sum_e = 0.0;
        for (size_t r : groups[g]) sum_e += p.residual(d.ratings[r]);
        const double curvature = static_cast<double>(groups[g].size()) + h.lambda_intercept;
        if (curvature <= 0.0) continue;
        b(g) += h.learning_rate * (sum_e - h.lambda_intercept * b(g)) / curvature;
    }
}

void step_factors(const TrainingData& d, Params& p, const MFHyperparams& h, bool users) {
    const int f = h.factors;
    if (f == 0) return;
    const auto& groups = users ? d.by_user : d.by_item;
    Eigen::MatrixXd& own = users ? p.pu : p.qi;
    const Eigen::MatrixXd& other = users ? p.qi : p.pu;
    for (size_t g = 0; g < groups.size(); ++g) {
        Eigen::MatrixXd hess = h.lambda_factor * Eigen::MatrixXd::Identity(f, f);
        Eigen::VectorXd grad = -h.lambda_factor * own.row(g).transpose();
        for (size_t r : groups[g]) {
            const auto& rating = d.ratings[r];
            const Eigen::VectorXd x = other.row(users ? rating.item : rating.user).transpose();
            hess += x * x.transpose();
            grad += p.residual(rating) * x;
        }
        if (hess.isZero(0.0)) continue;
        const Eigen::VectorXd delta = hess.completeOrthogonalDecomposition().solve(grad);
        own.row(g) += h.learning_rate * delta.transpose();
    }
}

void validate(const MFHyperparams& h) {
    if (h.factors < 0) throw Error(ErrorCode::InvalidArgument, "factors must be >= 0");
    if (h.lambda_intercept < 0 || h.lambda_factor < 0) {
        throw Error(ErrorCode::InvalidArgument, "regularization must be >= 0");
    }
    if (!(h.learning_rate > 0.0 && h.learning_rate <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "learning_rate must be in (0, 1]");
    }
    if (h.epochs < 1) throw Error(ErrorCode::InvalidArgument, "epochs must be >= 1");
}

}  // namespace

double MFModel::predict(const PersonId& p, const ItemId& i) const {
    double pred = mu + person_intercepts.at(p) + item_intercepts.at(i);
    if (hyperparams.factors > 0) pred += person_factors.at(p).dot(item_factors.at(i));
    return pred;
}

MFModel fit_matrix_factorization(const VoteMatrix& m, const MFHyperparams& h) {
    validate(h);
    const TrainingData d = canonical_data(m);
    if (d.ratings.empty()) throw Error(ErrorCode::EmptyInput, "no agree/disagree votes to train on");

    const auto nu = static_cast<Eigen::Index>(d.users.size());
    const auto ni = static_cast<Eigen::Index>(d.items.size());
    Params p;
    p.bu = Eigen::VectorXd::Zero(nu);
    p.bi = Eigen::VectorXd::Zero(ni);
    p.pu = Eigen::MatrixXd::Zero(nu, h.factors);
    p.qi = Eigen::MatrixXd::Zero(ni, h.factors);
    Rng rng(h.seed);
    for (Eigen::Index u = 0; u < nu; ++u)
        for (int k = 0; k < h.factors; ++k) p.pu(u, k) = h.init_scale * rng.normal();
    for (Eigen::Index i = 0; i < ni; ++i)
        for (int k = 0; k < h.factors; ++k) p.qi(i, k) = h.init_scale * rng.normal();

    MFModel model;
    model.hyperparams = h;
    const double n = static_cast<double>(d.ratings.size());
    for (int epoch = 0; epoch < h.epochs; ++epoch) {
        double sum_e = 0.0;
        for (const auto& r : d.ratings) sum_e += p.residual(r);
        p.mu += h.learning_rate * sum_e / n;
        step_intercepts(d, p, h, true);
        step_intercepts(d, p, h, false);
        step_factors(d, p, h, true);
        step_factors(d, p, h, false);
        model.loss_trace.push_back(objective(d, p, h));
    }
    const auto& trace = model.loss_trace;
    if (trace.size() >= 2 && std::abs(trace[trace.size() - 2] - trace.back()) > h.tolerance) {
        model.non_converged = true;
    }

    // Gauge: centre intercepts, fold the means into mu.
    const double mean_bu = nu > 0 ? p.bu.mean() : 0.0;
    const double mean_bi = ni > 0 ? p.bi.mean() : 0.0;
    p.bu.array() -= mean_bu;
    p.bi.array() -= mean_bi;
    p.mu += mean_bu + mean_bi;

    model.mu = p.mu;
    for (Eigen::Index u = 0; u < nu; ++u) {
        model.person_intercepts[d.users[u]] = p.bu(u);
        model.person_factors[d.users[u]] = p.pu.row(u).transpose();
    }
    for (Eigen::Index i = 0; i < ni; ++i) {
        model.item_intercepts[d.items[i]] = p.bi(i);
        model.item_factors[d.items[i]] = p.qi.row(i).transpose();
    }
    return model;
}

double mf_objective(const VoteMatrix& m, const MFModel& model, const MFHyperparams& h) {
    const TrainingData d = canonical_data(m);
    Params p;
    p.mu = model.mu;
    p.bu.resize(d.users.size());
    p.bi.resize(d.items.size());
    p.pu.resize(d.users.size(), h.factors);
    p.qi.resize(d.items.size(), h.factors);
    for (size_t u = 0; u < d.users.size(); ++u) {
        p.bu(u) = model.person_intercepts.at(d.users[u]);
        if (h.factors > 0) p.pu.row(u) = model.person_factors.at(d.users[u]).transpose();
    }
    for (size_t i = 0; i < d.items.size(); ++i) {
        p.bi(i) = model.item_intercepts.at(d.items[i]);
        if (h.factors > 0) p.qi.row(i) = model.item_factors.at(d.items[i]).transpose();
    }
    return objective(d, p, h);
}

double mf_bridging_score(const MFModel& model, const ItemId& item) {
    auto it = model.item_intercepts.find(item);
    if (it == model.item_intercepts.end()) throw Error(ErrorCode::UnknownItem, item.str());
    return it->second;
}

}  // namespace bridgerank
