#include "bridgerank/relation_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "bridgerank/random.hpp"

namespace bridgerank {

// ---------------------------------------------------------------------------
// PCA
// ---------------------------------------------------------------------------

std::optional<Eigen::VectorXd> SpaceModel::position(const PersonId& p) const {
    auto it = std::lower_bound(people.begin(), people.end(), p);
    if (it == people.end() || *it != p) return std::nullopt;
    return positions.row(it - people.begin()).transpose();
}

namespace {

template <typename T>
std::vector<size_t> sorted_order(const std::vector<T>& ids) {
    std::vector<size_t> order(ids.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ids[a] < ids[b]; });
    return order;
}

}  // namespace

SpaceModel pca_project(const VoteMatrix& m, int d) {
    const auto n = static_cast<Eigen::Index>(m.people().size());
    const auto cols = static_cast<Eigen::Index>(m.items().size());
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "pca_project needs at least 2 people");
    }
    if (d < 1 || d > std::min(n, cols)) {
        throw Error(ErrorCode::InvalidArgument,
                    "dimension must be in [1, min(people, items)], got " + std::to_string(d));
    }

    const auto person_order = sorted_order(m.people());
    const auto item_order = sorted_order(m.items());
    std::vector<Eigen::Index> person_row(person_order.size());
    std::vector<Eigen::Index> item_col(item_order.size());
    for (size_t r = 0; r < person_order.size(); ++r) person_row[person_order[r]] = r;
    for (size_t c = 0; c < item_order.size(); ++c) item_col[item_order[c]] = c;

    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, cols);
    for (const auto& e : m.entries()) {
        x(person_row[e.person], item_col[e.item]) = to_int(e.value);
    }
    x.rowwise() -= x.colwise().mean();

    SpaceModel s;
    s.dimension = d;
    for (size_t idx : person_order) s.people.push_back(m.people()[idx]);
    for (size_t idx : item_order) s.items.push_back(m.items()[idx]);
    s.total_variance = x.squaredNorm() / static_cast<double>(n);
    s.positions = Eigen::MatrixXd::Zero(n, d);
    s.item_positions = Eigen::MatrixXd::Zero(cols, d);
    s.explained_variance.assign(d, 0.0);

    if (s.total_variance <= 1e-14) {
        s.degenerate = true;
        s.total_variance = 0.0;
        return s;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double total = sv.squaredNorm();
    Eigen::MatrixXd v = svd.matrixV().leftCols(d);

    for (int j = 0; j < d; ++j) {
        const double max_abs = v.col(j).cwiseAbs().maxCoeff();
        // Rows are sorted by item id, so the first near-maximal entry is the
        // one with the smallest id.
        Eigen::Index pivot = 0;
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            if (std::abs(v(i, j)) >= max_abs - 1e-9) {
                pivot = i;
                break;
            }
        }
        if (v(pivot, j) < 0) v.col(j) *= -1.0;
        const double sigma = j < sv.size() ? sv(j) : 0.0;
        s.explained_variance[j] = std::clamp(sigma * sigma / total, 0.0, 1.0);
    }
    s.item_positions = v;
    s.positions = x * v;
    return s;
}

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

std::optional<GroupId> Clustering::group_of(const PersonId& p) const {
    auto it = labels.find(p);
    if (it == labels.end()) return std::nullopt;
    return it->second;
}

std::vector<GroupId> Clustering::groups() const {
    std::set<GroupId> g;
    for (const auto& [_, label] : labels) g.insert(label);
    return {g.begin(), g.end()};
}

Clustering clustering_from_labels(const std::map<PersonId, GroupId>& labels) {
    Clustering c;
    c.labels = labels;
    c.k = static_cast<int>(c.groups().size());
    return c;
}

namespace {

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points) {
    const auto n = points.rows();
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dij = (points.row(i) - points.row(j)).norm();
            dist(i, j) = dij;
            dist(j, i) = dij;
        }
    }
    return dist;
}

double silhouette_from_distances(const Eigen::MatrixXd& dist, const std::vector<int>& labels) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    if (n == 0) return 0.0;
    const int k = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<int> sizes(k, 0);
    for (int l : labels) ++sizes[l];

    double total = 0.0;
    std::vector<double> sums(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int own = labels[i];
        if (sizes[own] <= 1) continue;  // singleton contributes 0
        std::fill(sums.begin(), sums.end(), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) sums[labels[j]] += dist(i, j);
        }
        const double a = sums[own] / (sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int g = 0; g < k; ++g) {
            if (g != own && sizes[g] > 0) b = std::min(b, sums[g] / sizes[g]);
        }
        if (!std::isfinite(b)) continue;
        const double denom = std::max(a, b);
        if (denom > 0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

struct KMeansResult {
    std::vector<int> labels;
    Eigen::MatrixXd centroids;
    double inertia = std::numeric_limits<double>::infinity();
};

int nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& p, double* d2_out) {
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
        const double d2 = (centroids.row(c) - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(c);
        }
    }
    if (d2_out) *d2_out = best_d2;
    return best;
}

Eigen::MatrixXd kmeans_plus_plus(const Eigen::MatrixXd& points, int k, Rng& rng) {
    const auto n = points.rows();
    Eigen::MatrixXd centroids(k, points.cols());
    centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.index(n)));
    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < c; ++j) best = std::min(best, (points.row(i) - centroids.row(j)).squaredNorm());
            d2[i] = best;
            sum += best;
        }
        Eigen::Index chosen = n - 1;
        if (sum > 0) {
            double target = rng.uniform() * sum;
            for (Eigen::Index i = 0; i < n; ++i) {
                target -= d2[i];
                if (target < 0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = static_cast<Eigen::Index>(rng.index(n));
        }
        centroids.row(c) = points.row(chosen);
    }
    return centroids;
}

KMeansResult kmeans_once(const Eigen::MatrixXd& points, int k, Rng& rng, const ClusterOptions& opts) {
    const auto n = points.rows();
    KMeansResult r;
    r.centroids = kmeans_plus_plus(points, k, rng);
    r.labels.assign(n, 0);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        for (Eigen::Index i = 0; i < n; ++i) r.labels[i] = nearest_centroid(r.centroids, points.row(i), nullptr);

        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, points.cols());
        std::vector<int> counts(k, 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            next.row(r.labels[i]) += points.row(i);
            ++counts[r.labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                next.row(c) /= counts[c];
                continue;
            }
            // Empty cluster: reseed at the point farthest from its centroid.
            Eigen::Index far = 0;
            double far_d2 = -1;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double d2 = (points.row(i) - r.centroids.row(r.labels[i])).squaredNorm();
                if (d2 > far_d2 && counts[r.labels[i]] > 1) {
                    far_d2 = d2;
                    far = i;
                }
            }
            --counts[r.labels[far]];
            r.labels[far] = c;
            counts[c] = 1;
            next.row(c) = points.row(far);
        }
        const double shift = (next - r.centroids).rowwise().norm().maxCoeff();
        r.centroids = next;
        if (shift < opts.tolerance) break;
    }
    r.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        r.labels[i] = nearest_centroid(r.centroids, points.row(i), nullptr);
    }
    // Final assignment may empty a cluster only if centroids coincide; keep
    // the partition valid by leaving labels from the last update in that case.
    std::vector<int> counts(k, 0);
    for (int l : r.labels) ++counts[l];
    if (std::find(counts.begin(), counts.end(), 0) != counts.end()) {
        r.inertia = std::numeric_limits<double>::infinity();
        return r;
    }
    for (Eigen::Index i = 0; i < n; ++i) r.inertia += (points.row(i) - r.centroids.row(r.labels[i])).squaredNorm();
    return r;
}

// Renumber groups by first appearance so labelling is restart-independent.
void canonicalize(KMeansResult& r) {
    const int k = static_cast<int>(r.centroids.rows());
    std::vector<int> remap(k, -1);
    int next = 0;
    for (int& l : r.labels) {
        if (remap[l] < 0) remap[l] = next++;
        l = remap[l];
    }
    Eigen::MatrixXd c(k, r.centroids.cols());
    for (int g = 0; g < k; ++g) {
        if (remap[g] >= 0) c.row(remap[g]) = r.centroids.row(g);
    }
    r.centroids = c;
}

size_t count_distinct(const Eigen::MatrixXd& dist) {
    const auto n = dist.rows();
    std::vector<bool> covered(n, false);
    size_t distinct = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (covered[i]) continue;
        ++distinct;
        for (Eigen::Index j = i; j < n; ++j) {
            if (dist(i, j) <= 1e-12) covered[j] = true;
        }
    }
    return distinct;
}

}  // namespace

double silhouette_score(const Eigen::MatrixXd& points, const std::vector<int>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != points.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "labels and points differ in length");
    }
    return silhouette_from_distances(pairwise_distances(points), labels);
}

Clustering cluster_people(const SpaceModel& s, const ClusterOptions& opts) {
    const int kmin = opts.k_range.min;
    const int kmax = opts.k_range.max;
    if (kmin < 2 || kmax < kmin) {
        throw Error(ErrorCode::InvalidArgument, "k range must satisfy 2 <= min <= max");
    }
    if (opts.restarts < 1) {
        throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
    }
    const auto n = static_cast<Eigen::Index>(s.people.size());
    if (n <= kmax) {
        throw Error(ErrorCode::TooFewPeople,
                    std::to_string(n) + " people for k up to " + std::to_string(kmax));
    }
    const Eigen::MatrixXd& points = s.positions;
    const Eigen::MatrixXd dist = pairwise_distances(points);
    const auto distinct = count_distinct(dist);

    Clustering out;
    std::optional<KMeansResult> best;
    double best_sil = -std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = kmin; k <= kmax; ++k) {
        if (static_cast<size_t>(k) > distinct) continue;
        KMeansResult best_run;
        for (int r = 0; r < opts.restarts; ++r) {
            Rng rng(derive_seed(opts.seed, {static_cast<uint64_t>(k), static_cast<uint64_t>(r)}));
            auto run = kmeans_once(points, k, rng, opts);
            if (run.inertia < best_run.inertia) best_run = std::move(run);
        }
        if (!std::isfinite(best_run.inertia)) continue;
        canonicalize(best_run);
        const double sil = silhouette_from_distances(dist, best_run.labels);
        out.silhouette_by_k[k] = sil;
        if (sil > best_sil + 1e-12) {
            best_sil = sil;
            best_k = k;
            best = std::move(best_run);
        }
    }

    if (!best) {
        // No cluster structure: split round-robin so there are still kmin
        // non-empty groups, and flag it.
        out.k = kmin;
        out.degenerate = true;
        out.silhouette = 0.0;
        Eigen::RowVectorXd mean = points.colwise().mean();
        for (int g = 0; g < kmin; ++g) out.centroids.push_back(mean.transpose());
        for (Eigen::Index i = 0; i < n; ++i) out.labels[s.people[i]] = static_cast<GroupId>(i % kmin);
        out.silhouette_by_k[kmin] = 0.0;
        return out;
    }

    out.k = best_k;
    out.silhouette = best_sil;
    out.degenerate = best_sil <= 0.0;
    for (Eigen::Index i = 0; i < n; ++i) out.labels[s.people[i]] = best->labels[i];
    for (Eigen::Index g = 0; g < best->centroids.rows(); ++g) {
        out.centroids.push_back(best->centroids.row(g).transpose());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graph model
// ---------------------------------------------------------------------------

GraphModel::GraphModel(std::vector<PersonId> nodes) {
    for (auto& p : nodes) add_node(p);
}

void GraphModel::add_node(const PersonId& p) {
    if (lookup_.emplace(p, nodes_.size()).second) nodes_.push_back(p);
}

std::optional<size_t> GraphModel::node_index(const PersonId& p) const {
    auto it = lookup_.find(p);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

void GraphModel::add_edge(const PersonId& a, const PersonId& b, double weight, int sign) {
    if (a == b) throw Error(ErrorCode::InvalidArgument, "self-loop on " + a.str());
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw Error(ErrorCode::InvalidArgument, "edge weight must be finite and >= 0");
    }
    if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "edge sign must be +1 or -1");
    add_node(a);
    add_node(b);
    size_t ia = lookup_.at(a);
    size_t ib = lookup_.at(b);
    auto key = std::minmax(ia, ib);
    if (!edge_lookup_.emplace(std::pair{key.first, key.second}, edges_.size()).second) {
        throw Error(ErrorCode::InvalidArgument, "duplicate edge " + a.str() + "-" + b.str());
    }
    edges_.push_back({a, b, weight, sign});
}

namespace {

std::vector<std::vector<std::pair<size_t, int>>> nonpass_rows(const VoteMatrix& m) {
    std::vector<std::vector<std::pair<size_t, int>>> rows(m.people().size());
    for (size_t p = 0; p < rows.size(); ++p) {
        for (size_t e : m.person_entries(p)) {
            const auto& entry = m.entries()[e];
            if (entry.value != Vote::Pass) rows[p].emplace_back(entry.item, to_int(entry.value));
        }
        std::sort(rows[p].begin(), rows[p].end());
    }
    return rows;
}

std::optional<double> agreement(const std::vector<std::pair<size_t, int>>& a,
                                const std::vector<std::pair<size_t, int>>& b) {
    size_t i = 0, j = 0;
    int co = 0, net = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            ++co;
            net += a[i].second == b[j].second ? 1 : -1;
            ++i;
            ++j;
        }
    }
    if (co == 0) return std::nullopt;
    return static_cast<double>(net) / co;
}

}  // namespace

std::optional<double> covote_agreement(const VoteMatrix& m, size_t u, size_t v) {
    const auto rows = nonpass_rows(m);
    return agreement(rows.at(u), rows.at(v));
}

GraphModel vote_similarity_graph(const VoteMatrix& m, double tau) {
    if (!(tau >= -1.0 && tau <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must be in [-1, 1]");
    }
    GraphModel g(m.people());
    const auto rows = nonpass_rows(m);
    for (size_t u = 0; u < rows.size(); ++u) {
        for (size_t v = u + 1; v < rows.size(); ++v) {
            const auto w = agreement(rows[u], rows[v]);
            if (!w || *w < tau) continue;
            g.add_edge(m.people()[u], m.people()[v], std::abs(*w), *w < 0 ? -1 : +1);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Aggregate model
// ---------------------------------------------------------------------------

int ItemAggregate::total_agrees() const {
    int t = 0;
    for (const auto& [_, c] : per_group) t += c.agrees;
    return t;
}

int ItemAggregate::total_seen() const {
    int t = 0;
    for (const auto& [_, c] : per_group) t += c.seen;
    return t;
}

const ItemAggregate& AggregateModel::at(const ItemId& item) const {
    auto it = per_item.find(item);
    if (it == per_item.end()) throw Error(ErrorCode::UnknownItem, item.str());
    return it->second;
}

AggregateModel aggregate(const VoteMatrix& m, const Clustering& c) {
    std::vector<GroupId> person_group(m.people().size());
    for (size_t p = 0; p < m.people().size(); ++p) {
        const auto g = c.group_of(m.people()[p]);
        if (!g) throw Error(ErrorCode::UnlabeledPerson, m.people()[p].str());
        person_group[p] = *g;
    }
    const auto groups = c.groups();

    AggregateModel a;
    a.items = m.items();
    for (size_t i = 0; i < m.items().size(); ++i) {
        ItemAggregate agg;
        for (GroupId g : groups) agg.per_group[g] = {};
        for (size_t e : m.item_entries(i)) {
            const auto& entry = m.entries()[e];
            auto& counts = agg.per_group[person_group[entry.person]];
            ++counts.seen;
            if (entry.value == Vote::Agree) ++counts.agrees;
            if (entry.value == Vote::Disagree) ++counts.disagrees;
        }
        const int seen = agg.total_seen();
        agg.overall_approval = seen > 0 ? static_cast<double>(agg.total_agrees()) / seen : 0.0;
        a.per_item.emplace(m.items()[i], std::move(agg));
    }
    return a;
}

}  // namespace bridgerank
