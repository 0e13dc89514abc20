#pragma once
// Relation models built from vote data: opinion-space projection, k-means
// grouping, a person graph from co-votes and per-group aggregate counts.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bridgerank/types.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace bridgerank {

// ---------------------------------------------------------------------------
// Space model
// ---------------------------------------------------------------------------

struct SpaceModel {
    int dimension = 0;
    // Rows of `positions` follow `people`, which is sorted by id.
    std::vector<PersonId> people;
    Eigen::MatrixXd positions;
    // Principal axes (item loadings); rows follow `items`, sorted by id.
    std::vector<ItemId> items;
    Eigen::MatrixXd item_positions;
    std::vector<double> explained_variance;
    double total_variance = 0.0;
    // Set when every row of the vote matrix is identical.
    bool degenerate = false;

    std::optional<Eigen::VectorXd> position(const PersonId& p) const;
};

// Missing votes are imputed as 0, columns are mean-centred, coordinates are
// projections onto the top-d principal components. Each component is signed
// so its largest-|loading| entry is positive (ties go to the smallest item id).
SpaceModel pca_project(const VoteMatrix& m, int d);

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

struct KRange {
    int min = 2;
    int max = 5;
};

struct ClusterOptions {
    KRange k_range;
    int restarts = 10;
    int max_iterations = 300;
    double tolerance = 1e-6;
    uint64_t seed = 0;
};

struct Clustering {
    int k = 0;
    std::map<PersonId, GroupId> labels;
    std::vector<Eigen::VectorXd> centroids;
    double silhouette = 0.0;
    bool degenerate = false;
    // Mean silhouette for every k that was tried.
    std::map<int, double> silhouette_by_k;

    std::optional<GroupId> group_of(const PersonId& p) const;
    // Distinct group ids, ascending.
    std::vector<GroupId> groups() const;
};

// k-means++ with restarts for every k in the range, picking the k with the
// highest mean silhouette (ties to the smaller k).
Clustering cluster_people(const SpaceModel& s, const ClusterOptions& opts = {});

// Mean silhouette coefficient; singletons score 0.
double silhouette_score(const Eigen::MatrixXd& points, const std::vector<int>& labels);

// Clustering from explicit labels (centroids left empty).
Clustering clustering_from_labels(const std::map<PersonId, GroupId>& labels);

// ---------------------------------------------------------------------------
// Graph model
// ---------------------------------------------------------------------------

struct Edge {
    PersonId a;
    PersonId b;
    double weight = 1.0;
    int sign = +1;
};

class GraphModel {
  public:
    GraphModel() = default;
    explicit GraphModel(std::vector<PersonId> nodes);

    void add_node(const PersonId& p);
    // Throws InvalidArgument on self-loops, duplicates, negative weights or a
    // sign outside {+1,-1}. Unknown endpoints are registered.
    void add_edge(const PersonId& a, const PersonId& b, double weight, int sign = +1);

    const std::vector<PersonId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<size_t> node_index(const PersonId& p) const;

  private:
    std::vector<PersonId> nodes_;
    std::map<PersonId, size_t> lookup_;
    std::vector<Edge> edges_;
    std::map<std::pair<size_t, size_t>, size_t> edge_lookup_;
};

// Raw weight for u,v = (matching - mismatching) / co-voted items, over items
// both answered with a non-pass vote. Edges with weight >= tau are kept;
// negative weights (only possible when tau < 0) are stored as |w| with sign -1.
GraphModel vote_similarity_graph(const VoteMatrix& m, double tau);

// Pairwise raw weight, or nullopt when there are no co-votes.
std::optional<double> covote_agreement(const VoteMatrix& m, size_t u, size_t v);

// ---------------------------------------------------------------------------
// Aggregate model
// ---------------------------------------------------------------------------

struct GroupCounts {
    int agrees = 0;
    int disagrees = 0;
    int seen = 0;
};

struct ItemAggregate {
    double overall_approval = 0.0;
    std::map<GroupId, GroupCounts> per_group;

    int total_agrees() const;
    int total_seen() const;
};

struct AggregateModel {
    std::vector<ItemId> items;
    std::map<ItemId, ItemAggregate> per_item;

    // Throws UnknownItem.
    const ItemAggregate& at(const ItemId& item) const;
};

// Every group of the clustering appears for every item, even with zero counts.
// Throws UnlabeledPerson when a voter has no group.
AggregateModel aggregate(const VoteMatrix& m, const Clustering& c);

}  // namespace bridgerank
