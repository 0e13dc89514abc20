#pragma once
// Relation metrics over graph models and bridging metrics as their deltas.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bridgerank/relation_model.hpp"

namespace bridgerank {

// ---------------------------------------------------------------------------
// Formal measures
// ---------------------------------------------------------------------------

struct RwcOptions {
    // Walks per group, spread evenly over the group's non-isolated nodes.
    int walks = 10000;
    int steps = 10;
    uint64_t seed = 0;
};

struct RwcEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    // P(end in own group | start in group) for the first and second group.
    double stay_x = 0.0;
    double stay_y = 0.0;
    int walks_x = 0;
    int walks_y = 0;
    GroupId group_x = 0;
    GroupId group_y = 0;
};

// Random walk controversy
//   P(X->X) P(Y->Y) - P(X->Y) P(Y->X)
// for fixed-length walks on positive-weight edges (a walker on a node without
// outgoing weight stays put). Needs exactly two groups: SingleGroup for one,
// InvalidArgument for more. EmptyGroupGraph when a group has no edges.
RwcEstimate random_walk_controversy(const GraphModel& g, const Clustering& c, const RwcOptions& opts = {});

// RWC for every pair of groups, on the subgraph induced by the pair.
std::map<std::pair<GroupId, GroupId>, RwcEstimate> pairwise_random_walk_controversy(
    const GraphModel& g, const Clustering& c, const RwcOptions& opts = {});

// Newman modularity on positive-weight edges. Throws EmptyGraph.
double modularity(const GraphModel& g, const Clustering& c);

// Krackhardt E-I index (external - internal) / (external + internal) on
// positive edge weights. Throws EmptyGraph.
double ei_index(const GraphModel& g, const Clustering& c);

// Fraction of triangles with an even number of negative edges. Throws NoTriangles.
double balance_fraction(const GraphModel& g);

// ---------------------------------------------------------------------------
// Interaction history and prevalence
// ---------------------------------------------------------------------------

struct Interaction {
    int tick = 0;
    PersonId person;
    GroupId group = 0;
    ItemId item;
    Vote vote = Vote::Pass;
};

using InteractionLog = std::vector<Interaction>;

// Half-open [begin, end).
struct TickWindow {
    int begin = 0;
    int end = 1;
};

namespace motif_names {
inline constexpr const char* diverse_approval = "diverse_approval";
inline constexpr const char* group_aware_consensus = "gac";
}  // namespace motif_names

struct Motif {
    std::string name;
    double threshold = 0.5;
};

// Default thresholds: diverse_approval >= 0.5, gac >= 0.3.
Motif make_motif(const std::string& name);

// Agree votes inside `window` on items that qualify for the motif (judged on
// all history up to window.end), divided by the number of people active in
// the window. Throws UnknownMotif, InvalidArgument for an empty window.
double signal_prevalence(const InteractionLog& history, const Motif& motif, const TickWindow& window);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct RelationMetricReport {
    int timestamp = 0;
    std::map<std::string, double> values;
    std::map<std::string, double> prevalence;
    std::string inputs_digest;
};

struct BridgingMetricReport {
    int t0 = 0;
    int t1 = 0;
    std::map<std::string, double> deltas;
    std::map<std::string, double> prevalence;
};

// Throws MismatchedMetrics when metric names differ, InvalidArgument if t0 > t1.
BridgingMetricReport bridging_delta(const RelationMetricReport& r0, const RelationMetricReport& r1);

struct ReportOptions {
    RwcOptions rwc;
};

// modularity, ei_index, rwc and rwc_se for a graph and a two-group clustering.
// inputs_digest hashes the graph edges and labels.
RelationMetricReport relation_report(int timestamp, const GraphModel& g, const Clustering& c,
                                     const ReportOptions& opts = {});

std::string graph_digest(const GraphModel& g, const Clustering& c);

}  // namespace bridgerank
