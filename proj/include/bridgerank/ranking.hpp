#pragma once
// The allocation process: predict per-allocation impacts, combine them with a
// value model and realize the top-k allocations.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bridgerank/feed.hpp"
#include "bridgerank/relation_model.hpp"
#include "bridgerank/signals.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace bridgerank {

struct ValueModel {
    std::map<std::string, double> weights;
    int top_k = 10;

    // Throws InvalidArgument: unknown signal, no nonzero weight, top_k < 1.
    void validate() const;
    // SHA-256 of the canonical JSON form.
    std::string digest() const;
    bool uses(std::string_view signal) const;
};

ValueModel engagement_only_model(int top_k = 10);
// {engagement: 1, gac: 1}
ValueModel bridging_model(int top_k = 10);

// Laplace-smoothed approval rate of the viewer's own group on the item.
// Throws UnknownViewer / UnknownItem.
double predict_engagement(const PersonId& viewer, const ItemId& item, const VoteMatrix& m, const Clustering& c);
double predict_engagement(GroupId viewer_group, const ItemId& item, const AggregateModel& a);

// Weighted sum of the signals. Throws MissingSignal when a nonzero-weight
// signal is absent from the vector.
double score_allocation(const SignalVector& signals, const ValueModel& v);

// Precomputed per-item inputs shared by every viewer.
struct RankingModels {
    const Clustering* clustering = nullptr;
    AggregateModel aggregate;
    std::map<ItemId, SignalVector> signals;

    // MF is trained only when the value model uses mf_intercept.
    static RankingModels build(const VoteMatrix& m, const Clustering& c, const ValueModel& v,
                               uint64_t seed = 0);
    // Aggregate-only signals (engagement, diverse_approval, gac, exposure
    // diversity) for the listed items. Used by the simulator each tick.
    static RankingModels from_aggregate(AggregateModel a, const Clustering& c);
};

// Top-k allocations by value, slots 1..k, ties broken by item id.
// Duplicate candidates are scored once. Throws UnknownViewer / UnknownItem.
RankedFeed rank(const PersonId& viewer, std::span<const ItemId> candidates, const RankingModels& models,
                const ValueModel& v);

// Plain-text table of the feed, one allocation per line.
std::string feed_table(const RankedFeed& feed);

}  // namespace bridgerank
