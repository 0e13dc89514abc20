#pragma once
// Per-item bridging and engagement signals.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bridgerank/feed.hpp"
#include "bridgerank/relation_model.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace bridgerank {

namespace signal_names {
inline constexpr std::string_view engagement = "engagement";
inline constexpr std::string_view diverse_approval = "diverse_approval";
inline constexpr std::string_view gac = "gac";
inline constexpr std::string_view mf_intercept = "mf_intercept";
inline constexpr std::string_view bimodality = "bimodality";
inline constexpr std::string_view exposure_diversity = "exposure_diversity";
}  // namespace signal_names

const std::vector<std::string>& known_signal_names();

struct SignalVector {
    ItemId item;
    std::optional<double> engagement;
    std::optional<double> diverse_approval;
    std::optional<double> group_aware_consensus;
    std::optional<double> mf_intercept;
    std::optional<double> bimodality;
    std::optional<double> exposure_diversity;

    // Lookup by the names in signal_names. Throws InvalidArgument for unknown names.
    std::optional<double> get(std::string_view name) const;
    void set(std::string_view name, double value);
};

// min over groups of agrees_g / seen_g; unseen groups contribute 0.
double diverse_approval(const AggregateModel& a, const ItemId& item);
double diverse_approval(const VoteMatrix& m, const Clustering& c, const ItemId& item);

// Product over groups of (agrees_g + 1) / (seen_g + 2).
double group_aware_consensus(const AggregateModel& a, const ItemId& item);

// (agrees + 1) / (seen + 2) for one group's counts.
double smoothed_approval(const GroupCounts& counts);

// Sarle's bimodality coefficient (skew^2 + 1) / kurtosis with population
// moments. Needs n >= 4; constant input throws DegenerateDistribution.
double bimodality(std::span<const double> ratings);

inline constexpr double kBimodalityThreshold = 5.0 / 9.0;

// Shannon entropy in bits of the source-group distribution over feed slots.
double exposure_diversity(const RankedFeed& feed, const std::map<ItemId, GroupId>& source_groups);

// Shannon entropy in bits of a count distribution (zero counts ignored).
double entropy_bits(std::span<const int> counts);

struct SignalOptions {
    // Train the factorization model and fill mf_intercept.
    bool include_mf = true;
    uint64_t seed = 0;
};

// Item-level SignalVector for every item in the matrix. `engagement` here is
// the item's overall smoothed approval; rankers replace it with the
// viewer-specific prediction.
std::vector<SignalVector> compute_signals(const VoteMatrix& m, const Clustering& c,
                                          const SignalOptions& opts = {});
std::vector<SignalVector> compute_signals(const VoteMatrix& m, const Clustering& c,
                                          const AggregateModel& a, const SignalOptions& opts);

}  // namespace bridgerank
