#include "bridgerank/ranking.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "bridgerank/digest.hpp"

namespace bridgerank {

namespace {
constexpr double kScoreResolution = 1e9;
}

void ValueModel::validate() const {
    if (top_k < 1) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
    const auto& known = known_signal_names();
    bool any_nonzero = false;
    for (const auto& [name, w] : weights) {
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw Error(ErrorCode::InvalidArgument, "unknown signal '" + name + "' in value model");
        }
        if (!std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "weight for '" + name + "' is not finite");
        if (w != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw Error(ErrorCode::InvalidArgument, "value model needs at least one nonzero weight");
}

std::string ValueModel::digest() const {
    nlohmann::json j;
    j["weights"] = weights;
    j["top_k"] = top_k;
    return sha256_hex(j.dump());
}

bool ValueModel::uses(std::string_view signal) const {
    auto it = weights.find(std::string(signal));
    return it != weights.end() && it->second != 0.0;
}

ValueModel engagement_only_model(int top_k) {
    return {{{std::string(signal_names::engagement), 1.0}}, top_k};
}

ValueModel bridging_model(int top_k) {
    return {{{std::string(signal_names::engagement), 1.0}, {std::string(signal_names::gac), 1.0}}, top_k};
}

double predict_engagement(GroupId viewer_group, const ItemId& item, const AggregateModel& a) {
    const auto& agg = a.at(item);
    auto it = agg.per_group.find(viewer_group);
    return smoothed_approval(it == agg.per_group.end() ? GroupCounts{} : it->second);
}

double predict_engagement(const PersonId& viewer, const ItemId& item, const VoteMatrix& m, const Clustering& c) {
    const auto group = c.group_of(viewer);
    if (!group) throw Error(ErrorCode::UnknownViewer, viewer.str());
    if (!m.has_item(item)) throw Error(ErrorCode::UnknownItem, item.str());
    return predict_engagement(*group, item, aggregate(m, c));
}

double score_allocation(const SignalVector& signals, const ValueModel& v) {
    double total = 0.0;
    for (const auto& [name, w] : v.weights) {
        if (w == 0.0) continue;
        const auto value = signals.get(name);
        if (!value) throw Error(ErrorCode::MissingSignal, name + " for " + signals.item.str());
        total += w * *value;
    }
    return total;
}

RankingModels RankingModels::build(const VoteMatrix& m, const Clustering& c, const ValueModel& v, uint64_t seed) {
    RankingModels models;
    models.clustering = &c;
    models.aggregate = bridgerank::aggregate(m, c);
    SignalOptions opts;
    opts.include_mf = v.uses(signal_names::mf_intercept);
    opts.seed = seed;
    for (auto& s : compute_signals(m, c, models.aggregate, opts)) {
        ItemId id = s.item;
        models.signals.emplace(std::move(id), std::move(s));
    }
    return models;
}

RankingModels RankingModels::from_aggregate(AggregateModel a, const Clustering& c) {
    RankingModels models;
    models.clustering = &c;
    models.aggregate = std::move(a);
    for (const auto& item : models.aggregate.items) {
        const auto& agg = models.aggregate.at(item);
        SignalVector s;
        s.item = item;
        s.engagement = smoothed_approval({agg.total_agrees(), 0, agg.total_seen()});
        // Bridging signals need at least two groups.
        if (agg.per_group.size() >= 2) {
            s.diverse_approval = diverse_approval(models.aggregate, item);
            s.group_aware_consensus = group_aware_consensus(models.aggregate, item);
        }
        std::vector<int> audience;
        for (const auto& [_, counts] : agg.per_group) audience.push_back(counts.seen);
        s.exposure_diversity = entropy_bits(audience);
        models.signals.emplace(item, std::move(s));
    }
    return models;
}

RankedFeed rank(const PersonId& viewer, std::span<const ItemId> candidates, const RankingModels& models,
                const ValueModel& v) {
    v.validate();
    if (!models.clustering) throw Error(ErrorCode::InvalidArgument, "ranking models lack a clustering");
    const auto group = models.clustering->group_of(viewer);
    if (!group) throw Error(ErrorCode::UnknownViewer, viewer.str());

    const std::set<ItemId> unique(candidates.begin(), candidates.end());
    struct Scored {
        const ItemId* item;
        double value;
        SignalVector signals;
    };
    std::vector<Scored> scored;
    scored.reserve(unique.size());
    for (const auto& item : unique) {
        auto it = models.signals.find(item);
        if (it == models.signals.end()) throw Error(ErrorCode::UnknownItem, item.str());
        SignalVector s = it->second;
        s.engagement = predict_engagement(*group, item, models.aggregate);
        const double value = score_allocation(s, v);
        scored.push_back({&item, value, std::move(s)});
    }
    // Scores equal up to rounding noise count as ties. Keys are quantized
    // relative to the largest |score| so positive rescaling keeps the order.
    double scale = 0.0;
    for (const auto& s : scored) scale = std::max(scale, std::abs(s.value));
    auto key = [scale](double value) { return scale > 0.0 ? std::round(value / scale * kScoreResolution) : 0.0; };
    std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
        const double ka = key(a.value), kb = key(b.value);
        if (ka != kb) return ka > kb;
        return *a.item < *b.item;
    });

    RankedFeed feed;
    feed.viewer = viewer;
    feed.value_model_digest = v.digest();
    const size_t k = std::min(scored.size(), static_cast<size_t>(v.top_k));
    for (size_t i = 0; i < k; ++i) {
        AtomicAllocation alloc;
        alloc.slot = static_cast<int>(i) + 1;
        alloc.object = *scored[i].item;
        alloc.properties.viewer_group = *group;
        alloc.properties.value = scored[i].value;
        for (const auto& name : known_signal_names()) {
            if (auto s = scored[i].signals.get(name)) alloc.properties.signals[name] = *s;
        }
        feed.allocations.push_back(std::move(alloc));
    }
    return feed;
}

std::string feed_table(const RankedFeed& feed) {
    std::ostringstream out;
    out << "viewer " << feed.viewer.str() << "\n";
    out << std::left << std::setw(6) << "slot" << std::setw(24) << "item" << std::right << std::setw(12) << "value";
    std::vector<std::string> columns;
    if (!feed.allocations.empty()) {
        for (const auto& [name, _] : feed.allocations.front().properties.signals) columns.push_back(name);
    }
    for (const auto& c : columns) out << std::setw(20) << c;
    out << "\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& a : feed.allocations) {
        out << std::left << std::setw(6) << a.slot << std::setw(24) << a.object.str() << std::right << std::setw(12)
            << a.properties.value;
        for (const auto& c : columns) out << std::setw(20) << a.properties.signals.at(c);
        out << "\n";
    }
    return out.str();
}

}  // namespace bridgerank
