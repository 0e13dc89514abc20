#include "bridgerank/signals.hpp"

#include <algorithm>
#include <cmath>

#include "bridgerank/matrix_factorization.hpp"

namespace bridgerank {

const std::vector<std::string>& known_signal_names() {
    static const std::vector<std::string> names = {
        std::string(signal_names::engagement),   std::string(signal_names::diverse_approval),
        std::string(signal_names::gac),          std::string(signal_names::mf_intercept),
        std::string(signal_names::bimodality),   std::string(signal_names::exposure_diversity),
    };
    return names;
}

namespace {

std::optional<double> SignalVector::* field_for(std::string_view name) {
    if (name == signal_names::engagement) return &SignalVector::engagement;
    if (name == signal_names::diverse_approval) return &SignalVector::diverse_approval;
    if (name == signal_names::gac) return &SignalVector::group_aware_consensus;
    if (name == signal_names::mf_intercept) return &SignalVector::mf_intercept;
    if (name == signal_names::bimodality) return &SignalVector::bimodality;
    if (name == signal_names::exposure_diversity) return &SignalVector::exposure_diversity;
    throw Error(ErrorCode::InvalidArgument, "unknown signal '" + std::string(name) + "'");
}

void require_groups(const ItemAggregate& agg) {
    if (agg.per_group.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "signal needs at least 2 groups");
    }
}

}  // namespace

std::optional<double> SignalVector::get(std::string_view name) const { return this->*field_for(name); }

void SignalVector::set(std::string_view name, double value) { this->*field_for(name) = value; }

double smoothed_approval(const GroupCounts& counts) {
    return (counts.agrees + 1.0) / (counts.seen + 2.0);
}

double diverse_approval(const AggregateModel& a, const ItemId& item) {
    const auto& agg = a.at(item);
    require_groups(agg);
    double lowest = 1.0;
    for (const auto& [_, counts] : agg.per_group) {
        const double rate = counts.seen > 0 ? static_cast<double>(counts.agrees) / counts.seen : 0.0;
        lowest = std::min(lowest, rate);
    }
    return lowest;
}

double diverse_approval(const VoteMatrix& m, const Clustering& c, const ItemId& item) {
    if (!m.has_item(item)) throw Error(ErrorCode::UnknownItem, item.str());
    return diverse_approval(aggregate(m, c), item);
}

double group_aware_consensus(const AggregateModel& a, const ItemId& item) {
    const auto& agg = a.at(item);
    require_groups(agg);
    double product = 1.0;
    for (const auto& [_, counts] : agg.per_group) product *= smoothed_approval(counts);
    return product;
}

double bimodality(std::span<const double> ratings) {
    const size_t n = ratings.size();
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "bimodality needs at least 4 ratings");
    double mean = 0.0;
    for (double r : ratings) mean += r;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double r : ratings) {
        const double d = r - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 <= 1e-300) throw Error(ErrorCode::DegenerateDistribution, "constant ratings");
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    return (skew * skew + 1.0) / kurt;
}

double entropy_bits(std::span<const int> counts) {
    double total = 0.0;
    for (int c : counts) total += c;
    if (total <= 0) return 0.0;
    double h = 0.0;
    for (int c : counts) {
        if (c <= 0) continue;
        const double p = c / total;
        h -= p * std::log2(p);
    }
    return h == 0.0 ? 0.0 : h;  // avoid -0
}

double exposure_diversity(const RankedFeed& feed, const std::map<ItemId, GroupId>& source_groups) {
    std::map<GroupId, int> counts;
    for (const auto& alloc : feed.allocations) {
        auto it = source_groups.find(alloc.object);
        if (it == source_groups.end()) throw Error(ErrorCode::UnknownItem, alloc.object.str());
        ++counts[it->second];
    }
    std::vector<int> c;
    for (const auto& [_, n] : counts) c.push_back(n);
    return entropy_bits(c);
}

std::vector<SignalVector> compute_signals(const VoteMatrix& m, const Clustering& c,
                                          const SignalOptions& opts) {
    return compute_signals(m, c, aggregate(m, c), opts);
}

std::vector<SignalVector> compute_signals(const VoteMatrix& m, const Clustering& c,
                                          const AggregateModel& a, const SignalOptions& opts) {
    (void)c;
    std::optional<MFModel> mf;
    if (opts.include_mf && m.vote_count() > 0) {
        bool any_target = std::any_of(m.entries().begin(), m.entries().end(),
                                      [](const auto& e) { return e.value != Vote::Pass; });
        if (any_target) {
            MFHyperparams h;
            h.seed = opts.seed;
            mf = fit_matrix_factorization(m, h);
        }
    }

    std::vector<SignalVector> out;
    out.reserve(m.items().size());
    for (size_t i = 0; i < m.items().size(); ++i) {
        const ItemId& item = m.items()[i];
        const auto& agg = a.at(item);
        SignalVector s;
        s.item = item;
        s.engagement = smoothed_approval({agg.total_agrees(), 0, agg.total_seen()});
        s.diverse_approval = diverse_approval(a, item);
        s.group_aware_consensus = group_aware_consensus(a, item);
        if (opts.include_mf) {
            s.mf_intercept = mf ? mf->item_intercepts.at(item) : 0.0;
        }

        std::vector<double> ratings;
        for (size_t e : m.item_entries(i)) ratings.push_back(to_int(m.entries()[e].value));
        double bc = 0.0;
        if (ratings.size() >= 4) {
            try {
                bc = bimodality(ratings);
            } catch (const Error&) {
                bc = 0.0;  // unanimous: not polarized
            }
        }
        s.bimodality = bc;

        std::vector<int> audience;
        for (const auto& [_, counts] : agg.per_group) audience.push_back(counts.seen);
        s.exposure_diversity = entropy_bits(audience);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace bridgerank
