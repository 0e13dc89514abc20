#include "bridgerank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bridgerank/digest.hpp"
#include "bridgerank/random.hpp"

namespace bridgerank {

namespace {

std::vector<GroupId> node_groups(const GraphModel& g, const Clustering& c) {
    std::vector<GroupId> out;
    out.reserve(g.nodes().size());
    for (const auto& p : g.nodes()) {
        const auto label = c.group_of(p);
        if (!label) throw Error(ErrorCode::UnlabeledPerson, p.str());
        out.push_back(*label);
    }
    return out;
}

struct Adjacency {
    std::vector<std::vector<size_t>> neighbors;
    std::vector<std::vector<double>> cumulative;  // running weight sums
};

Adjacency positive_adjacency(const GraphModel& g) {
    Adjacency adj;
    const size_t n = g.nodes().size();
    std::vector<std::vector<std::pair<size_t, double>>> lists(n);
    for (const auto& e : g.edges()) {
        if (e.sign < 0 || e.weight <= 0.0) continue;
        const size_t a = *g.node_index(e.a);
        const size_t b = *g.node_index(e.b);
        lists[a].emplace_back(b, e.weight);
        lists[b].emplace_back(a, e.weight);
    }
    adj.neighbors.resize(n);
    adj.cumulative.resize(n);
    for (size_t i = 0; i < n; ++i) {
        // Neighbour order by node id keeps walks independent of edge order.
        std::sort(lists[i].begin(), lists[i].end(), [&](const auto& x, const auto& y) {
            return g.nodes()[x.first] < g.nodes()[y.first];
        });
        double run = 0.0;
        for (const auto& [nb, w] : lists[i]) {
            run += w;
            adj.neighbors[i].push_back(nb);
            adj.cumulative[i].push_back(run);
        }
    }
    return adj;
}

size_t walk(const Adjacency& adj, size_t start, int steps, Rng& rng) {
    size_t cur = start;
    for (int s = 0; s < steps; ++s) {
        const auto& cum = adj.cumulative[cur];
        if (cum.empty()) break;
        const double r = rng.uniform() * cum.back();
        auto it = std::upper_bound(cum.begin(), cum.end(), r);
        if (it == cum.end()) --it;
        cur = adj.neighbors[cur][it - cum.begin()];
    }
    return cur;
}

RwcEstimate rwc_two_groups(const GraphModel& g, const std::vector<GroupId>& groups, GroupId x, GroupId y,
                           const RwcOptions& opts) {
    if (opts.walks < 1 || opts.steps < 0) {
        throw Error(ErrorCode::InvalidArgument, "walks must be >= 1 and steps >= 0");
    }
    const Adjacency adj = positive_adjacency(g);
    RwcEstimate est;
    est.group_x = x;
    est.group_y = y;

    auto run_group = [&](GroupId group, int& total_walks) {
        std::vector<size_t> starts;
        for (size_t i = 0; i < g.nodes().size(); ++i) {
            if (groups[i] == group && !adj.neighbors[i].empty()) starts.push_back(i);
        }
        if (starts.empty()) {
            throw Error(ErrorCode::EmptyGroupGraph, "group " + std::to_string(group) + " has no edges");
        }
        std::sort(starts.begin(), starts.end(), [&](size_t a, size_t b) { return g.nodes()[a] < g.nodes()[b]; });
        const int per_node = static_cast<int>((opts.walks + starts.size() - 1) / starts.size());
        int stayed = 0;
        total_walks = 0;
        for (size_t s : starts) {
            Rng rng(derive_seed(opts.seed, {hash_string(g.nodes()[s].str())}));
            for (int w = 0; w < per_node; ++w) {
                const size_t end = walk(adj, s, opts.steps, rng);
                if (groups[end] == group) ++stayed;
                ++total_walks;
            }
        }
        return static_cast<double>(stayed) / total_walks;
    };

    est.stay_x = run_group(x, est.walks_x);
    est.stay_y = run_group(y, est.walks_y);
    const double a = est.stay_x;
    const double b = est.stay_y;
    est.value = a * b - (1.0 - a) * (1.0 - b);
    est.standard_error = std::sqrt(a * (1.0 - a) / est.walks_x + b * (1.0 - b) / est.walks_y);
    return est;
}

}  // namespace

RwcEstimate random_walk_controversy(const GraphModel& g, const Clustering& c, const RwcOptions& opts) {
    const auto groups = node_groups(g, c);
    std::set<GroupId> distinct(groups.begin(), groups.end());
    if (distinct.size() < 2) throw Error(ErrorCode::SingleGroup, "random walk controversy needs two groups");
    if (distinct.size() > 2) {
        throw Error(ErrorCode::InvalidArgument, "random walk controversy is defined for exactly two groups");
    }
    return rwc_two_groups(g, groups, *distinct.begin(), *distinct.rbegin(), opts);
}

std::map<std::pair<GroupId, GroupId>, RwcEstimate> pairwise_random_walk_controversy(
    const GraphModel& g, const Clustering& c, const RwcOptions& opts) {
    const auto groups = node_groups(g, c);
    std::set<GroupId> distinct(groups.begin(), groups.end());
    if (distinct.size() < 2) throw Error(ErrorCode::SingleGroup, "random walk controversy needs two groups");
    std::map<std::pair<GroupId, GroupId>, RwcEstimate> out;
    for (auto x = distinct.begin(); x != distinct.end(); ++x) {
        for (auto y = std::next(x); y != distinct.end(); ++y) {
            GraphModel sub;
            std::vector<GroupId> sub_groups;
            for (size_t i = 0; i < g.nodes().size(); ++i) {
                if (groups[i] == *x || groups[i] == *y) {
                    sub.add_node(g.nodes()[i]);
                    sub_groups.push_back(groups[i]);
                }
            }
            for (const auto& e : g.edges()) {
                if (sub.node_index(e.a) && sub.node_index(e.b)) sub.add_edge(e.a, e.b, e.weight, e.sign);
            }
            out.emplace(std::pair{*x, *y}, rwc_two_groups(sub, sub_groups, *x, *y, opts));
        }
    }
    return out;
}

double modularity(const GraphModel& g, const Clustering& c) {
    const auto groups = node_groups(g, c);
    double total = 0.0;
    std::map<GroupId, double> internal, degree;
    for (const auto& e : g.edges()) {
        if (e.sign < 0 || e.weight <= 0.0) continue;
        const GroupId ga = groups[*g.node_index(e.a)];
        const GroupId gb = groups[*g.node_index(e.b)];
        total += e.weight;
        degree[ga] += e.weight;
        degree[gb] += e.weight;
        if (ga == gb) internal[ga] += e.weight;
    }
    if (total <= 0.0) throw Error(ErrorCode::EmptyGraph, "modularity needs at least one edge");
    double q = 0.0;
    for (const auto& [group, d] : degree) {
        const double share = d / (2.0 * total);
        q += internal[group] / total - share * share;
    }
    return q;
}

double ei_index(const GraphModel& g, const Clustering& c) {
    const auto groups = node_groups(g, c);
    double internal = 0.0, external = 0.0;
    for (const auto& e : g.edges()) {
        if (e.sign < 0 || e.weight <= 0.0) continue;
        if (groups[*g.node_index(e.a)] == groups[*g.node_index(e.b)]) {
            internal += e.weight;
        } else {
            external += e.weight;
        }
    }
    if (internal + external <= 0.0) throw Error(ErrorCode::EmptyGraph, "E-I index needs at least one edge");
    return (external - internal) / (external + internal);
}

double balance_fraction(const GraphModel& g) {
    const size_t n = g.nodes().size();
    std::vector<std::map<size_t, int>> adj(n);
    for (const auto& e : g.edges()) {
        const size_t a = *g.node_index(e.a);
        const size_t b = *g.node_index(e.b);
        adj[a][b] = e.sign;
        adj[b][a] = e.sign;
    }
    long long triangles = 0, balanced = 0;
    for (size_t i = 0; i < n; ++i) {
        for (auto j = adj[i].upper_bound(i); j != adj[i].end(); ++j) {
            for (auto k = adj[i].upper_bound(j->first); k != adj[i].end(); ++k) {
                auto jk = adj[j->first].find(k->first);
                if (jk == adj[j->first].end()) continue;
                ++triangles;
                const int negatives = (j->second < 0) + (k->second < 0) + (jk->second < 0);
                if (negatives % 2 == 0) ++balanced;
            }
        }
    }
    if (triangles == 0) throw Error(ErrorCode::NoTriangles, "graph has no triangles");
    return static_cast<double>(balanced) / static_cast<double>(triangles);
}

Motif make_motif(const std::string& name) {
    if (name == motif_names::diverse_approval) return {name, 0.5};
    if (name == motif_names::group_aware_consensus) return {name, 0.3};
    throw Error(ErrorCode::UnknownMotif, name);
}

double signal_prevalence(const InteractionLog& history, const Motif& motif, const TickWindow& window) {
    const bool is_da = motif.name == motif_names::diverse_approval;
    const bool is_gac = motif.name == motif_names::group_aware_consensus;
    if (!is_da && !is_gac) throw Error(ErrorCode::UnknownMotif, motif.name);
    if (window.end <= window.begin) throw Error(ErrorCode::InvalidArgument, "empty tick window");
    if (history.empty()) return 0.0;

    struct Counts {
        int agrees = 0;
        int seen = 0;
    };
    std::set<GroupId> all_groups;
    std::map<ItemId, std::map<GroupId, Counts>> counts;
    for (const auto& ev : history) {
        if (ev.tick >= window.end) continue;
        all_groups.insert(ev.group);
        auto& c = counts[ev.item][ev.group];
        ++c.seen;
        if (ev.vote == Vote::Agree) ++c.agrees;
    }

    auto qualifies = [&](const ItemId& item) {
        const auto& per_group = counts[item];
        double value = 1.0;
        for (GroupId g : all_groups) {
            auto it = per_group.find(g);
            const Counts c = it == per_group.end() ? Counts{} : it->second;
            if (is_da) {
                value = std::min(value, c.seen > 0 ? static_cast<double>(c.agrees) / c.seen : 0.0);
            } else {
                value *= (c.agrees + 1.0) / (c.seen + 2.0);
            }
        }
        return value >= motif.threshold;
    };

    std::set<PersonId> active;
    std::map<ItemId, bool> qualified;
    long long participations = 0;
    for (const auto& ev : history) {
        if (ev.tick < window.begin || ev.tick >= window.end) continue;
        active.insert(ev.person);
        if (ev.vote != Vote::Agree) continue;
        auto [it, inserted] = qualified.try_emplace(ev.item, false);
        if (inserted) it->second = qualifies(ev.item);
        if (it->second) ++participations;
    }
    if (active.empty()) return 0.0;
    return static_cast<double>(participations) / static_cast<double>(active.size());
}

BridgingMetricReport bridging_delta(const RelationMetricReport& r0, const RelationMetricReport& r1) {
    if (r0.timestamp > r1.timestamp) {
        throw Error(ErrorCode::InvalidArgument, "reports out of order");
    }
    if (r0.values.size() != r1.values.size() ||
        !std::equal(r0.values.begin(), r0.values.end(), r1.values.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; })) {
        throw Error(ErrorCode::MismatchedMetrics, "reports measure different metrics");
    }
    BridgingMetricReport out;
    out.t0 = r0.timestamp;
    out.t1 = r1.timestamp;
    for (const auto& [name, v1] : r1.values) out.deltas[name] = v1 - r0.values.at(name);
    out.prevalence = r1.prevalence;
    return out;
}

std::string graph_digest(const GraphModel& g, const Clustering& c) {
    std::vector<std::string> lines;
    for (const auto& e : g.edges()) {
        const auto& [lo, hi] = std::minmax(e.a, e.b);
        std::ostringstream ss;
        ss.precision(17);
        ss << "e," << lo.str() << ',' << hi.str() << ',' << e.weight << ',' << e.sign;
        lines.push_back(ss.str());
    }
    for (const auto& p : g.nodes()) {
        const auto label = c.group_of(p);
        lines.push_back("n," + p.str() + ',' + (label ? std::to_string(*label) : std::string("-")));
    }
    std::sort(lines.begin(), lines.end());
    std::string joined;
    for (const auto& l : lines) joined += l + '\n';
    return sha256_hex(joined);
}

RelationMetricReport relation_report(int timestamp, const GraphModel& g, const Clustering& c,
                                     const ReportOptions& opts) {
    RelationMetricReport r;
    r.timestamp = timestamp;
    r.values["modularity"] = modularity(g, c);
    r.values["ei_index"] = ei_index(g, c);
    const auto rwc = random_walk_controversy(g, c, opts.rwc);
    r.values["rwc"] = rwc.value;
    r.values["rwc_se"] = rwc.standard_error;
    r.inputs_digest = graph_digest(g, c);
    return r;
}

}  // namespace bridgerank
