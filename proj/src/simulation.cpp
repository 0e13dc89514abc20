#include "bridgerank/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <unordered_map>

#include "bridgerank/random.hpp"

namespace bridgerank {

namespace {

// Stream labels for derive_seed.
enum : uint64_t {
    kAgentStream = 1,
    kItemStream = 2,
    kProbeStream = 3,
    kFeedVoteStream = 4,
    kProbeVoteStream = 5,
    kRwcStream = 6,
    kExploreStream = 7,
};

const double kAgreeBias = std::log(9.0);

std::string padded(const char* prefix, long value, int width) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

int digits(long n) {
    int d = 1;
    while (n >= 10) {
        n /= 10;
        ++d;
    }
    return d;
}

Eigen::VectorXd group_mean(const SimConfig& cfg, GroupId g) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cfg.opinion_dimension);
    if (cfg.n_groups == 1) return mean;
    if (cfg.n_groups == 2) {
        mean(0) = (g == 0 ? -0.5 : 0.5) * cfg.faction_separation;
        return mean;
    }
    const double angle = 2.0 * std::numbers::pi * g / cfg.n_groups;
    const double radius = cfg.faction_separation / (2.0 * std::sin(std::numbers::pi / cfg.n_groups));
    mean(0) = radius * std::cos(angle);
    mean(1) = radius * std::sin(angle);
    return mean;
}

Eigen::VectorXd noisy_copy(const Eigen::VectorXd& centre, double scale, Rng& rng) {
    Eigen::VectorXd out = centre;
    for (Eigen::Index k = 0; k < out.size(); ++k) out(k) += scale * rng.normal();
    return out;
}

double clamp_affect(double a) { return std::clamp(a, 0.0, 100.0); }

}  // namespace

void SimConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
    if (n_agents < 1 || n_groups < 1 || opinion_dimension < 1 || items_per_tick < 1 || feed_size < 1) {
        fail("counts must be >= 1");
    }
    if (ticks < 0) fail("ticks must be >= 0");
    if (n_groups > 2 && opinion_dimension < 2) fail("more than two groups need opinion_dimension >= 2");
    if (!(opinion_step >= 0.0 && opinion_step < 1.0)) fail("opinion_step must be in [0, 1)");
    if (!(affect_step >= 0.0 && affect_step < 1.0)) fail("affect_step must be in [0, 1)");
    if (!(faction_separation >= 0.0) || !(noise_scale >= 0.0) || !(item_noise >= 0.0)) {
        fail("separation and noise must be >= 0");
    }
    if (!(pass_probability >= 0.0 && pass_probability < 1.0)) fail("pass_probability must be in [0, 1)");
    if (candidate_window < 1) fail("candidate_window must be >= 1");
    if (explore_slots < 0 || explore_slots > feed_size) fail("explore_slots must be in [0, feed_size]");
    if (probe_items < 0) fail("probe_items must be >= 0");
    if (rwc_walks < 1 || rwc_steps < 0) fail("rwc_walks >= 1 and rwc_steps >= 0 required");
    if (!(similarity_threshold >= -1.0 && similarity_threshold <= 1.0)) fail("similarity_threshold must be in [-1, 1]");
    if (repulsion_beyond && !(*repulsion_beyond >= 0.0)) fail("repulsion_beyond must be >= 0");
    if (sybil && !(sybil->fraction >= 0.0 && sybil->fraction < 1.0)) fail("sybil fraction must be in [0, 1)");
    ValueModel v = value_model;
    v.top_k = feed_size;
    v.validate();
}

Clustering SimWorld::group_clustering() const {
    std::map<PersonId, GroupId> labels;
    for (const auto& a : agents) labels.emplace(a.id, a.group);
    return clustering_from_labels(labels);
}

std::optional<size_t> SimWorld::agent_index(const PersonId& id) const {
    auto it = std::lower_bound(agents.begin(), agents.end(), id,
                               [](const Agent& a, const PersonId& p) { return a.id < p; });
    if (it == agents.end() || it->id != id) return std::nullopt;
    return static_cast<size_t>(it - agents.begin());
}

const Agent& SimWorld::agent(const PersonId& id) const {
    const auto idx = agent_index(id);
    if (!idx) throw Error(ErrorCode::UnknownPerson, id.str());
    return agents[*idx];
}

SimWorld generate_population(const SimConfig& cfg) {
    cfg.validate();
    SimWorld w;
    w.config = cfg;
    const int width = std::max(3, digits(cfg.n_agents - 1));
    for (int i = 0; i < cfg.n_agents; ++i) {
        Agent a;
        a.id = PersonId(padded("a", i, width));
        a.group = i % cfg.n_groups;
        Rng rng(derive_seed(cfg.seed, {kAgentStream, static_cast<uint64_t>(i)}));
        a.opinion = noisy_copy(group_mean(cfg, a.group), cfg.noise_scale, rng);
        a.affect_out = 50.0;
        w.agents.push_back(std::move(a));
    }
    for (int j = 0; j < cfg.probe_items; ++j) {
        Rng rng(derive_seed(cfg.seed, {kProbeStream, static_cast<uint64_t>(j)}));
        const auto& author = w.agents[rng.index(w.agents.size())];
        SimItem probe;
        probe.id = ItemId(padded("probe_", j, 3));
        probe.author = author.id;
        probe.position = noisy_copy(author.opinion, cfg.noise_scale, rng);
        probe.tick = -1;
        w.probes.push_back(std::move(probe));
    }
    if (cfg.sybil && cfg.sybil->fraction > 0.0) {
        const PersonId target(cfg.sybil->target_author);
        if (!w.agent_index(target)) throw Error(ErrorCode::InvalidArgument, "unknown sybil target " + target.str());
        for (GroupId g = 0; g < cfg.n_groups; ++g) {
            std::vector<size_t> members;
            for (size_t i = 0; i < w.agents.size(); ++i) {
                if (w.agents[i].group == g && w.agents[i].id != target) members.push_back(i);
            }
            const auto count = static_cast<size_t>(std::ceil(cfg.sybil->fraction * members.size()));
            for (size_t k = 0; k < count && k < members.size(); ++k) {
                w.agents[members[members.size() - 1 - k]].sybil = true;
            }
        }
    }
    return w;
}

SimWorld swap_group_labels(SimWorld world) {
    const int g = world.config.n_groups;
    for (auto& a : world.agents) a.group = g - 1 - a.group;
    for (auto& ev : world.history) ev.group = g - 1 - ev.group;
    return world;
}

double agree_probability(const Eigen::VectorXd& opinion, const Eigen::VectorXd& position) {
    if (opinion.size() != position.size()) {
        throw Error(ErrorCode::DimensionMismatch, "item and opinion dimensions differ");
    }
    const double distance = (opinion - position).norm();
    return 1.0 / (1.0 + std::exp(distance - kAgreeBias));
}

Vote agent_vote(const Agent& agent, const Eigen::VectorXd& item_position, uint64_t seed, double pass_probability) {
    const double p_agree = agree_probability(agent.opinion, item_position);
    Rng rng(seed);
    const double u_pass = rng.uniform();
    const double u_agree = rng.uniform();
    if (u_pass < pass_probability) return Vote::Pass;
    return u_agree < p_agree ? Vote::Agree : Vote::Disagree;
}

uint64_t feed_vote_seed(uint64_t seed, int tick, size_t agent_index, const ItemId& item) {
    return derive_seed(seed, {kFeedVoteStream, static_cast<uint64_t>(tick), agent_index, hash_string(item.str())});
}

uint64_t probe_vote_seed(uint64_t seed, size_t agent_index, size_t probe_index) {
    return derive_seed(seed, {kProbeVoteStream, agent_index, probe_index});
}

void author_items(SimWorld& w) {
    const auto& cfg = w.config;
    for (int j = 0; j < cfg.items_per_tick; ++j) {
        Rng rng(derive_seed(cfg.seed, {kItemStream, static_cast<uint64_t>(w.tick), static_cast<uint64_t>(j)}));
        const Agent& author = w.agents[rng.index(w.agents.size())];
        SimItem item;
        item.id = ItemId(padded("t", w.tick, 4) + padded("_", j, 3));
        item.author = author.id;
        item.position = noisy_copy(author.opinion, cfg.item_noise, rng);
        item.tick = w.tick;
        if (cfg.author_self_vote) {
            w.votes.add(author.id, item.id, Vote::Agree);
            w.history.push_back({w.tick, author.id, author.group, item.id, Vote::Agree});
        } else {
            w.votes.add_item(item.id);
        }
        w.items.push_back(std::move(item));
    }
}

namespace {

bool outgroup_approves(const ItemAggregate& agg, GroupId own) {
    int agrees = 0, seen = 0;
    for (const auto& [g, counts] : agg.per_group) {
        if (g == own) continue;
        agrees += counts.agrees;
        seen += counts.seen;
    }
    return seen > 0 && 2 * agrees > seen;
}

// The value model fills the first feed_size - explore_slots slots; the rest
// are drawn uniformly from the leftover ranked candidates.
RankedFeed ranked_with_exploration(const PersonId& viewer, const std::vector<ItemId>& candidates,
                                   const RankingModels& models, const ValueModel& v, const SimConfig& cfg,
                                   int tick, size_t agent_index) {
    ValueModel all = v;
    all.top_k = static_cast<int>(candidates.size());
    RankedFeed full = rank(viewer, candidates, models, all);
    const size_t exploit = std::min(full.allocations.size(), static_cast<size_t>(cfg.feed_size - cfg.explore_slots));
    RankedFeed feed;
    feed.viewer = full.viewer;
    feed.value_model_digest = v.digest();
    feed.allocations.assign(full.allocations.begin(), full.allocations.begin() + exploit);
    std::vector<AtomicAllocation> rest(full.allocations.begin() + exploit, full.allocations.end());
    Rng rng(derive_seed(cfg.seed, {kExploreStream, static_cast<uint64_t>(tick), agent_index}));
    for (int e = 0; e < cfg.explore_slots && !rest.empty(); ++e) {
        const size_t pick = rng.index(rest.size());
        AtomicAllocation alloc = std::move(rest[pick]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
        alloc.properties.explored = true;
        feed.allocations.push_back(std::move(alloc));
    }
    for (size_t i = 0; i < feed.allocations.size(); ++i) feed.allocations[i].slot = static_cast<int>(i) + 1;
    return feed;
}

}  // namespace

SimWorld step(SimWorld w, const ValueModel& policy) {
    const SimConfig& cfg = w.config;
    ValueModel v = policy;
    v.top_k = cfg.feed_size;
    v.validate();

    author_items(w);
    const Clustering groups = w.group_clustering();
    // Agents with no votes yet still need a row so aggregate covers them.
    for (const auto& a : w.agents) w.votes.add_person(a.id);
    const RankingModels models = RankingModels::from_aggregate(aggregate(w.votes, groups), groups);

    std::vector<size_t> pool;
    std::unordered_map<ItemId, size_t> item_lookup;
    for (size_t i = 0; i < w.items.size(); ++i) {
        item_lookup.emplace(w.items[i].id, i);
        if (w.items[i].tick > w.tick - cfg.candidate_window) pool.push_back(i);
    }
    if (pool.empty()) throw Error(ErrorCode::InvalidArgument, "no candidate items");

    const std::optional<PersonId> sybil_target =
        cfg.sybil ? std::optional<PersonId>(PersonId(cfg.sybil->target_author)) : std::nullopt;

    std::vector<Interaction> pending;
    w.last_feeds.clear();
    const double affect_delta = 100.0 * cfg.affect_step;

    for (size_t ai = 0; ai < w.agents.size(); ++ai) {
        Agent& agent = w.agents[ai];
        std::vector<ItemId> candidates;
        for (size_t idx : pool) {
            if (!w.votes.vote(agent.id, w.items[idx].id)) candidates.push_back(w.items[idx].id);
        }
        if (candidates.empty()) continue;

        RankedFeed feed = ranked_with_exploration(agent.id, candidates, models, v, cfg, w.tick, ai);
        for (auto& alloc : feed.allocations) {
            const SimItem& item = w.items[item_lookup.at(alloc.object)];
            const GroupId author_group = w.agent(item.author).group;
            Vote vote;
            if (agent.sybil) {
                vote = item.author == *sybil_target ? Vote::Agree : Vote::Disagree;
            } else {
                vote = agent_vote(agent, item.position, feed_vote_seed(cfg.seed, w.tick, ai, item.id),
                                  cfg.pass_probability);
            }
            alloc.properties.realized_vote = to_int(vote);
            pending.push_back({w.tick, agent.id, agent.group, item.id, vote});
            if (agent.sybil) continue;

            const bool outgroup_item = author_group != agent.group;
            if (vote == Vote::Agree) {
                agent.opinion += cfg.opinion_step * (item.position - agent.opinion);
                // Approving content from the other side, or content most of the
                // other side has approved so far, counts as a cross-group approval.
                if (outgroup_item || outgroup_approves(models.aggregate.at(item.id), agent.group)) {
                    agent.affect_out = clamp_affect(agent.affect_out + affect_delta);
                }
            } else if (vote == Vote::Disagree) {
                if (outgroup_item) agent.affect_out = clamp_affect(agent.affect_out - affect_delta);
                if (cfg.repulsion_beyond && (item.position - agent.opinion).norm() > *cfg.repulsion_beyond) {
                    agent.opinion -= cfg.opinion_step * (item.position - agent.opinion);
                }
            }
        }
        if (agent.sybil) {
            // Sybils also endorse every outstanding target item directly.
            for (const auto& id : candidates) {
                const SimItem& item = w.items[item_lookup.at(id)];
                const bool in_feed = std::any_of(feed.allocations.begin(), feed.allocations.end(),
                                                 [&](const AtomicAllocation& a) { return a.object == id; });
                if (item.author == *sybil_target && !in_feed) {
                    pending.push_back({w.tick, agent.id, agent.group, id, Vote::Agree});
                }
            }
        }
        if (cfg.record_feeds) w.last_feeds.push_back(std::move(feed));
    }

    for (const auto& ev : pending) {
        w.votes.add(ev.person, ev.item, ev.vote);
        w.history.push_back(ev);
    }
    ++w.tick;
    return w;
}

AffectPoint affect_snapshot(const SimWorld& world) {
    AffectPoint p;
    p.tick = world.tick;
    std::map<GroupId, int> counts;
    double total = 0.0;
    for (const auto& a : world.agents) {
        p.by_group[a.group] += a.affect_out;
        ++counts[a.group];
        total += a.affect_out;
    }
    for (auto& [g, sum] : p.by_group) sum /= counts[g];
    p.overall = world.agents.empty() ? 0.0 : total / static_cast<double>(world.agents.size());
    return p;
}

RelationMetricReport measure(const SimWorld& world) {
    const SimConfig& cfg = world.config;
    VoteMatrix panel;
    for (size_t ai = 0; ai < world.agents.size(); ++ai) {
        const Agent& agent = world.agents[ai];
        panel.add_person(agent.id);
        for (size_t pj = 0; pj < world.probes.size(); ++pj) {
            const Vote v = agent_vote(agent, world.probes[pj].position, probe_vote_seed(cfg.seed, ai, pj),
                                      cfg.pass_probability);
            panel.add(agent.id, world.probes[pj].id, v);
        }
    }
    const GraphModel graph = vote_similarity_graph(panel, cfg.similarity_threshold);
    const Clustering groups = world.group_clustering();

    RwcOptions rwc;
    rwc.walks = cfg.rwc_walks;
    rwc.steps = cfg.rwc_steps;
    rwc.seed = derive_seed(cfg.seed, {kRwcStream});

    RelationMetricReport r;
    r.timestamp = world.tick;
    r.values["modularity"] = modularity(graph, groups);
    r.values["ei_index"] = ei_index(graph, groups);
    if (groups.groups().size() == 2) {
        const auto est = random_walk_controversy(graph, groups, rwc);
        r.values["rwc"] = est.value;
        r.values["rwc_se"] = est.standard_error;
    } else if (groups.groups().size() > 2) {
        const auto pairs = pairwise_random_walk_controversy(graph, groups, rwc);
        double sum = 0.0, se2 = 0.0;
        for (const auto& [key, est] : pairs) {
            r.values["rwc_" + std::to_string(key.first) + "_" + std::to_string(key.second)] = est.value;
            sum += est.value;
            se2 += est.standard_error * est.standard_error;
        }
        r.values["rwc"] = sum / pairs.size();
        r.values["rwc_se"] = std::sqrt(se2) / pairs.size();
    }
    r.values["mean_affect_out"] = affect_snapshot(world).overall;

    const TickWindow window{world.tick - 1, world.tick};
    const double da = signal_prevalence(world.history, make_motif(motif_names::diverse_approval), window);
    const double gac = signal_prevalence(world.history, make_motif(motif_names::group_aware_consensus), window);
    r.prevalence[motif_names::diverse_approval] = da;
    r.prevalence[motif_names::group_aware_consensus] = gac;
    r.values["diverse_approval_prevalence"] = da;
    r.values["gac_prevalence"] = gac;
    r.inputs_digest = graph_digest(graph, groups);
    return r;
}

SimRun run(const SimConfig& cfg) { return run(generate_population(cfg)); }

SimRun run(SimWorld world) {
    world.config.validate();
    SimRun out;
    out.reports.push_back(measure(world));
    out.affect.push_back(affect_snapshot(world));
    const ValueModel policy = world.config.value_model;
    for (int t = 0; t < world.config.ticks; ++t) {
        world = step(std::move(world), policy);
        if (world.config.record_feeds) {
            for (auto& feed : world.last_feeds) out.feeds.push_back({world.tick - 1, std::move(feed)});
            world.last_feeds.clear();
        }
        out.reports.push_back(measure(world));
        out.affect.push_back(affect_snapshot(world));
        out.deltas.push_back(bridging_delta(out.reports[out.reports.size() - 2], out.reports.back()));
    }
    if (out.reports.size() > 1) out.final_delta = bridging_delta(out.reports.front(), out.reports.back());
    out.final_world = std::move(world);
    return out;
}

}  // namespace bridgerank
