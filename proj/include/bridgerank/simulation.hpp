#pragma once
// Seeded agent-based harness comparing ranking policies.
//
// Agents hold a latent opinion vector, a group and a 0-100 feeling
// thermometer toward the other groups (affect_out). Each tick new items are
// authored near their authors' opinions, every agent is shown a ranked feed,
// votes on each slot, and drifts toward items it agrees with. Relation metrics
// are measured on a fixed probe panel: every agent answers the same probe
// items with common random numbers, so the graph only changes when opinions
// change.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bridgerank/feed.hpp"
#include "bridgerank/metrics.hpp"
#include "bridgerank/ranking.hpp"
#include "bridgerank/relation_model.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace bridgerank {

struct SybilConfig {
    // Share of agents (split evenly across groups) that vote adversarially.
    double fraction = 0.0;
    // Agent whose items the sybils push: they agree with every candidate item
    // by this author and disagree with everything else they are shown.
    std::string target_author;
};

struct SimConfig {
    int n_agents = 40;
    int n_groups = 2;
    int opinion_dimension = 2;
    double faction_separation = 4.0;
    double noise_scale = 1.0;
    // Spread of item positions around their author's opinion.
    double item_noise = 1.0;
    int items_per_tick = 10;
    int feed_size = 3;
    int ticks = 30;
    ValueModel value_model = engagement_only_model(3);
    uint64_t seed = 0;
    double opinion_step = 0.05;  // eta
    double affect_step = 0.02;   // gamma; affect moves by 100 * gamma per event

    double pass_probability = 0.1;
    // Items authored in the last `candidate_window` ticks are candidates.
    int candidate_window = 3;
    // Feed slots (taken from the bottom) filled uniformly at random from the
    // candidates the value model did not pick. Same rule under every policy.
    int explore_slots = 1;
    bool author_self_vote = true;
    int probe_items = 20;
    double similarity_threshold = 0.5;
    int rwc_walks = 2000;
    int rwc_steps = 10;
    // Disagreeing with an item farther than this pushes the opinion away.
    std::optional<double> repulsion_beyond;
    std::optional<SybilConfig> sybil;
    bool record_feeds = true;

    // Throws InvalidArgument.
    void validate() const;
};

struct Agent {
    PersonId id;
    GroupId group = 0;
    Eigen::VectorXd opinion;
    double affect_out = 50.0;
    bool sybil = false;
};

struct SimItem {
    ItemId id;
    Eigen::VectorXd position;
    PersonId author;
    int tick = 0;
};

struct SimWorld {
    SimConfig config;
    int tick = 0;
    std::vector<Agent> agents;
    std::vector<SimItem> items;
    std::vector<SimItem> probes;
    InteractionLog history;
    VoteMatrix votes;
    // Feeds realized by the most recent step.
    std::vector<RankedFeed> last_feeds;

    Clustering group_clustering() const;
    const Agent& agent(const PersonId& id) const;
    std::optional<size_t> agent_index(const PersonId& id) const;
};

// Agents are assigned round-robin to groups; group means sit on a line
// (two groups: +-separation/2 on the first axis) or on a circle with adjacent
// means `separation` apart. Opinions = mean + noise_scale * N(0, I).
SimWorld generate_population(const SimConfig& cfg);

// Relabel group g as (n_groups - 1 - g). Opinions are untouched.
SimWorld swap_group_labels(SimWorld world);

// logistic(ln 9 - distance): 0.9 for an item at the agent's own position.
double agree_probability(const Eigen::VectorXd& opinion, const Eigen::VectorXd& position);

// Pass with probability pass_probability; otherwise Agree with
// agree_probability, else Disagree. Throws DimensionMismatch.
Vote agent_vote(const Agent& agent, const Eigen::VectorXd& item_position, uint64_t seed,
                double pass_probability = 0.1);

// Seed used for agent `agent_index` voting on `item` at `tick`.
uint64_t feed_vote_seed(uint64_t seed, int tick, size_t agent_index, const ItemId& item);
uint64_t probe_vote_seed(uint64_t seed, size_t agent_index, size_t probe_index);

// Adds any new items for this tick (ids "t<tick>_<n>").
void author_items(SimWorld& world);

// One tick under `policy` (top_k is overridden by config.feed_size).
// Throws whatever ranking throws; InvalidArgument when no candidate exists.
SimWorld step(SimWorld world, const ValueModel& policy);

// Probe-panel relation metrics plus affect and prevalence for the current tick.
RelationMetricReport measure(const SimWorld& world);

struct AffectPoint {
    int tick = 0;
    std::map<GroupId, double> by_group;
    double overall = 0.0;
};

struct FeedRecord {
    int tick = 0;
    RankedFeed feed;
};

struct SimRun {
    std::vector<RelationMetricReport> reports;      // ticks + 1 entries
    std::vector<BridgingMetricReport> deltas;       // consecutive ticks
    std::optional<BridgingMetricReport> final_delta;  // first -> last
    std::vector<AffectPoint> affect;
    std::vector<FeedRecord> feeds;
    SimWorld final_world;
};

AffectPoint affect_snapshot(const SimWorld& world);

SimRun run(const SimConfig& cfg);
SimRun run(SimWorld world);

}  // namespace bridgerank
