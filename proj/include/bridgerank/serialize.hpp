#pragma once
// JSON and CSV forms of every artifact. JSON documents carry
// `schema_version` and `kind`; parsers reject other kinds/versions with
// ParseError.

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "bridgerank/credibility.hpp"
#include "bridgerank/feed.hpp"
#include "bridgerank/matrix_factorization.hpp"
#include "bridgerank/metrics.hpp"
#include "bridgerank/ranking.hpp"
#include "bridgerank/relation_model.hpp"
#include "bridgerank/signals.hpp"
#include "bridgerank/simulation.hpp"

namespace bridgerank {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

Json to_json(const SpaceModel& s);
SpaceModel space_model_from_json(const Json& j);

Json to_json(const Clustering& c);
Clustering clustering_from_json(const Json& j);

Json to_json(const GraphModel& g);
GraphModel graph_from_json(const Json& j);

Json to_json(const AggregateModel& a);
AggregateModel aggregate_from_json(const Json& j);

Json to_json(const std::vector<SignalVector>& signals);  // keyed by item
std::vector<SignalVector> signals_from_json(const Json& j);

Json to_json(const MFModel& m);
MFModel mf_model_from_json(const Json& j);

Json to_json(const CredibilityScores& c);
CredibilityScores credibility_from_json(const Json& j);

// Value models use the bare `{"weights": {...}, "top_k": n}` form.
Json to_json(const ValueModel& v);
ValueModel value_model_from_json(const Json& j);

Json to_json(const RankedFeed& f);
RankedFeed feed_from_json(const Json& j);

Json to_json(const RelationMetricReport& r);
RelationMetricReport report_from_json(const Json& j);

Json to_json(const BridgingMetricReport& r);
BridgingMetricReport bridging_report_from_json(const Json& j);

// Missing keys take SimConfig defaults except `seed`, which is required.
Json to_json(const SimConfig& c);
SimConfig sim_config_from_json(const Json& j);

Json to_json(const SimWorld& w);
SimWorld world_from_json(const Json& j);

// CSV exports.
void write_signals_csv(std::ostream& out, const std::vector<SignalVector>& signals);
void write_projection_csv(std::ostream& out, const SpaceModel& s, const Clustering& c);
// `tick,metric,value`, metric names ascending within a tick.
void write_metrics_csv(std::ostream& out, const std::vector<RelationMetricReport>& reports);
// `tick,group,mean_affect_out`, with group "all" for the population mean.
void write_affect_csv(std::ostream& out, const std::vector<AffectPoint>& series);
// One JSON object per line: {"tick": t, "feed": {...}}.
void write_feeds_jsonl(std::ostream& out, const std::vector<FeedRecord>& feeds);

// Edge list CSV `source,target,weight[,sign]` and group CSV `person_id,group`.
GraphModel read_edges_csv(std::istream& in);
std::map<PersonId, GroupId> read_groups_csv(std::istream& in);

// Authorship CSV `item_id,author_id`.
Authorship read_authorship_csv(std::istream& in);

}  // namespace bridgerank
