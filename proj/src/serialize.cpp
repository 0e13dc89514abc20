#include "bridgerank/serialize.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace bridgerank {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

Json header(const char* kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

void check_header(const Json& j, const char* kind) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, std::string(kind) + ": expected a JSON object");
    if (j.value("schema_version", -1) != kSchemaVersion) {
        throw Error(ErrorCode::ParseError, std::string(kind) + ": unsupported schema_version");
    }
    if (j.value("kind", std::string()) != kind) {
        throw Error(ErrorCode::ParseError, std::string("expected kind '") + kind + "'");
    }
}

// nlohmann exceptions become ParseError.
template <typename F>
auto guarded(const char* kind, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string(kind) + ": " + e.what());
    }
}

Json vec_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Eigen::VectorXd vec_from(const Json& a) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a.at(i).get<double>();
    return v;
}

Eigen::MatrixXd matrix_rows_from(const Json& a, Eigen::Index cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), cols);
    for (size_t r = 0; r < a.size(); ++r) {
        const auto row = vec_from(a.at(r));
        if (row.size() != cols) throw Error(ErrorCode::ParseError, "row length mismatch");
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> optional_from(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

Json vote_matrix_json(const VoteMatrix& m) {
    Json j;
    Json people = Json::array(), items = Json::array(), entries = Json::array();
    for (const auto& p : m.people()) people.push_back(p.str());
    for (const auto& i : m.items()) items.push_back(i.str());
    for (const auto& e : m.entries()) entries.push_back({e.person, e.item, to_int(e.value)});
    j["people"] = people;
    j["items"] = items;
    j["entries"] = entries;
    return j;
}

VoteMatrix vote_matrix_from(const Json& j) {
    VoteMatrix m;
    std::vector<PersonId> people;
    std::vector<ItemId> items;
    for (const auto& p : j.at("people")) people.emplace_back(p.get<std::string>());
    for (const auto& i : j.at("items")) items.emplace_back(i.get<std::string>());
    for (const auto& p : people) m.add_person(p);
    for (const auto& i : items) m.add_item(i);
    for (const auto& e : j.at("entries")) {
        m.add(people.at(e.at(0).get<size_t>()), items.at(e.at(1).get<size_t>()), vote_from_int(e.at(2).get<int>()));
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------

Json to_json(const SpaceModel& s) {
    Json j = header("space_model");
    j["dimension"] = s.dimension;
    j["degenerate"] = s.degenerate;
    j["total_variance"] = s.total_variance;
    j["explained_variance"] = s.explained_variance;
    Json people = Json::object();
    for (size_t i = 0; i < s.people.size(); ++i) {
        people[s.people[i].str()] = vec_json(s.positions.row(static_cast<Eigen::Index>(i)).transpose());
    }
    j["person_positions"] = people;
    Json items = Json::object();
    for (size_t i = 0; i < s.items.size(); ++i) {
        items[s.items[i].str()] = vec_json(s.item_positions.row(static_cast<Eigen::Index>(i)).transpose());
    }
    j["item_positions"] = items;
    return j;
}

SpaceModel space_model_from_json(const Json& j) {
    return guarded("space_model", [&] {
        check_header(j, "space_model");
        SpaceModel s;
        s.dimension = j.at("dimension").get<int>();
        s.degenerate = j.at("degenerate").get<bool>();
        s.total_variance = j.at("total_variance").get<double>();
        s.explained_variance = j.at("explained_variance").get<std::vector<double>>();
        // JSON objects iterate in key order, which matches the sorted-id layout.
        Json rows = Json::array();
        for (const auto& [id, pos] : j.at("person_positions").items()) {
            s.people.emplace_back(id);
            rows.push_back(pos);
        }
        s.positions = matrix_rows_from(rows, s.dimension);
        Json item_rows = Json::array();
        for (const auto& [id, pos] : j.at("item_positions").items()) {
            s.items.emplace_back(id);
            item_rows.push_back(pos);
        }
        s.item_positions = matrix_rows_from(item_rows, s.dimension);
        return s;
    });
}

Json to_json(const Clustering& c) {
    Json j = header("clustering");
    j["k"] = c.k;
    j["silhouette"] = c.silhouette;
    j["degenerate"] = c.degenerate;
    Json labels = Json::object();
    for (const auto& [p, g] : c.labels) labels[p.str()] = g;
    j["labels"] = labels;
    Json centroids = Json::array();
    for (const auto& v : c.centroids) centroids.push_back(vec_json(v));
    j["centroids"] = centroids;
    Json by_k = Json::object();
    for (const auto& [k, s] : c.silhouette_by_k) by_k[std::to_string(k)] = s;
    j["silhouette_by_k"] = by_k;
    return j;
}

Clustering clustering_from_json(const Json& j) {
    return guarded("clustering", [&] {
        check_header(j, "clustering");
        Clustering c;
        c.k = j.at("k").get<int>();
        c.silhouette = j.at("silhouette").get<double>();
        c.degenerate = j.value("degenerate", false);
        for (const auto& [p, g] : j.at("labels").items()) c.labels[PersonId(p)] = g.get<GroupId>();
        for (const auto& v : j.value("centroids", Json::array())) c.centroids.push_back(vec_from(v));
        const Json by_k = j.value("silhouette_by_k", Json::object());
        for (const auto& [k, s] : by_k.items()) {
            c.silhouette_by_k[std::stoi(k)] = s.get<double>();
        }
        if (c.k != static_cast<int>(c.groups().size())) {
            throw Error(ErrorCode::ParseError, "clustering: k does not match the labels");
        }
        return c;
    });
}

Json to_json(const GraphModel& g) {
    Json j = header("graph");
    Json nodes = Json::array();
    for (const auto& n : g.nodes()) nodes.push_back(n.str());
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({{"a", e.a.str()}, {"b", e.b.str()}, {"weight", e.weight}, {"sign", e.sign}});
    }
    j["edges"] = edges;
    return j;
}

GraphModel graph_from_json(const Json& j) {
    return guarded("graph", [&] {
        check_header(j, "graph");
        GraphModel g;
        for (const auto& n : j.at("nodes")) g.add_node(PersonId(n.get<std::string>()));
        for (const auto& e : j.at("edges")) {
            g.add_edge(PersonId(e.at("a").get<std::string>()), PersonId(e.at("b").get<std::string>()),
                       e.at("weight").get<double>(), e.value("sign", 1));
        }
        return g;
    });
}

Json to_json(const AggregateModel& a) {
    Json j = header("aggregate_model");
    Json order = Json::array();
    Json items = Json::object();
    for (const auto& id : a.items) {
        order.push_back(id.str());
        const auto& agg = a.at(id);
        Json groups = Json::object();
        for (const auto& [g, c] : agg.per_group) {
            groups[std::to_string(g)] = {{"agrees", c.agrees}, {"disagrees", c.disagrees}, {"seen", c.seen}};
        }
        items[id.str()] = {{"overall_approval", agg.overall_approval}, {"per_group", groups}};
    }
    j["item_order"] = order;
    j["per_item"] = items;
    return j;
}

AggregateModel aggregate_from_json(const Json& j) {
    return guarded("aggregate_model", [&] {
        check_header(j, "aggregate_model");
        AggregateModel a;
        for (const auto& id : j.at("item_order")) a.items.emplace_back(id.get<std::string>());
        for (const auto& id : a.items) {
            const auto& item = j.at("per_item").at(id.str());
            ItemAggregate agg;
            agg.overall_approval = item.at("overall_approval").get<double>();
            for (const auto& [g, c] : item.at("per_group").items()) {
                agg.per_group[std::stoi(g)] = {c.at("agrees").get<int>(), c.at("disagrees").get<int>(),
                                               c.at("seen").get<int>()};
            }
            a.per_item.emplace(id, std::move(agg));
        }
        return a;
    });
}

Json to_json(const std::vector<SignalVector>& signals) {
    Json j = header("signals");
    Json order = Json::array();
    Json items = Json::object();
    for (const auto& s : signals) {
        order.push_back(s.item.str());
        Json v = Json::object();
        for (const auto& name : known_signal_names()) v[name] = optional_json(s.get(name));
        items[s.item.str()] = v;
    }
    j["item_order"] = order;
    j["items"] = items;
    return j;
}

std::vector<SignalVector> signals_from_json(const Json& j) {
    return guarded("signals", [&] {
        check_header(j, "signals");
        std::vector<SignalVector> out;
        for (const auto& id : j.at("item_order")) {
            SignalVector s;
            s.item = ItemId(id.get<std::string>());
            const auto& v = j.at("items").at(s.item.str());
            for (const auto& name : known_signal_names()) {
                if (auto x = optional_from(v, name.c_str())) s.set(name, *x);
            }
            out.push_back(std::move(s));
        }
        return out;
    });
}

Json to_json(const MFModel& m) {
    Json j = header("mf_model");
    const auto& h = m.hyperparams;
    j["hyperparams"] = {{"factors", h.factors},
                        {"lambda_intercept", h.lambda_intercept},
                        {"lambda_factor", h.lambda_factor},
                        {"learning_rate", h.learning_rate},
                        {"epochs", h.epochs},
                        {"seed", h.seed},
                        {"tolerance", h.tolerance},
                        {"init_scale", h.init_scale}};
    j["mu"] = m.mu;
    Json people = Json::object(), items = Json::object();
    for (const auto& [p, b] : m.person_intercepts) {
        people[p.str()] = {{"intercept", b}, {"factors", vec_json(m.person_factors.at(p))}};
    }
    for (const auto& [i, b] : m.item_intercepts) {
        items[i.str()] = {{"intercept", b}, {"factors", vec_json(m.item_factors.at(i))}};
    }
    j["people"] = people;
    j["items"] = items;
    j["loss_trace"] = m.loss_trace;
    j["non_converged"] = m.non_converged;
    return j;
}

MFModel mf_model_from_json(const Json& j) {
    return guarded("mf_model", [&] {
        check_header(j, "mf_model");
        MFModel m;
        const auto& h = j.at("hyperparams");
        m.hyperparams.factors = h.at("factors").get<int>();
        m.hyperparams.lambda_intercept = h.at("lambda_intercept").get<double>();
        m.hyperparams.lambda_factor = h.at("lambda_factor").get<double>();
        m.hyperparams.learning_rate = h.at("learning_rate").get<double>();
        m.hyperparams.epochs = h.at("epochs").get<int>();
        m.hyperparams.seed = h.at("seed").get<uint64_t>();
        m.hyperparams.tolerance = h.at("tolerance").get<double>();
        m.hyperparams.init_scale = h.at("init_scale").get<double>();
        m.mu = j.at("mu").get<double>();
        for (const auto& [p, v] : j.at("people").items()) {
            m.person_intercepts[PersonId(p)] = v.at("intercept").get<double>();
            m.person_factors[PersonId(p)] = vec_from(v.at("factors"));
        }
        for (const auto& [i, v] : j.at("items").items()) {
            m.item_intercepts[ItemId(i)] = v.at("intercept").get<double>();
            m.item_factors[ItemId(i)] = vec_from(v.at("factors"));
        }
        m.loss_trace = j.at("loss_trace").get<std::vector<double>>();
        m.non_converged = j.at("non_converged").get<bool>();
        return m;
    });
}

Json to_json(const CredibilityScores& c) {
    Json j = header("credibility");
    Json s = Json::object();
    for (const auto& [p, v] : c.scores) s[p.str()] = v;
    j["scores"] = s;
    j["iterations"] = c.iterations;
    j["residual"] = c.residual;
    return j;
}

CredibilityScores credibility_from_json(const Json& j) {
    return guarded("credibility", [&] {
        check_header(j, "credibility");
        CredibilityScores c;
        for (const auto& [p, v] : j.at("scores").items()) c.scores[PersonId(p)] = v.get<double>();
        c.iterations = j.at("iterations").get<int>();
        c.residual = j.at("residual").get<double>();
        return c;
    });
}

Json to_json(const ValueModel& v) {
    Json j;
    j["weights"] = v.weights;
    j["top_k"] = v.top_k;
    return j;
}

ValueModel value_model_from_json(const Json& j) {
    return guarded("value_model", [&] {
        if (!j.is_object() || !j.contains("weights")) {
            throw Error(ErrorCode::ParseError, "value model needs a 'weights' object");
        }
        ValueModel v;
        v.weights = j.at("weights").get<std::map<std::string, double>>();
        v.top_k = j.value("top_k", 10);
        v.validate();
        return v;
    });
}

Json to_json(const RankedFeed& f) {
    Json j = header("ranked_feed");
    j["viewer"] = f.viewer.str();
    j["value_model_digest"] = f.value_model_digest;
    Json allocs = Json::array();
    for (const auto& a : f.allocations) {
        Json props;
        props["viewer_group"] = a.properties.viewer_group ? Json(*a.properties.viewer_group) : Json(nullptr);
        props["value"] = a.properties.value;
        props["signals"] = a.properties.signals;
        props["realized_vote"] = a.properties.realized_vote ? Json(*a.properties.realized_vote) : Json(nullptr);
        if (a.properties.explored) props["explored"] = true;
        allocs.push_back({{"slot", a.slot}, {"object", a.object.str()}, {"properties", props}});
    }
    j["allocations"] = allocs;
    return j;
}

RankedFeed feed_from_json(const Json& j) {
    return guarded("ranked_feed", [&] {
        check_header(j, "ranked_feed");
        RankedFeed f;
        f.viewer = PersonId(j.at("viewer").get<std::string>());
        f.value_model_digest = j.at("value_model_digest").get<std::string>();
        for (const auto& a : j.at("allocations")) {
            AtomicAllocation alloc;
            alloc.slot = a.at("slot").get<int>();
            alloc.object = ItemId(a.at("object").get<std::string>());
            const auto& p = a.at("properties");
            if (!p.at("viewer_group").is_null()) alloc.properties.viewer_group = p.at("viewer_group").get<GroupId>();
            alloc.properties.value = p.at("value").get<double>();
            alloc.properties.signals = p.at("signals").get<std::map<std::string, double>>();
            if (!p.at("realized_vote").is_null()) alloc.properties.realized_vote = p.at("realized_vote").get<int>();
            alloc.properties.explored = p.value("explored", false);
            f.allocations.push_back(std::move(alloc));
        }
        return f;
    });
}

Json to_json(const RelationMetricReport& r) {
    Json j = header("relation_metric_report");
    j["timestamp"] = r.timestamp;
    j["values"] = r.values;
    j["prevalence"] = r.prevalence;
    j["inputs_digest"] = r.inputs_digest;
    return j;
}

RelationMetricReport report_from_json(const Json& j) {
    return guarded("relation_metric_report", [&] {
        check_header(j, "relation_metric_report");
        RelationMetricReport r;
        r.timestamp = j.at("timestamp").get<int>();
        r.values = j.at("values").get<std::map<std::string, double>>();
        r.prevalence = j.value("prevalence", std::map<std::string, double>{});
        r.inputs_digest = j.at("inputs_digest").get<std::string>();
        return r;
    });
}

Json to_json(const BridgingMetricReport& r) {
    Json j = header("bridging_metric_report");
    j["window"] = {r.t0, r.t1};
    j["deltas"] = r.deltas;
    j["prevalence"] = r.prevalence;
    return j;
}

BridgingMetricReport bridging_report_from_json(const Json& j) {
    return guarded("bridging_metric_report", [&] {
        check_header(j, "bridging_metric_report");
        BridgingMetricReport r;
        r.t0 = j.at("window").at(0).get<int>();
        r.t1 = j.at("window").at(1).get<int>();
        r.deltas = j.at("deltas").get<std::map<std::string, double>>();
        r.prevalence = j.at("prevalence").get<std::map<std::string, double>>();
        return r;
    });
}

Json to_json(const SimConfig& c) {
    Json j = header("sim_config");
    j["n_agents"] = c.n_agents;
    j["n_groups"] = c.n_groups;
    j["opinion_dimension"] = c.opinion_dimension;
    j["faction_separation"] = c.faction_separation;
    j["noise_scale"] = c.noise_scale;
    j["item_noise"] = c.item_noise;
    j["items_per_tick"] = c.items_per_tick;
    j["feed_size"] = c.feed_size;
    j["ticks"] = c.ticks;
    j["value_model"] = to_json(c.value_model);
    j["seed"] = c.seed;
    j["opinion_step"] = c.opinion_step;
    j["affect_step"] = c.affect_step;
    j["pass_probability"] = c.pass_probability;
    j["candidate_window"] = c.candidate_window;
    j["explore_slots"] = c.explore_slots;
    j["author_self_vote"] = c.author_self_vote;
    j["probe_items"] = c.probe_items;
    j["similarity_threshold"] = c.similarity_threshold;
    j["rwc_walks"] = c.rwc_walks;
    j["rwc_steps"] = c.rwc_steps;
    j["repulsion_beyond"] = optional_json(c.repulsion_beyond);
    j["sybil"] = c.sybil ? Json{{"fraction", c.sybil->fraction}, {"target_author", c.sybil->target_author}}
                         : Json(nullptr);
    j["record_feeds"] = c.record_feeds;
    return j;
}

SimConfig sim_config_from_json(const Json& j) {
    return guarded("sim_config", [&] {
        if (!j.is_object()) throw Error(ErrorCode::ParseError, "sim_config: expected an object");
        if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion) {
            throw Error(ErrorCode::ParseError, "sim_config: unsupported schema_version");
        }
        if (!j.contains("seed")) throw Error(ErrorCode::ParseError, "sim_config: 'seed' is required");
        SimConfig c;
        c.n_agents = j.value("n_agents", c.n_agents);
        c.n_groups = j.value("n_groups", c.n_groups);
        c.opinion_dimension = j.value("opinion_dimension", c.opinion_dimension);
        c.faction_separation = j.value("faction_separation", c.faction_separation);
        c.noise_scale = j.value("noise_scale", c.noise_scale);
        c.item_noise = j.value("item_noise", c.item_noise);
        c.items_per_tick = j.value("items_per_tick", c.items_per_tick);
        c.feed_size = j.value("feed_size", c.feed_size);
        c.ticks = j.value("ticks", c.ticks);
        if (j.contains("value_model")) c.value_model = value_model_from_json(j.at("value_model"));
        c.seed = j.at("seed").get<uint64_t>();
        c.opinion_step = j.value("opinion_step", c.opinion_step);
        c.affect_step = j.value("affect_step", c.affect_step);
        c.pass_probability = j.value("pass_probability", c.pass_probability);
        c.candidate_window = j.value("candidate_window", c.candidate_window);
        c.explore_slots = j.value("explore_slots", c.explore_slots);
        c.author_self_vote = j.value("author_self_vote", c.author_self_vote);
        c.probe_items = j.value("probe_items", c.probe_items);
        c.similarity_threshold = j.value("similarity_threshold", c.similarity_threshold);
        c.rwc_walks = j.value("rwc_walks", c.rwc_walks);
        c.rwc_steps = j.value("rwc_steps", c.rwc_steps);
        c.repulsion_beyond = optional_from(j, "repulsion_beyond");
        if (j.contains("sybil") && !j.at("sybil").is_null()) {
            c.sybil = SybilConfig{j.at("sybil").at("fraction").get<double>(),
                                  j.at("sybil").at("target_author").get<std::string>()};
        }
        c.record_feeds = j.value("record_feeds", c.record_feeds);
        c.validate();
        return c;
    });
}

namespace {

Json sim_items_json(const std::vector<SimItem>& items) {
    Json a = Json::array();
    for (const auto& it : items) {
        a.push_back({{"id", it.id.str()}, {"author", it.author.str()}, {"tick", it.tick}, {"position", vec_json(it.position)}});
    }
    return a;
}

std::vector<SimItem> sim_items_from(const Json& a) {
    std::vector<SimItem> items;
    for (const auto& it : a) {
        items.push_back({ItemId(it.at("id").get<std::string>()), vec_from(it.at("position")),
                         PersonId(it.at("author").get<std::string>()), it.at("tick").get<int>()});
    }
    return items;
}

}  // namespace

Json to_json(const SimWorld& w) {
    Json j = header("sim_world");
    j["config"] = to_json(w.config);
    j["tick"] = w.tick;
    Json agents = Json::array();
    for (const auto& a : w.agents) {
        agents.push_back({{"id", a.id.str()},
                          {"group", a.group},
                          {"opinion", vec_json(a.opinion)},
                          {"affect_out", a.affect_out},
                          {"sybil", a.sybil}});
    }
    j["agents"] = agents;
    j["items"] = sim_items_json(w.items);
    j["probes"] = sim_items_json(w.probes);
    Json history = Json::array();
    for (const auto& ev : w.history) {
        history.push_back({ev.tick, ev.person.str(), ev.group, ev.item.str(), to_int(ev.vote)});
    }
    j["history"] = history;
    j["votes"] = vote_matrix_json(w.votes);
    return j;
}

SimWorld world_from_json(const Json& j) {
    return guarded("sim_world", [&] {
        check_header(j, "sim_world");
        SimWorld w;
        w.config = sim_config_from_json(j.at("config"));
        w.tick = j.at("tick").get<int>();
        for (const auto& a : j.at("agents")) {
            Agent agent;
            agent.id = PersonId(a.at("id").get<std::string>());
            agent.group = a.at("group").get<GroupId>();
            agent.opinion = vec_from(a.at("opinion"));
            agent.affect_out = a.at("affect_out").get<double>();
            agent.sybil = a.at("sybil").get<bool>();
            w.agents.push_back(std::move(agent));
        }
        w.items = sim_items_from(j.at("items"));
        w.probes = sim_items_from(j.at("probes"));
        for (const auto& ev : j.at("history")) {
            w.history.push_back({ev.at(0).get<int>(), PersonId(ev.at(1).get<std::string>()), ev.at(2).get<GroupId>(),
                                 ItemId(ev.at(3).get<std::string>()), vote_from_int(ev.at(4).get<int>())});
        }
        w.votes = vote_matrix_from(j.at("votes"));
        return w;
    });
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_signals_csv(std::ostream& out, const std::vector<SignalVector>& signals) {
    out << "item_id,engagement,diverse_approval,gac,mf_intercept,bimodality\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& s : signals) {
        out << s.item.str() << ',' << cell(s.engagement) << ',' << cell(s.diverse_approval) << ','
            << cell(s.group_aware_consensus) << ',' << cell(s.mf_intercept) << ',' << cell(s.bimodality) << '\n';
    }
}

void write_projection_csv(std::ostream& out, const SpaceModel& s, const Clustering& c) {
    out << "person_id,x,y,group\n";
    for (size_t i = 0; i < s.people.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const double x = s.positions.cols() > 0 ? s.positions(r, 0) : 0.0;
        const double y = s.positions.cols() > 1 ? s.positions(r, 1) : 0.0;
        const auto g = c.group_of(s.people[i]);
        out << s.people[i].str() << ',' << format_double(x) << ',' << format_double(y) << ','
            << (g ? std::to_string(*g) : std::string()) << '\n';
    }
}

void write_metrics_csv(std::ostream& out, const std::vector<RelationMetricReport>& reports) {
    out << "tick,metric,value\n";
    for (const auto& r : reports) {
        for (const auto& [name, v] : r.values) out << r.timestamp << ',' << name << ',' << format_double(v) << '\n';
    }
}

void write_affect_csv(std::ostream& out, const std::vector<AffectPoint>& series) {
    out << "tick,group,mean_affect_out\n";
    for (const auto& p : series) {
        for (const auto& [g, v] : p.by_group) out << p.tick << ',' << g << ',' << format_double(v) << '\n';
        out << p.tick << ",all," << format_double(p.overall) << '\n';
    }
}

void write_feeds_jsonl(std::ostream& out, const std::vector<FeedRecord>& feeds) {
    for (const auto& rec : feeds) {
        Json j;
        j["tick"] = rec.tick;
        j["feed"] = to_json(rec.feed);
        out << j.dump() << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <typename Row>
void read_csv(std::istream& in, const std::vector<std::string>& headers, Row&& on_row) {
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            bool ok = false;
            for (const auto& h : headers) ok = ok || line == h;
            if (!ok) throw Error(ErrorCode::ParseError, "line 1: expected header " + headers.front());
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        try {
            on_row(split_csv(line));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed row");
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
    if (!header_seen) throw Error(ErrorCode::EmptyInput, "empty file");
}

}  // namespace

GraphModel read_edges_csv(std::istream& in) {
    GraphModel g;
    read_csv(in, {"source,target,weight", "source,target,weight,sign"}, [&](const std::vector<std::string>& f) {
        if (f.size() < 3 || f.size() > 4) throw Error(ErrorCode::ParseError, "expected 3 or 4 fields");
        size_t used = 0;
        const double w = std::stod(f[2], &used);
        if (used != f[2].size()) throw Error(ErrorCode::ParseError, "bad weight");
        int sign = 1;
        if (f.size() == 4 && !f[3].empty()) {
            if (f[3] == "+" || f[3] == "1" || f[3] == "+1") {
                sign = 1;
            } else if (f[3] == "-" || f[3] == "-1") {
                sign = -1;
            } else {
                throw Error(ErrorCode::ParseError, "sign must be + or -");
            }
        }
        g.add_edge(PersonId(f[0]), PersonId(f[1]), w, sign);
    });
    return g;
}

std::map<PersonId, GroupId> read_groups_csv(std::istream& in) {
    std::map<PersonId, GroupId> labels;
    read_csv(in, {"person_id,group"}, [&](const std::vector<std::string>& f) {
        if (f.size() != 2) throw Error(ErrorCode::ParseError, "expected 2 fields");
        size_t used = 0;
        const int g = std::stoi(f[1], &used);
        if (used != f[1].size()) throw Error(ErrorCode::ParseError, "bad group");
        if (!labels.emplace(PersonId(f[0]), g).second) throw Error(ErrorCode::ParseError, "duplicate person " + f[0]);
    });
    return labels;
}

Authorship read_authorship_csv(std::istream& in) {
    Authorship a;
    read_csv(in, {"item_id,author_id"}, [&](const std::vector<std::string>& f) {
        if (f.size() != 2 || f[0].empty() || f[1].empty()) throw Error(ErrorCode::ParseError, "expected 2 fields");
        if (!a.emplace(ItemId(f[0]), PersonId(f[1])).second) throw Error(ErrorCode::ParseError, "duplicate item " + f[0]);
    });
    return a;
}

}  // namespace bridgerank
