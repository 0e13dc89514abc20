#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "bridgerank/credibility.hpp"
#include "bridgerank/digest.hpp"
#include "bridgerank/metrics.hpp"
#include "bridgerank/ranking.hpp"
#include "bridgerank/relation_model.hpp"
#include "bridgerank/serialize.hpp"
#include "bridgerank/signals.hpp"
#include "bridgerank/simulation.hpp"
#include "bridgerank/vote_matrix.hpp"

namespace fs = std::filesystem;

namespace bridgerank::cli {

namespace {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
    const char* env = std::getenv("BRIDGERANK_LOG");
    if (!env) return Level::Warn;
    const std::string v(env);
    if (v == "error") return Level::Error;
    if (v == "info") return Level::Info;
    if (v == "debug") return Level::Debug;
    return Level::Warn;
}

class Logger {
  public:
    explicit Logger(std::ostream& err) : err_(err), level_(log_level()) {}
    void log(Level level, const std::string& msg) {
        static const char* names[] = {"error", "warn", "info", "debug"};
        if (level <= level_) err_ << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
    }

  private:
    std::ostream& err_;
    Level level_;
};

struct Input {
    std::string path;
    std::string content;
};

Input read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {path, ss.str()};
}

Json parse_json(const Input& in) {
    try {
        return Json::parse(in.content);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, in.path + ": " + e.what());
    }
}

// Records what a command read and wrote. Written last as manifest.json.
class Manifest {
  public:
    Manifest(std::string command, fs::path out_dir)
        : command_(std::move(command)), out_dir_(std::move(out_dir)), started_(std::chrono::system_clock::now()) {}

    void input(const Input& in) { inputs_[in.path] = sha256_hex(in.content); }
    void config(Json c) { config_ = std::move(c); }
    void seed(uint64_t s) { seed_ = s; }

    void write_text(const std::string& name, const std::string& body) {
        const fs::path p = out_dir_ / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + p.string());
        f << body;
        // relative to the output directory so reruns elsewhere compare equal
        outputs_.push_back(fs::path(name).generic_string());
    }

    void finish() {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["kind"] = "run_manifest";
        j["command"] = command_;
        j["config"] = config_;
        j["config_digest"] = sha256_hex(config_.dump());
        j["inputs"] = inputs_;
        j["seed"] = seed_;
        j["tool_version"] = kToolVersion;
        j["outputs"] = outputs_;
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(started_);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        j["wall_clock"] = {{"started_utc", stamp},
                           {"elapsed_seconds", std::chrono::duration<double>(now - started_).count()}};
        const fs::path p = out_dir_ / "manifest.json";
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + p.string());
        f << j.dump(2) << "\n";
    }

  private:
    std::string command_;
    fs::path out_dir_;
    std::chrono::system_clock::time_point started_;
    Json config_ = Json::object();
    std::map<std::string, std::string> inputs_;
    uint64_t seed_ = 0;
    std::vector<std::string> outputs_;
};

struct Globals {
    uint64_t seed = 0;
    std::string config;
    std::string out = ".";
    std::string format;
};

fs::path prepare_out(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + out + ": " + ec.message());
    return fs::path(out);
}

// Options file for non-simulate commands (flags override its keys).
Json load_options(const Globals& g, Manifest& manifest) {
    if (g.config.empty()) return Json::object();
    const auto in = read_input(g.config);
    manifest.input(in);
    Json j = parse_json(in);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, g.config + ": expected a JSON object");
    return j;
}

template <typename T>
T pick(const CLI::Option* flag, const T& flag_value, const Json& options, const char* key, const T& fallback) {
    if (flag && flag->count() > 0) return flag_value;
    if (options.contains(key)) {
        try {
            return options.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, std::string("option '") + key + "': " + e.what());
        }
    }
    return fallback;
}

VoteMatrix load_votes(const std::string& path, Manifest& manifest) {
    const auto in = read_input(path);
    manifest.input(in);
    std::istringstream ss(in.content);
    try {
        return read_vote_matrix_csv(ss);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.detail());
    }
}

Clustering load_clustering(const std::string& clustering_path, const std::string& groups_path, Manifest& manifest) {
    if (!clustering_path.empty() && !groups_path.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give either --clustering or --groups, not both");
    }
    if (!clustering_path.empty()) {
        const auto in = read_input(clustering_path);
        manifest.input(in);
        return clustering_from_json(parse_json(in));
    }
    if (!groups_path.empty()) {
        const auto in = read_input(groups_path);
        manifest.input(in);
        std::istringstream ss(in.content);
        try {
            return clustering_from_labels(read_groups_csv(ss));
        } catch (const Error& e) {
            throw Error(e.code(), groups_path + ": " + e.detail());
        }
    }
    throw Error(ErrorCode::InvalidArgument, "a clustering is required (--clustering or --groups)");
}

// Every labeled person must appear in the votes.
void check_people(const VoteMatrix& m, const Clustering& c) {
    for (const auto& [p, _] : c.labels) {
        if (!m.person_index(p)) throw Error(ErrorCode::UnknownPerson, p.str() + " is in the clustering but has no votes");
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct ClusterArgs {
    std::string votes;
    int k_min = 2;
    int k_max = 5;
    int dimension = 2;
    CLI::Option* k_min_opt = nullptr;
    CLI::Option* k_max_opt = nullptr;
    CLI::Option* dim_opt = nullptr;
};

int cmd_cluster(const Globals& g, const ClusterArgs& a, std::ostream& out, Logger& log) {
    Manifest manifest("cluster", prepare_out(g.out));
    const Json options = load_options(g, manifest);
    ClusterOptions opts;
    opts.k_range.min = pick(a.k_min_opt, a.k_min, options, "k_min", 2);
    opts.k_range.max = pick(a.k_max_opt, a.k_max, options, "k_max", 5);
    opts.restarts = options.value("restarts", opts.restarts);
    opts.seed = g.seed;
    const int d = pick(a.dim_opt, a.dimension, options, "dimension", 2);
    manifest.config({{"k_min", opts.k_range.min}, {"k_max", opts.k_range.max}, {"restarts", opts.restarts},
                     {"dimension", d}});
    manifest.seed(g.seed);

    const VoteMatrix m = load_votes(a.votes, manifest);
    const SpaceModel space = pca_project(m, d);
    if (space.degenerate) log.log(Level::Warn, "vote matrix has zero variance; positions are all at the origin");
    const Clustering c = cluster_people(space, opts);
    if (c.degenerate) log.log(Level::Warn, "no cluster structure; clustering flagged degenerate");

    manifest.write_text("clustering.json", dump(to_json(c)));
    manifest.write_text("space_model.json", dump(to_json(space)));
    std::ostringstream proj;
    write_projection_csv(proj, space, c);
    manifest.write_text("projection.csv", proj.str());
    manifest.finish();
    out << "k=" << c.k << " silhouette=" << format_double(c.silhouette) << "\n";
    return 0;
}

struct ScoreArgs {
    std::string votes, clustering, groups, authorship;
    bool no_mf = false;
    double damping = 0.85;
    CLI::Option* damping_opt = nullptr;
    CLI::Option* no_mf_opt = nullptr;
};

int cmd_score(const Globals& g, const ScoreArgs& a, std::ostream& out, Logger& log) {
    Manifest manifest("score", prepare_out(g.out));
    const Json options = load_options(g, manifest);
    const bool include_mf = !pick(a.no_mf_opt, a.no_mf, options, "no_mf", false);
    const double damping = pick(a.damping_opt, a.damping, options, "damping", 0.85);
    const std::string format = g.format.empty() ? "csv" : g.format;
    manifest.config({{"include_mf", include_mf},
                     {"damping", damping},
                     {"credibility_max_iterations", options.value("credibility_max_iterations", 10000)},
                     {"format", format}});
    manifest.seed(g.seed);

    VoteMatrix m = load_votes(a.votes, manifest);
    const Clustering c = load_clustering(a.clustering, a.groups, manifest);
    check_people(m, c);

    std::optional<Authorship> authorship;
    if (!a.authorship.empty()) {
        const auto in = read_input(a.authorship);
        manifest.input(in);
        std::istringstream ss(in.content);
        authorship = read_authorship_csv(ss);
        // Authored items nobody voted on still get a row.
        for (const auto& [item, _] : *authorship) {
            if (!m.has_item(item)) {
                log.log(Level::Info, "item " + item.str() + " has no votes");
                m.add_item(item);
            }
        }
    }

    SignalOptions opts;
    opts.include_mf = include_mf;
    opts.seed = g.seed;
    const auto signals = compute_signals(m, c, opts);
    if (format == "json") {
        manifest.write_text("signals.json", dump(to_json(signals)));
    } else {
        std::ostringstream csv;
        write_signals_csv(csv, signals);
        manifest.write_text("signals.csv", csv.str());
    }
    if (authorship) {
        CredibilityOptions copts;
        copts.damping = damping;
        copts.max_iterations = options.value("credibility_max_iterations", copts.max_iterations);
        manifest.write_text("credibility.json", dump(to_json(credibility_scores(m, c, *authorship, copts))));
    }
    manifest.finish();
    out << signals.size() << " items scored\n";
    return 0;
}

struct RankArgs {
    std::string votes, clustering, groups, value_model;
    std::vector<std::string> viewers;
    std::vector<std::string> candidates;
    int top_k = 0;
};

int cmd_rank(const Globals& g, const RankArgs& a, std::ostream& out, Logger& log) {
    Manifest manifest("rank", prepare_out(g.out));
    load_options(g, manifest);
    const std::string format = g.format.empty() ? "json" : g.format;
    const auto vm_in = read_input(a.value_model);
    manifest.input(vm_in);
    ValueModel v = value_model_from_json(parse_json(vm_in));
    if (a.top_k > 0) v.top_k = a.top_k;
    v.validate();
    manifest.config({{"value_model", to_json(v)}, {"format", format}});
    manifest.seed(g.seed);

    const VoteMatrix m = load_votes(a.votes, manifest);
    const Clustering c = load_clustering(a.clustering, a.groups, manifest);
    check_people(m, c);

    std::vector<ItemId> candidates;
    if (a.candidates.empty()) {
        candidates = m.items();
    } else {
        for (const auto& s : a.candidates) {
            ItemId id(s);
            if (!m.has_item(id)) throw Error(ErrorCode::UnknownItem, s);
            candidates.push_back(id);
        }
    }
    if (candidates.empty()) throw Error(ErrorCode::EmptyInput, "no candidates");

    std::vector<PersonId> viewers;
    if (a.viewers.empty()) {
        viewers = m.people();
        std::sort(viewers.begin(), viewers.end());
    } else {
        for (const auto& s : a.viewers) viewers.emplace_back(s);
    }
    log.log(Level::Info, "ranking " + std::to_string(candidates.size()) + " candidates for " +
                             std::to_string(viewers.size()) + " viewers");

    const RankingModels models = RankingModels::build(m, c, v, g.seed);
    Json feeds = Json::array();
    std::ostringstream csv;
    csv << "viewer,slot,item_id,value\n";
    for (const auto& viewer : viewers) {
        const RankedFeed feed = rank(viewer, candidates, models, v);
        out << feed_table(feed) << "\n";
        feeds.push_back(to_json(feed));
        for (const auto& alloc : feed.allocations) {
            csv << viewer.str() << ',' << alloc.slot << ',' << alloc.object.str() << ','
                << format_double(alloc.properties.value) << '\n';
        }
    }
    if (format == "csv") {
        manifest.write_text("feeds.csv", csv.str());
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["kind"] = "ranked_feeds";
        j["feeds"] = feeds;
        manifest.write_text("feeds.json", dump(j));
    }
    manifest.finish();
    return 0;
}

struct MetricsArgs {
    std::string edges, groups, votes, clustering;
    double tau = 0.0;
    int walks = 10000;
    int steps = 10;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* walks_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
};

int cmd_metrics(const Globals& g, const MetricsArgs& a, std::ostream& out, Logger& log) {
    Manifest manifest("metrics", prepare_out(g.out));
    const Json options = load_options(g, manifest);
    const std::string format = g.format.empty() ? "json" : g.format;
    ReportOptions ropts;
    ropts.rwc.walks = pick(a.walks_opt, a.walks, options, "walks", 10000);
    ropts.rwc.steps = pick(a.steps_opt, a.steps, options, "steps", 10);
    ropts.rwc.seed = g.seed;
    const double tau = pick(a.tau_opt, a.tau, options, "tau", 0.0);

    GraphModel graph;
    Clustering c;
    if (!a.edges.empty()) {
        if (!a.votes.empty()) throw Error(ErrorCode::InvalidArgument, "give either --edges or --votes");
        const auto in = read_input(a.edges);
        manifest.input(in);
        std::istringstream ss(in.content);
        try {
            graph = read_edges_csv(ss);
        } catch (const Error& e) {
            throw Error(e.code(), a.edges + ": " + e.detail());
        }
        c = load_clustering(a.clustering, a.groups, manifest);
        for (const auto& n : graph.nodes()) {
            if (!c.group_of(n)) throw Error(ErrorCode::UnlabeledPerson, n.str());
        }
        manifest.config({{"walks", ropts.rwc.walks}, {"steps", ropts.rwc.steps}, {"format", format}});
    } else if (!a.votes.empty()) {
        const VoteMatrix m = load_votes(a.votes, manifest);
        c = load_clustering(a.clustering, a.groups, manifest);
        check_people(m, c);
        graph = vote_similarity_graph(m, tau);
        manifest.config(
            {{"tau", tau}, {"walks", ropts.rwc.walks}, {"steps", ropts.rwc.steps}, {"format", format}});
    } else {
        throw Error(ErrorCode::InvalidArgument, "metrics needs --edges or --votes");
    }
    manifest.seed(g.seed);

    RelationMetricReport report = relation_report(0, graph, c, ropts);
    try {
        report.values["balance"] = balance_fraction(graph);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoTriangles) throw;
        log.log(Level::Info, "no triangles; balance omitted");
    }
    if (format == "csv") {
        std::ostringstream csv;
        write_metrics_csv(csv, {report});
        manifest.write_text("metrics.csv", csv.str());
    } else {
        manifest.write_text("report.json", dump(to_json(report)));
    }
    manifest.finish();
    for (const auto& [name, value] : report.values) out << name << "=" << format_double(value) << "\n";
    return 0;
}

struct SimulateArgs {
    std::optional<int> ticks;
    std::string policy;
    int sweep = 0;
};

void write_run(const SimConfig& cfg, const fs::path& dir, const std::vector<Input>& inputs, Logger* log) {
    Manifest manifest("simulate", prepare_out(dir.string()));
    for (const auto& in : inputs) manifest.input(in);
    manifest.config(to_json(cfg));
    manifest.seed(cfg.seed);
    if (log) log->log(Level::Info, "simulating seed " + std::to_string(cfg.seed));
    const SimRun r = run(cfg);

    std::ostringstream metrics, affect, feeds;
    write_metrics_csv(metrics, r.reports);
    write_affect_csv(affect, r.affect);
    write_feeds_jsonl(feeds, r.feeds);
    manifest.write_text("metrics.csv", metrics.str());
    manifest.write_text("affect.csv", affect.str());
    manifest.write_text("feeds.jsonl", feeds.str());
    manifest.write_text("world_final.json", dump(to_json(r.final_world)));
    Json deltas;
    deltas["schema_version"] = kSchemaVersion;
    deltas["kind"] = "bridging_series";
    deltas["per_tick"] = Json::array();
    for (const auto& d : r.deltas) deltas["per_tick"].push_back(to_json(d));
    deltas["final"] = r.final_delta ? to_json(*r.final_delta) : Json(nullptr);
    manifest.write_text("deltas.json", dump(deltas));
    manifest.finish();
}

int cmd_simulate(const Globals& g, const SimulateArgs& a, bool seed_given, std::ostream& out, Logger& log) {
    if (g.config.empty()) throw Error(ErrorCode::InvalidArgument, "simulate needs --config");
    const auto in = read_input(g.config);
    Json j = parse_json(in);
    if (seed_given && j.is_object()) j["seed"] = g.seed;
    SimConfig cfg = sim_config_from_json(j);
    if (a.ticks) cfg.ticks = *a.ticks;
    if (a.policy == "engagement") {
        cfg.value_model = engagement_only_model(cfg.feed_size);
    } else if (a.policy == "bridging") {
        cfg.value_model = bridging_model(cfg.feed_size);
    } else if (!a.policy.empty()) {
        throw Error(ErrorCode::InvalidArgument, "policy must be engagement or bridging");
    }
    cfg.validate();

    if (a.sweep <= 0) {
        write_run(cfg, fs::path(g.out), {in}, &log);
        out << "simulated " << cfg.ticks << " ticks, seed " << cfg.seed << "\n";
        return 0;
    }

    // Independent seeds run concurrently into their own directories.
    std::vector<std::thread> workers;
    std::vector<std::optional<Error>> failures(static_cast<size_t>(a.sweep));
    std::mutex log_mutex;
    const unsigned width = std::max(1u, std::thread::hardware_concurrency());
    for (int s = 0; s < a.sweep; s += static_cast<int>(width)) {
        for (int i = s; i < std::min(a.sweep, s + static_cast<int>(width)); ++i) {
            workers.emplace_back([&, i] {
                SimConfig c = cfg;
                c.seed = cfg.seed + static_cast<uint64_t>(i);
                try {
                    write_run(c, fs::path(g.out) / ("seed_" + std::to_string(c.seed)), {in}, nullptr);
                } catch (const Error& e) {
                    failures[static_cast<size_t>(i)] = e;
                }
                std::lock_guard lock(log_mutex);
                log.log(Level::Info, "seed " + std::to_string(c.seed) + " done");
            });
        }
        for (auto& w : workers) w.join();
        workers.clear();
    }
    for (const auto& f : failures) {
        if (f) throw *f;
    }
    Manifest manifest("simulate --sweep", prepare_out(g.out));
    manifest.input(in);
    manifest.config(to_json(cfg));
    manifest.seed(cfg.seed);
    Json runs = Json::array();
    for (int i = 0; i < a.sweep; ++i) runs.push_back("seed_" + std::to_string(cfg.seed + static_cast<uint64_t>(i)));
    Json index;
    index["runs"] = runs;
    manifest.write_text("sweep.json", dump(index));
    manifest.finish();
    out << "simulated " << a.sweep << " seeds\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Logger log(err);
    CLI::App app{"Bridging-based ranking engine and policy simulator", "bridgerank"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Globals g;
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();
    app.add_option("--config", g.config, "JSON configuration file");
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--format", g.format, "primary output format")->check(CLI::IsMember({"json", "csv"}));
    app.fallthrough();

    ClusterArgs ca;
    auto* cluster = app.add_subcommand("cluster", "PCA projection and k-means opinion groups");
    cluster->add_option("--votes", ca.votes, "votes CSV")->required();
    ca.k_min_opt = cluster->add_option("--k-min", ca.k_min, "smallest k");
    ca.k_max_opt = cluster->add_option("--k-max", ca.k_max, "largest k");
    ca.dim_opt = cluster->add_option("--dimension", ca.dimension, "PCA dimension");

    ScoreArgs sa;
    auto* score = app.add_subcommand("score", "per-item bridging signals");
    score->add_option("--votes", sa.votes, "votes CSV")->required();
    score->add_option("--clustering", sa.clustering, "clustering JSON");
    score->add_option("--groups", sa.groups, "group CSV person_id,group");
    score->add_option("--authorship", sa.authorship, "authorship CSV item_id,author_id (adds credibility.json)");
    sa.no_mf_opt = score->add_flag("--no-mf", sa.no_mf, "skip matrix factorization");
    sa.damping_opt = score->add_option("--damping", sa.damping, "credibility damping");

    RankArgs ra;
    auto* rank_cmd = app.add_subcommand("rank", "ranked feeds under a value model");
    rank_cmd->add_option("--votes", ra.votes, "votes CSV")->required();
    rank_cmd->add_option("--clustering", ra.clustering, "clustering JSON");
    rank_cmd->add_option("--groups", ra.groups, "group CSV person_id,group");
    rank_cmd->add_option("--value-model", ra.value_model, "value model JSON")->required();
    rank_cmd->add_option("--viewer", ra.viewers, "viewer id (repeatable; default all people)");
    rank_cmd->add_option("--candidates", ra.candidates, "candidate item ids (default all items)")->delimiter(',');
    rank_cmd->add_option("--top-k", ra.top_k, "override the value model's top_k");

    MetricsArgs ma;
    auto* metrics = app.add_subcommand("metrics", "relation metrics for a graph");
    metrics->add_option("--edges", ma.edges, "edge CSV source,target,weight[,sign]");
    metrics->add_option("--votes", ma.votes, "votes CSV (builds the similarity graph)");
    metrics->add_option("--groups", ma.groups, "group CSV person_id,group");
    metrics->add_option("--clustering", ma.clustering, "clustering JSON");
    ma.tau_opt = metrics->add_option("--tau", ma.tau, "similarity threshold");
    ma.walks_opt = metrics->add_option("--walks", ma.walks, "random walks per group");
    ma.steps_opt = metrics->add_option("--steps", ma.steps, "steps per walk");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "agent-based policy simulation");
    simulate->add_option("--ticks", sim.ticks, "override the config's tick count");
    simulate->add_option("--policy", sim.policy, "engagement or bridging (overrides value_model)");
    simulate->add_option("--sweep", sim.sweep, "run this many consecutive seeds into seed_<n>/");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cluster) return cmd_cluster(g, ca, out, log);
        if (*score) return cmd_score(g, sa, out, log);
        if (*rank_cmd) return cmd_rank(g, ra, out, log);
        if (*metrics) return cmd_metrics(g, ma, out, log);
        if (*simulate) return cmd_simulate(g, sim, seed_opt->count() > 0, out, log);
    } catch (const Error& e) {
        log.log(Level::Error, e.what());
        return is_numerical(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        log.log(Level::Error, e.what());
        return 2;
    }
    return 2;
}

}  // namespace bridgerank::cli
