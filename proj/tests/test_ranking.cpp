#include <doctest.h>

#include "bridgerank/ranking.hpp"
#include "bridgerank/serialize.hpp"
#include "support.hpp"

using namespace bridgerank;
using namespace testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::IoError;
}

std::vector<ItemId> order_of(const RankedFeed& f) {
    std::vector<ItemId> out;
    for (const auto& a : f.allocations) out.push_back(a.object);
    return out;
}

ValueModel weights(std::map<std::string, double> w, int top_k = 10) {
    ValueModel v;
    v.weights = std::move(w);
    v.top_k = top_k;
    return v;
}

const std::vector<std::string> kViewers{"u1", "u2", "u3", "u4", "u5", "u6"};

}  // namespace

TEST_SUITE("ranking") {

TEST_CASE("engagement prediction") {
    const auto m = f1();
    const auto c = f1_groups();
    CHECK(std::abs(predict_engagement(PersonId("u1"), ItemId("i_partisan"), m, c) - 0.8) < 1e-12);
    CHECK(std::abs(predict_engagement(PersonId("u4"), ItemId("i_partisan"), m, c) - 0.2) < 1e-12);
    CHECK(std::abs(predict_engagement(PersonId("u1"), ItemId("i_bridge"), m, c) - 0.6) < 1e-12);

    // an item nobody in the viewer's group has seen gets the prior
    VoteMatrix m2 = m;
    m2.add(PersonId("u4"), ItemId("i_new"), Vote::Agree);
    CHECK(predict_engagement(PersonId("u1"), ItemId("i_new"), m2, c) == 0.5);
    CHECK(code_of([&] { predict_engagement(PersonId("ghost"), ItemId("i_bridge"), m, c); }) ==
          ErrorCode::UnknownViewer);
    CHECK(code_of([&] { predict_engagement(PersonId("u1"), ItemId("nope"), m, c); }) == ErrorCode::UnknownItem);
}

TEST_CASE("score allocation") {
    SignalVector s;
    s.item = ItemId("x");
    s.engagement = 0.6;
    s.group_aware_consensus = 0.36;
    CHECK(std::abs(score_allocation(s, bridging_model()) - 0.96) < 1e-12);
    CHECK(score_allocation(s, engagement_only_model()) == 0.6);
    CHECK(code_of([&] { score_allocation(s, weights({{"mf_intercept", 1.0}})); }) == ErrorCode::MissingSignal);
    // zero weight on an absent signal is fine
    CHECK(score_allocation(s, weights({{"engagement", 1.0}, {"mf_intercept", 0.0}})) == 0.6);
    CHECK(std::abs(score_allocation(s, weights({{"engagement", 2.0}, {"gac", 2.0}})) - 1.92) < 1e-12);
}

TEST_CASE("value model validation and digest") {
    CHECK_NOTHROW(bridging_model().validate());
    CHECK(code_of([] { weights({{"clicks", 1.0}}).validate(); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { weights({{"engagement", 0.0}}).validate(); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { weights({{"engagement", 1.0}}, 0).validate(); }) == ErrorCode::InvalidArgument);
    CHECK(bridging_model().digest() == bridging_model().digest());
    CHECK(bridging_model().digest() != engagement_only_model().digest());
    CHECK(bridging_model().digest().size() == 64);
}

TEST_CASE("F1 engagement vs bridging contrast") {
    const auto m = f1();
    const auto c = f1_groups();
    const auto eng = RankingModels::build(m, c, engagement_only_model());
    const auto bri = RankingModels::build(m, c, bridging_model());
    const auto& items = m.items();
    for (const auto& name : kViewers) {
        const PersonId viewer(name);
        const auto fe = rank(viewer, items, eng, engagement_only_model());
        const auto fb = rank(viewer, items, bri, bridging_model());
        const bool group_a = *c.group_of(viewer) == 0;
        CHECK(fe.allocations[0].object == ItemId(group_a ? "i_partisan" : "i_partisan_b"));
        CHECK(fb.allocations[0].object == ItemId("i_bridge"));
        CHECK(fe.allocations.back().object != ItemId("i_bridge"));
    }
    // u1 on i_bridge under {engagement:1, gac:1}
    const auto fb = rank(PersonId("u1"), items, bri, bridging_model());
    CHECK(std::abs(fb.allocations[0].properties.value - 0.96) < 1e-12);
    CHECK(std::abs(fb.allocations[0].properties.signals.at("gac") - 0.36) < 1e-12);
    CHECK(std::abs(fb.allocations[0].properties.signals.at("engagement") - 0.6) < 1e-12);
    CHECK(fb.allocations[0].properties.viewer_group == 0);
    CHECK(fb.value_model_digest == bridging_model().digest());
}

TEST_CASE("gac-only model orders F1 for any viewer") {
    const auto m = f1();
    const auto c = f1_groups();
    const auto v = weights({{"gac", 1.0}});
    const auto models = RankingModels::build(m, c, v);
    for (const auto& name : kViewers) {
        const auto f = rank(PersonId(name), m.items(), models, v);
        REQUIRE(f.allocations.size() == 4);
        CHECK(f.allocations[0].object == ItemId("i_bridge"));
        CHECK(f.allocations[3].object == ItemId("i_unpopular"));
        for (size_t i = 0; i < 4; ++i) CHECK(f.allocations[i].slot == static_cast<int>(i + 1));
        for (size_t i = 1; i < 4; ++i)
            CHECK(f.allocations[i - 1].properties.value >= f.allocations[i].properties.value);
        // equal scores fall back to id order
        CHECK(f.allocations[1].object == ItemId("i_partisan"));
        CHECK(f.allocations[2].object == ItemId("i_partisan_b"));
    }
}

TEST_CASE("small candidate sets and top_k") {
    const auto m = f1();
    const auto c = f1_groups();
    const auto models = RankingModels::build(m, c, bridging_model());
    const std::vector<ItemId> one{ItemId("i_unpopular")};
    const auto f = rank(PersonId("u2"), one, models, bridging_model());
    REQUIRE(f.allocations.size() == 1);
    CHECK(f.allocations[0].slot == 1);
    const auto f2 = rank(PersonId("u2"), m.items(), models, bridging_model(2));
    CHECK(f2.allocations.size() == 2);
    const std::vector<ItemId> dup{ItemId("i_bridge"), ItemId("i_bridge"), ItemId("i_unpopular")};
    CHECK(rank(PersonId("u2"), dup, models, bridging_model()).allocations.size() == 2);
    const std::vector<ItemId> bad{ItemId("zzz")};
    CHECK(code_of([&] { rank(PersonId("u2"), bad, models, bridging_model()); }) == ErrorCode::UnknownItem);
    CHECK(code_of([&] { rank(PersonId("nobody"), m.items(), models, bridging_model()); }) ==
          ErrorCode::UnknownViewer);
}

TEST_CASE("positive weight scaling never changes feed order") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<VoteRecord> recs;
        std::map<PersonId, GroupId> labels;
        for (int p = 0; p < 12; ++p) {
            const PersonId id("p" + std::to_string(p));
            labels[id] = p % 2;
            for (int i = 0; i < 8; ++i)
                if (rng.uniform() < 0.7)
                    recs.push_back({id, ItemId("i" + std::to_string(i)), static_cast<int>(rng.index(3)) - 1});
        }
        const auto m = build_vote_matrix(recs);
        std::map<PersonId, GroupId> used;
        for (const auto& p : m.people()) used[p] = labels.at(p);
        const auto c = clustering_from_labels(used);
        const auto v = weights({{"engagement", rng.uniform()},
                                {"gac", rng.uniform()},
                                {"diverse_approval", rng.uniform()},
                                {"mf_intercept", rng.uniform() - 0.5}});
        const auto models = RankingModels::build(m, c, v);
        for (double k : {2.0, 1e-3, 7.3, 1e4}) {
            ValueModel scaled = v;
            for (auto& [_, w] : scaled.weights) w *= k;
            for (const auto& p : m.people())
                CHECK(order_of(rank(p, m.items(), models, v)) == order_of(rank(p, m.items(), models, scaled)));
        }
    }
}

TEST_CASE("zero bridging weights reduce to the engagement baseline") {
    const auto m = build_vote_matrix(f2_records(3));
    std::map<PersonId, GroupId> labels;
    for (const auto& p : m.people()) labels[p] = f2_blob(p) ? 0 : 1;
    const auto c = clustering_from_labels(labels);
    const auto zero = weights({{"engagement", 1.0}, {"gac", 0.0}, {"diverse_approval", 0.0}, {"mf_intercept", 0.0}});
    const auto base = engagement_only_model();
    const auto mz = RankingModels::build(m, c, zero);
    const auto mb = RankingModels::build(m, c, base);
    for (const auto& p : m.people()) {
        const auto fz = rank(p, m.items(), mz, zero);
        const auto fb = rank(p, m.items(), mb, base);
        CHECK(order_of(fz) == order_of(fb));
        for (size_t i = 0; i < fz.allocations.size(); ++i)
            CHECK(fz.allocations[i].properties.value == fb.allocations[i].properties.value);
    }
}

TEST_CASE("feeds serialize byte-identically") {
    const auto m = f1();
    const auto c = f1_groups();
    const auto a = RankingModels::build(m, c, bridging_model());
    const auto b = RankingModels::build(m, c, bridging_model());
    for (const auto& name : kViewers) {
        const auto fa = rank(PersonId(name), m.items(), a, bridging_model());
        const auto fb = rank(PersonId(name), m.items(), b, bridging_model());
        CHECK(to_json(fa).dump() == to_json(fb).dump());
        CHECK(to_json(feed_from_json(to_json(fa))).dump() == to_json(fa).dump());
    }
    const auto table = feed_table(rank(PersonId("u1"), m.items(), a, bridging_model()));
    CHECK(table.find("i_bridge") != std::string::npos);
}

TEST_CASE("aggregate-only models serve the simulator") {
    const auto m = f1();
    const auto c = f1_groups();
    const auto models = RankingModels::from_aggregate(aggregate(m, c), c);
    const auto f = rank(PersonId("u5"), m.items(), models, bridging_model());
    CHECK(f.allocations[0].object == ItemId("i_bridge"));
    CHECK(code_of([&] { rank(PersonId("u5"), m.items(), models, weights({{"mf_intercept", 1.0}})); }) ==
          ErrorCode::MissingSignal);
}

}
