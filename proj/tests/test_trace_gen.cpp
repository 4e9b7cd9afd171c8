// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "foon/evaluation.hpp"
#include "foon/trace.hpp"
#include "foon/trace_gen.hpp"
#include "support/synthetic.hpp"

using synth::obj;
using synth::subgraph;
using synth::unit;

TEST_SUITE("trace_gen") {

TEST_CASE("layout shapes the trace") {
    foon::Subgraph g = synth::shared_container_video("gen01", 3);
    foon::TraceLayout layout;
    layout.frame_width = 640;
    layout.frame_height = 360;
    layout.frames_per_segment = 4;
    foon::VideoTrace t = foon::gen_trace(g, foon::default_taxonomy(), 7, {}, layout);

    CHECK(t.video_id == "gen01");
    CHECK(t.frame_width == 640);
    CHECK(t.frame_height == 360);
    REQUIRE(t.segments.size() == 3);
    int expect = 0;
    for (const foon::ActionSegment& s : t.segments) {
        CHECK(s.start_frame == expect);
        CHECK(s.end_frame == expect + 3);
        REQUIRE(s.frames.size() == 4);
        for (const foon::FrameRecord& f : s.frames) {
            CHECK(f.frame_index == expect);
            REQUIRE(f.hand_center.has_value());
            CHECK((*f.hand_center)[0] == 320.0);
            CHECK((*f.hand_center)[1] == 180.0);
            ++expect;
        }
    }
}

TEST_CASE("clean traces show exactly the input labels on a ring") {
    foon::Subgraph g = synth::shared_container_video("gen02", 2);
    foon::VideoTrace t = foon::gen_trace(g, foon::default_taxonomy(), 3);

    double diag = t.frame_diagonal();
    double ring = 0.05 * diag;
    double side = 0.12 * diag;
    REQUIRE(t.segments.size() == 2);
    for (size_t u = 0; u < t.segments.size(); ++u) {
        std::string ts = std::to_string(u);
        std::vector<std::string> want = {"bowl", "item_" + ts + "_0", "item_" + ts + "_1"};
        for (const foon::FrameRecord& f : t.segments[u].frames) {
            REQUIRE(f.detections.size() == 3);
            for (size_t j = 0; j < 3; ++j) {
                const foon::Detection& d = f.detections[j];
                CHECK(d.label == want[j]);  // sorted, stable across frames
                CHECK(d.score == 0.95);
                CHECK(d.flow_magnitude == 3.0);
                CHECK(d.box.w == doctest::Approx(side).epsilon(1e-12));
                CHECK(d.box.h == doctest::Approx(side).epsilon(1e-12));
                double dist = std::hypot(d.box.center_x() - 640.0, d.box.center_y() - 360.0);
                CHECK(dist == doctest::Approx(ring).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("motion scores peak at the unit's deep class") {
    foon::Subgraph g = synth::shared_container_video("gen03", 3);
    // units 0..2 carry pour, pick_and_place, cook: classes 0, 1, 2
    foon::VideoTrace t = foon::gen_trace(g, foon::default_taxonomy(), 5);
    for (size_t u = 0; u < 3; ++u) {
        const std::array<double, 10>& scores = t.segments[u].motion_scores;
        for (size_t c = 0; c < scores.size(); ++c) {
            if (c == u) CHECK(scores[c] == 0.95);
            else CHECK(scores[c] == doctest::Approx(0.05 / 9).epsilon(1e-12));
        }
    }

    foon::NoiseParams eps;
    eps.motion_eps = 0.4;
    foon::VideoTrace noisy = foon::gen_trace(g, foon::default_taxonomy(), 5, eps);
    CHECK(noisy.segments[0].motion_scores[0] == doctest::Approx(0.6).epsilon(1e-12));

    // a motion outside the taxonomy lands in the catch-all class
    foon::Subgraph odd = subgraph(
        "gen03b", "cake", {unit({obj("egg", "raw")}, "zap", 0, 9, {obj("egg", "zapped")})});
    foon::VideoTrace zt = foon::gen_trace(odd, foon::default_taxonomy(), 5);
    CHECK(zt.segments[0].motion_scores[9] == 0.95);
}

TEST_CASE("generated traces survive the parser round trip") {
    foon::Subgraph g = synth::shared_container_video("gen04", 3);
    foon::NoiseParams noise;
    noise.drop_prob = 0.2;
    noise.spurious_prob = 0.5;
    noise.jitter_px = 25.0;
    foon::VideoTrace t = foon::gen_trace(g, foon::default_taxonomy(), 11, noise);
    foon::VideoTrace back = foon::parse_trace(foon::serialize_trace(t));
    CHECK(back == t);
}

TEST_CASE("equal seeds give identical traces") {
    foon::Subgraph g = synth::shared_container_video("gen05", 2);
    foon::NoiseParams noise;
    noise.drop_prob = 0.3;
    noise.spurious_prob = 0.5;
    noise.jitter_px = 30.0;
    std::string a = foon::serialize_trace(foon::gen_trace(g, foon::default_taxonomy(), 42, noise));
    std::string b = foon::serialize_trace(foon::gen_trace(g, foon::default_taxonomy(), 42, noise));
    CHECK(a == b);
    std::string c = foon::serialize_trace(foon::gen_trace(g, foon::default_taxonomy(), 43, noise));
    CHECK(a != c);

    // zero noise draws nothing from the engine, so the seed cannot matter
    std::string clean1 = foon::serialize_trace(foon::gen_trace(g, foon::default_taxonomy(), 1));
    std::string clean2 = foon::serialize_trace(foon::gen_trace(g, foon::default_taxonomy(), 99));
    CHECK(clean1 == clean2);
}

TEST_CASE("drop noise removes in-action detections") {
    foon::Subgraph g = synth::shared_container_video("gen06", 2);
    foon::NoiseParams all;
    all.drop_prob = 1.0;
    foon::VideoTrace t = foon::gen_trace(g, foon::default_taxonomy(), 8, all);
    for (const foon::ActionSegment& s : t.segments) {
        for (const foon::FrameRecord& f : s.frames) CHECK(f.detections.empty());
    }

    foon::NoiseParams half;
    half.drop_prob = 0.5;
    foon::VideoTrace ht = foon::gen_trace(g, foon::default_taxonomy(), 8, half);
    size_t clean_count = 0;
    size_t noisy_count = 0;
    foon::VideoTrace ct = foon::gen_trace(g, foon::default_taxonomy(), 8);
    for (size_t u = 0; u < 2; ++u) {
        std::set<std::string> inputs;
        for (const foon::ObjectNode& n : g.units[u].inputs) inputs.insert(n.label);
        for (const foon::FrameRecord& f : ht.segments[u].frames) {
            noisy_count += f.detections.size();
            for (const foon::Detection& d : f.detections) CHECK(inputs.count(d.label) == 1);
        }
        for (const foon::FrameRecord& f : ct.segments[u].frames) clean_count += f.detections.size();
    }
    CHECK(noisy_count < clean_count);
    CHECK(noisy_count > 0);
}

TEST_CASE("spurious noise adds one far-away background object per frame") {
    foon::Subgraph g = synth::shared_container_video("gen07", 3);
    foon::NoiseParams noise;
    noise.spurious_prob = 1.0;
    foon::VideoTrace t = foon::gen_trace(g, foon::default_taxonomy(), 13, noise);

    double diag = t.frame_diagonal();
    for (size_t u = 0; u < t.segments.size(); ++u) {
        std::set<std::string> inputs;
        for (const foon::ObjectNode& n : g.units[u].inputs) inputs.insert(n.label);
        for (const foon::FrameRecord& f : t.segments[u].frames) {
            REQUIRE(f.detections.size() == 4);  // 3 in action + 1 spurious
            const foon::Detection& sp = f.detections.back();
            CHECK(inputs.count(sp.label) == 0);
            CHECK(sp.score == 0.6);
            CHECK(sp.flow_magnitude == 0.0);
            double dist = std::hypot(sp.box.center_x() - 640.0, sp.box.center_y() - 360.0);
            CHECK(dist >= 0.4 * diag);
        }
    }

    // a single-unit graph has no background labels to draw from
    foon::Subgraph solo = subgraph(
        "gen07b", "cake", {unit({obj("egg", "raw")}, "crack", 0, 9, {obj("egg", "cracked")})});
    foon::VideoTrace st = foon::gen_trace(solo, foon::default_taxonomy(), 13, noise);
    for (const foon::FrameRecord& f : st.segments[0].frames) CHECK(f.detections.size() == 1);
}

TEST_CASE("jitter moves boxes by at most its amplitude") {
    foon::Subgraph g = synth::shared_container_video("gen08", 2);
    foon::NoiseParams noise;
    noise.jitter_px = 50.0;
    foon::VideoTrace jt = foon::gen_trace(g, foon::default_taxonomy(), 21, noise);
    foon::VideoTrace ct = foon::gen_trace(g, foon::default_taxonomy(), 21);

    bool moved = false;
    for (size_t u = 0; u < jt.segments.size(); ++u) {
        for (size_t f = 0; f < jt.segments[u].frames.size(); ++f) {
            const auto& jd = jt.segments[u].frames[f].detections;
            const auto& cd = ct.segments[u].frames[f].detections;
            REQUIRE(jd.size() == cd.size());
            for (size_t i = 0; i < jd.size(); ++i) {
                CHECK(jd[i].label == cd[i].label);
                CHECK(std::abs(jd[i].box.x - cd[i].box.x) <= 50.0 + 1e-9);
                CHECK(std::abs(jd[i].box.y - cd[i].box.y) <= 50.0 + 1e-9);
                if (jd[i].box.x != cd[i].box.x || jd[i].box.y != cd[i].box.y) moved = true;
            }
        }
    }
    CHECK(moved);
}

TEST_CASE("extreme aspect ratios clamp the box to the frame") {
    foon::Subgraph solo = subgraph(
        "gen09", "cake", {unit({obj("egg", "raw")}, "crack", 0, 9, {obj("egg", "cracked")})});
    foon::TraceLayout layout;
    layout.frame_width = 1000;
    layout.frame_height = 10;
    layout.frames_per_segment = 2;
    foon::VideoTrace t = foon::gen_trace(solo, foon::default_taxonomy(), 2, {}, layout);
    for (const foon::FrameRecord& f : t.segments[0].frames) {
        REQUIRE(f.detections.size() == 1);
        const foon::BoundingBox& b = f.detections[0].box;
        CHECK(b.w == 10.0);
        CHECK(b.h == 10.0);
        CHECK(b.x >= 0.0);
        CHECK(b.y == 0.0);
        CHECK(b.x + b.w <= 1000.0);
    }
}

TEST_CASE("rejects bad parameters") {
    foon::Subgraph g = synth::shared_container_video("gen10", 1);
    const foon::MotionTaxonomy& tax = foon::default_taxonomy();

    foon::Subgraph empty;
    empty.video_id = "e";
    CHECK_THROWS_WITH_AS(foon::gen_trace(empty, tax, 1), "subgraph has no functional units",
                         std::invalid_argument);

    foon::NoiseParams bad;
    bad.drop_prob = 1.5;
    CHECK_THROWS_WITH_AS(foon::gen_trace(g, tax, 1, bad), "drop_prob must be in [0, 1]",
                         std::invalid_argument);
    bad = {};
    bad.jitter_px = -1;
    CHECK_THROWS_WITH_AS(foon::gen_trace(g, tax, 1, bad), "jitter_px must be non-negative",
                         std::invalid_argument);

    foon::TraceLayout zero;
    zero.frames_per_segment = 0;
    CHECK_THROWS_WITH_AS(foon::gen_trace(g, tax, 1, {}, zero),
                         "frames_per_segment must be at least 1", std::invalid_argument);
    foon::TraceLayout flat;
    flat.frame_height = 0;
    CHECK_THROWS_WITH_AS(foon::gen_trace(g, tax, 1, {}, flat),
                         "frame dimensions must be positive", std::invalid_argument);
}

TEST_CASE("noise degrades evaluation, clean traces do not") {
    foon::PipelineConfig cfg;
    const foon::MotionTaxonomy& tax = foon::default_taxonomy();
    foon::NoiseParams heavy;
    heavy.drop_prob = 0.75;
    heavy.spurious_prob = 0.9;
    heavy.jitter_px = 150.0;
    heavy.motion_eps = 0.5;

    bool any_degraded = false;
    for (std::uint64_t seed : {100u, 200u, 300u, 400u, 500u}) {
        foon::EvalResult clean =
            foon::leave_one_out_serial(synth::class_corpus(2, 2, 3, {}, seed), cfg, tax);
        CHECK(clean.accuracy == 1.0);
        foon::EvalResult noisy =
            foon::leave_one_out_serial(synth::class_corpus(2, 2, 3, heavy, seed), cfg, tax);
        CHECK(noisy.accuracy <= clean.accuracy);
        if (noisy.accuracy < 1.0) any_degraded = true;
    }
    CHECK(any_degraded);
}

}  // TEST_SUITE("trace_gen")
