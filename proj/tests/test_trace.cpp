// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <string>

#include <doctest.h>

#include "foon/graph_io.hpp"
#include "foon/trace.hpp"
#include "support/proc.hpp"
#include "support/synthetic.hpp"

using synth::det;
using synth::frame;
using synth::segment;

namespace {

foon::VideoTrace sample_trace() {
    foon::VideoTrace t;
    t.video_id = "v1";
    t.frame_width = 640;
    t.frame_height = 360;
    std::array<double, 10> scores{};
    scores[0] = 0.25;
    scores[3] = 0.75;
    t.segments.push_back(segment(
        0, 5,
        {frame(0, {{320.0, 180.0}}, {det("egg", 10, 10, 40, 30, 1.5), det("bowl", 100, 50, 60, 60, 0.0)}),
         frame(3, std::nullopt, {det("egg", 12, 11, 40, 30, 2.0)}), frame(5, {{300.0, 170.0}}, {})},
        scores));
    t.segments.push_back(segment(6, 9, {frame(7, {{10.0, 10.0}}, {det("pan", 0, 0, 50, 50, 0.25)})}));
    return t;
}

std::string check_trace_error(const std::string& json, const std::string& needle) {
    try {
        foon::parse_trace(json);
        return "no error thrown for: " + json;
    } catch (const foon::TraceError& e) {
        if (std::string(e.what()).find(needle) == std::string::npos)
            return std::string("message '") + e.what() + "' lacks '" + needle + "'";
        return "";
    }
}

const char* kMinimalSegmentTail =
    R"("motion_scores":[1,0,0,0,0,0,0,0,0,0],"frames":[{"frame_index":0,"detections":[]}])";

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("round trips through json") {
    foon::VideoTrace t = sample_trace();
    foon::VideoTrace back = foon::parse_trace(foon::serialize_trace(t));
    CHECK(back == t);
    CHECK(back.segments[0].frames[1].hand_center == std::nullopt);
    CHECK(back.segments[0].motion_scores[3] == 0.75);
}

TEST_CASE("frame diagonal") {
    foon::VideoTrace t = sample_trace();
    CHECK(t.frame_diagonal() == doctest::Approx(std::hypot(640.0, 360.0)).epsilon(1e-12));
}

TEST_CASE("clips boxes that cross the frame border") {
    std::string json = R"({"video_id":"v","frame_width":640,"frame_height":360,"segments":[
        {"start_frame":0,"end_frame":0,"motion_scores":[1,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":0,"detections":[
            {"label":"egg","box":[600,-10,100,50],"score":0.5,"flow":0}]}]}]})";
    foon::VideoTrace t = foon::parse_trace(json);
    const foon::BoundingBox& box = t.segments[0].frames[0].detections[0].box;
    CHECK(box.x == 600);
    CHECK(box.y == 0);
    CHECK(box.w == 40);
    CHECK(box.h == 40);
}

TEST_CASE("rejects boxes fully outside the frame") {
    std::string json = R"({"video_id":"v","frame_width":640,"frame_height":360,"segments":[
        {"start_frame":0,"end_frame":0,"motion_scores":[1,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":0,"detections":[
            {"label":"egg","box":[700,0,50,50],"score":0.5,"flow":0}]}]}]})";
    CHECK(check_trace_error(json, "outside the frame") == "");
}

TEST_CASE("renormalizes motion scores only when they are off") {
    std::string json = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":0,"motion_scores":[0.2,0.2,0.2,0.2,0.2,0.2,0.2,0.2,0.2,0.2],
         "frames":[{"frame_index":0,"detections":[]}]}]})";
    foon::VideoTrace t = foon::parse_trace(json);
    for (double s : t.segments[0].motion_scores) CHECK(s == doctest::Approx(0.1).epsilon(1e-12));

    // an exact distribution passes through bit-identically
    foon::VideoTrace exact = sample_trace();
    foon::VideoTrace back = foon::parse_trace(foon::serialize_trace(exact));
    CHECK(back.segments[0].motion_scores == exact.segments[0].motion_scores);
}

TEST_CASE("rejects degenerate or negative motion scores") {
    std::string zeros = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":0,"motion_scores":[0,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":0,"detections":[]}]}]})";
    CHECK(check_trace_error(zeros, "degenerate motion distribution") == "");

    std::string negative = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":0,"motion_scores":[2,-1,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":0,"detections":[]}]}]})";
    CHECK(check_trace_error(negative, "non-negative") == "");

    std::string wrong_arity = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":0,"motion_scores":[1,0],
         "frames":[{"frame_index":0,"detections":[]}]}]})";
    CHECK(check_trace_error(wrong_arity, "expected 10 values") == "");
}

TEST_CASE("enforces frame and segment ordering") {
    std::string dup_frame = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":5,"motion_scores":[1,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":2,"detections":[]},{"frame_index":2,"detections":[]}]}]})";
    CHECK(check_trace_error(dup_frame, "strictly increasing") == "");

    std::string outside = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":5,"motion_scores":[1,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":9,"detections":[]}]}]})";
    CHECK(check_trace_error(outside, "outside the segment span") == "");

    std::string overlap = std::string(R"({"video_id":"v","frame_width":64,"frame_height":36,)") +
                          R"("segments":[{"start_frame":0,"end_frame":5,)" + kMinimalSegmentTail +
                          R"(},{"start_frame":5,"end_frame":9,"motion_scores":[1,0,0,0,0,0,0,0,0,0],)" +
                          R"("frames":[{"frame_index":6,"detections":[]}]}]})";
    CHECK(check_trace_error(overlap, "ordered and non-overlapping") == "");
}

TEST_CASE("errors carry the json path") {
    std::string json = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":5,"motion_scores":[1,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":0,"detections":[]},{"detections":[]}]}]})";
    CHECK(check_trace_error(json, "$.segments[0].frames[1]") == "");
}

TEST_CASE("validates detection fields") {
    auto detection_json = [](const std::string& body) {
        return std::string(R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[)") +
               R"({"start_frame":0,"end_frame":0,"motion_scores":[1,0,0,0,0,0,0,0,0,0],)" +
               R"("frames":[{"frame_index":0,"detections":[)" + body + R"(]}]}]})";
    };
    CHECK(check_trace_error(detection_json(R"({"label":"e","box":[0,0,10,10],"score":1.5,"flow":0})"),
                            "must be in [0, 1]") == "");
    CHECK(check_trace_error(detection_json(R"({"label":"e","box":[0,0,10,10],"score":0.5,"flow":-1})"),
                            "must be non-negative") == "");
    CHECK(check_trace_error(detection_json(R"({"label":"e","box":[0,0,0,10],"score":0.5,"flow":0})"),
                            "must be positive") == "");
    CHECK(check_trace_error(detection_json(R"({"label":"","box":[0,0,10,10],"score":0.5,"flow":0})"),
                            "must be non-empty") == "");
    CHECK(check_trace_error(detection_json(R"({"label":"e","box":[0,0,10],"score":0.5,"flow":0})"),
                            "expected [x, y, w, h]") == "");
}

TEST_CASE("rejects structural problems") {
    CHECK(check_trace_error("this is not json", "invalid JSON") == "");
    CHECK(check_trace_error("[1,2,3]", "expected an object") == "");
    CHECK(check_trace_error(R"({"frame_width":64,"frame_height":36,"segments":[]})",
                            "missing field 'video_id'") == "");
    CHECK(check_trace_error(R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[]})",
                            "non-empty array") == "");
    CHECK(check_trace_error(R"({"video_id":"v","frame_width":0,"frame_height":36,"segments":[1]})",
                            "must be positive") == "");
}

TEST_CASE("hand field is optional and may be null") {
    std::string json = R"({"video_id":"v","frame_width":64,"frame_height":36,"segments":[
        {"start_frame":0,"end_frame":1,"motion_scores":[1,0,0,0,0,0,0,0,0,0],
         "frames":[{"frame_index":0,"hand":null,"detections":[]},
                   {"frame_index":1,"hand":[5,6],"detections":[]}]}]})";
    foon::VideoTrace t = foon::parse_trace(json);
    CHECK(!t.segments[0].frames[0].hand_center.has_value());
    REQUIRE(t.segments[0].frames[1].hand_center.has_value());
    CHECK((*t.segments[0].frames[1].hand_center)[0] == 5);
}

TEST_CASE("intersection over union") {
    foon::BoundingBox a{0, 0, 2.5, 1};
    foon::BoundingBox b{1.5, 0, 2.5, 1};
    CHECK(foon::iou(a, b) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(foon::iou(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(foon::iou(a, {10, 10, 1, 1}) == 0.0);
    CHECK(foon::iou({0, 0, 1, 1}, {1, 0, 1, 1}) == 0.0);  // touching edges
}

TEST_CASE("file loading errors carry the path") {
    std::filesystem::path dir = proc::fresh_dir("trace_errors");
    foon::write_text_file(dir / "bad.trace.json", "{}");
    try {
        foon::load_trace_file(dir / "bad.trace.json");
        CHECK(false);
    } catch (const foon::TraceError& e) {
        CHECK(std::string(e.what()).find("bad.trace.json") != std::string::npos);
    }
}

}  // TEST_SUITE("trace")
