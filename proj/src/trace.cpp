// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/trace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace foon {

using json = nlohmann::ordered_json;

double iou(const BoundingBox& a, const BoundingBox& b) {
    double ix = std::max(a.x, b.x);
    double iy = std::max(a.y, b.y);
    double ix2 = std::min(a.x + a.w, b.x + b.w);
    double iy2 = std::min(a.y + a.h, b.y + b.h);
    if (ix2 <= ix || iy2 <= iy) return 0.0;
    double inter = (ix2 - ix) * (iy2 - iy);
    return inter / (a.area() + b.area() - inter);
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw TraceError(path + ": " + what);
}

double require_finite(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

int require_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

const json& require_field(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

Detection parse_detection(const json& v, const std::string& path, int width, int height) {
    if (!v.is_object()) fail(path, "expected an object");
    Detection d;
    const json& label = require_field(v, "label", path);
    if (!label.is_string()) fail(path + ".label", "expected a string");
    d.label = label.get<std::string>();
    if (d.label.empty()) fail(path + ".label", "must be non-empty");

    const json& box = require_field(v, "box", path);
    if (!box.is_array() || box.size() != 4) fail(path + ".box", "expected [x, y, w, h]");
    d.box.x = require_finite(box[0], path + ".box[0]");
    d.box.y = require_finite(box[1], path + ".box[1]");
    d.box.w = require_finite(box[2], path + ".box[2]");
    d.box.h = require_finite(box[3], path + ".box[3]");
    if (d.box.w <= 0 || d.box.h <= 0) fail(path + ".box", "width and height must be positive");

    // Clip to the frame bounds; a box entirely outside the frame is an
    // error. Boxes already inside pass through bit-exactly so that
    // parse(serialize(t)) == t.
    double x2 = d.box.x + d.box.w;
    double y2 = d.box.y + d.box.h;
    if (d.box.x >= width || d.box.y >= height || x2 <= 0 || y2 <= 0)
        fail(path + ".box", "box lies outside the frame");
    if (d.box.x < 0) {
        d.box.w = x2;
        d.box.x = 0;
    }
    if (x2 > width) d.box.w = width - d.box.x;
    if (d.box.y < 0) {
        d.box.h = y2;
        d.box.y = 0;
    }
    if (y2 > height) d.box.h = height - d.box.y;

    d.score = require_finite(require_field(v, "score", path), path + ".score");
    if (d.score < 0 || d.score > 1) fail(path + ".score", "must be in [0, 1]");
    d.flow_magnitude = require_finite(require_field(v, "flow", path), path + ".flow");
    if (d.flow_magnitude < 0) fail(path + ".flow", "must be non-negative");
    return d;
}

FrameRecord parse_frame(const json& v, const std::string& path, int width, int height) {
    if (!v.is_object()) fail(path, "expected an object");
    FrameRecord f;
    f.frame_index = require_int(require_field(v, "frame_index", path), path + ".frame_index");
    if (f.frame_index < 0) fail(path + ".frame_index", "must be non-negative");
    if (auto it = v.find("hand"); it != v.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != 2) fail(path + ".hand", "expected [x, y]");
        f.hand_center = {{require_finite((*it)[0], path + ".hand[0]"),
                          require_finite((*it)[1], path + ".hand[1]")}};
    }
    if (auto it = v.find("detections"); it != v.end()) {
        if (!it->is_array()) fail(path + ".detections", "expected an array");
        f.detections.reserve(it->size());
        for (size_t i = 0; i < it->size(); ++i) {
            f.detections.push_back(parse_detection(
                (*it)[i], path + ".detections[" + std::to_string(i) + "]", width, height));
        }
    }
    return f;
}

ActionSegment parse_segment(const json& v, const std::string& path, int width, int height) {
    if (!v.is_object()) fail(path, "expected an object");
    ActionSegment s;
    s.start_frame = require_int(require_field(v, "start_frame", path), path + ".start_frame");
    s.end_frame = require_int(require_field(v, "end_frame", path), path + ".end_frame");
    if (s.start_frame < 0) fail(path + ".start_frame", "must be non-negative");
    if (s.end_frame < s.start_frame) fail(path + ".end_frame", "must be >= start_frame");

    const json& scores = require_field(v, "motion_scores", path);
    if (!scores.is_array() || scores.size() != s.motion_scores.size())
        fail(path + ".motion_scores", "expected 10 values");
    double sum = 0;
    for (size_t i = 0; i < s.motion_scores.size(); ++i) {
        std::string p = path + ".motion_scores[" + std::to_string(i) + "]";
        s.motion_scores[i] = require_finite(scores[i], p);
        if (s.motion_scores[i] < 0) fail(p, "must be non-negative");
        sum += s.motion_scores[i];
    }
    if (sum < 1e-12) fail(path + ".motion_scores", "degenerate motion distribution");
    // Renormalize only when the sum is actually off, so well-formed input
    // round-trips bit-exactly.
    if (std::abs(sum - 1.0) > 1e-12) {
        for (double& x : s.motion_scores) x /= sum;
    }

    const json& frames = require_field(v, "frames", path);
    if (!frames.is_array() || frames.empty()) fail(path + ".frames", "expected a non-empty array");
    s.frames.reserve(frames.size());
    for (size_t i = 0; i < frames.size(); ++i) {
        std::string p = path + ".frames[" + std::to_string(i) + "]";
        FrameRecord f = parse_frame(frames[i], p, width, height);
        if (f.frame_index < s.start_frame || f.frame_index > s.end_frame)
            fail(p + ".frame_index", "outside the segment span");
        if (!s.frames.empty() && f.frame_index <= s.frames.back().frame_index)
            fail(p + ".frame_index", "must be strictly increasing");
        s.frames.push_back(std::move(f));
    }
    return s;
}

}  // namespace

VideoTrace parse_trace(const std::string& text) {
    json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded()) throw TraceError("$: invalid JSON");
    if (!root.is_object()) fail("$", "expected an object");

    VideoTrace t;
    const json& vid = require_field(root, "video_id", "$");
    if (!vid.is_string()) fail("$.video_id", "expected a string");
    t.video_id = vid.get<std::string>();
    if (t.video_id.empty()) fail("$.video_id", "must be non-empty");

    t.frame_width = require_int(require_field(root, "frame_width", "$"), "$.frame_width");
    t.frame_height = require_int(require_field(root, "frame_height", "$"), "$.frame_height");
    if (t.frame_width <= 0) fail("$.frame_width", "must be positive");
    if (t.frame_height <= 0) fail("$.frame_height", "must be positive");

    const json& segs = require_field(root, "segments", "$");
    if (!segs.is_array() || segs.empty()) fail("$.segments", "expected a non-empty array");
    t.segments.reserve(segs.size());
    for (size_t i = 0; i < segs.size(); ++i) {
        std::string p = "$.segments[" + std::to_string(i) + "]";
        ActionSegment s = parse_segment(segs[i], p, t.frame_width, t.frame_height);
        if (!t.segments.empty() && s.start_frame <= t.segments.back().end_frame)
            fail(p + ".start_frame", "segments must be ordered and non-overlapping");
        t.segments.push_back(std::move(s));
    }
    return t;
}

std::string serialize_trace(const VideoTrace& trace) {
    json root;
    root["video_id"] = trace.video_id;
    root["frame_width"] = trace.frame_width;
    root["frame_height"] = trace.frame_height;
    json segs = json::array();
    for (const ActionSegment& s : trace.segments) {
        json seg;
        seg["start_frame"] = s.start_frame;
        seg["end_frame"] = s.end_frame;
        seg["motion_scores"] = s.motion_scores;
        json frames = json::array();
        for (const FrameRecord& f : s.frames) {
            json fr;
            fr["frame_index"] = f.frame_index;
            if (f.hand_center) fr["hand"] = *f.hand_center;
            json dets = json::array();
            for (const Detection& d : f.detections) {
                json o;
                o["label"] = d.label;
                o["box"] = {d.box.x, d.box.y, d.box.w, d.box.h};
                o["score"] = d.score;
                o["flow"] = d.flow_magnitude;
                dets.push_back(std::move(o));
            }
            fr["detections"] = std::move(dets);
            frames.push_back(std::move(fr));
        }
        seg["frames"] = std::move(frames);
        segs.push_back(std::move(seg));
    }
    root["segments"] = std::move(segs);
    return root.dump();
}

VideoTrace load_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TraceError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_trace(buf.str());
    } catch (const TraceError& e) {
        throw TraceError(path.string() + ": " + e.what());
    }
}

}  // namespace foon
