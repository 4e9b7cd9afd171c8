// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace foon {

struct BoundingBox {
    double x = 0;  // top-left
    double y = 0;
    double w = 0;  // > 0
    double h = 0;  // > 0

    double center_x() const { return x + w / 2; }
    double center_y() const { return y + h / 2; }
    double area() const { return w * h; }

    bool operator==(const BoundingBox&) const = default;
};

/// Intersection-over-union of two boxes; 0 when they do not overlap.
double iou(const BoundingBox& a, const BoundingBox& b);

struct Detection {
    std::string label;
    BoundingBox box;
    double score = 1.0;          // detector confidence, [0,1]
    double flow_magnitude = 0.0; // mean optical-flow magnitude in the box, px/frame

    bool operator==(const Detection&) const = default;
};

struct FrameRecord {
    int frame_index = 0;
    std::optional<std::array<double, 2>> hand_center;  // [x, y] px
    std::vector<Detection> detections;

    bool operator==(const FrameRecord&) const = default;
};

/// One temporal split of the video with the detections observed in it and
/// the 10-way motion class score vector (normalized, sums to 1).
struct ActionSegment {
    int start_frame = 0;
    int end_frame = 0;
    std::array<double, 10> motion_scores{};
    std::vector<FrameRecord> frames;  // frame_index strictly increasing

    bool operator==(const ActionSegment&) const = default;
};

struct VideoTrace {
    std::string video_id;
    int frame_width = 0;
    int frame_height = 0;
    std::vector<ActionSegment> segments;  // ordered, non-overlapping

    double frame_diagonal() const {
        return std::hypot(static_cast<double>(frame_width), static_cast<double>(frame_height));
    }

    bool operator==(const VideoTrace&) const = default;
};

/// Validation failure; what() carries the JSON-ish path of the offending field.
class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse and validate a trace JSON document. Motion scores are renormalized
/// to sum to 1, boxes partially outside the frame are clipped; violations of
/// the schema throw TraceError with the field path.
VideoTrace parse_trace(const std::string& text);

/// Canonical JSON serialization; parse_trace(serialize_trace(t)) == t.
std::string serialize_trace(const VideoTrace& trace);

VideoTrace load_trace_file(const std::filesystem::path& path);

}  // namespace foon
