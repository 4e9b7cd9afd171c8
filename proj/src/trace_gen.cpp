// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/trace_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace foon {

namespace {

// Top 53 bits of the engine output, mapped to [0, 1). Spelled out rather
// than using a distribution so the stream is identical across toolchains.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BoundingBox clamped_box(double cx, double cy, double side, int width, int height) {
    double x = std::clamp(cx - side / 2, 0.0, width - side);
    double y = std::clamp(cy - side / 2, 0.0, height - side);
    return {x, y, side, side};
}

void check_params(const Subgraph& graph, const NoiseParams& noise, const TraceLayout& layout) {
    if (graph.units.empty()) throw std::invalid_argument("subgraph has no functional units");
    auto unit_prob = [](double v, const char* key) {
        if (!(v >= 0 && v <= 1))
            throw std::invalid_argument(std::string(key) + " must be in [0, 1]");
    };
    unit_prob(noise.drop_prob, "drop_prob");
    unit_prob(noise.spurious_prob, "spurious_prob");
    unit_prob(noise.motion_eps, "motion_eps");
    if (noise.jitter_px < 0) throw std::invalid_argument("jitter_px must be non-negative");
    if (layout.frame_width <= 0 || layout.frame_height <= 0)
        throw std::invalid_argument("frame dimensions must be positive");
    if (layout.frames_per_segment < 1)
        throw std::invalid_argument("frames_per_segment must be at least 1");
}

}  // namespace

VideoTrace gen_trace(const Subgraph& graph, const MotionTaxonomy& taxonomy, std::uint64_t seed,
                     const NoiseParams& noise, const TraceLayout& layout) {
    check_params(graph, noise, layout);

    VideoTrace trace;
    trace.video_id = graph.video_id;
    trace.frame_width = layout.frame_width;
    trace.frame_height = layout.frame_height;

    double diag = trace.frame_diagonal();
    double ring_radius = 0.05 * diag;
    double box_side = std::min({0.12 * diag, static_cast<double>(layout.frame_width),
                                static_cast<double>(layout.frame_height)});
    double hand_x = layout.frame_width / 2.0;
    double hand_y = layout.frame_height / 2.0;

    std::set<std::string> all_labels;
    for (const FunctionalUnit& unit : graph.units) {
        for (const ObjectNode& n : unit.inputs) all_labels.insert(n.label);
    }

    std::mt19937_64 rng(seed);
    int frame = 0;
    for (const FunctionalUnit& unit : graph.units) {
        ActionSegment seg;
        seg.start_frame = frame;
        seg.end_frame = frame + layout.frames_per_segment - 1;

        int motion_class = taxonomy.deep_class(unit.motion.label);
        for (size_t c = 0; c < seg.motion_scores.size(); ++c) {
            seg.motion_scores[c] = static_cast<int>(c) == motion_class
                                       ? 1.0 - noise.motion_eps
                                       : noise.motion_eps / (seg.motion_scores.size() - 1);
        }

        std::set<std::string> in_action_set;
        for (const ObjectNode& n : unit.inputs) in_action_set.insert(n.label);
        std::vector<std::string> in_action(in_action_set.begin(), in_action_set.end());
        std::vector<std::string> background;
        for (const std::string& label : all_labels) {
            if (!in_action_set.count(label)) background.push_back(label);
        }

        for (int f = 0; f < layout.frames_per_segment; ++f, ++frame) {
            FrameRecord rec;
            rec.frame_index = frame;
            rec.hand_center = {{hand_x, hand_y}};

            for (size_t j = 0; j < in_action.size(); ++j) {
                if (noise.drop_prob > 0 && unit_draw(rng) < noise.drop_prob) continue;
                double angle = 2 * std::numbers::pi * static_cast<double>(j) /
                               static_cast<double>(in_action.size());
                double cx = hand_x + ring_radius * std::cos(angle);
                double cy = hand_y + ring_radius * std::sin(angle);
                if (noise.jitter_px > 0) {
                    cx += (2 * unit_draw(rng) - 1) * noise.jitter_px;
                    cy += (2 * unit_draw(rng) - 1) * noise.jitter_px;
                }
                Detection d;
                d.label = in_action[j];
                d.box = clamped_box(cx, cy, box_side, layout.frame_width, layout.frame_height);
                d.score = 0.95;
                d.flow_magnitude = 3.0;
                rec.detections.push_back(std::move(d));
            }

            if (!background.empty() && noise.spurious_prob > 0 &&
                unit_draw(rng) < noise.spurious_prob) {
                size_t pick = std::min(background.size() - 1,
                                       static_cast<size_t>(unit_draw(rng) *
                                                           static_cast<double>(background.size())));
                // Far corner, rotated per frame, so the spurious object stays
                // well outside the hand's neighborhood.
                int corner = frame % 4;
                double cx = (corner == 0 || corner == 3) ? box_side / 2
                                                         : layout.frame_width - box_side / 2;
                double cy = (corner == 0 || corner == 1) ? box_side / 2
                                                         : layout.frame_height - box_side / 2;
                Detection d;
                d.label = background[pick];
                d.box = clamped_box(cx, cy, box_side, layout.frame_width, layout.frame_height);
                d.score = 0.6;
                d.flow_magnitude = 0.0;
                rec.detections.push_back(std::move(d));
            }

            seg.frames.push_back(std::move(rec));
        }
        trace.segments.push_back(std::move(seg));
    }
    return trace;
}

}  // namespace foon
