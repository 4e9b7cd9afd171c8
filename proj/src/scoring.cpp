// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace foon {

ScoringWeights scoring_weights(const PipelineConfig& cfg, double frame_diagonal) {
    validate_config(cfg);
    double sum = cfg.alpha + cfg.beta + cfg.gamma;
    return ScoringWeights{
        .alpha = cfg.alpha / sum,
        .beta = cfg.beta / sum,
        .gamma = cfg.gamma / sum,
        .sigma_dist = cfg.sigma_dist_frac * frame_diagonal,
        .freq_threshold = cfg.freq_threshold,
    };
}

double frequency_confidence(const ActionSegment& segment, const std::string& label) {
    if (segment.frames.empty()) return 0;
    size_t hits = 0;
    for (const FrameRecord& f : segment.frames) {
        for (const Detection& d : f.detections) {
            if (d.label == label) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(segment.frames.size());
}

double distance_confidence(const ActionSegment& segment, const std::string& label, double sigma) {
    double sum = 0;
    size_t count = 0;
    for (const FrameRecord& f : segment.frames) {
        if (!f.hand_center) continue;
        double best = -1;
        for (const Detection& d : f.detections) {
            if (d.label != label) continue;
            double dx = d.box.center_x() - (*f.hand_center)[0];
            double dy = d.box.center_y() - (*f.hand_center)[1];
            double dist = std::hypot(dx, dy);
            if (best < 0 || dist < best) best = dist;
        }
        if (best >= 0) {
            sum += best;
            ++count;
        }
    }
    if (count == 0) return 0;
    double mean = sum / static_cast<double>(count);
    return std::exp(-(mean * mean) / (2 * sigma * sigma));
}

namespace {

/// Mean over frames-where-seen of the strongest same-label flow in the frame.
double mean_flow(const ActionSegment& segment, const std::string& label) {
    double sum = 0;
    size_t count = 0;
    for (const FrameRecord& f : segment.frames) {
        double best = -1;
        for (const Detection& d : f.detections) {
            if (d.label == label) best = std::max(best, d.flow_magnitude);
        }
        if (best >= 0) {
            sum += best;
            ++count;
        }
    }
    return count == 0 ? 0 : sum / static_cast<double>(count);
}

}  // namespace

double flow_confidence(const ActionSegment& segment, const std::string& label) {
    double peak = 0;
    for (const std::string& other : segment_labels(segment)) {
        peak = std::max(peak, mean_flow(segment, other));
    }
    if (peak <= 0) return 0;
    return mean_flow(segment, label) / peak;
}

std::vector<std::string> segment_labels(const ActionSegment& segment) {
    std::set<std::string> labels;
    for (const FrameRecord& f : segment.frames) {
        for (const Detection& d : f.detections) labels.insert(d.label);
    }
    return {labels.begin(), labels.end()};
}

std::vector<ObjectConfidence> objects_in_action(const ActionSegment& segment,
                                                const ScoringWeights& weights) {
    std::vector<ObjectConfidence> out;
    for (const std::string& label : segment_labels(segment)) {
        ObjectConfidence oc;
        oc.label = label;
        oc.c_freq = frequency_confidence(segment, label);
        if (oc.c_freq < weights.freq_threshold) continue;
        oc.c_flow = flow_confidence(segment, label);
        oc.c_dist = distance_confidence(segment, label, weights.sigma_dist);
        oc.confidence =
            weights.alpha * oc.c_flow + weights.beta * oc.c_dist + weights.gamma * oc.c_freq;
        out.push_back(std::move(oc));
    }
    std::sort(out.begin(), out.end(), [](const ObjectConfidence& a, const ObjectConfidence& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return a.label < b.label;
    });
    return out;
}

}  // namespace foon
