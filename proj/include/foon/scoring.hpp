// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

#include "foon/config.hpp"
#include "foon/trace.hpp"

namespace foon {

/// Resolved per-video scoring parameters: mixture weights normalized to sum
/// to 1 and the distance falloff converted to pixels.
struct ScoringWeights {
    double alpha = 1.0 / 3.0;
    double beta = 1.0 / 3.0;
    double gamma = 1.0 / 3.0;
    double sigma_dist = 1.0;      // px
    double freq_threshold = 0.2;
};

ScoringWeights scoring_weights(const PipelineConfig& cfg, double frame_diagonal);

/// Per-label evidence that the object takes part in the observed action.
struct ObjectConfidence {
    std::string label;
    double confidence = 0;  // alpha*c_flow + beta*c_dist + gamma*c_freq
    double c_flow = 0;
    double c_dist = 0;
    double c_freq = 0;
};

/// Fraction of the segment's frames in which the label is detected.
double frequency_confidence(const ActionSegment& segment, const std::string& label);

/// Gaussian falloff exp(-d^2 / (2 sigma^2)) of the mean hand-to-object
/// distance, taken over frames where both the hand and the label are seen.
/// With several same-label detections in a frame the closest one counts.
/// 0 when no frame qualifies.
double distance_confidence(const ActionSegment& segment, const std::string& label, double sigma);

/// Mean optical-flow magnitude of the label, normalized by the largest such
/// mean among all labels in the segment. With several same-label detections
/// in a frame the strongest flow counts. 0 when nothing in the segment moves.
double flow_confidence(const ActionSegment& segment, const std::string& label);

/// Sorted unique detection labels of the segment.
std::vector<std::string> segment_labels(const ActionSegment& segment);

/// Score every label seen in the segment and keep those whose appearance
/// frequency reaches the threshold, ordered by confidence (descending,
/// ties by label).
std::vector<ObjectConfidence> objects_in_action(const ActionSegment& segment,
                                                const ScoringWeights& weights);

}  // namespace foon
