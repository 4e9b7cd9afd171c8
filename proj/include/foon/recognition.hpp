// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

#include "foon/config.hpp"
#include "foon/graph.hpp"
#include "foon/scoring.hpp"
#include "foon/taxonomy.hpp"
#include "foon/trace.hpp"

namespace foon {

/// Resolved unit-confidence parameters.
struct FusionWeights {
    double kappa = 0.2;           // weight of the spatial-overlap bonus
    double lambda = 0.2;          // penalty per detected object the unit does not use
    double eta = 0.2;             // penalty per unit object that was not detected
    double alpha_fusion = 0.15;   // weight of the motion-classifier score
    double probe_threshold = 0.34;
    int top_k = 10;
};

FusionWeights fusion_weights(const PipelineConfig& cfg);

struct ScoredLabel {
    std::string label;
    double confidence = 0;
};

/// A functional unit proposed for a segment, with the evidence that scored it.
struct CandidateUnit {
    int unit_id = -1;         // index into UniversalFoon::units
    double probe_overlap = 0; // matched fraction of the unit's object nodes
    std::vector<ScoredLabel> used;    // unit labels backed by a detected object
    std::vector<ScoredLabel> unused;  // detected objects the unit has no node for
    std::vector<ScoredLabel> extra;   // unit labels with no detection behind them
    double bonus = 0;         // spatial overlap among used objects
    double conf_foon = 0;
    double conf_lstm = 0;     // motion-classifier score of the unit's motion class
    double conf_motion = 0;   // conf_foon fused with conf_lstm
};

/// Fraction of the unit's object-node occurrences (inputs and outputs,
/// multiplicities counted) whose label appears in the objects-in-action set.
double probe_overlap(const FunctionalUnit& unit, const std::vector<ObjectConfidence>& oia);

/// Probe the network with every object in action and keep the units whose
/// node overlap reaches the threshold, ordered by unit id. Fills used and
/// unused from the objects-in-action confidences; extra labels default to
/// confidence 1 (fully missing).
std::vector<CandidateUnit> probe_candidates(const UniversalFoon& foon,
                                            const std::vector<ObjectConfidence>& oia,
                                            double threshold);

/// Mean over the segment's frames of the mean pairwise IoU between
/// detections of two different used labels; frames without such a pair
/// contribute 0.
double object_overlap_bonus(const ActionSegment& segment,
                            const std::vector<ScoredLabel>& used);

/// Mean used confidence, minus the weighted unused and extra penalties,
/// plus the weighted bonus.
double unit_confidence(const CandidateUnit& cand, const FusionWeights& weights);

double fuse_motion(double conf_foon, double conf_lstm, double alpha_fusion);

/// Full per-segment pipeline: score objects, probe, penalize, fuse with the
/// motion classifier, rank, and keep the top_k candidates.
std::vector<CandidateUnit> recognize(const UniversalFoon& foon, const ActionSegment& segment,
                                     const ScoringWeights& scoring, const FusionWeights& fusion,
                                     const MotionTaxonomy& taxonomy);

/// recognize() for each segment of the trace. The serial variant is the
/// reference; the jobs variant distributes segments over OpenMP threads and
/// produces identical results for any thread count.
std::vector<std::vector<CandidateUnit>> recognize_segments_serial(const UniversalFoon& foon,
                                                                  const VideoTrace& trace,
                                                                  const PipelineConfig& cfg,
                                                                  const MotionTaxonomy& taxonomy);
std::vector<std::vector<CandidateUnit>> recognize_segments(const UniversalFoon& foon,
                                                           const VideoTrace& trace,
                                                           const PipelineConfig& cfg,
                                                           const MotionTaxonomy& taxonomy,
                                                           int jobs = 1);

}  // namespace foon
