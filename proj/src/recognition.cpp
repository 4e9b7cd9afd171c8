// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/recognition.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace foon {

FusionWeights fusion_weights(const PipelineConfig& cfg) {
    validate_config(cfg);
    return FusionWeights{
        .kappa = cfg.kappa,
        .lambda = cfg.lambda,
        .eta = cfg.eta,
        .alpha_fusion = cfg.alpha_fusion,
        .probe_threshold = cfg.probe_threshold,
        .top_k = cfg.top_k,
    };
}

double probe_overlap(const FunctionalUnit& unit, const std::vector<ObjectConfidence>& oia) {
    std::set<std::string> detected;
    for (const ObjectConfidence& oc : oia) detected.insert(oc.label);
    size_t total = unit.inputs.size() + unit.outputs.size();
    if (total == 0) return 0;
    size_t matched = 0;
    for (const ObjectNode& n : unit.inputs) matched += detected.count(n.label);
    for (const ObjectNode& n : unit.outputs) matched += detected.count(n.label);
    return static_cast<double>(matched) / static_cast<double>(total);
}

std::vector<CandidateUnit> probe_candidates(const UniversalFoon& foon,
                                            const std::vector<ObjectConfidence>& oia,
                                            double threshold) {
    std::map<std::string, double> detected;
    for (const ObjectConfidence& oc : oia) detected.emplace(oc.label, oc.confidence);

    std::set<int> hit;
    for (const ObjectConfidence& oc : oia) {
        for (int id : probe(foon, oc.label)) hit.insert(id);
    }

    std::vector<CandidateUnit> out;
    for (int id : hit) {
        const FunctionalUnit& unit = foon.units[static_cast<size_t>(id)];
        double overlap = probe_overlap(unit, oia);
        if (overlap < threshold) continue;

        CandidateUnit cand;
        cand.unit_id = id;
        cand.probe_overlap = overlap;

        std::set<std::string> unit_labels;
        for (const ObjectNode& n : unit.inputs) unit_labels.insert(n.label);
        for (const ObjectNode& n : unit.outputs) unit_labels.insert(n.label);
        for (const std::string& label : unit_labels) {
            auto it = detected.find(label);
            if (it != detected.end()) {
                cand.used.push_back({label, it->second});
            } else {
                cand.extra.push_back({label, 1.0});
            }
        }
        for (const auto& [label, conf] : detected) {
            if (!unit_labels.count(label)) cand.unused.push_back({label, conf});
        }
        out.push_back(std::move(cand));
    }
    return out;
}

double object_overlap_bonus(const ActionSegment& segment,
                            const std::vector<ScoredLabel>& used) {
    if (segment.frames.empty()) return 0;
    std::set<std::string> labels;
    for (const ScoredLabel& s : used) labels.insert(s.label);

    double total = 0;
    for (const FrameRecord& f : segment.frames) {
        std::vector<const Detection*> dets;
        for (const Detection& d : f.detections) {
            if (labels.count(d.label)) dets.push_back(&d);
        }
        double sum = 0;
        size_t pairs = 0;
        for (size_t i = 0; i < dets.size(); ++i) {
            for (size_t j = i + 1; j < dets.size(); ++j) {
                if (dets[i]->label == dets[j]->label) continue;
                sum += iou(dets[i]->box, dets[j]->box);
                ++pairs;
            }
        }
        if (pairs > 0) total += sum / static_cast<double>(pairs);
    }
    return total / static_cast<double>(segment.frames.size());
}

double unit_confidence(const CandidateUnit& cand, const FusionWeights& weights) {
    double used_sum = 0;
    for (const ScoredLabel& s : cand.used) used_sum += s.confidence;
    double conf = cand.used.empty() ? 0 : used_sum / static_cast<double>(cand.used.size());
    for (const ScoredLabel& s : cand.unused) conf -= weights.lambda * s.confidence;
    for (const ScoredLabel& s : cand.extra) conf -= weights.eta * s.confidence;
    return conf + weights.kappa * cand.bonus;
}

double fuse_motion(double conf_foon, double conf_lstm, double alpha_fusion) {
    return conf_foon + alpha_fusion * conf_lstm;
}

std::vector<CandidateUnit> recognize(const UniversalFoon& foon, const ActionSegment& segment,
                                     const ScoringWeights& scoring, const FusionWeights& fusion,
                                     const MotionTaxonomy& taxonomy) {
    std::vector<ObjectConfidence> oia = objects_in_action(segment, scoring);
    std::vector<CandidateUnit> cands = probe_candidates(foon, oia, fusion.probe_threshold);

    for (CandidateUnit& cand : cands) {
        // A unit object with no detection behind it is penalized in full;
        // one that was seen too rarely to count is penalized by how rarely.
        for (ScoredLabel& s : cand.extra) {
            double freq = frequency_confidence(segment, s.label);
            if (freq > 0) s.confidence = 1.0 - freq;
        }
        cand.bonus = object_overlap_bonus(segment, cand.used);
        cand.conf_foon = unit_confidence(cand, fusion);
        const FunctionalUnit& unit = foon.units[static_cast<size_t>(cand.unit_id)];
        cand.conf_lstm = segment.motion_scores[static_cast<size_t>(
            taxonomy.deep_class(unit.motion.label))];
        cand.conf_motion = fuse_motion(cand.conf_foon, cand.conf_lstm, fusion.alpha_fusion);
    }

    std::sort(cands.begin(), cands.end(), [&foon](const CandidateUnit& a, const CandidateUnit& b) {
        if (a.conf_motion != b.conf_motion) return a.conf_motion > b.conf_motion;
        if (a.conf_foon != b.conf_foon) return a.conf_foon > b.conf_foon;
        const std::string& ma = foon.units[static_cast<size_t>(a.unit_id)].motion.label;
        const std::string& mb = foon.units[static_cast<size_t>(b.unit_id)].motion.label;
        if (ma != mb) return ma < mb;
        return foon.keys[static_cast<size_t>(a.unit_id)] < foon.keys[static_cast<size_t>(b.unit_id)];
    });
    if (cands.size() > static_cast<size_t>(fusion.top_k)) {
        cands.resize(static_cast<size_t>(fusion.top_k));
    }
    return cands;
}

std::vector<std::vector<CandidateUnit>> recognize_segments_serial(const UniversalFoon& foon,
                                                                  const VideoTrace& trace,
                                                                  const PipelineConfig& cfg,
                                                                  const MotionTaxonomy& taxonomy) {
    ScoringWeights sw = scoring_weights(cfg, trace.frame_diagonal());
    FusionWeights fw = fusion_weights(cfg);
    std::vector<std::vector<CandidateUnit>> out(trace.segments.size());
    for (size_t i = 0; i < trace.segments.size(); ++i) {
        out[i] = recognize(foon, trace.segments[i], sw, fw, taxonomy);
    }
    return out;
}

std::vector<std::vector<CandidateUnit>> recognize_segments(const UniversalFoon& foon,
                                                           const VideoTrace& trace,
                                                           const PipelineConfig& cfg,
                                                           const MotionTaxonomy& taxonomy,
                                                           int jobs) {
    if (jobs == 1) return recognize_segments_serial(foon, trace, cfg, taxonomy);

    ScoringWeights sw = scoring_weights(cfg, trace.frame_diagonal());
    FusionWeights fw = fusion_weights(cfg);
    std::vector<std::vector<CandidateUnit>> out(trace.segments.size());
    // Each segment is independent and lands in its own slot, so the result
    // does not depend on the thread count.
    long n = static_cast<long>(trace.segments.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
    for (long i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] =
            recognize(foon, trace.segments[static_cast<size_t>(i)], sw, fw, taxonomy);
    }
    return out;
}

}  // namespace foon
