// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

#include "foon/config.hpp"
#include "foon/graph.hpp"
#include "foon/recognition.hpp"
#include "foon/taxonomy.hpp"
#include "foon/trace.hpp"

namespace foon {

/// Object-node agreement between a predicted unit and the ground truth,
/// matched per side (inputs to inputs, outputs to outputs) by label and
/// state. A predicted node with an empty state matches any state of its
/// label; ingredients and motion are not part of the match.
struct OverlapResult {
    int matched = 0;
    int cand_nodes = 0;
    int gt_nodes = 0;

    double precision() const { return cand_nodes == 0 ? 0 : static_cast<double>(matched) / cand_nodes; }
    double recall() const { return gt_nodes == 0 ? 0 : static_cast<double>(matched) / gt_nodes; }
};

OverlapResult node_overlap(const FunctionalUnit& cand, const FunctionalUnit& gt);

/// Node precision and recall; (0, 0) when the motions are not equivalent
/// under the taxonomy.
struct PrEntry {
    double precision = 0;
    double recall = 0;
};
PrEntry precision_recall(const FunctionalUnit& cand, const FunctionalUnit& gt,
                         const MotionTaxonomy& taxonomy);

/// Equivalent motion and both node precision and recall strictly above the
/// threshold.
bool is_correct(const FunctionalUnit& cand, const FunctionalUnit& gt,
                const MotionTaxonomy& taxonomy, double accuracy_threshold);

/// Harmonic mean; 0 when both inputs are 0.
double f_score(double precision, double recall);

/// One annotated video: the ground-truth subgraph and the perception trace,
/// with one trace segment per functional unit, in order.
struct CorpusVideo {
    Subgraph annotation;
    VideoTrace trace;
};

struct EvalRow {
    std::string video_id;
    int segment_index = 0;
    int k = 0;
    bool correct = false;
    double precision = 0;
    double recall = 0;
};

struct PerKStats {
    int k = 0;
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
};

struct EvalResult {
    std::vector<EvalRow> rows;      // ordered by (video_id, segment, k)
    std::vector<PerKStats> per_k;   // k = 1 .. top_k
    // Top-candidate (k = 1) aggregates.
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

/// Leave-one-out evaluation: each video is recognized against the network
/// merged from all other videos. accuracy@k is the share of segments with a
/// correct unit among the first k candidates; precision@k and recall@k come
/// from the best-F candidate among them. Segment values are averaged per
/// video and the video values averaged overall. The serial variant is the
/// reference; the jobs variant distributes videos over OpenMP threads and
/// produces identical results for any thread count.
EvalResult leave_one_out_serial(const std::vector<CorpusVideo>& corpus,
                                const PipelineConfig& cfg, const MotionTaxonomy& taxonomy);
EvalResult leave_one_out(const std::vector<CorpusVideo>& corpus, const PipelineConfig& cfg,
                         const MotionTaxonomy& taxonomy, int jobs = 1);

/// CSV renderings: per-row results and the per-k summary.
std::string results_csv(const EvalResult& result);
std::string summary_csv(const EvalResult& result);

}  // namespace foon
