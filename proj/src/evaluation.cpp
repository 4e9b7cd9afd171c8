// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace foon {

namespace {

int side_overlap(const std::vector<ObjectNode>& cand, const std::vector<ObjectNode>& gt) {
    // Per label: exact-state matches first, then wildcard (empty-state)
    // candidate nodes absorb whatever ground truth is left. Exact-first is
    // optimal because a wildcard can stand in anywhere an exact node can.
    std::map<std::string, std::map<std::string, int>> cand_states;
    std::map<std::string, int> wildcards;
    for (const ObjectNode& n : cand) {
        if (n.state.empty()) ++wildcards[n.label];
        else ++cand_states[n.label][n.state];
    }
    std::map<std::string, std::map<std::string, int>> gt_states;
    for (const ObjectNode& n : gt) ++gt_states[n.label][n.state];

    int matched = 0;
    for (const auto& [label, states] : gt_states) {
        int total = 0;
        int exact = 0;
        for (const auto& [state, count] : states) {
            total += count;
            auto lit = cand_states.find(label);
            if (lit != cand_states.end()) {
                auto sit = lit->second.find(state);
                if (sit != lit->second.end()) exact += std::min(count, sit->second);
            }
        }
        matched += exact;
        auto wit = wildcards.find(label);
        if (wit != wildcards.end()) matched += std::min(wit->second, total - exact);
    }
    return matched;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

OverlapResult node_overlap(const FunctionalUnit& cand, const FunctionalUnit& gt) {
    OverlapResult r;
    r.matched = side_overlap(cand.inputs, gt.inputs) + side_overlap(cand.outputs, gt.outputs);
    r.cand_nodes = static_cast<int>(cand.inputs.size() + cand.outputs.size());
    r.gt_nodes = static_cast<int>(gt.inputs.size() + gt.outputs.size());
    return r;
}

PrEntry precision_recall(const FunctionalUnit& cand, const FunctionalUnit& gt,
                         const MotionTaxonomy& taxonomy) {
    if (!motions_equivalent(cand.motion.label, gt.motion.label, taxonomy)) return {0, 0};
    OverlapResult r = node_overlap(cand, gt);
    return {r.precision(), r.recall()};
}

bool is_correct(const FunctionalUnit& cand, const FunctionalUnit& gt,
                const MotionTaxonomy& taxonomy, double accuracy_threshold) {
    if (!motions_equivalent(cand.motion.label, gt.motion.label, taxonomy)) return false;
    OverlapResult r = node_overlap(cand, gt);
    return r.precision() > accuracy_threshold && r.recall() > accuracy_threshold;
}

double f_score(double precision, double recall) {
    double sum = precision + recall;
    if (sum == 0) return 0;
    return 2 * precision * recall / sum;
}

namespace {

struct VideoEval {
    std::string video_id;
    std::vector<EvalRow> rows;
    std::vector<double> acc_k;  // per-k means over this video's segments
    std::vector<double> p_k;
    std::vector<double> r_k;
};

VideoEval evaluate_video(const std::vector<CorpusVideo>& corpus, size_t self,
                         const PipelineConfig& cfg, const MotionTaxonomy& taxonomy) {
    std::vector<Subgraph> others;
    others.reserve(corpus.size() - 1);
    for (size_t i = 0; i < corpus.size(); ++i) {
        if (i != self) others.push_back(corpus[i].annotation);
    }
    UniversalFoon foon = merge(others);

    const CorpusVideo& video = corpus[self];
    std::vector<std::vector<CandidateUnit>> rec =
        recognize_segments_serial(foon, video.trace, cfg, taxonomy);

    size_t top_k = static_cast<size_t>(cfg.top_k);
    VideoEval ev;
    ev.video_id = video.annotation.video_id;
    ev.acc_k.assign(top_k, 0);
    ev.p_k.assign(top_k, 0);
    ev.r_k.assign(top_k, 0);

    for (size_t seg = 0; seg < rec.size(); ++seg) {
        const FunctionalUnit& gt = video.annotation.units[seg];
        const std::vector<CandidateUnit>& cands = rec[seg];

        // Prefix scans over the ranked candidates: any correct hit so far,
        // and the earliest candidate with the highest F so far.
        std::vector<char> any_correct(cands.size());
        std::vector<PrEntry> best_pr(cands.size());
        bool any = false;
        double best_f = -1;
        PrEntry best{0, 0};
        for (size_t j = 0; j < cands.size(); ++j) {
            const FunctionalUnit& unit = foon.units[static_cast<size_t>(cands[j].unit_id)];
            any = any || is_correct(unit, gt, taxonomy, cfg.accuracy_threshold);
            PrEntry pr = precision_recall(unit, gt, taxonomy);
            double f = f_score(pr.precision, pr.recall);
            if (f > best_f) {
                best_f = f;
                best = pr;
            }
            any_correct[j] = any;
            best_pr[j] = best;
        }

        for (size_t k = 1; k <= top_k; ++k) {
            size_t limit = std::min(k, cands.size());
            EvalRow row;
            row.video_id = ev.video_id;
            row.segment_index = static_cast<int>(seg);
            row.k = static_cast<int>(k);
            if (limit > 0) {
                row.correct = any_correct[limit - 1] != 0;
                row.precision = best_pr[limit - 1].precision;
                row.recall = best_pr[limit - 1].recall;
            }
            ev.rows.push_back(row);
            ev.acc_k[k - 1] += row.correct ? 1 : 0;
            ev.p_k[k - 1] += row.precision;
            ev.r_k[k - 1] += row.recall;
        }
    }

    double n = static_cast<double>(rec.size());
    if (n > 0) {
        for (size_t k = 0; k < top_k; ++k) {
            ev.acc_k[k] /= n;
            ev.p_k[k] /= n;
            ev.r_k[k] /= n;
        }
    }
    return ev;
}

std::vector<size_t> corpus_order(const std::vector<CorpusVideo>& corpus) {
    if (corpus.size() < 2) throw std::invalid_argument("evaluation needs at least two videos");
    std::set<std::string> seen;
    for (const CorpusVideo& v : corpus) {
        if (v.annotation.video_id != v.trace.video_id)
            throw std::invalid_argument("annotation and trace disagree on video_id for " +
                                        v.annotation.video_id);
        if (v.annotation.units.size() != v.trace.segments.size())
            throw std::invalid_argument("annotation and trace disagree on segment count for " +
                                        v.annotation.video_id);
        if (!seen.insert(v.annotation.video_id).second)
            throw std::invalid_argument("duplicate video_id " + v.annotation.video_id);
    }
    std::vector<size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&corpus](size_t a, size_t b) {
        return corpus[a].annotation.video_id < corpus[b].annotation.video_id;
    });
    return order;
}

EvalResult aggregate(std::vector<VideoEval> evals, int top_k) {
    EvalResult result;
    result.per_k.resize(static_cast<size_t>(top_k));
    for (size_t k = 0; k < result.per_k.size(); ++k) {
        result.per_k[k].k = static_cast<int>(k + 1);
    }
    for (VideoEval& ev : evals) {
        for (EvalRow& row : ev.rows) result.rows.push_back(std::move(row));
        for (size_t k = 0; k < result.per_k.size(); ++k) {
            result.per_k[k].accuracy += ev.acc_k[k];
            result.per_k[k].precision += ev.p_k[k];
            result.per_k[k].recall += ev.r_k[k];
        }
    }
    double n = static_cast<double>(evals.size());
    for (PerKStats& s : result.per_k) {
        s.accuracy /= n;
        s.precision /= n;
        s.recall /= n;
    }
    result.accuracy = result.per_k[0].accuracy;
    result.precision = result.per_k[0].precision;
    result.recall = result.per_k[0].recall;
    result.f1 = f_score(result.precision, result.recall);
    return result;
}

}  // namespace

EvalResult leave_one_out_serial(const std::vector<CorpusVideo>& corpus,
                                const PipelineConfig& cfg, const MotionTaxonomy& taxonomy) {
    validate_config(cfg);
    std::vector<size_t> order = corpus_order(corpus);
    std::vector<VideoEval> evals(order.size());
    for (size_t pos = 0; pos < order.size(); ++pos) {
        evals[pos] = evaluate_video(corpus, order[pos], cfg, taxonomy);
    }
    return aggregate(std::move(evals), cfg.top_k);
}

EvalResult leave_one_out(const std::vector<CorpusVideo>& corpus, const PipelineConfig& cfg,
                         const MotionTaxonomy& taxonomy, int jobs) {
    if (jobs == 1) return leave_one_out_serial(corpus, cfg, taxonomy);

    validate_config(cfg);
    std::vector<size_t> order = corpus_order(corpus);
    std::vector<VideoEval> evals(order.size());
    // Videos are independent and each lands in its own slot, so the result
    // does not depend on the thread count.
    long n = static_cast<long>(order.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
    for (long pos = 0; pos < n; ++pos) {
        evals[static_cast<size_t>(pos)] =
            evaluate_video(corpus, order[static_cast<size_t>(pos)], cfg, taxonomy);
    }
    return aggregate(std::move(evals), cfg.top_k);
}

std::string results_csv(const EvalResult& result) {
    std::string out = "video_id,segment_index,k,correct,precision,recall\n";
    for (const EvalRow& row : result.rows) {
        out += row.video_id;
        out += ',';
        out += std::to_string(row.segment_index);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += row.correct ? '1' : '0';
        out += ',';
        out += fmt6(row.precision);
        out += ',';
        out += fmt6(row.recall);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const EvalResult& result) {
    std::string out = "k,accuracy,precision,recall\n";
    for (const PerKStats& s : result.per_k) {
        out += std::to_string(s.k);
        out += ',';
        out += fmt6(s.accuracy);
        out += ',';
        out += fmt6(s.precision);
        out += ',';
        out += fmt6(s.recall);
        out += '\n';
    }
    return out;
}

}  // namespace foon
