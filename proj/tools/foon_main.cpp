// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foon/config.hpp"
#include "foon/evaluation.hpp"
#include "foon/graph.hpp"
#include "foon/graph_io.hpp"
#include "foon/recognition.hpp"
#include "foon/task_inference.hpp"
#include "foon/taxonomy.hpp"
#include "foon/trace.hpp"
#include "foon/trace_gen.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<fs::path> subgraph_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw std::invalid_argument(dir.string() + " is not a directory");
    }
    std::vector<fs::path> files;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".sg") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) {
        throw std::invalid_argument("no .sg files in " + dir.string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<foon::Subgraph> load_subgraph_dir(const fs::path& dir) {
    std::vector<foon::Subgraph> graphs;
    for (const fs::path& path : subgraph_files(dir)) {
        graphs.push_back(foon::load_subgraph_file(path));
    }
    return graphs;
}

std::vector<foon::CorpusVideo> load_corpus(const fs::path& dir) {
    std::vector<foon::CorpusVideo> corpus;
    for (const fs::path& path : subgraph_files(dir)) {
        foon::CorpusVideo video;
        video.annotation = foon::load_subgraph_file(path);
        fs::path trace_path = path;
        trace_path.replace_extension();
        trace_path += ".trace.json";
        if (!fs::exists(trace_path)) {
            throw std::invalid_argument("missing trace file " + trace_path.string());
        }
        video.trace = foon::load_trace_file(trace_path);
        if (video.trace.video_id != video.annotation.video_id) {
            throw std::invalid_argument(trace_path.string() + ": video_id '" +
                                        video.trace.video_id + "' does not match annotation '" +
                                        video.annotation.video_id + "'");
        }
        if (video.trace.segments.size() != video.annotation.units.size()) {
            throw std::invalid_argument(trace_path.string() + ": " +
                                        std::to_string(video.trace.segments.size()) +
                                        " segments for " +
                                        std::to_string(video.annotation.units.size()) +
                                        " annotated units");
        }
        corpus.push_back(std::move(video));
    }
    return corpus;
}

foon::MotionTaxonomy load_taxonomy(const std::string& path) {
    if (path.empty()) return foon::default_taxonomy();
    if (!fs::exists(path)) {
        throw std::invalid_argument("taxonomy file not found: " + path);
    }
    return foon::parse_taxonomy(foon::read_text_file(path));
}

foon::PipelineConfig load_config(const std::string& path, int top_k) {
    foon::PipelineConfig cfg;
    if (!path.empty()) cfg = foon::load_config_file(path);
    if (top_k > 0) cfg.top_k = top_k;
    foon::validate_config(cfg);
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        foon::write_text_file(out_path, text);
    }
}

void print_stats(const foon::UniversalFoon& foon) {
    foon::FoonStats s = foon::stats(foon);
    std::cout << "units=" << s.units << " object_nodes=" << s.object_nodes
              << " motion_nodes=" << s.motion_nodes << " edges=" << s.edges << "\n";
}

std::string recognition_csv(const foon::UniversalFoon& foon, const std::string& video_id,
                            const std::vector<std::vector<foon::CandidateUnit>>& segments) {
    std::string out = "video_id,segment_index,rank,motion,unit_key,probe_overlap,conf_foon,conf_motion\n";
    for (size_t seg = 0; seg < segments.size(); ++seg) {
        const std::vector<foon::CandidateUnit>& cands = segments[seg];
        if (cands.empty()) {
            out += video_id + "," + std::to_string(seg) + ",1,UNKNOWN,,,,\n";
            continue;
        }
        for (size_t rank = 0; rank < cands.size(); ++rank) {
            const foon::CandidateUnit& c = cands[rank];
            const foon::FunctionalUnit& unit = foon.units[static_cast<size_t>(c.unit_id)];
            out += video_id;
            out += ',';
            out += std::to_string(seg);
            out += ',';
            out += std::to_string(rank + 1);
            out += ',';
            out += unit.motion.label;
            out += ',';
            out += foon.keys[static_cast<size_t>(c.unit_id)];
            out += ',';
            out += fmt6(c.probe_overlap);
            out += ',';
            out += fmt6(c.conf_foon);
            out += ',';
            out += fmt6(c.conf_motion);
            out += '\n';
        }
    }
    return out;
}

int run_merge(const std::string& dir, const std::string& out) {
    std::vector<foon::Subgraph> graphs = load_subgraph_dir(dir);
    foon::UniversalFoon foon = foon::merge(graphs);
    foon::write_text_file(out, foon::serialize_foon(foon));
    print_stats(foon);
    return 0;
}

int run_stats(const std::string& foon_path) {
    print_stats(foon::load_foon_file(foon_path));
    return 0;
}

int run_recognize(const std::string& foon_path, const std::string& trace_path,
                  const std::string& config_path, const std::string& taxonomy_path, int top_k,
                  const std::string& out) {
    foon::UniversalFoon foon = foon::load_foon_file(foon_path);
    foon::VideoTrace trace = foon::load_trace_file(trace_path);
    foon::PipelineConfig cfg = load_config(config_path, top_k);
    foon::MotionTaxonomy taxonomy = load_taxonomy(taxonomy_path);
    auto segments = foon::recognize_segments(foon, trace, cfg, taxonomy);
    emit(recognition_csv(foon, trace.video_id, segments), out);
    return 0;
}

int run_evaluate(const std::string& corpus_dir, const std::string& config_path,
                 const std::string& taxonomy_path, int top_k, int jobs, const std::string& out) {
    std::vector<foon::CorpusVideo> corpus = load_corpus(corpus_dir);
    foon::PipelineConfig cfg = load_config(config_path, top_k);
    foon::MotionTaxonomy taxonomy = load_taxonomy(taxonomy_path);
    foon::EvalResult result = foon::leave_one_out(corpus, cfg, taxonomy, jobs);

    fs::create_directories(out);
    foon::write_text_file(fs::path(out) / "results.csv", foon::results_csv(result));
    foon::write_text_file(fs::path(out) / "summary.csv", foon::summary_csv(result));

    std::printf("%-4s %-10s %-10s %-10s\n", "k", "accuracy", "precision", "recall");
    for (const foon::PerKStats& s : result.per_k) {
        std::printf("%-4d %-10.6f %-10.6f %-10.6f\n", s.k, s.accuracy, s.precision, s.recall);
    }
    return 0;
}

int run_infer_task(const std::string& corpus_dir, const std::string& trace_path,
                   const std::string& config_path, const std::string& taxonomy_path, int top_k,
                   const std::string& out) {
    std::vector<foon::Subgraph> graphs = load_subgraph_dir(corpus_dir);
    std::vector<foon::RecipeCluster> clusters = foon::build_clusters(graphs);
    foon::UniversalFoon foon = foon::merge(graphs);
    foon::VideoTrace trace = foon::load_trace_file(trace_path);
    foon::PipelineConfig cfg = load_config(config_path, top_k);
    foon::MotionTaxonomy taxonomy = load_taxonomy(taxonomy_path);

    auto segments = foon::recognize_segments(foon, trace, cfg, taxonomy);
    foon::VideoSignature sig = foon::signature_of_recognition(foon, segments);
    if (sig.unit_keys.empty()) {
        std::cerr << "no functional units recognized in " << trace.video_id << "\n";
        return 3;
    }

    std::vector<foon::RecipeScore> scores =
        foon::classify_recipe(clusters, sig, cfg.w_fu, cfg.w_obj);
    std::string csv = "video_id,rank,recipe_class,score\n";
    for (size_t i = 0; i < scores.size(); ++i) {
        csv += trace.video_id + "," + std::to_string(i + 1) + "," + scores[i].recipe_class + "," +
               fmt6(scores[i].score) + "\n";
    }
    emit(csv, out);
    return 0;
}

int run_gen_trace(const std::string& subgraph_path, const std::string& taxonomy_path,
                  std::uint64_t seed, const foon::NoiseParams& noise,
                  const foon::TraceLayout& layout, const std::string& out) {
    foon::Subgraph graph = foon::load_subgraph_file(subgraph_path);
    foon::MotionTaxonomy taxonomy = load_taxonomy(taxonomy_path);
    foon::VideoTrace trace = foon::gen_trace(graph, taxonomy, seed, noise, layout);
    emit(foon::serialize_trace(trace) + "\n", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Functional object-oriented network toolkit for video understanding"};
    app.require_subcommand(1);

    std::string dir, foon_path, trace_path, config_path, taxonomy_path, out_path;
    int top_k = 0;
    int jobs = 1;
    std::uint64_t seed = 0;
    foon::NoiseParams noise;
    foon::TraceLayout layout;

    CLI::App* merge_cmd = app.add_subcommand("merge", "Merge subgraph files into one network");
    merge_cmd->add_option("dir", dir, "Directory of .sg files")->required();
    merge_cmd->add_option("--out", out_path, "Output network file")->required();

    CLI::App* stats_cmd = app.add_subcommand("stats", "Print node and edge counts of a network");
    stats_cmd->add_option("--foon", foon_path, "Network file")->required();

    CLI::App* rec_cmd = app.add_subcommand("recognize", "Recognize functional units in a trace");
    rec_cmd->add_option("--foon", foon_path, "Network file")->required();
    rec_cmd->add_option("--trace", trace_path, "Perception trace JSON")->required();
    rec_cmd->add_option("--config", config_path, "Pipeline config file");
    rec_cmd->add_option("--taxonomy", taxonomy_path, "Motion taxonomy file");
    rec_cmd->add_option("--top-k", top_k, "Candidates kept per segment");
    rec_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");

    CLI::App* eval_cmd = app.add_subcommand("evaluate", "Leave-one-out evaluation of a corpus");
    eval_cmd->add_option("dir", dir, "Corpus directory (<id>.sg + <id>.trace.json pairs)")
        ->required();
    eval_cmd->add_option("--config", config_path, "Pipeline config file");
    eval_cmd->add_option("--taxonomy", taxonomy_path, "Motion taxonomy file");
    eval_cmd->add_option("--top-k", top_k, "Candidates kept per segment");
    eval_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    eval_cmd->add_option("--out", out_path, "Output directory for results.csv and summary.csv")
        ->required();

    CLI::App* infer_cmd = app.add_subcommand("infer-task", "Classify a trace into a recipe class");
    infer_cmd->add_option("dir", dir, "Directory of labeled .sg files")->required();
    infer_cmd->add_option("--trace", trace_path, "Perception trace JSON")->required();
    infer_cmd->add_option("--config", config_path, "Pipeline config file");
    infer_cmd->add_option("--taxonomy", taxonomy_path, "Motion taxonomy file");
    infer_cmd->add_option("--top-k", top_k, "Candidates kept per segment");
    infer_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");

    CLI::App* gen_cmd = app.add_subcommand("gen-trace", "Generate a synthetic trace for a subgraph");
    gen_cmd->add_option("subgraph", foon_path, "Annotated subgraph file")->required();
    gen_cmd->add_option("--seed", seed, "RNG seed")->required();
    gen_cmd->add_option("--taxonomy", taxonomy_path, "Motion taxonomy file");
    gen_cmd->add_option("--drop", noise.drop_prob, "Per-frame in-action drop probability");
    gen_cmd->add_option("--spurious", noise.spurious_prob, "Per-frame background probability");
    gen_cmd->add_option("--jitter", noise.jitter_px, "Box position jitter, px");
    gen_cmd->add_option("--motion-eps", noise.motion_eps, "Motion-score mass off the true class");
    gen_cmd->add_option("--frames", layout.frames_per_segment, "Frames per segment");
    gen_cmd->add_option("--width", layout.frame_width, "Frame width, px");
    gen_cmd->add_option("--height", layout.frame_height, "Frame height, px");
    gen_cmd->add_option("--out", out_path, "Output JSON (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (merge_cmd->parsed()) return run_merge(dir, out_path);
        if (stats_cmd->parsed()) return run_stats(foon_path);
        if (rec_cmd->parsed())
            return run_recognize(foon_path, trace_path, config_path, taxonomy_path, top_k, out_path);
        if (eval_cmd->parsed())
            return run_evaluate(dir, config_path, taxonomy_path, top_k, jobs, out_path);
        if (infer_cmd->parsed())
            return run_infer_task(dir, trace_path, config_path, taxonomy_path, top_k, out_path);
        if (gen_cmd->parsed())
            return run_gen_trace(foon_path, taxonomy_path, seed, noise, layout, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
