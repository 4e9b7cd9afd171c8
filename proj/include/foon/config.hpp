// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <string>

namespace foon {

/// Tunable parameters of the recognition pipeline. Defaults follow the
/// values the library was calibrated with; all of them can be overridden
/// from a key=value config file.
struct PipelineConfig {
    // Object confidence mixture (weights are renormalized to sum to 1).
    double alpha = 1.0 / 3.0;  // optical-flow term
    double beta = 1.0 / 3.0;   // hand-distance term
    double gamma = 1.0 / 3.0;  // appearance-frequency term

    // Hand-distance falloff, as a fraction of the frame diagonal.
    double sigma_dist_frac = 0.15;

    // Objects whose appearance frequency is below this are dropped from
    // the objects-in-action set.
    double freq_threshold = 0.2;

    // Unit confidence: bonus weight and penalty weights for unused and
    // extra objects.
    double kappa = 0.2;
    double lambda = 0.2;
    double eta = 0.2;

    // Weight of the motion-classifier score fused into the unit confidence.
    double alpha_fusion = 0.15;

    // Minimum fraction of a unit's object nodes that must match the
    // objects-in-action for the unit to become a candidate.
    double probe_threshold = 0.34;

    // Candidates kept per segment.
    int top_k = 10;

    // A prediction counts as correct when both precision and recall of its
    // node overlap against the ground truth exceed this.
    double accuracy_threshold = 0.8;

    // Video-signature similarity mixture for task inference (sum to 1).
    double w_fu = 0.5;
    double w_obj = 0.5;

    bool operator==(const PipelineConfig&) const = default;
};

/// Parse `key = value` lines ('#' comments, blank lines allowed) on top of
/// the defaults. Unknown keys and out-of-range values throw
/// std::invalid_argument.
PipelineConfig parse_config(const std::string& text);

PipelineConfig load_config_file(const std::filesystem::path& path);

/// Range checks shared by parse_config and programmatic construction.
void validate_config(const PipelineConfig& cfg);

}  // namespace foon
