// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>

#include "foon/graph.hpp"
#include "foon/taxonomy.hpp"
#include "foon/trace.hpp"

namespace foon {

/// Corruption applied to a generated trace. Zero noise yields a trace whose
/// objects in action are exactly the unit's input labels.
struct NoiseParams {
    double drop_prob = 0;      // chance to omit an in-action detection, per frame
    double spurious_prob = 0;  // chance of one far-away background detection, per frame
    double jitter_px = 0;      // uniform +-jitter on in-action box positions
    double motion_eps = 0.05;  // motion-score mass spread over the wrong classes
};

struct TraceLayout {
    int frame_width = 1280;
    int frame_height = 720;
    int frames_per_segment = 20;
};

/// Synthesize a perception trace for an annotated subgraph: one segment per
/// functional unit, the hand pinned to the frame center, the unit's input
/// objects moving on a tight circle around it, and background objects drawn
/// from the other units' labels placed in the far corners. Deterministic in
/// the seed: equal seeds give byte-identical traces.
VideoTrace gen_trace(const Subgraph& graph, const MotionTaxonomy& taxonomy, std::uint64_t seed,
                     const NoiseParams& noise = {}, const TraceLayout& layout = {});

}  // namespace foon
