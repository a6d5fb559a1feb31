#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trs/common.hpp"

namespace trs {

// One 10-second single-lead window of sampled ECG, in millivolts.
struct EcgSegment {
    std::vector<double> samples;
    double sampling_rate_hz = 0.0;
    std::string lead_id;
    double start_time_s = 0.0;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return sampling_rate_hz > 0 ? static_cast<double>(samples.size()) / sampling_rate_hz : 0.0;
    }
};

inline void validate_segment(const EcgSegment& seg) {
    if (seg.sampling_rate_hz <= 0)
        throw ValidationError("segment '" + seg.lead_id + "': sampling_rate_hz must be > 0");
    if (!all_finite(seg.samples))
        throw ValidationError("segment '" + seg.lead_id + "': non-finite sample");
}

// Beat-paired peak indices into one segment. r_indices[i] and t_indices[i]
// belong to the same beat.
struct PeakAnnotations {
    std::vector<std::size_t> r_indices;
    std::vector<std::size_t> t_indices;

    std::size_t beats() const { return r_indices.size(); }
};

inline void validate_annotations(const PeakAnnotations& ann, const EcgSegment& seg,
                                 const std::string& context = "") {
    const std::string where = context.empty() ? seg.lead_id : context;
    if (ann.r_indices.size() != ann.t_indices.size())
        throw ValidationError("annotations '" + where + "': R/T count mismatch");
    auto check = [&](const std::vector<std::size_t>& idx, const char* kind) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= seg.samples.size())
                throw ValidationError("annotations '" + where + "': " + kind + " index " +
                                      std::to_string(idx[i]) + " out of range (segment has " +
                                      std::to_string(seg.samples.size()) + " samples)");
            if (i > 0 && idx[i] <= idx[i - 1])
                throw ValidationError("annotations '" + where + "': " + kind +
                                      " indices not strictly increasing");
        }
    };
    check(ann.r_indices, "R");
    check(ann.t_indices, "T");
}

struct LabeledExample {
    EcgSegment segment;
    PeakAnnotations annotations;
    double tr_ratio = 0.0;
};

struct DatasetSplit {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> validation;
    std::vector<LabeledExample> test;
    int fold_index = 0;
};

// A full single-lead recording (possibly many minutes/hours) plus its
// beat annotations, as loaded from disk or produced by the generator.
struct Recording {
    std::vector<double> samples;
    double sampling_rate_hz = 0.0;
    std::string lead_id;
    PeakAnnotations annotations;

    double duration_s() const {
        return sampling_rate_hz > 0 ? static_cast<double>(samples.size()) / sampling_rate_hz : 0.0;
    }
};

}  // namespace trs
