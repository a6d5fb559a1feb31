#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trs/types.hpp"

namespace trs {

// Average T:R ratio of a segment: sum of T amplitudes over sum of R
// amplitudes, sign preserved.
inline double average_tr_ratio(const EcgSegment& seg, const PeakAnnotations& ann) {
    validate_annotations(ann, seg);
    if (ann.beats() == 0) throw DegenerateError("average_tr_ratio: no annotated beats");
    double st = 0.0, sr = 0.0;
    for (std::size_t b = 0; b < ann.beats(); ++b) {
        st += seg.samples[ann.t_indices[b]];
        sr += seg.samples[ann.r_indices[b]];
    }
    if (sr == 0.0) throw DegenerateError("average_tr_ratio: zero R-amplitude sum");
    return st / sr;
}

// |ratio| above this is physiologically implausible; callers may warn.
inline constexpr double kRatioSanityBound = 1.5;

// Cut a recording into contiguous non-overlapping 10-second windows, pairing
// each with the beats that fall entirely inside it (indices rebased).
// A trailing remainder shorter than 10 s is dropped.
inline std::vector<std::pair<EcgSegment, PeakAnnotations>> window_recording(
    const Recording& rec, double window_s = 10.0) {
    if (rec.sampling_rate_hz <= 0) throw ValidationError("recording: sampling_rate_hz must be > 0");
    for (std::size_t b = 0; b < rec.annotations.r_indices.size(); ++b) {
        if (rec.annotations.r_indices[b] >= rec.samples.size() ||
            rec.annotations.t_indices[b] >= rec.samples.size())
            throw ValidationError("recording '" + rec.lead_id +
                                  "': annotation index out of range");
    }
    const std::size_t win_len =
        static_cast<std::size_t>(std::llround(window_s * rec.sampling_rate_hz));
    if (win_len == 0 || rec.samples.size() < win_len)
        throw ValidationError("recording '" + rec.lead_id + "' shorter than one window");

    std::vector<std::pair<EcgSegment, PeakAnnotations>> out;
    const std::size_t n_windows = rec.samples.size() / win_len;
    for (std::size_t w = 0; w < n_windows; ++w) {
        const std::size_t lo = w * win_len, hi = lo + win_len;
        EcgSegment seg;
        seg.samples.assign(rec.samples.begin() + static_cast<long>(lo),
                           rec.samples.begin() + static_cast<long>(hi));
        seg.sampling_rate_hz = rec.sampling_rate_hz;
        seg.lead_id = rec.lead_id;
        seg.start_time_s = static_cast<double>(lo) / rec.sampling_rate_hz;
        PeakAnnotations ann;
        for (std::size_t b = 0; b < rec.annotations.r_indices.size(); ++b) {
            const std::size_t r = rec.annotations.r_indices[b];
            const std::size_t t = rec.annotations.t_indices[b];
            if (r >= lo && r < hi && t >= lo && t < hi) {
                ann.r_indices.push_back(r - lo);
                ann.t_indices.push_back(t - lo);
            }
        }
        out.emplace_back(std::move(seg), std::move(ann));
    }
    return out;
}

// Label every window of a recording. Degenerate windows (no beats, zero
// R sum) are excluded; the reason is reported through `log`.
inline std::vector<LabeledExample> label_windows(
    const Recording& rec,
    const std::function<void(const std::string&)>& log = [](const std::string&) {}) {
    std::vector<LabeledExample> out;
    auto windows = window_recording(rec);
    for (std::size_t w = 0; w < windows.size(); ++w) {
        auto& [seg, ann] = windows[w];
        try {
            const double ratio = average_tr_ratio(seg, ann);
            if (std::abs(ratio) > kRatioSanityBound)
                log("window " + std::to_string(w) + " of '" + rec.lead_id + "': |T:R| = " +
                    std::to_string(ratio) + " exceeds sanity bound " +
                    std::to_string(kRatioSanityBound));
            out.push_back({std::move(seg), std::move(ann), ratio});
        } catch (const DegenerateError& e) {
            log("window " + std::to_string(w) + " of '" + rec.lead_id +
                "' excluded: " + e.what());
        }
    }
    return out;
}

// 10-fold-style cross-validation splits. Test sets partition the primary
// dataset; validation is 20% of the remaining primary data; bolster examples
// join every fold's training set and never appear in validation or test.
inline std::vector<DatasetSplit> make_cv_splits(const std::vector<LabeledExample>& primary,
                                                const std::vector<LabeledExample>& bolster,
                                                int folds, std::uint64_t seed) {
    if (folds < 2) throw ConfigError("make_cv_splits: folds must be >= 2");
    if (primary.size() < static_cast<std::size_t>(folds))
        throw ConfigError("make_cv_splits: fewer primary examples than folds");

    std::vector<std::size_t> order(primary.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 gen(seed);
    std::shuffle(order.begin(), order.end(), gen);

    // near-equal chunk sizes; the first (n % folds) chunks get one extra
    const std::size_t n = order.size();
    const std::size_t base = n / static_cast<std::size_t>(folds);
    const std::size_t extra = n % static_cast<std::size_t>(folds);

    std::vector<DatasetSplit> splits;
    std::size_t cursor = 0;
    for (int k = 0; k < folds; ++k) {
        const std::size_t len = base + (static_cast<std::size_t>(k) < extra ? 1 : 0);
        std::vector<std::size_t> test_idx(order.begin() + static_cast<long>(cursor),
                                          order.begin() + static_cast<long>(cursor + len));
        cursor += len;

        std::vector<std::size_t> rest;
        for (std::size_t i : order)
            if (std::find(test_idx.begin(), test_idx.end(), i) == test_idx.end())
                rest.push_back(i);

        std::mt19937_64 fold_gen(hash_combine(seed, 0xf01dULL + static_cast<std::uint64_t>(k)));
        std::shuffle(rest.begin(), rest.end(), fold_gen);
        const std::size_t n_val = static_cast<std::size_t>(
            std::llround(0.2 * static_cast<double>(rest.size())));

        DatasetSplit split;
        split.fold_index = k;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (i < n_val)
                split.validation.push_back(primary[rest[i]]);
            else
                split.train.push_back(primary[rest[i]]);
        }
        for (std::size_t i : test_idx) split.test.push_back(primary[i]);
        split.train.insert(split.train.end(), bolster.begin(), bolster.end());
        splits.push_back(std::move(split));
    }
    return splits;
}

}  // namespace trs
