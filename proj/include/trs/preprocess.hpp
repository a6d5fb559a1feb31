#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "trs/filters.hpp"
#include "trs/types.hpp"
#include "trs/wavelet.hpp"

namespace trs {

struct FilterConfig {
    std::string dwt_wavelet = "db8";  // only db8 implemented
    int dwt_levels = 9;
    double bandstop_center_hz = 50.0;
    double bandstop_bandwidth_hz = 2.0;
    double lowpass_cutoff_hz = 40.0;
    int lowpass_order = 4;
    double r_search_radius_ms = 50.0;
    double t_search_radius_ms = 80.0;
    double flip_search_radius_ms = 60.0;
};

inline void validate_filter_config(const FilterConfig& cfg, double fs) {
    if (cfg.dwt_wavelet != "db8")
        throw ConfigError("unsupported wavelet '" + cfg.dwt_wavelet + "' (only db8)");
    if (cfg.dwt_levels < 1) throw ConfigError("dwt_levels must be >= 1");
    if (cfg.lowpass_cutoff_hz <= 0 || cfg.lowpass_cutoff_hz >= fs / 2)
        throw ConfigError("lowpass_cutoff_hz must lie in (0, fs/2)");
    const double lo = cfg.bandstop_center_hz - cfg.bandstop_bandwidth_hz / 2;
    const double hi = cfg.bandstop_center_hz + cfg.bandstop_bandwidth_hz / 2;
    if (lo <= 0 || hi >= fs / 2) throw ConfigError("bandstop band must lie inside (0, fs/2)");
    if (cfg.r_search_radius_ms <= 0 || cfg.t_search_radius_ms <= 0 ||
        cfg.flip_search_radius_ms <= 0)
        throw ConfigError("peak search radii must be > 0");
}

// Subtract the level-9 wavelet approximation (the drifting baseline).
inline EcgSegment remove_baseline_drift(const EcgSegment& seg,
                                        const FilterConfig& cfg = {}) {
    validate_segment(seg);
    const auto fb = wavelet::db8_bank();
    if (seg.samples.size() < fb.length())
        throw PreprocessError("segment shorter than wavelet filter length");
    const auto dec = wavelet::decompose(seg.samples, cfg.dwt_levels, fb);
    const auto baseline = wavelet::approximation(dec, fb);
    EcgSegment out = seg;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] -= baseline[i];
    return out;
}

inline EcgSegment suppress_mains(const EcgSegment& seg, const FilterConfig& cfg = {}) {
    validate_segment(seg);
    validate_filter_config(cfg, seg.sampling_rate_hz);
    const auto notch = filters::design_notch(cfg.bandstop_center_hz, cfg.bandstop_bandwidth_hz,
                                             seg.sampling_rate_hz);
    EcgSegment out = seg;
    out.samples = filters::filtfilt({notch}, seg.samples);
    return out;
}

inline EcgSegment lowpass(const EcgSegment& seg, const FilterConfig& cfg = {}) {
    validate_segment(seg);
    validate_filter_config(cfg, seg.sampling_rate_hz);
    const auto cascade = filters::design_butterworth_lowpass(
        cfg.lowpass_cutoff_hz, seg.sampling_rate_hz, cfg.lowpass_order);
    EcgSegment out = seg;
    out.samples = filters::filtfilt(cascade, seg.samples);
    return out;
}

namespace detail {

inline std::size_t radius_samples(double radius_ms, double fs) {
    return static_cast<std::size_t>(std::lround(radius_ms * fs / 1000.0));
}

struct Window {
    std::size_t lo, hi;  // inclusive
};

inline Window clipped_window(std::size_t center, std::size_t radius, std::size_t n) {
    Window w;
    w.lo = center >= radius ? center - radius : 0;
    w.hi = std::min(center + radius, n - 1);
    return w;
}

inline std::size_t argmax_in(const std::vector<double>& x, Window w) {
    std::size_t best = w.lo;
    for (std::size_t i = w.lo + 1; i <= w.hi; ++i)
        if (x[i] > x[best]) best = i;
    return best;
}

inline std::size_t argmin_in(const std::vector<double>& x, Window w) {
    std::size_t best = w.lo;
    for (std::size_t i = w.lo + 1; i <= w.hi; ++i)
        if (x[i] < x[best]) best = i;
    return best;
}

// Drop beats whose relocated indices collide with or precede an earlier
// beat's, so R/T stay beat-paired and strictly increasing.
inline PeakAnnotations keep_increasing_pairs(const std::vector<std::size_t>& r,
                                             const std::vector<std::size_t>& t) {
    PeakAnnotations out;
    for (std::size_t b = 0; b < r.size(); ++b) {
        const bool ok_r = out.r_indices.empty() || r[b] > out.r_indices.back();
        const bool ok_t = out.t_indices.empty() || t[b] > out.t_indices.back();
        if (ok_r && ok_t) {
            out.r_indices.push_back(r[b]);
            out.t_indices.push_back(t[b]);
        }
    }
    return out;
}

}  // namespace detail

// Re-search peak positions after filtering. R snaps to the window maximum;
// T snaps to the maximum or minimum depending on its pre-relocation polarity.
inline PeakAnnotations relocate_peaks(const EcgSegment& seg, const PeakAnnotations& ann,
                                      const FilterConfig& cfg = {}) {
    validate_annotations(ann, seg);
    const auto& x = seg.samples;
    const std::size_t n = x.size();
    const std::size_t r_rad = detail::radius_samples(cfg.r_search_radius_ms, seg.sampling_rate_hz);
    const std::size_t t_rad = detail::radius_samples(cfg.t_search_radius_ms, seg.sampling_rate_hz);

    std::vector<std::size_t> r_new, t_new;
    for (std::size_t r : ann.r_indices)
        r_new.push_back(detail::argmax_in(x, detail::clipped_window(r, r_rad, n)));
    for (std::size_t t : ann.t_indices) {
        const auto w = detail::clipped_window(t, t_rad, n);
        t_new.push_back(x[t] >= 0 ? detail::argmax_in(x, w) : detail::argmin_in(x, w));
    }
    return detail::keep_increasing_pairs(r_new, t_new);
}

struct FlipResult {
    EcgSegment segment;
    PeakAnnotations annotations;
    bool flipped = false;
};

// When most beats have a negative extremum of greater magnitude than the
// positive R near the R marker, the marker is really on a Q or S wave: flip
// the whole segment and reassign R to those extrema, then re-relocate T.
inline FlipResult flip_negative_qrs(const EcgSegment& seg, const PeakAnnotations& ann,
                                    const FilterConfig& cfg = {}) {
    validate_annotations(ann, seg);
    const auto& x = seg.samples;
    const std::size_t n = x.size();
    const std::size_t rad = detail::radius_samples(cfg.flip_search_radius_ms, seg.sampling_rate_hz);

    std::size_t dominant_negative = 0;
    std::vector<std::size_t> neg_extrema(ann.r_indices.size());
    std::vector<bool> neg_dominates(ann.r_indices.size(), false);
    for (std::size_t b = 0; b < ann.r_indices.size(); ++b) {
        const auto w = detail::clipped_window(ann.r_indices[b], rad, n);
        const std::size_t imax = detail::argmax_in(x, w);
        const std::size_t imin = detail::argmin_in(x, w);
        neg_extrema[b] = imin;
        if (-x[imin] > x[imax]) {
            neg_dominates[b] = true;
            ++dominant_negative;
        }
    }

    FlipResult res;
    res.segment = seg;
    res.annotations = ann;
    if (ann.r_indices.empty() || 2 * dominant_negative <= ann.r_indices.size()) return res;

    res.flipped = true;
    for (double& v : res.segment.samples) v = -v;
    std::vector<std::size_t> r_new(ann.r_indices.size()), t_new(ann.t_indices.size());
    const std::size_t t_rad =
        detail::radius_samples(cfg.t_search_radius_ms, seg.sampling_rate_hz);
    for (std::size_t b = 0; b < ann.r_indices.size(); ++b) {
        if (neg_dominates[b]) {
            r_new[b] = neg_extrema[b];
        } else {
            const auto w = detail::clipped_window(ann.r_indices[b], rad, n);
            r_new[b] = detail::argmax_in(res.segment.samples, w);
        }
        // T polarity inverted with the signal; re-search
        const std::size_t t = ann.t_indices[b];
        const auto w = detail::clipped_window(t, t_rad, n);
        t_new[b] = res.segment.samples[t] >= 0 ? detail::argmax_in(res.segment.samples, w)
                                               : detail::argmin_in(res.segment.samples, w);
    }
    res.annotations = detail::keep_increasing_pairs(r_new, t_new);
    return res;
}

// Annotation-free filtering chain, used at inference time where no peak
// markers exist: drift removal, mains suppression, lowpass.
inline EcgSegment filter_signal(const EcgSegment& seg, const FilterConfig& cfg = {}) {
    return lowpass(suppress_mains(remove_baseline_drift(seg, cfg), cfg), cfg);
}

struct PreprocessResult {
    EcgSegment segment;
    PeakAnnotations annotations;
    bool flipped = false;
};

// Full training-time chain: drift removal -> bandstop -> lowpass ->
// peak relocation -> negative-QRS flipping.
inline PreprocessResult preprocess_pipeline(const EcgSegment& seg, const PeakAnnotations& ann,
                                            const FilterConfig& cfg = {}) {
    EcgSegment filtered = filter_signal(seg, cfg);
    PeakAnnotations relocated = relocate_peaks(filtered, ann, cfg);
    FlipResult flip = flip_negative_qrs(filtered, relocated, cfg);
    return {std::move(flip.segment), std::move(flip.annotations), flip.flipped};
}

}  // namespace trs
