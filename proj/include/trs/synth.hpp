#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "trs/types.hpp"

namespace trs {

struct SynthConfig {
    double sampling_rate_hz = 500.0;
    double heart_rate_bpm = 60.0;       // [30, 180]
    double r_amplitude_mv = 1.0;
    double tr_ratio_target = 0.3;       // [-1, 1]
    double baseline_amp_mv = 0.0;
    double baseline_freq_hz = 0.3;
    double mains_amp_mv = 0.0;          // 50 Hz component
    double noise_std_mv = 0.0;
    std::uint64_t seed = 0;
};

inline void validate_synth_config(const SynthConfig& cfg) {
    if (cfg.sampling_rate_hz <= 0) throw ConfigError("synth: sampling_rate_hz must be > 0");
    if (cfg.heart_rate_bpm < 30 || cfg.heart_rate_bpm > 180)
        throw ConfigError("synth: heart_rate_bpm must lie in [30, 180]");
    if (cfg.r_amplitude_mv <= 0) throw ConfigError("synth: r_amplitude_mv must be > 0");
    if (cfg.tr_ratio_target < -1 || cfg.tr_ratio_target > 1)
        throw ConfigError("synth: tr_ratio_target must lie in [-1, 1]");
    if (cfg.noise_std_mv < 0) throw ConfigError("synth: noise_std_mv must be >= 0");
}

namespace synth_detail {

struct Bump {
    double amplitude;  // relative to R amplitude
    double offset_s;   // from R center
    double sigma_s;
};

// P, Q, R, S morphology; T handled separately so its amplitude can be
// solved against the target ratio.
inline const std::vector<Bump>& base_bumps() {
    static const std::vector<Bump> bumps = {
        {0.08, -0.180, 0.022},   // P
        {-0.10, -0.035, 0.008},  // Q
        {1.00, 0.000, 0.009},    // R
        {-0.14, 0.035, 0.008},   // S
    };
    return bumps;
}

inline constexpr double kTOffsetS = 0.25;
inline constexpr double kTSigmaS = 0.045;
inline constexpr double kStartMarginS = 0.35;
inline constexpr double kEndMarginS = 0.45;

inline void add_bump(std::vector<double>& x, double fs, double center_s, double amp,
                     double sigma_s) {
    // Gaussians decay fast; 6 sigma covers everything above 1e-7 of the peak
    const double half = 6.0 * sigma_s;
    const long lo = std::max(0L, static_cast<long>(std::ceil((center_s - half) * fs)));
    const long hi = std::min(static_cast<long>(x.size()) - 1,
                             static_cast<long>(std::floor((center_s + half) * fs)));
    for (long i = lo; i <= hi; ++i) {
        const double dt = static_cast<double>(i) / fs - center_s;
        x[static_cast<std::size_t>(i)] += amp * std::exp(-dt * dt / (2.0 * sigma_s * sigma_s));
    }
}

}  // namespace synth_detail

struct SynthSegment {
    EcgSegment segment;        // with noise applied
    EcgSegment clean;          // noise-free signal
    PeakAnnotations annotations;
};

// Build a PQRST train from Gaussian bumps. The T amplitude is solved so the
// clean signal's average T:R ratio over the annotated beats equals
// tr_ratio_target exactly; annotations index the exact bump-center samples.
inline SynthSegment generate_segment(const SynthConfig& cfg, double duration_s,
                                     const std::string& lead_id = "synth") {
    validate_synth_config(cfg);
    const double fs = cfg.sampling_rate_hz;
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * fs));
    if (n == 0) throw ConfigError("synth: duration too short");

    const double period_s = 60.0 / cfg.heart_rate_bpm;
    std::vector<std::size_t> r_idx, t_idx;
    for (double c = synth_detail::kStartMarginS; c <= duration_s - synth_detail::kEndMarginS;
         c += period_s) {
        const std::size_t ri = static_cast<std::size_t>(std::llround(c * fs));
        const std::size_t ti =
            static_cast<std::size_t>(std::llround((c + synth_detail::kTOffsetS) * fs));
        if (ti >= n) break;
        r_idx.push_back(ri);
        t_idx.push_back(ti);
    }
    if (r_idx.size() < 2) throw ConfigError("synth: duration too short for two beats");

    // u: P/Q/R/S component, v: unit-amplitude T component
    std::vector<double> u(n, 0.0), v(n, 0.0);
    for (std::size_t b = 0; b < r_idx.size(); ++b) {
        const double center_s = static_cast<double>(r_idx[b]) / fs;
        for (const auto& bump : synth_detail::base_bumps())
            synth_detail::add_bump(u, fs, center_s + bump.offset_s,
                                   bump.amplitude * cfg.r_amplitude_mv, bump.sigma_s);
        synth_detail::add_bump(v, fs, static_cast<double>(t_idx[b]) / fs, 1.0,
                               synth_detail::kTSigmaS);
    }

    double su_r = 0, su_t = 0, sv_r = 0, sv_t = 0;
    for (std::size_t b = 0; b < r_idx.size(); ++b) {
        su_r += u[r_idx[b]];
        su_t += u[t_idx[b]];
        sv_r += v[r_idx[b]];
        sv_t += v[t_idx[b]];
    }
    const double rho = cfg.tr_ratio_target;
    const double t_amp = (rho * su_r - su_t) / (sv_t - rho * sv_r);

    SynthSegment out;
    out.clean.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.clean.samples[i] = u[i] + t_amp * v[i];
    out.clean.sampling_rate_hz = fs;
    out.clean.lead_id = lead_id;

    out.segment = out.clean;
    if (cfg.baseline_amp_mv != 0 || cfg.mains_amp_mv != 0 || cfg.noise_std_mv > 0) {
        std::mt19937_64 gen(cfg.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            double extra = 0.0;
            extra += cfg.baseline_amp_mv *
                     std::sin(2.0 * std::numbers::pi * cfg.baseline_freq_hz * t);
            extra += cfg.mains_amp_mv * std::sin(2.0 * std::numbers::pi * 50.0 * t);
            if (cfg.noise_std_mv > 0) extra += cfg.noise_std_mv * gauss(gen);
            out.segment.samples[i] += extra;
        }
    }

    out.annotations.r_indices = std::move(r_idx);
    out.annotations.t_indices = std::move(t_idx);
    return out;
}

struct ScheduleEntry {
    double duration_s = 10.0;
    SynthConfig config;
};

struct SynthRecording {
    Recording recording;             // noisy signal + concatenated annotations
    std::vector<double> clean;       // noise-free samples
    std::vector<double> window_true_ratios;  // one per 10-second window
};

// Concatenate schedule entries into one recording with piecewise-constant
// configured T:R ratio. Per-window truths are computed from the clean signal
// and annotations, so windows that straddle entries still get exact labels.
inline SynthRecording generate_recording(const std::vector<ScheduleEntry>& schedule,
                                         const std::string& lead_id = "synth") {
    if (schedule.empty()) throw ConfigError("synth: empty schedule");
    const double fs = schedule.front().config.sampling_rate_hz;
    double total_s = 0.0;
    for (const auto& e : schedule) {
        if (e.config.sampling_rate_hz != fs)
            throw ConfigError("synth: schedule entries must share one sampling rate");
        total_s += e.duration_s;
    }
    const double windows_exact = total_s / 10.0;
    if (std::abs(windows_exact - std::round(windows_exact)) > 1e-9)
        throw ConfigError("synth: total schedule duration must be a multiple of 10 s");

    SynthRecording out;
    out.recording.sampling_rate_hz = fs;
    out.recording.lead_id = lead_id;
    std::uint64_t entry_no = 0;
    for (const auto& e : schedule) {
        SynthConfig cfg = e.config;
        cfg.seed = hash_combine(cfg.seed, 0x5eedULL + entry_no++);
        const SynthSegment seg = generate_segment(cfg, e.duration_s, lead_id);
        const std::size_t offset = out.recording.samples.size();
        out.recording.samples.insert(out.recording.samples.end(), seg.segment.samples.begin(),
                                     seg.segment.samples.end());
        out.clean.insert(out.clean.end(), seg.clean.samples.begin(), seg.clean.samples.end());
        for (std::size_t r : seg.annotations.r_indices)
            out.recording.annotations.r_indices.push_back(r + offset);
        for (std::size_t t : seg.annotations.t_indices)
            out.recording.annotations.t_indices.push_back(t + offset);
    }

    const std::size_t win_len = static_cast<std::size_t>(std::llround(10.0 * fs));
    const std::size_t n_windows = out.clean.size() / win_len;
    const auto& ann = out.recording.annotations;
    for (std::size_t w = 0; w < n_windows; ++w) {
        const std::size_t lo = w * win_len, hi = lo + win_len;
        double st = 0, sr = 0;
        for (std::size_t b = 0; b < ann.r_indices.size(); ++b) {
            if (ann.r_indices[b] >= lo && ann.r_indices[b] < hi && ann.t_indices[b] >= lo &&
                ann.t_indices[b] < hi) {
                sr += out.clean[ann.r_indices[b]];
                st += out.clean[ann.t_indices[b]];
            }
        }
        out.window_true_ratios.push_back(sr != 0 ? st / sr : 0.0);
    }
    return out;
}

}  // namespace trs
