#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "trs/common.hpp"

namespace trs::filters {

// Direct-form-II-transposed biquad, normalized so a0 == 1.
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

inline std::vector<double> apply_biquad(const Biquad& q, const std::vector<double>& x) {
    std::vector<double> y(x.size());
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = x[i];
        const double out = q.b0 * v + s1;
        s1 = q.b1 * v - q.a1 * out + s2;
        s2 = q.b2 * v - q.a2 * out;
        y[i] = out;
    }
    return y;
}

// Notch at center_hz with -3 dB bandwidth bandwidth_hz (RBJ cookbook).
inline Biquad design_notch(double center_hz, double bandwidth_hz, double fs) {
    if (center_hz <= 0 || center_hz >= fs / 2)
        throw ConfigError("notch center must lie in (0, fs/2)");
    if (bandwidth_hz <= 0 || center_hz - bandwidth_hz / 2 <= 0 ||
        center_hz + bandwidth_hz / 2 >= fs / 2)
        throw ConfigError("notch band must lie inside (0, fs/2)");
    const double w0 = 2.0 * std::numbers::pi * center_hz / fs;
    const double q_factor = center_hz / bandwidth_hz;
    const double alpha = std::sin(w0) / (2.0 * q_factor);
    const double a0 = 1.0 + alpha;
    Biquad q;
    q.b0 = 1.0 / a0;
    q.b1 = -2.0 * std::cos(w0) / a0;
    q.b2 = 1.0 / a0;
    q.a1 = -2.0 * std::cos(w0) / a0;
    q.a2 = (1.0 - alpha) / a0;
    return q;
}

// Butterworth lowpass of even order as a cascade of RBJ lowpass sections.
inline std::vector<Biquad> design_butterworth_lowpass(double cutoff_hz, double fs,
                                                      int order = 4) {
    if (cutoff_hz <= 0 || cutoff_hz >= fs / 2)
        throw ConfigError("lowpass cutoff must lie in (0, fs/2)");
    if (order < 2 || order % 2 != 0) throw ConfigError("lowpass order must be even and >= 2");
    const double w0 = 2.0 * std::numbers::pi * cutoff_hz / fs;
    std::vector<Biquad> sections;
    for (int k = 0; k < order / 2; ++k) {
        // pole-pair quality for the k-th Butterworth section
        const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * order);
        const double q_factor = 1.0 / (2.0 * std::sin(theta));
        const double alpha = std::sin(w0) / (2.0 * q_factor);
        const double cw = std::cos(w0);
        const double a0 = 1.0 + alpha;
        Biquad q;
        q.b0 = (1.0 - cw) / 2.0 / a0;
        q.b1 = (1.0 - cw) / a0;
        q.b2 = (1.0 - cw) / 2.0 / a0;
        q.a1 = -2.0 * cw / a0;
        q.a2 = (1.0 - alpha) / a0;
        sections.push_back(q);
    }
    return sections;
}

// Forward-backward (zero-phase) application of a biquad cascade, with
// odd-reflection edge padding to suppress startup transients.
inline std::vector<double> filtfilt(const std::vector<Biquad>& cascade,
                                    const std::vector<double>& x, std::size_t pad_len = 0) {
    if (x.empty()) return {};
    const std::size_t n = x.size();
    if (pad_len == 0) pad_len = std::min<std::size_t>(n - 1, 3 * 256);
    pad_len = std::min(pad_len, n - 1);

    std::vector<double> ext;
    ext.reserve(n + 2 * pad_len);
    for (std::size_t i = pad_len; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad_len; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    for (const Biquad& q : cascade) ext = apply_biquad(q, ext);
    std::reverse(ext.begin(), ext.end());
    for (const Biquad& q : cascade) ext = apply_biquad(q, ext);
    std::reverse(ext.begin(), ext.end());

    return std::vector<double>(ext.begin() + static_cast<long>(pad_len),
                               ext.begin() + static_cast<long>(pad_len + n));
}

}  // namespace trs::filters
