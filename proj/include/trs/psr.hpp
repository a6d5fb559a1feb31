#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "trs/types.hpp"

namespace trs {

struct PsrConfig {
    int tau = 4;      // embedding delay in samples (8 ms at 500 Hz)
    int grid_n = 32;  // image is grid_n x grid_n
};

inline void validate_psr_config(const PsrConfig& cfg) {
    if (cfg.tau < 1) throw ConfigError("psr tau must be >= 1");
    if (cfg.grid_n < 2) throw ConfigError("psr grid_n must be >= 2");
}

// Normalized two-dimensional delay embedding: rows (x(i)/q, x(i+tau)/q),
// q = max |x(i)|, so every coordinate lies in [-1, 1].
struct PhaseVectors {
    std::vector<std::pair<double, double>> rows;
    double normalizer = 0.0;  // q
};

inline PhaseVectors embed(const EcgSegment& seg, const PsrConfig& cfg = {}) {
    validate_psr_config(cfg);
    const auto& x = seg.samples;
    const std::size_t tau = static_cast<std::size_t>(cfg.tau);
    if (x.size() <= tau)
        throw ValidationError("segment too short for embedding (need length > tau)");
    double q = 0.0;
    for (double v : x) q = std::max(q, std::abs(v));
    if (q == 0.0) throw DegenerateError("all-zero segment: phase space normalizer q is 0");
    PhaseVectors pv;
    pv.normalizer = q;
    pv.rows.reserve(x.size() - tau);
    for (std::size_t i = 0; i + tau < x.size(); ++i)
        pv.rows.emplace_back(x[i] / q, x[i + tau] / q);
    return pv;
}

// Occupancy counts and probabilities over an N x N partition of [-1,1]^2.
struct PsrImage {
    int grid_n = 0;
    std::vector<long> counts;   // row-major, counts[i * N + j]
    std::vector<double> probs;  // counts / total
    long total = 0;             // M

    long count_at(int i, int j) const { return counts[static_cast<std::size_t>(i) * grid_n + j]; }
    double prob_at(int i, int j) const { return probs[static_cast<std::size_t>(i) * grid_n + j]; }
};

// Cell index for a coordinate in [-1, 1]: half-open cells, top edge closed.
inline int psr_cell_index(double v, int n) {
    const double u = (v + 1.0) / 2.0;  // [0, 1]
    int idx = static_cast<int>(std::floor(u * n));
    if (idx >= n) idx = n - 1;
    if (idx < 0) idx = 0;
    return idx;
}

inline PsrImage grid_count(const PhaseVectors& pv, const PsrConfig& cfg = {}) {
    validate_psr_config(cfg);
    if (pv.rows.empty()) throw ValidationError("grid_count: no phase vectors");
    const int n = cfg.grid_n;
    PsrImage img;
    img.grid_n = n;
    img.counts.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [a, b] : pv.rows) {
        const int i = psr_cell_index(a, n);
        const int j = psr_cell_index(b, n);
        ++img.counts[static_cast<std::size_t>(i) * n + j];
    }
    img.total = static_cast<long>(pv.rows.size());
    img.probs.resize(img.counts.size());
    for (std::size_t k = 0; k < img.counts.size(); ++k)
        img.probs[k] = static_cast<double>(img.counts[k]) / static_cast<double>(img.total);
    return img;
}

// Pixel intensities: probabilities rescaled so the densest cell is 1.0.
inline std::vector<double> render_image(const PsrImage& img) {
    double mx = 0.0;
    for (double p : img.probs) mx = std::max(mx, p);
    std::vector<double> pix(img.probs.size(), 0.0);
    if (mx > 0)
        for (std::size_t k = 0; k < pix.size(); ++k) pix[k] = img.probs[k] / mx;
    return pix;
}

inline PsrImage make_psr_image(const EcgSegment& seg, const PsrConfig& cfg = {}) {
    return grid_count(embed(seg, cfg), cfg);
}

}  // namespace trs
