#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "trs/common.hpp"

namespace trs::wavelet {

// Daubechies-8 scaling filter (16 taps), classic h0..h15 ordering.
// Identities Σh = √2, Σh² = 1 and double-shift orthogonality are asserted
// in the test suite.
inline constexpr std::array<double, 16> kDb8ScalingFilter = {
    0.05441584224308161,   0.3128715909144659,    0.6756307362980128,
    0.5853546836548691,    -0.015829105256023893, -0.2840155429624281,
    0.00047248457399797254, 0.128747426620186,    -0.01736930100202211,
    -0.04408825393106472,  0.013981027917015516,  0.008746094047015655,
    -0.00487035299301066,  -0.0003917403729959771, 0.0006754494059985568,
    -0.00011747678400228192};

struct FilterBank {
    std::vector<double> dec_lo, dec_hi, rec_lo, rec_hi;
    std::size_t length() const { return rec_lo.size(); }
};

inline FilterBank db8_bank() {
    const std::size_t L = kDb8ScalingFilter.size();
    FilterBank fb;
    fb.rec_lo.assign(kDb8ScalingFilter.begin(), kDb8ScalingFilter.end());
    fb.rec_hi.resize(L);
    for (std::size_t k = 0; k < L; ++k)
        fb.rec_hi[k] = (k % 2 == 0 ? 1.0 : -1.0) * fb.rec_lo[L - 1 - k];
    fb.dec_lo.assign(fb.rec_lo.rbegin(), fb.rec_lo.rend());
    fb.dec_hi.assign(fb.rec_hi.rbegin(), fb.rec_hi.rend());
    return fb;
}

// Half-sample symmetric extension: x(-1) = x(0), x(n) = x(n-1), folded
// repeatedly for indices far outside the signal.
inline double sym_ext(const std::vector<double>& x, long t) {
    const long n = static_cast<long>(x.size());
    while (t < 0 || t >= n) {
        if (t < 0) t = -t - 1;
        if (t >= n) t = 2 * n - 1 - t;
    }
    return x[static_cast<std::size_t>(t)];
}

// One analysis step: out[i] = Σ_j f[j] · x_ext(2i + 1 − j),
// output length floor((n + L − 1) / 2).
inline void dwt_step(const std::vector<double>& x, const std::vector<double>& dec_lo,
                     const std::vector<double>& dec_hi, std::vector<double>& approx,
                     std::vector<double>& detail) {
    const std::size_t n = x.size();
    const std::size_t L = dec_lo.size();
    const std::size_t o = (n + L - 1) / 2;
    approx.assign(o, 0.0);
    detail.assign(o, 0.0);
    for (std::size_t i = 0; i < o; ++i) {
        double a = 0.0, d = 0.0;
        const long base = 2 * static_cast<long>(i) + 1;
        for (std::size_t j = 0; j < L; ++j) {
            const double v = sym_ext(x, base - static_cast<long>(j));
            a += dec_lo[j] * v;
            d += dec_hi[j] * v;
        }
        approx[i] = a;
        detail[i] = d;
    }
}

// One synthesis step: upsample-by-2 convolution with the reconstruction
// filters, cropped by L−2 on each side, then trimmed to out_len (the length
// recorded during analysis).
inline std::vector<double> idwt_step(const std::vector<double>& approx,
                                     const std::vector<double>& detail,
                                     const std::vector<double>& rec_lo,
                                     const std::vector<double>& rec_hi, std::size_t out_len) {
    const std::size_t o = approx.size();
    const std::size_t L = rec_lo.size();
    const std::size_t full = 2 * o - L + 2;
    if (out_len > full)
        throw PreprocessError("idwt: requested length exceeds reconstructable length");
    std::vector<double> rec(full, 0.0);
    for (std::size_t i = 0; i < o; ++i) {
        const double ca = approx[i];
        const double cd = detail.empty() ? 0.0 : detail[i];
        // u[t] += ca·rec_lo[t − 2i] + cd·rec_hi[t − 2i]; rec[t'] = u[t' + L − 2]
        for (std::size_t j = 0; j < L; ++j) {
            const long t = 2 * static_cast<long>(i) + static_cast<long>(j) -
                           (static_cast<long>(L) - 2);
            if (t >= 0 && t < static_cast<long>(full))
                rec[static_cast<std::size_t>(t)] += ca * rec_lo[j] + cd * rec_hi[j];
        }
    }
    rec.resize(out_len);
    return rec;
}

struct Decomposition {
    std::vector<double> approx;                // deepest-level approximation
    std::vector<std::vector<double>> details;  // details[k] is level k+1
    std::vector<std::size_t> lengths;          // signal length entering each level
};

inline Decomposition decompose(const std::vector<double>& x, int levels,
                               const FilterBank& fb = db8_bank()) {
    if (levels < 1) throw PreprocessError("wavelet decomposition needs levels >= 1");
    if (x.size() < fb.length())
        throw PreprocessError("signal shorter than wavelet filter (" +
                              std::to_string(fb.length()) + " samples required)");
    Decomposition dec;
    std::vector<double> current = x;
    for (int lvl = 0; lvl < levels; ++lvl) {
        dec.lengths.push_back(current.size());
        std::vector<double> a, d;
        dwt_step(current, fb.dec_lo, fb.dec_hi, a, d);
        dec.details.push_back(std::move(d));
        current = std::move(a);
    }
    dec.approx = std::move(current);
    return dec;
}

inline std::vector<double> reconstruct(const Decomposition& dec,
                                       const FilterBank& fb = db8_bank()) {
    std::vector<double> a = dec.approx;
    for (std::size_t lvl = dec.details.size(); lvl-- > 0;)
        a = idwt_step(a, dec.details[lvl], fb.rec_lo, fb.rec_hi, dec.lengths[lvl]);
    return a;
}

// Reconstruction from the deepest approximation only (all details zeroed):
// the low-frequency component treated as baseline drift.
inline std::vector<double> approximation(const Decomposition& dec,
                                         const FilterBank& fb = db8_bank()) {
    std::vector<double> a = dec.approx;
    const std::vector<double> no_detail;
    for (std::size_t lvl = dec.details.size(); lvl-- > 0;) {
        std::vector<double> zeros(dec.details[lvl].size(), 0.0);
        a = idwt_step(a, zeros, fb.rec_lo, fb.rec_hi, dec.lengths[lvl]);
    }
    return a;
}

}  // namespace trs::wavelet
