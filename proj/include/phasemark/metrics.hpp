#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasemark/payload.hpp"
#include "phasemark/video.hpp"

namespace phasemark {

struct PsnrValue {
    double db = 0.0;
    bool infinite = false;
};

/// Luma-only PSNR: MSE = (1/MN) sum (F - F')^2, PSNR = 20 log10(255/sqrt(MSE)).
/// Identical planes set the infinite flag instead of a dB value.
inline PsnrValue psnr(const FramePlanes& reference, const FramePlanes& test) {
    if (reference.width != test.width || reference.height != test.height)
        throw std::invalid_argument("psnr: frame dimensions differ");
    double sum = 0.0;
    for (size_t i = 0; i < reference.y.size(); ++i) {
        const double d = double(reference.y[i]) - double(test.y[i]);
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(reference.y.size());
    if (mse == 0.0) return {0.0, true};
    return {20.0 * std::log10(255.0 / std::sqrt(mse)), false};
}

struct ClipPsnr {
    std::vector<double> per_frame;  // NaN where infinite
    double mean_db = 0.0;           // mean over finite frames
    int infinite_frames = 0;
};

inline ClipPsnr clip_psnr(const Clip& reference, const Clip& test) {
    if (reference.frame_count() != test.frame_count())
        throw std::invalid_argument("clip_psnr: frame counts differ");
    ClipPsnr out;
    double sum = 0.0;
    int finite = 0;
    for (int i = 0; i < reference.frame_count(); ++i) {
        PsnrValue v = psnr(reference.frames[i], test.frames[i]);
        if (v.infinite) {
            out.per_frame.push_back(std::numeric_limits<double>::quiet_NaN());
            ++out.infinite_frames;
        } else {
            out.per_frame.push_back(v.db);
            sum += v.db;
            ++finite;
        }
    }
    out.mean_db = finite ? sum / finite : std::numeric_limits<double>::infinity();
    return out;
}

/// Normalized cross correlation, asymmetric exactly as defined:
/// NC = sum w*w' / sum w^2 over 0/1 bit values. An all-ones extraction scores
/// 1 against any reference; that asymmetry is part of the metric.
inline double normalized_correlation(const Logo& w, const Logo& w_extracted) {
    long num = 0, den = 0;
    for (int i = 0; i < kLogoBits; ++i) {
        den += w.bits[i];
        num += w.bits[i] & w_extracted.bits[i];
    }
    if (den == 0) throw std::invalid_argument("normalized_correlation: reference logo is all zero");
    return static_cast<double>(num) / static_cast<double>(den);
}

inline int bit_errors(const Logo& a, const Logo& b) {
    int e = 0;
    for (int i = 0; i < kLogoBits; ++i) e += a.bits[i] != b.bits[i];
    return e;
}

/// One embed->attack->extract experiment cell.
struct RunReport {
    std::string transform;
    double threshold = 0.0;
    int selected_blocks = 264;
    std::string attack = "none";
    std::string attack_params;
    std::uint64_t seed = 0;
    int ebits = 0;
    double nc = 0.0;
    double ber = 0.0;
    double mean_psnr_db = 0.0;
    int infinite_psnr_frames = 0;
    std::vector<double> per_frame_psnr;  // NaN for identical frames; not in the CSV
    std::int64_t complex_adds = 0;   // fast-path forward ops per 8x8 block
    std::int64_t complex_mults = 0;
    double wall_ms = 0.0;  // volatile; only serialized when asked
};

inline std::string csv_header(bool with_timing = false) {
    std::string h =
        "transform,threshold,selected_blocks,attack,params,seed,ebits,nc,ber,"
        "mean_psnr_db,infinite_psnr_frames,complex_adds,complex_mults";
    if (with_timing) h += ",wall_ms";
    return h + "\n";
}

inline std::string csv_row(const RunReport& r, bool with_timing = false) {
    std::ostringstream os;
    os << r.transform << ',' << r.threshold << ',' << r.selected_blocks << ',' << r.attack << ','
       << (r.attack_params.empty() ? "-" : r.attack_params) << ',' << r.seed << ',' << r.ebits
       << ',' << std::fixed << std::setprecision(4) << r.nc << ',' << std::setprecision(6) << r.ber
       << ',' << std::setprecision(2) << r.mean_psnr_db << ',' << r.infinite_psnr_frames << ','
       << r.complex_adds << ',' << r.complex_mults;
    if (with_timing) os << ',' << std::setprecision(1) << r.wall_ms;
    os << '\n';
    return os.str();
}

inline std::string report_text(const RunReport& r) {
    std::ostringstream os;
    os << "transform=" << r.transform << " T=" << r.threshold << " blocks=" << r.selected_blocks
       << " attack=" << r.attack;
    if (!r.attack_params.empty()) os << " (" << r.attack_params << ")";
    os << "\n  eBits=" << r.ebits << "/" << kLogoBits << "  NC=" << std::fixed
       << std::setprecision(4) << r.nc << "  BER=" << std::setprecision(6) << r.ber
       << "\n  mean luma PSNR=" << std::setprecision(2) << r.mean_psnr_db << " dB";
    if (r.infinite_psnr_frames > 0) os << " (" << r.infinite_psnr_frames << " identical frames)";
    os << "\n  transform ops per block: " << r.complex_adds << " adds, " << r.complex_mults
       << " mults\n";
    return os.str();
}

}  // namespace phasemark
