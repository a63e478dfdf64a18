#pragma once

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "phasemark/attack.hpp"
#include "phasemark/extract.hpp"
#include "phasemark/metrics.hpp"

namespace phasemark {

/// One experiment: embed with (transform, T, blocks), attack, extract.
struct EvalCell {
    TransformKind transform = TransformKind::Scht;
    double threshold = kDefaultThresholdScht;
    int selected_blocks = kDefaultSelectedBlocks;
    AttackSpec attack;
};

inline RunReport run_cell(const Clip& clip, const Logo& logo, const KeySet& keys,
                          const EvalCell& cell) {
    const auto t0 = std::chrono::steady_clock::now();

    EmbedConfig cfg;
    cfg.transform = cell.transform;
    cfg.boost_threshold = cell.threshold;
    cfg.selected_blocks_per_frame = cell.selected_blocks;
    cfg.keys = keys;

    const Clip watermarked = embed_clip(clip, logo, cfg);
    const ClipPsnr quality = clip_psnr(clip, watermarked);
    const Clip attacked = apply_attack(watermarked, cell.attack);
    const ExtractionResult extracted = extract_clip(attacked, cfg);

    RunReport r;
    r.transform = transform_name(cell.transform);
    r.threshold = cell.threshold;
    r.selected_blocks = cell.selected_blocks;
    r.attack = attack_name(cell.attack.kind);
    r.attack_params = format_attack_params(cell.attack);
    r.seed = cell.attack.rng_seed;
    r.ebits = bit_errors(logo, extracted.logo);
    r.nc = normalized_correlation(logo, extracted.logo);
    r.ber = static_cast<double>(r.ebits) / kLogoBits;
    r.mean_psnr_db = quality.mean_db;
    r.infinite_psnr_frames = quality.infinite_frames;
    r.per_frame_psnr = quality.per_frame;
    const OpCounter ops = count_ops(cell.transform);
    r.complex_adds = ops.complex_adds;
    r.complex_mults = ops.complex_mults;
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    return r;
}

/// The stock experiment grid: per transform, a no-attack run at the
/// transparency threshold and every spatial/compression attack at T=22.
inline std::vector<EvalCell> default_matrix(std::uint64_t attack_seed = 1) {
    std::vector<EvalCell> cells;
    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        EvalCell base;
        base.transform = kind;
        base.threshold = default_threshold(kind);
        base.attack.kind = AttackKind::None;
        cells.push_back(base);

        for (AttackKind atk :
             {AttackKind::Resize, AttackKind::Rotate90RoundTrip, AttackKind::CropQuarter,
              AttackKind::CropCenterKeep, AttackKind::Paint, AttackKind::GaussianLowpass,
              AttackKind::Sharpen, AttackKind::GaussianNoise, AttackKind::SaltPepper,
              AttackKind::PhasePerturb, AttackKind::HistEq, AttackKind::IntraCompress}) {
            EvalCell c;
            c.transform = kind;
            c.threshold = kRobustThreshold;
            c.attack.kind = atk;
            c.attack.transform = kind;
            c.attack.rng_seed = attack_seed;
            cells.push_back(c);
        }
    }
    return cells;
}

/// Matrix config: one cell per line, e.g.
///   transform=dft threshold=22 blocks=264 kind=resize
/// Unrecognized keys go to the attack spec parser. '#' starts a comment.
inline std::vector<EvalCell> parse_matrix_config(std::istream& in) {
    std::vector<EvalCell> cells;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string token, attack_text;
        EvalCell cell;
        bool any = false, have_threshold = false;
        while (ls >> token) {
            any = true;
            if (token.rfind("transform=", 0) == 0) {
                cell.transform =
                    token.substr(10) == "dft" ? TransformKind::Dft : TransformKind::Scht;
            } else if (token.rfind("threshold=", 0) == 0) {
                cell.threshold = std::stod(token.substr(10));
                have_threshold = true;
            } else if (token.rfind("blocks=", 0) == 0) {
                cell.selected_blocks = std::stoi(token.substr(7));
            } else {
                attack_text += token + " ";
            }
        }
        if (!any) continue;
        if (!have_threshold) cell.threshold = default_threshold(cell.transform);
        cell.attack = attack_text.empty() ? AttackSpec{} : parse_attack_spec(attack_text);
        cell.attack.transform = cell.transform;
        cells.push_back(cell);
    }
    return cells;
}

/// Runs every cell in order and renders the CSV. Timing columns are off by
/// default so identical inputs give byte-identical reports.
inline std::string run_matrix_csv(const Clip& clip, const Logo& logo, const KeySet& keys,
                                  const std::vector<EvalCell>& cells, bool with_timing = false,
                                  std::ostream* progress = nullptr) {
    std::string csv = csv_header(with_timing);
    for (const auto& cell : cells) {
        RunReport r = run_cell(clip, logo, keys, cell);
        csv += csv_row(r, with_timing);
        if (progress) *progress << report_text(r);
    }
    return csv;
}

}  // namespace phasemark
