// phasemark: blind video watermarking over raw I420 clips.
// Subcommands: embed, extract, attack, evaluate, synth.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "phasemark/evaluate.hpp"
#include "phasemark/pnm.hpp"
#include "phasemark/testpattern.hpp"

namespace {

using namespace phasemark;

struct CommonArgs {
    std::string input;
    int width = 176;
    int height = 144;
    std::string transform = "scht";
    double threshold = 0.0;  // 0 = default for the transform
    int blocks = kDefaultSelectedBlocks;
    double scene_threshold = kSceneCutThreshold;
    std::uint32_t seed_scramble = 1;
    std::uint32_t seed_block_order = 0;
    std::uint32_t seed_frame_select = 0;
    std::string dump_frames;
};

void add_geometry_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-i,--input", args.input, "raw I420 input clip")->required();
    cmd->add_option("-W,--width", args.width, "frame width (default 176)");
    cmd->add_option("-H,--height", args.height, "frame height (default 144)");
}

void add_config_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-t,--transform", args.transform, "dft or scht (default scht)")
        ->check(CLI::IsMember({"dft", "scht"}));
    cmd->add_option("-T,--threshold", args.threshold,
                    "amplitude boost threshold (default 10 dft / 13 scht)");
    cmd->add_option("--blocks", args.blocks, "blocks marked per frame (default 264)");
    cmd->add_option("--scene-threshold", args.scene_threshold,
                    "histogram-difference scene cut threshold (default 0.4)");
    cmd->add_option("--seed-scramble", args.seed_scramble, "logo scrambling key (PN seed)");
    cmd->add_option("--seed-block-order", args.seed_block_order, "reserved key slot");
    cmd->add_option("--seed-frame-select", args.seed_frame_select, "reserved key slot");
    cmd->add_option("--dump-frames", args.dump_frames, "directory for per-frame luma PGM dumps");
}

EmbedConfig make_config(const CommonArgs& args) {
    EmbedConfig cfg;
    cfg.transform = args.transform == "dft" ? TransformKind::Dft : TransformKind::Scht;
    cfg.boost_threshold = args.threshold > 0.0 ? args.threshold : default_threshold(cfg.transform);
    cfg.selected_blocks_per_frame = args.blocks;
    cfg.scene_threshold = args.scene_threshold;
    cfg.keys = KeySet{args.seed_scramble, args.seed_block_order, args.seed_frame_select};
    return cfg;
}

void dump_luma_frames(const Clip& clip, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (int f = 0; f < clip.frame_count(); ++f) {
        std::ostringstream name;
        name << dir << "/frame_" << std::setw(4) << std::setfill('0') << f << ".pgm";
        write_pgm(name.str(), clip.frames[f].y.data(), clip.width(), clip.height());
    }
}

int cmd_embed(const CommonArgs& args, const std::string& logo_path, const std::string& output) {
    const Clip clip = read_yuv420(args.input, args.width, args.height);
    const Logo logo = read_pbm_logo(logo_path);
    const EmbedConfig cfg = make_config(args);

    const Clip watermarked = embed_clip(clip, logo, cfg);
    write_yuv420(output, watermarked);
    if (!args.dump_frames.empty()) dump_luma_frames(watermarked, args.dump_frames);

    const ClipPsnr q = clip_psnr(clip, watermarked);
    std::cout << "embedded " << clip.frame_count() << " frames (" << args.width << "x"
              << args.height << ", " << transform_name(cfg.transform)
              << ", T=" << cfg.boost_threshold << ", blocks=" << cfg.selected_blocks_per_frame
              << ")\n"
              << "mean luma PSNR: " << std::fixed << std::setprecision(2) << q.mean_db << " dB";
    if (q.infinite_frames) std::cout << " (" << q.infinite_frames << " identical frames)";
    std::cout << "\n";
    return 0;
}

int cmd_extract(const CommonArgs& args, const std::string& output,
                const std::string& reference_path) {
    const Clip clip = read_yuv420(args.input, args.width, args.height);
    const EmbedConfig cfg = make_config(args);

    const ExtractionResult got = extract_clip(clip, cfg);
    write_pbm_logo(output, got.logo);
    if (!args.dump_frames.empty()) dump_luma_frames(clip, args.dump_frames);

    int seen_min = 1 << 30, seen_max = 0;
    long seen_total = 0;
    for (int n : got.chips_seen) {
        seen_min = std::min(seen_min, n);
        seen_max = std::max(seen_max, n);
        seen_total += n;
    }
    std::array<int, 10> hist{};
    double conf_mean = 0;
    for (double c : got.confidence) {
        hist[std::min(9, static_cast<int>(c * 10.0))] += 1;
        conf_mean += c;
    }
    conf_mean /= kLogoBits;

    std::cout << "extracted logo -> " << output << " (" << transform_name(cfg.transform)
              << ", T=" << cfg.boost_threshold << ", scenes=" << got.scene_count << ")\n"
              << "chips per slot: min " << seen_min << ", max " << seen_max << ", mean "
              << std::fixed << std::setprecision(2)
              << static_cast<double>(seen_total) / kChipCount << "\n"
              << "bit confidence: mean " << std::setprecision(3) << conf_mean << ", histogram";
    for (int i = 0; i < 10; ++i) std::cout << ' ' << hist[i];
    std::cout << " (0.0..1.0)\n";

    if (!reference_path.empty()) {
        const Logo ref = read_pbm_logo(reference_path);
        const int ebits = bit_errors(ref, got.logo);
        std::cout << "vs reference: eBits=" << ebits << "/" << kLogoBits
                  << "  NC=" << std::setprecision(4) << normalized_correlation(ref, got.logo)
                  << "  BER=" << std::setprecision(6)
                  << static_cast<double>(ebits) / kLogoBits << "\n";
    }
    return 0;
}

int cmd_attack(const CommonArgs& args, const AttackSpec& spec, const std::string& output) {
    const Clip clip = read_yuv420(args.input, args.width, args.height);
    const Clip attacked = apply_attack(clip, spec);
    write_yuv420(output, attacked);
    std::cout << "applied " << format_attack_spec(spec) << " -> " << output << "\n";
    return 0;
}

int cmd_evaluate(const CommonArgs& args, const std::string& logo_path,
                 const std::string& matrix_path, const std::string& report_path,
                 std::uint64_t attack_seed, bool timings, bool verbose) {
    const Clip clip = read_yuv420(args.input, args.width, args.height);
    const Logo logo = read_pbm_logo(logo_path);
    const KeySet keys{args.seed_scramble, args.seed_block_order, args.seed_frame_select};

    std::vector<EvalCell> cells;
    if (matrix_path.empty()) {
        cells = default_matrix(attack_seed);
    } else {
        std::ifstream in(matrix_path);
        if (!in) throw std::runtime_error("cannot open matrix config: " + matrix_path);
        cells = parse_matrix_config(in);
    }

    const std::string csv =
        run_matrix_csv(clip, logo, keys, cells, timings, verbose ? &std::cout : nullptr);
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + report_path);
    out << csv;
    std::cout << "wrote " << cells.size() << " report rows -> " << report_path << "\n";
    return 0;
}

int cmd_synth(const std::string& output, int frames, int width, int height, std::uint64_t seed,
              const std::string& logo_out) {
    write_yuv420(output, make_test_clip(frames, width, height, seed));
    std::cout << "wrote " << frames << "-frame synthetic clip " << width << "x" << height
              << " -> " << output << "\n";
    if (!logo_out.empty()) {
        write_pbm_logo(logo_out, make_test_logo());
        std::cout << "wrote sample " << kLogoWidth << "x" << kLogoHeight << " logo -> "
                  << logo_out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phasemark: blind phase-domain video watermarking (DFT / SCHT)"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* embed = app.add_subcommand("embed", "watermark a raw YUV clip");
    std::string logo_path, output;
    add_geometry_flags(embed, args);
    add_config_flags(embed, args);
    embed->add_option("-l,--logo", logo_path, "44x36 PBM watermark")->required();
    embed->add_option("-o,--output", output, "watermarked clip path")->required();

    auto* extract = app.add_subcommand("extract", "recover the watermark from a clip");
    std::string reference;
    add_geometry_flags(extract, args);
    add_config_flags(extract, args);
    extract->add_option("-o,--output", output, "recovered logo PBM path")->required();
    extract->add_option("-r,--reference", reference, "reference logo for NC/BER reporting");

    auto* attack = app.add_subcommand("attack", "degrade a clip with a benchmark attack");
    std::string kind, spec_file, external_file;
    AttackSpec spec;
    add_geometry_flags(attack, args);
    attack->add_option("-k,--kind", kind,
                       "attack name (resize rotate90 crop_quarter crop_center paint lowpass "
                       "sharpen gaussian_noise salt_pepper phase_perturb histeq intra_compress "
                       "frame_drop frame_average frame_swap external)");
    attack->add_option("--spec-file", spec_file, "key=value attack spec file (overrides flags)");
    attack->add_option("--density", spec.density, "salt&pepper density");
    attack->add_option("--sigma", spec.sigma, "gaussian noise sigma on [0,1]");
    attack->add_option("--mean", spec.mean, "phase perturbation mean (radians)");
    attack->add_option("--variance", spec.variance, "phase perturbation variance");
    attack->add_option("--quality", spec.quality, "intra compression quality 1..100");
    attack->add_option("--fraction", spec.fraction, "dropped/swapped frame fraction");
    attack->add_option("--window", spec.window, "frame averaging window (odd)");
    attack->add_option("--file", external_file, "externally attacked clip (kind=external)");
    std::string attack_transform = "scht";
    attack->add_option("--transform", attack_transform, "phase_perturb domain: dft or scht")
        ->check(CLI::IsMember({"dft", "scht"}));
    attack->add_option("--seed", spec.rng_seed, "attack RNG seed");
    attack->add_option("-o,--output", output, "attacked clip path")->required();

    auto* evaluate = app.add_subcommand("evaluate", "run an embed/attack/extract matrix to CSV");
    std::string matrix_path, report_path = "report.csv";
    std::uint64_t attack_seed = 1;
    bool timings = false, verbose = false;
    add_geometry_flags(evaluate, args);
    add_config_flags(evaluate, args);
    evaluate->add_option("-l,--logo", logo_path, "44x36 PBM watermark")->required();
    evaluate->add_option("-m,--matrix", matrix_path, "matrix config file (default: built-in grid)");
    evaluate->add_option("-o,--report", report_path, "CSV output path");
    evaluate->add_option("--attack-seed", attack_seed, "seed for the built-in grid's attacks");
    evaluate->add_flag("--timings", timings, "append a wall_ms column (non-deterministic)");
    evaluate->add_flag("-v,--verbose", verbose, "print each cell's report");

    auto* synth = app.add_subcommand("synth", "generate a synthetic test clip");
    int frames = 72;
    std::uint64_t synth_seed = 1;
    std::string logo_out;
    synth->add_option("-o,--output", output, "clip path")->required();
    synth->add_option("-n,--frames", frames, "frame count (default 72)");
    synth->add_option("-W,--width", args.width, "frame width (default 176)");
    synth->add_option("-H,--height", args.height, "frame height (default 144)");
    synth->add_option("--seed", synth_seed, "content seed");
    synth->add_option("--logo-out", logo_out, "also write a sample logo PBM");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(embed)) return cmd_embed(args, logo_path, output);
        if (app.got_subcommand(extract)) return cmd_extract(args, output, reference);
        if (app.got_subcommand(attack)) {
            if (!spec_file.empty()) {
                std::ifstream in(spec_file);
                if (!in) throw std::runtime_error("cannot open spec file: " + spec_file);
                std::stringstream text;
                text << in.rdbuf();
                spec = parse_attack_spec(text.str());
            } else {
                if (kind.empty()) throw std::runtime_error("attack needs --kind or --spec-file");
                spec.kind = attack_kind_from_name(kind);
                spec.transform =
                    attack_transform == "dft" ? TransformKind::Dft : TransformKind::Scht;
                spec.external_path = external_file;
            }
            return cmd_attack(args, spec, output);
        }
        if (app.got_subcommand(evaluate))
            return cmd_evaluate(args, logo_path, matrix_path, report_path, attack_seed, timings,
                                verbose);
        if (app.got_subcommand(synth))
            return cmd_synth(output, frames, args.width, args.height, synth_seed, logo_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
