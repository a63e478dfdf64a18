#include <doctest.h>

#include <random>

#include "phasemark/embed.hpp"
#include "phasemark/extract.hpp"
#include "phasemark/metrics.hpp"
#include "phasemark/testpattern.hpp"

using namespace phasemark;

namespace {

std::vector<int8_t> random_chips(int n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<int8_t> chips(n);
    for (auto& c : chips) c = (rng() & 1) ? 1 : -1;
    return chips;
}

EmbedConfig config_for(TransformKind kind, double threshold) {
    EmbedConfig cfg;
    cfg.transform = kind;
    cfg.boost_threshold = threshold;
    cfg.keys = KeySet{.pn_scramble_seed = 42, .block_order_seed = 7, .frame_select_seed = 9};
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("embedder");

TEST_CASE("select_blocks breaks ties by raster index") {
    SpatialBlock flat;
    for (auto& v : flat.px) v = 99.0;
    std::vector<ComplexBlock> coeffs(20, dft2_forward(flat));
    auto sel = select_blocks(coeffs, 7, TransformKind::Dft);
    REQUIRE(sel.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(sel[i] == i);
}

TEST_CASE("select_blocks excludes the one textured block") {
    SpatialBlock flat;
    for (auto& v : flat.px) v = 80.0;
    SpatialBlock busy = flat;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) busy.at(r, c) += ((r + c) % 2) ? 45.0 : -45.0;

    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        std::vector<ComplexBlock> coeffs;
        for (int i = 0; i < 21; ++i)
            coeffs.push_back(forward_transform(i == 13 ? busy : flat, kind));
        auto sel = select_blocks(coeffs, 20, kind);
        REQUIRE(sel.size() == 20);
        for (int idx : sel) CHECK(idx != 13);
    }
}

TEST_CASE("select_blocks on a QCIF frame returns 264 distinct raster-ordered indices") {
    Clip clip = make_test_clip(1);
    auto blocks = tile_blocks(clip.frames[0]);
    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        std::vector<ComplexBlock> coeffs(blocks.size());
        for (size_t i = 0; i < blocks.size(); ++i) coeffs[i] = forward_transform(blocks[i], kind);
        auto sel = select_blocks(coeffs, 264, kind);
        REQUIRE(sel.size() == 264);
        for (size_t i = 1; i < sel.size(); ++i) CHECK(sel[i] > sel[i - 1]);
        CHECK(sel.back() < 396);
        // the synthetic grating field is exactly the rejected set
        for (int idx : sel) CHECK_FALSE(detail::textured_block(idx / 22, idx % 22, 22));
    }
    CHECK_THROWS_AS((void)select_blocks(std::vector<ComplexBlock>(10), 11, TransformKind::Dft),
                    std::invalid_argument);
}

TEST_CASE("amplitude_boost raises small magnitudes to exactly T, phase kept") {
    CHECK(amplitude_boost(cplx(0, 0), 10.0) == cplx(10.0, 0.0));

    const cplx small = 5.0 * std::polar(1.0, kPi / 4);
    const cplx boosted = amplitude_boost(small, 10.0);
    CHECK(std::abs(boosted) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(ComplexBlock::phase_of(boosted) == doctest::Approx(kPi / 4).epsilon(1e-12));

    const cplx big = 22.0 * std::polar(1.0, kPi / 3);
    CHECK(amplitude_boost(big, 10.0) == big);

    CHECK_THROWS_AS((void)amplitude_boost(cplx(1, 0), 0.0), std::invalid_argument);
}

TEST_CASE("bpsk_modulate swings the phase to +-pi/2 and keeps magnitude") {
    const cplx c = 10.0 * std::polar(1.0, 0.3);
    const cplx plus = bpsk_modulate(c, +1);
    CHECK(std::abs(plus - cplx(0.0, 10.0)) < 1e-12);
    const cplx minus = bpsk_modulate(c, -1);
    CHECK(std::abs(minus - cplx(0.0, -10.0)) < 1e-12);

    CHECK(bpsk_modulate(plus, +1) == plus);  // idempotent
    CHECK_THROWS_AS((void)bpsk_modulate(cplx(0, 0), 1), std::invalid_argument);
}

TEST_CASE("modulated coefficients sit exactly on the constellation at magnitude >= T") {
    Clip clip = make_test_clip(1, 176, 144, 5);
    auto blocks = tile_blocks(clip.frames[0]);
    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        EmbedConfig cfg = config_for(kind, kRobustThreshold);
        std::vector<ComplexBlock> coeffs(blocks.size());
        for (size_t i = 0; i < blocks.size(); ++i) coeffs[i] = forward_transform(blocks[i], kind);
        auto sel = select_blocks(coeffs, 264, kind);
        auto chips = random_chips(264, 91);
        embed_into_coefficients(coeffs, sel, chips, cfg);
        for (size_t k = 0; k < sel.size(); ++k) {
            const cplx c = coeffs[sel[k]].at(1, 1);
            CHECK(std::abs(c) >= kRobustThreshold - 1e-12);
            CHECK(c.real() == 0.0);
            CHECK((c.imag() > 0) == (chips[k] > 0));
            if (kind == TransformKind::Dft) CHECK(coeffs[sel[k]].at(7, 7) == std::conj(c));
        }
    }
}

TEST_CASE("embedding with zero selected blocks leaves the frame untouched") {
    Clip clip = make_test_clip(1, 176, 144, 6);
    EmbedConfig cfg = config_for(TransformKind::Scht, 13.0);
    cfg.selected_blocks_per_frame = 0;
    FramePlanes out = embed_frame(clip.frames[0], {}, cfg);
    CHECK(out.y == clip.frames[0].y);
    CHECK(out.u == clip.frames[0].u);
    CHECK(out.v == clip.frames[0].v);
}

TEST_CASE("embed_frame rejects an oversized chip span") {
    Clip clip = make_test_clip(1);
    EmbedConfig cfg = config_for(TransformKind::Dft, 10.0);
    auto chips = random_chips(265, 7);
    CHECK_THROWS_AS((void)embed_frame(clip.frames[0], chips, cfg), std::invalid_argument);
    cfg.selected_blocks_per_frame = 400;
    CHECK_THROWS_AS((void)embed_frame(clip.frames[0], random_chips(400, 7), cfg),
                    std::invalid_argument);
}

TEST_CASE("single-frame embed/extract recovers all 264 chips on a clean channel") {
    Clip clip = make_test_clip(1, 176, 144, 7);
    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        EmbedConfig cfg = config_for(kind, default_threshold(kind));
        auto chips = random_chips(264, 1234);
        FramePlanes wm = embed_frame(clip.frames[0], chips, cfg);
        FrameChips got = extract_frame(wm, cfg);
        REQUIRE(got.soft.size() == 264);
        int mismatches = 0;
        for (int i = 0; i < 264; ++i) mismatches += hard_chip(got.soft[i]) != chips[i];
        CHECK(mismatches == 0);
    }
}

TEST_CASE("chroma planes pass through byte-identical") {
    Clip clip = make_test_clip(2, 176, 144, 8);
    EmbedConfig cfg = config_for(TransformKind::Dft, kRobustThreshold);
    Clip wm = embed_clip(clip, make_test_logo(), cfg);
    for (int f = 0; f < 2; ++f) {
        CHECK(wm.frames[f].u == clip.frames[f].u);
        CHECK(wm.frames[f].v == clip.frames[f].v);
        CHECK(wm.frames[f].y != clip.frames[f].y);
    }
}

TEST_CASE("blind consistency: selection survives embedding on 50 frames, both transforms") {
    Clip clip = make_test_clip(50, 176, 144, 909);
    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        EmbedConfig cfg = config_for(kind, kRobustThreshold);
        for (int f = 0; f < 50; ++f) {
            auto chips = random_chips(264, 5000 + f);
            FramePlanes wm = embed_frame(clip.frames[f], chips, cfg);

            auto orig_blocks = tile_blocks(clip.frames[f]);
            std::vector<ComplexBlock> orig_coeffs(orig_blocks.size());
            for (size_t i = 0; i < orig_blocks.size(); ++i)
                orig_coeffs[i] = forward_transform(orig_blocks[i], kind);

            REQUIRE(extract_frame(wm, cfg).block_indices == select_blocks(orig_coeffs, 264, kind));
        }
    }
}

TEST_CASE("smooth synthetic frame keeps PSNR >= 35 dB under SCHT at T=13") {
    Clip clip = make_test_clip(1, 176, 144, 11);
    EmbedConfig cfg = config_for(TransformKind::Scht, 13.0);
    FramePlanes wm = embed_frame(clip.frames[0], random_chips(264, 3), cfg);
    PsnrValue p = psnr(clip.frames[0], wm);
    CHECK_FALSE(p.infinite);
    CHECK(p.db >= 35.0);
}

TEST_CASE("transparency is nonincreasing in the boost threshold") {
    Clip clip = make_test_clip(4, 176, 144, 12);
    Logo logo = make_test_logo();
    for (TransformKind kind : {TransformKind::Dft, TransformKind::Scht}) {
        double prev = 1e9;
        for (double t : {10.0, 13.0, 22.0}) {
            EmbedConfig cfg = config_for(kind, t);
            Clip wm = embed_clip(clip, logo, cfg);
            const double db = clip_psnr(clip, wm).mean_db;
            CHECK(db <= prev + 1e-9);
            prev = db;
        }
    }
}

TEST_CASE("payload layout: full, double, and partial repetitions") {
    PayloadLayout layout(264);
    CHECK(layout.frames_per_repetition == 18);
    CHECK(layout.slot_range(0) == std::pair(0, 264));
    CHECK(layout.slot_range(17) == std::pair(17 * 264, 4752));
    CHECK(layout.slot_range(18) == std::pair(0, 264));  // cyclic

    PayloadLayout full(396);
    CHECK(full.frames_per_repetition == 12);
    CHECK(full.slot_range(11) == std::pair(11 * 396, 4752));

    Logo logo = make_test_logo();
    EmbedConfig cfg = config_for(TransformKind::Scht, 13.0);

    Clip clip18 = make_test_clip(18, 176, 144, 13);
    ExtractionResult one = extract_clip(embed_clip(clip18, logo, cfg), cfg);
    for (int n : one.chips_seen) CHECK(n == 1);

    Clip clip36 = make_test_clip(36, 176, 144, 14);
    ExtractionResult two = extract_clip(embed_clip(clip36, logo, cfg), cfg);
    for (int n : two.chips_seen) CHECK(n == 2);
}

TEST_CASE("a 5-frame clip covers 1320 chip slots and the first 440 logo bits") {
    Logo logo = make_test_logo();
    EmbedConfig cfg = config_for(TransformKind::Scht, 13.0);
    Clip clip = make_test_clip(5, 176, 144, 15);
    ExtractionResult got = extract_clip(embed_clip(clip, logo, cfg), cfg);
    for (int s = 0; s < kChipCount; ++s) CHECK(got.chips_seen[s] == (s < 5 * 264 ? 1 : 0));
    for (int b = 0; b < 440; ++b) CHECK(got.logo.bits[b] == logo.bits[b]);
}

TEST_SUITE_END();
