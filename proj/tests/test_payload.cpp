#include <doctest.h>

#include <random>
#include <sstream>

#include "phasemark/payload.hpp"
#include "phasemark/pnm.hpp"

using namespace phasemark;

namespace {

Logo random_logo(std::mt19937& rng) {
    std::bernoulli_distribution bit(0.5);
    Logo l;
    for (auto& b : l.bits) b = bit(rng);
    return l;
}

}  // namespace

TEST_SUITE_BEGIN("payload");

TEST_CASE("scramble is an involution and maps the zero logo to the PN pattern") {
    std::mt19937 rng(72001);
    KeySet keys{.pn_scramble_seed = 0xC0FFEE};
    for (int i = 0; i < 20; ++i) {
        Logo l = random_logo(rng);
        Logo twice = scramble(scramble(l, keys), keys);
        CHECK(twice.bits == l.bits);
    }

    Logo zero;
    Logo s = scramble(zero, keys);
    CHECK(s.bits == pn_pattern(keys.pn_scramble_seed));
}

TEST_CASE("pn_pattern is reproducible and pinned to the xorshift32 word sequence") {
    auto a = pn_pattern(1);
    auto b = pn_pattern(1);
    CHECK(a == b);

    // first generated word for seed 1 (after the murmur3 seed mix) is
    // 0x1F48D1FB, consumed MSB-first
    std::uint32_t word = 0;
    for (int i = 0; i < 32; ++i) word = (word << 1) | a[i];
    CHECK(word == 0x1F48D1FBu);

    CHECK(pn_pattern(0) == pn_pattern(0));  // degenerate seed remapped, still deterministic
    CHECK(pn_pattern(0) != pn_pattern(1));
}

TEST_CASE("distinct seeds scramble about half the bits differently") {
    // binomial n=1584 p=0.5: mean 792, sigma ~19.9
    std::mt19937 rng(72002);
    Logo logo = random_logo(rng);
    double sum = 0;
    for (int i = 0; i < 100; ++i) {
        KeySet k1{.pn_scramble_seed = static_cast<std::uint32_t>(1000 + 2 * i)};
        KeySet k2{.pn_scramble_seed = static_cast<std::uint32_t>(1001 + 2 * i)};
        Logo a = scramble(logo, k1), b = scramble(logo, k2);
        int dist = 0;
        for (int j = 0; j < kLogoBits; ++j) dist += a.bits[j] != b.bits[j];
        CHECK(std::abs(dist - 792) < 100);  // 5 sigma per pair
        sum += dist;
    }
    CHECK(std::abs(sum / 100 - 792.0) < 6.0);  // 3 sigma on the mean
}

TEST_CASE("spread emits the two fixed codewords") {
    std::array<std::uint8_t, kLogoBits> bits{};
    bits[0] = 1;  // bit 1 -> [+1,-1,+1]
    auto chips = spread(bits);
    REQUIRE(chips.size() == kChipCount);
    CHECK(chips[0] == 1);
    CHECK(chips[1] == -1);
    CHECK(chips[2] == 1);
    CHECK(chips[3] == -1);  // bit 0 -> [-1,+1,-1]
    CHECK(chips[4] == 1);
    CHECK(chips[5] == -1);

    CHECK_THROWS_AS((void)spread(std::span<const std::uint8_t>(bits.data(), 10)),
                    std::invalid_argument);
}

TEST_CASE("every encoded triple is exactly [+1,-1,+1] or [-1,+1,-1]") {
    std::mt19937 rng(72003);
    for (int t = 0; t < 10; ++t) {
        auto chips = spread(raster_serialize(random_logo(rng)));
        for (int i = 0; i < kLogoBits; ++i) {
            const int8_t b = chips[3 * i];
            CHECK(std::abs(b) == 1);
            CHECK(chips[3 * i + 1] == -b);
            CHECK(chips[3 * i + 2] == b);
        }
    }
}

TEST_CASE("despread: exact codewords, soft correlation, tie to 1") {
    std::array<double, kChipCount> soft{};
    soft[0] = 1;
    soft[1] = -1;
    soft[2] = 1;  // -> bit 1, confidence 1
    soft[3] = -1;
    soft[4] = -1;
    soft[5] = -1;  // c = -1 -> bit 0, confidence 1/3
    auto r = despread(std::span<const double>(soft));
    CHECK(r.bits[0] == 1);
    CHECK(r.confidence[0] == doctest::Approx(1.0));
    CHECK(r.bits[1] == 0);
    CHECK(r.confidence[1] == doctest::Approx(1.0 / 3.0));
    CHECK(r.bits[2] == 1);  // all-zero triple ties to 1
    CHECK(r.confidence[2] == 0.0);

    std::vector<double> wrong(100, 0.0);
    CHECK_THROWS_AS((void)despread(std::span<const double>(wrong)), std::invalid_argument);
}

TEST_CASE("single flipped chip never changes the decoded bit (all 6 cases)") {
    for (int bit = 0; bit <= 1; ++bit) {
        for (int pos = 0; pos < 3; ++pos) {
            std::array<std::uint8_t, kLogoBits> bits{};
            bits[0] = static_cast<std::uint8_t>(bit);
            auto chips = spread(bits);
            chips[pos] = static_cast<int8_t>(-chips[pos]);
            auto r = despread(std::span<const int8_t>(chips));
            CHECK(r.bits[0] == bit);
            CHECK(r.confidence[0] == doctest::Approx(1.0 / 3.0));
        }
    }
}

TEST_CASE("despread(spread(b)) = b exhaustively over the first 10 bits") {
    for (int pattern = 0; pattern < 1024; ++pattern) {
        std::array<std::uint8_t, kLogoBits> bits{};
        for (int i = 0; i < 10; ++i) bits[i] = (pattern >> i) & 1;
        auto r = despread(std::span<const int8_t>(spread(bits)));
        for (int i = 0; i < 10; ++i) {
            REQUIRE(r.bits[i] == ((pattern >> i) & 1));
            REQUIRE(r.confidence[i] == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("raster order: row-major with row 0 first") {
    Logo l;
    l.at(0, 1) = 1;
    CHECK(raster_serialize(l)[1] == 1);
    l.at(0, 1) = 0;
    l.at(1, 0) = 1;
    CHECK(raster_serialize(l)[44] == 1);

    std::mt19937 rng(72004);
    Logo r = random_logo(rng);
    CHECK(raster_deserialize(raster_serialize(r)).bits == r.bits);

    std::vector<std::uint8_t> wrong(10, 0);
    CHECK_THROWS_AS((void)raster_deserialize(wrong), std::invalid_argument);
}

TEST_CASE("full codec round trip over 100 random logos") {
    std::mt19937 rng(72005);
    for (int i = 0; i < 100; ++i) {
        KeySet keys{.pn_scramble_seed = static_cast<std::uint32_t>(rng())};
        Logo logo = random_logo(rng);
        auto chips = spread(raster_serialize(scramble(logo, keys)));
        auto decoded = despread(std::span<const int8_t>(chips));
        Logo recovered = scramble(raster_deserialize(decoded.bits), keys);
        REQUIRE(recovered.bits == logo.bits);
    }
}

TEST_CASE("PBM round trip (P1) and binary P4 reading") {
    std::mt19937 rng(72006);
    Logo logo = random_logo(rng);

    std::stringstream p1;
    write_pbm_logo(p1, logo);
    CHECK(read_pbm_logo(p1).bits == logo.bits);

    // P4 with packed rows, MSB-first
    std::stringstream p4;
    p4 << "P4\n" << kLogoWidth << " " << kLogoHeight << "\n";
    for (int r = 0; r < kLogoHeight; ++r) {
        unsigned char packed[6] = {};
        for (int c = 0; c < kLogoWidth; ++c)
            if (logo.at(r, c)) packed[c / 8] |= static_cast<unsigned char>(0x80 >> (c % 8));
        p4.write(reinterpret_cast<const char*>(packed), 6);
    }
    CHECK(read_pbm_logo(p4).bits == logo.bits);

    std::stringstream bad;
    bad << "P1\n30 40\n";
    CHECK_THROWS(read_pbm_logo(bad));
}

TEST_SUITE_END();
