#pragma once

// Minimal netpbm support: PBM (P1/P4) for logos, PGM (P5) for luma dumps.

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasemark/payload.hpp"

namespace phasemark {

namespace detail {

inline int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments between header fields
    while (true) {
        int ch = in.peek();
        if (ch == EOF) throw std::runtime_error("unexpected end of PNM header");
        if (std::isspace(ch)) {
            in.get();
        } else if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) throw std::runtime_error("malformed PNM header field");
    return value;
}

}  // namespace detail

/// Reads a P1 or P4 bitmap and checks it is exactly 44x36. PBM bit 1 = black
/// = logo bit 1.
inline Logo read_pbm_logo(std::istream& in) {
    std::string magic;
    in >> magic;
    if (magic != "P1" && magic != "P4") throw std::runtime_error("not a PBM file (want P1 or P4)");
    const int w = detail::read_pnm_token(in);
    const int h = detail::read_pnm_token(in);
    if (w != kLogoWidth || h != kLogoHeight) {
        std::ostringstream msg;
        msg << "logo must be " << kLogoWidth << "x" << kLogoHeight << ", got " << w << "x" << h;
        throw std::runtime_error(msg.str());
    }
    Logo logo;
    if (magic == "P1") {
        for (int i = 0; i < kLogoBits; ++i) {
            int ch;
            do {
                ch = in.get();
                if (ch == '#') {
                    std::string line;
                    std::getline(in, line);
                    ch = '\n';
                }
            } while (ch != EOF && ch != '0' && ch != '1');
            if (ch == EOF) throw std::runtime_error("truncated P1 bitmap");
            logo.bits[i] = static_cast<std::uint8_t>(ch - '0');
        }
    } else {
        in.get();  // single whitespace after header
        const int row_bytes = (kLogoWidth + 7) / 8;
        std::vector<char> row(row_bytes);
        for (int r = 0; r < kLogoHeight; ++r) {
            if (!in.read(row.data(), row_bytes)) throw std::runtime_error("truncated P4 bitmap");
            for (int c = 0; c < kLogoWidth; ++c)
                logo.at(r, c) = (static_cast<unsigned char>(row[c / 8]) >> (7 - c % 8)) & 1;
        }
    }
    return logo;
}

inline Logo read_pbm_logo(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open logo file: " + path);
    return read_pbm_logo(in);
}

inline void write_pbm_logo(std::ostream& out, const Logo& logo) {
    out << "P1\n" << kLogoWidth << " " << kLogoHeight << "\n";
    for (int r = 0; r < kLogoHeight; ++r) {
        for (int c = 0; c < kLogoWidth; ++c) {
            out << int(logo.at(r, c));
            out << (c + 1 == kLogoWidth ? '\n' : ' ');
        }
    }
}

inline void write_pbm_logo(const std::string& path, const Logo& logo) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write logo file: " + path);
    write_pbm_logo(out, logo);
}

inline void write_pgm(std::ostream& out, const std::uint8_t* samples, int width, int height) {
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(samples), static_cast<std::streamsize>(width) * height);
}

inline void write_pgm(const std::string& path, const std::uint8_t* samples, int width, int height) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write PGM file: " + path);
    write_pgm(out, samples, width, height);
}

}  // namespace phasemark
