#include "frscat/pnm.hpp"

#include <cmath>
#include <fstream>

#include "frscat/errors.hpp"

namespace frscat {

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw io_error("pnm: truncated header");
    return tok;
}

long parse_dim(std::istream& in, const char* what) {
    std::string tok = next_token(in);
    try {
        long v = std::stol(tok);
        if (v < 1) throw io_error(std::string("pnm: invalid ") + what);
        return v;
    } catch (const io_error&) {
        throw;
    } catch (...) {
        throw io_error(std::string("pnm: invalid ") + what + " '" + tok + "'");
    }
}

struct PnmHeader {
    std::string magic;
    int width = 0;
    int height = 0;
    long maxval = 0;
};

PnmHeader read_header(std::istream& in, const std::string& path) {
    PnmHeader h;
    h.magic = next_token(in);
    if (h.magic != "P5" && h.magic != "P6")
        throw io_error("pnm: '" + path + "' is not binary PGM/PPM (magic '" + h.magic + "')");
    h.width = static_cast<int>(parse_dim(in, "width"));
    h.height = static_cast<int>(parse_dim(in, "height"));
    h.maxval = parse_dim(in, "maxval");
    if (h.maxval > 65535) throw io_error("pnm: unsupported maxval");
    return h;
}

std::vector<unsigned char> read_payload(std::istream& in, std::size_t bytes, const std::string& path) {
    std::vector<unsigned char> buf(bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in.gcount()) != bytes)
        throw io_error("pnm: '" + path + "' truncated payload");
    return buf;
}

}  // namespace

std::vector<RealImage> read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open image '" + path + "'");
    PnmHeader h = read_header(in, path);
    if (h.maxval > 255) throw io_error("pnm: '" + path + "' expected 8-bit image data");
    int channels = h.magic == "P6" ? 3 : 1;
    std::size_t n = static_cast<std::size_t>(h.width) * h.height;
    auto buf = read_payload(in, n * static_cast<std::size_t>(channels), path);

    std::vector<RealImage> out(static_cast<std::size_t>(channels), RealImage(h.width, h.height));
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < channels; ++c)
            out[static_cast<std::size_t>(c)].data[i] =
                static_cast<double>(buf[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)]);
    return out;
}

void write_pgm8(const std::string& path, const RealImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write image '" + path + "'");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> buf(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        double v = std::round(img.data[i]);
        buf[i] = static_cast<unsigned char>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw io_error("failed writing '" + path + "'");
}

void write_pgm8_scaled(const std::string& path, const RealImage& img, double lo, double hi) {
    RealImage scaled(img.width, img.height);
    double span = hi > lo ? hi - lo : 1.0;
    for (std::size_t i = 0; i < img.size(); ++i)
        scaled.data[i] = (img.data[i] - lo) / span * 255.0;
    write_pgm8(path, scaled);
}

InstanceMask read_mask(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open mask '" + path + "'");
    PnmHeader h = read_header(in, path);
    if (h.magic != "P5") throw io_error("mask: '" + path + "' must be PGM (P5)");
    std::size_t n = static_cast<std::size_t>(h.width) * h.height;
    InstanceMask mask(h.width, h.height);
    if (h.maxval > 255) {
        auto buf = read_payload(in, n * 2, path);
        for (std::size_t i = 0; i < n; ++i)
            mask.labels[i] = static_cast<std::uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]);
    } else {
        auto buf = read_payload(in, n, path);
        for (std::size_t i = 0; i < n; ++i) mask.labels[i] = buf[i];
    }
    return mask;
}

void write_mask(const std::string& path, const InstanceMask& mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write mask '" + path + "'");
    out << "P5\n" << mask.width << " " << mask.height << "\n65535\n";
    std::vector<unsigned char> buf(mask.size() * 2);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        buf[2 * i] = static_cast<unsigned char>(mask.labels[i] >> 8);
        buf[2 * i + 1] = static_cast<unsigned char>(mask.labels[i] & 0xff);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace frscat
