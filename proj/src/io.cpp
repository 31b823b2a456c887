#include "ngmeet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace ngmeet {

namespace {

constexpr char kMagic[4] = {'H', 'S', 'I', '1'};
constexpr std::uint32_t kDtypeF32 = 1;

std::uint32_t read_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) |
           static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 |
           static_cast<std::uint32_t>(p[3]) << 24;
}

void write_u32le(std::ofstream& out, std::uint32_t v) {
    const unsigned char b[4] = {
        static_cast<unsigned char>(v & 0xff),
        static_cast<unsigned char>((v >> 8) & 0xff),
        static_cast<unsigned char>((v >> 16) & 0xff),
        static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

float to_f32le(float v) { return v; }  // build targets are little-endian

}  // namespace

HsiCube read_hsi(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(IoError::Kind::File, "cannot open file: " + path);

    unsigned char header[20];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (in.gcount() < static_cast<std::streamsize>(sizeof(header)))
        throw IoError(IoError::Kind::Truncated,
                      "truncated header: " + path);
    if (std::memcmp(header, kMagic, 4) != 0)
        throw IoError(IoError::Kind::BadMagic, "bad magic: " + path);

    const std::uint32_t rows = read_u32le(header + 4);
    const std::uint32_t cols = read_u32le(header + 8);
    const std::uint32_t bands = read_u32le(header + 12);
    const std::uint32_t dtype = read_u32le(header + 16);
    if (dtype != kDtypeF32)
        throw IoError(IoError::Kind::BadDtype,
                      "unknown dtype tag " + std::to_string(dtype) + ": " +
                          path);
    if (rows == 0 || cols == 0 || bands == 0)
        throw IoError(IoError::Kind::Truncated,
                      "zero dimension in header: " + path);

    const std::uint64_t count =
        static_cast<std::uint64_t>(rows) * cols * bands;
    std::vector<float> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (in.gcount() < static_cast<std::streamsize>(count * sizeof(float)))
        throw IoError(IoError::Kind::Truncated,
                      "truncated payload: " + path);

    std::vector<double> data(count);
    for (std::uint64_t i = 0; i < count; ++i)
        data[i] = static_cast<double>(payload[i]);
    HsiCube cube = HsiCube::from_data(static_cast<int>(rows),
                                      static_cast<int>(cols),
                                      static_cast<int>(bands),
                                      std::move(data));
    if (!cube.all_finite())
        throw IoError(IoError::Kind::File,
                      "non-finite samples in payload: " + path);
    return cube;
}

void write_hsi(const std::string& path, const HsiCube& cube) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(IoError::Kind::File, "cannot open file: " + path);
    out.write(kMagic, 4);
    write_u32le(out, static_cast<std::uint32_t>(cube.rows()));
    write_u32le(out, static_cast<std::uint32_t>(cube.cols()));
    write_u32le(out, static_cast<std::uint32_t>(cube.bands()));
    write_u32le(out, kDtypeF32);
    std::vector<float> payload(cube.raw().size());
    for (std::size_t i = 0; i < payload.size(); ++i)
        payload[i] = to_f32le(static_cast<float>(cube.raw()[i]));
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (!out)
        throw IoError(IoError::Kind::File, "write failed: " + path);
}

void write_pgm_band(const std::string& path, const HsiCube& cube, int band) {
    if (band < 0 || band >= cube.bands())
        throw std::invalid_argument("write_pgm_band: band out of range");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(IoError::Kind::File, "cannot open file: " + path);
    out << "P5\n" << cube.cols() << " " << cube.rows() << "\n255\n";
    const double scale = cube.value_scale() > 0 ? cube.value_scale() : 255.0;
    for (int i = 0; i < cube.rows(); ++i)
        for (int j = 0; j < cube.cols(); ++j) {
            const double v = cube.at(i, j, band) / scale * 255.0;
            const int q = static_cast<int>(std::lround(v));
            out.put(static_cast<char>(std::clamp(q, 0, 255)));
        }
    if (!out)
        throw IoError(IoError::Kind::File, "write failed: " + path);
}

}  // namespace ngmeet
