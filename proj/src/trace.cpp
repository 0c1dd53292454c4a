#include "cvqkd/trace.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace cvqkd {

static_assert(std::endian::native == std::endian::little,
              "CVQT I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'C', 'V', 'Q', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const char* what) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw PipelineError(std::string("CVQT: truncated ") + what);
    return v;
}

}  // namespace

void write_cvqt(std::ostream& os, const WaveformTrace& trace) {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint8_t>(os, static_cast<std::uint8_t>(trace.role));
    put<double>(os, trace.sample_rate);
    put<std::uint64_t>(os, trace.samples.size());
    for (const cplx& s : trace.samples) {
        put<float>(os, static_cast<float>(s.real()));
        put<float>(os, static_cast<float>(s.imag()));
    }
    if (!os) throw PipelineError("CVQT: write failed");
}

void write_cvqt(const std::string& path, const WaveformTrace& trace) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PipelineError("CVQT: cannot open for write: " + path);
    write_cvqt(f, trace);
}

WaveformTrace read_cvqt(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw PipelineError("CVQT: bad magic");
    const auto version = get<std::uint32_t>(is, "version");
    if (version != kVersion)
        throw PipelineError("CVQT: unsupported version " + std::to_string(version));
    const auto role = get<std::uint8_t>(is, "role");
    if (role > 3) throw PipelineError("CVQT: bad role byte");
    WaveformTrace t;
    t.role = static_cast<TraceRole>(role);
    t.sample_rate = get<double>(is, "sample rate");
    const auto count = get<std::uint64_t>(is, "sample count");
    t.samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto re = get<float>(is, "samples");
        const auto im = get<float>(is, "samples");
        t.samples[i] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return t;
}

WaveformTrace read_cvqt(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw PipelineError("CVQT: cannot open for read: " + path);
    return read_cvqt(f);
}

}  // namespace cvqkd
