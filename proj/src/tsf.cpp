#include "tsteer/tsf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "tsteer/errors.hpp"

static_assert(std::endian::native == std::endian::little, "TSF1 writer assumes a little-endian host");

namespace tsteer {

namespace {

void write_header(std::ofstream& out, std::uint32_t n, std::uint32_t comps, double time) {
    out.write("TSF1", 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&comps), 4);
    out.write(reinterpret_cast<const char*>(&time), 8);
}

void write_component(std::ofstream& out, const ScalarField& f) {
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

}  // namespace

void write_tsf(const std::string& path, const ScalarField& f, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open " + path);
    write_header(out, static_cast<std::uint32_t>(f.grid().n), 1, time);
    write_component(out, f);
    if (!out) fail(Errc::IoError, "short write to " + path);
}

void write_tsf(const std::string& path, const VectorField2& u, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open " + path);
    write_header(out, static_cast<std::uint32_t>(u.grid().n), 2, time);
    write_component(out, u.u1);
    write_component(out, u.u2);
    if (!out) fail(Errc::IoError, "short write to " + path);
}

TsfData read_tsf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    char magic[4];
    std::uint32_t n = 0, comps = 0;
    double time = 0.0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&comps), 4);
    in.read(reinterpret_cast<char*>(&time), 8);
    if (!in || std::memcmp(magic, "TSF1", 4) != 0) fail(Errc::IoError, "bad TSF1 header in " + path);
    if (comps != 1 && comps != 2) fail(Errc::IoError, "bad TSF1 component count in " + path);

    TsfData d;
    d.grid = GridSpec::make(static_cast<int>(n));
    d.components = static_cast<int>(comps);
    d.time = time;
    for (int c = 0; c < d.components; ++c) {
        std::vector<double> vals(d.grid.size());
        in.read(reinterpret_cast<char*>(vals.data()), static_cast<std::streamsize>(vals.size() * sizeof(double)));
        if (!in) fail(Errc::IoError, "truncated TSF1 payload in " + path);
        (c == 0 ? d.c1 : d.c2) = ScalarField::from_values(d.grid, std::move(vals));
    }
    return d;
}

}  // namespace tsteer
