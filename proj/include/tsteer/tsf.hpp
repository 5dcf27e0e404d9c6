#pragma once

#include <string>

#include "tsteer/field.hpp"

namespace tsteer {

// "TSF1" field dump: 4-byte magic, u32 grid size, u32 component count (1 or 2),
// f64 time stamp, then row-major little-endian f64 samples per component.
void write_tsf(const std::string& path, const ScalarField& f, double time = 0.0);
void write_tsf(const std::string& path, const VectorField2& u, double time = 0.0);

struct TsfData {
    GridSpec grid;
    int components = 0;
    double time = 0.0;
    ScalarField c1, c2;  // c2 valid when components == 2
};

TsfData read_tsf(const std::string& path);

}  // namespace tsteer
