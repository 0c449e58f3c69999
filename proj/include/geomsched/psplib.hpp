// Reader for PSPLib single-mode .sm files.
#ifndef GEOMSCHED_PSPLIB_HPP
#define GEOMSCHED_PSPLIB_HPP

#include <string>

#include "geomsched/instance.hpp"

namespace geomsched {

struct PsplibOptions {
    double profit_default = 1.0;  // profit for non-dummy jobs
    double rate = 0.001;          // per-period discount rate
    Semantics semantics = Semantics::Renewable;
};

// Thrown with 1-based line information on malformed input.
struct PsplibParseError : StructuralError {
    using StructuralError::StructuralError;
};

// Parses job count, horizon, successor lists (inverted to predecessor sets),
// durations, renewable requests, and constant availabilities. Dummy jobs
// (zero duration) keep profit 0.
Instance parse_psplib(const std::string& text, const PsplibOptions& opts = {});

}  // namespace geomsched

#endif
