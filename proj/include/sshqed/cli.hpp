#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "sshqed/core_model.hpp"

namespace sshqed::cli {

enum ExitCode : int { ok = 0, tolerance_breach = 1, usage = 2, failure = 3 };

/// Parameter bundle as read from a JSON file; absent keys keep defaults.
struct ParamFile {
    WaveguideParams waveguide;
    EmitterParams emitter;
    Coupling config = Coupling::A;
    std::optional<double> alpha;
};

/// Throws ValidationError on unknown keys or wrong types, Error if unreadable.
ParamFile load_params(const std::string& path);

/// alpha defaults to 1 for A, 0 for B and 0.5 for AB.
Model to_model(const ParamFile& p);

/// Thread count from SSHQED_THREADS; 1 when unset or invalid.
int thread_count();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sshqed::cli
