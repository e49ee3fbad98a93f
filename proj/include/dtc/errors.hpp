#pragma once

#include <stdexcept>

namespace dtc {

// Requested state exceeds a backend cap (24 qubits pure, 12 density).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad run configuration (CLI flag or config-file value).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dtc
