#pragma once

#include <stdexcept>
#include <string>

namespace pour {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad domain values: non-positive geometry, negative measurements,
/// out-of-range indices, infeasible task bands.
class validation_error : public error {
public:
    using error::error;
};

/// A sequence operation received fewer samples than it needs.
class insufficient_data_error : public error {
public:
    using error::error;
};

/// Shape mismatch or non-finite values in numeric kernels.
class numeric_error : public error {
public:
    using error::error;
};

/// File parse failures, corrupt or version-mismatched checkpoints.
class io_error : public error {
public:
    using error::error;
};

/// Scripted demonstration could not produce a usable trial.
class demo_failure_error : public error {
public:
    using error::error;
};

/// Bad run configuration (missing keys, checkpoint/normalizer mismatch).
class config_error : public error {
public:
    using error::error;
};

} // namespace pour
