#pragma once

#include <stdexcept>
#include <string>

namespace stylepredict {

// Raised for bad configuration, bad flags, or malformed schemas.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised for failures while running the pipeline (ingestion, joins,
// training, ...). The CLI maps this to exit code 1.
class PipelineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stylepredict
