#pragma once

#include <stdexcept>
#include <string>

namespace faithgnn {

/// Bad argument: shape mismatch, out-of-range size, malformed mask.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input text could not be parsed (dataset lines, checkpoints, configs).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed input violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation called on an object in the wrong state (e.g. Adam step without gradients).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Training diverged (non-finite loss).
class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, int epoch, int batch)
        : std::runtime_error(what), epoch_(epoch), batch_(batch) {}
    int epoch() const { return epoch_; }
    int batch() const { return batch_; }

private:
    int epoch_;
    int batch_;
};

} // namespace faithgnn
