#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgr {

// Base for every recoverable engine error. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyFrame : public Error {
public:
    EmptyFrame() : Error("frame contains no hands") {}
};

class UnknownSetting : public Error {
public:
    explicit UnknownSetting(int id) : Error("unknown augmentation setting " + std::to_string(id)) {}
    explicit UnknownSetting(const std::string& what) : Error(what) {}
};

class NoHandDetected : public Error {
public:
    NoHandDetected() : Error("no hand detected in any augmentation stage") {}
};

class MissingContext : public Error {
public:
    MissingContext() : Error("replay detector invoked without a replay key") {}
};

class FormatError : public Error {
public:
    FormatError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    explicit FormatError(const std::string& what) : Error(what) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

class UnsupportedVersion : public Error {
public:
    using Error::Error;
};

class EmptyClass : public Error {
public:
    explicit EmptyClass(std::size_t cls)
        : Error("class " + std::to_string(cls) + " has no training vectors"), cls_(cls) {}
    std::size_t class_index() const noexcept { return cls_; }

private:
    std::size_t cls_;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

class ZeroVector : public Error {
public:
    ZeroVector() : Error("cosine similarity undefined for an all-zero vector") {}
};

class NotFitted : public Error {
public:
    NotFitted() : Error("classifier used before fit") {}
};

class NonFiniteLoss : public Error {
public:
    explicit NonFiniteLoss(std::size_t epoch)
        : Error("logistic regression loss diverged at epoch " + std::to_string(epoch)) {}
};

class DegenerateTrajectory : public Error {
public:
    DegenerateTrajectory() : Error("trajectory has zero arc length") {}
    explicit DegenerateTrajectory(const std::string& sample)
        : Error("trajectory of sample '" + sample + "' has zero arc length"), sample_(sample) {}
    const std::string& sample() const noexcept { return sample_; }

private:
    std::string sample_;
};

class InvalidCounts : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    InsufficientSamples(const std::string& label, std::size_t have, std::size_t need)
        : Error("class '" + label + "' has " + std::to_string(have) +
                " usable samples, needs at least " + std::to_string(need)),
          label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

}  // namespace hgr
