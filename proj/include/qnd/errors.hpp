#pragma once

#include <stdexcept>
#include <string>

namespace qnd {

// Coherent-state construction rejected because too much amplitude lies
// beyond the requested truncation.
class truncation_error : public std::runtime_error {
public:
    truncation_error(const std::string& what, int required_n_max)
        : std::runtime_error(what), required_n_max_(required_n_max) {}
    int required_n_max() const { return required_n_max_; }

private:
    int required_n_max_;
};

// Detuning below the configured floor; the dispersive phase-shift picture
// does not apply near resonance.
class resonance_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Conditioning on an outcome record of vanishing probability.
class conditioning_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent experiment configuration.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem failure carrying the offending path.
class io_error : public std::runtime_error {
public:
    io_error(const std::string& what, const std::string& path)
        : std::runtime_error(what + ": " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace qnd
