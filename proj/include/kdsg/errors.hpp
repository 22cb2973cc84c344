#pragma once

#include <stdexcept>
#include <string>

namespace kdsg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation needed data beyond the realized bounds.
struct BoundExceeded : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

struct NotFlat : Error {
    NotFlat(const std::string& msg, int h, int w) : Error(msg), h(h), w(w) {}
    int h, w;
};

struct NotFormalizable : Error {
    using Error::Error;
};

struct NotANormalization : Error {
    using Error::Error;
};

struct Unsupported : Error {
    using Error::Error;
};

}  // namespace kdsg
