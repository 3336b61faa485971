#pragma once

#include <stdexcept>
#include <string>

namespace stlf {

/// Broad failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
    Config,     // invalid parameters or configuration
    Sizing,     // series or window too short for the request
    Data,       // malformed or non-finite input data
    Numerical,  // singular systems, failed sanity checks on results
    Shape,      // matrix / vector dimension mismatch
    State,      // operation on an object in the wrong state (e.g. unfitted)
    Index,      // index out of range
    Domain,     // argument outside a function's mathematical domain
    Io,         // file system and parse errors
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define STLF_DEFINE_ERROR(Name, Kind)                                   \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(Kind, what) {}   \
    }

STLF_DEFINE_ERROR(ConfigError, ErrorKind::Config);
STLF_DEFINE_ERROR(SizingError, ErrorKind::Sizing);
STLF_DEFINE_ERROR(DataError, ErrorKind::Data);
STLF_DEFINE_ERROR(NumericalError, ErrorKind::Numerical);
STLF_DEFINE_ERROR(ShapeError, ErrorKind::Shape);
STLF_DEFINE_ERROR(StateError, ErrorKind::State);
STLF_DEFINE_ERROR(IndexError, ErrorKind::Index);
STLF_DEFINE_ERROR(DomainError, ErrorKind::Domain);
STLF_DEFINE_ERROR(IoError, ErrorKind::Io);

#undef STLF_DEFINE_ERROR

/// Process exit code used by the command-line tool for an error class.
int exit_code(ErrorKind kind) noexcept;

}  // namespace stlf
