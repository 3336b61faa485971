#include "stlf/errors.hpp"

namespace stlf {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Sizing: return "sizing error";
    case ErrorKind::Data: return "data error";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::State: return "state error";
    case ErrorKind::Index: return "index error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Sizing:
    case ErrorKind::Domain:
        return 2;
    case ErrorKind::Data:
    case ErrorKind::Shape:
    case ErrorKind::Index:
        return 3;
    case ErrorKind::Numerical:
    case ErrorKind::State:
        return 4;
    case ErrorKind::Io:
        return 5;
    }
    return 1;
}

}  // namespace stlf
