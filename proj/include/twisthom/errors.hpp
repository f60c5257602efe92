#pragma once

#include <stdexcept>
#include <string>

namespace thh {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A product, action or operator was requested outside the declared window.
struct OutOfWindow : Error { using Error::Error; };
// A window is too small to hold the data a construction needs.
struct WindowTooSmall : Error { using Error::Error; };
// Composite of consecutive boundary maps is nonzero.
struct CompositionNonzero : Error { using Error::Error; };
// Map does not send cycles to cycles modulo boundaries.
struct NotAChainMap : Error { using Error::Error; };

struct NotACycle : Error { using Error::Error; };
struct NotACocycle : Error { using Error::Error; };
struct BidegreeOutOfRange : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct NotFiniteDimensional : Error { using Error::Error; };
struct SigmaOrderMismatch : Error { using Error::Error; };
struct InsufficientWindow : Error { using Error::Error; };
// A map that should intertwine bimodule actions fails to; indicates a bug.
struct IntertwinerCheckFailed : Error { using Error::Error; };

struct BadParams : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

} // namespace thh
