#pragma once

#include <stdexcept>
#include <string>

namespace skg {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto exit codes.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// A graph or override that breaks a knowledge-graph invariant.
class ValidationError : public Error {
   public:
    using Error::Error;
};

// The knowledge graph is valid but cannot be turned into a network
// (cyclic stimulus chains, sensor fan-in above the enumeration bound).
class CompileError : public Error {
   public:
    using Error::Error;
};

// Malformed network structure or CPTs.
class NetworkError : public Error {
   public:
    using Error::Error;
};

// Evidence that names unknown nodes/states or has a bad likelihood vector.
class EvidenceError : public Error {
   public:
    using Error::Error;
};

// Evidence with zero probability under the network.
class ImpossibleEvidence : public Error {
   public:
    using Error::Error;
};

// A guard rail (state-space bound, MAP width) was exceeded.
class GuardExceeded : public Error {
   public:
    using Error::Error;
};

// Malformed records or files (CSV, JSON).
class FormatError : public Error {
   public:
    using Error::Error;
};

// Violated precondition on a pure operation.
class ContractViolation : public Error {
   public:
    using Error::Error;
};

}  // namespace skg
