#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qhfib {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UnknownBasisLabel : public Error {
public:
    explicit UnknownBasisLabel(const std::string& label)
        : Error("unknown basis label '" + label + "'") {}
};

class DegeneratePairing : public Error {
public:
    using Error::Error;
};

class MissingTripleData : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class CutoffTooSmall : public Error {
public:
    using Error::Error;
};

// Raised whenever a computation needs Gromov-Witten data above the
// declared completeness level of a table, or an arity the table lacks.
class TableIncomplete : public Error {
public:
    using Error::Error;
};

class DimensionRuleViolation : public Error {
public:
    using Error::Error;
};

class Inconsistent : public Error {
public:
    using Error::Error;
};

class PrimingInvalid : public Error {
public:
    using Error::Error;
};

class FiberMismatch : public Error {
public:
    using Error::Error;
};

class UnknownSuite : public Error {
public:
    using Error::Error;
};

class HypothesisFailed : public Error {
public:
    HypothesisFailed(const std::string& what, std::vector<std::string> entries)
        : Error(what), entries_(std::move(entries)) {}
    const std::vector<std::string>& entries() const { return entries_; }

private:
    std::vector<std::string> entries_;
};

} // namespace qhfib
