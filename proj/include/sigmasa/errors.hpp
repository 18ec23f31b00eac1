#pragma once

#include <stdexcept>
#include <string>

namespace sigmasa {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The signature matrix has no finite transversal.
struct StructurallyIllPosed : Error {
    StructurallyIllPosed() : Error("structurally ill-posed: no finite transversal exists") {}
    using Error::Error;
};

/// A sparsity pattern contains no transversal.
struct StructurallySingular : Error {
    StructurallySingular() : Error("structurally singular: pattern contains no transversal") {}
    using Error::Error;
};

/// A transversal position falls on an absent (-inf) entry.
struct InfinitePosition : Error {
    using Error::Error;
};

/// Offsets fail the validity conditions for the given signature matrix.
struct InvalidOffsets : Error {
    using Error::Error;
};

/// A fixpoint iteration exceeded its cap; indicates a library bug, not bad input.
struct InternalNonConvergence : Error {
    using Error::Error;
};

struct TransversalNotInPattern : Error {
    using Error::Error;
};

/// Vector is not block-constant, i.e. not a general offset vector for this system.
struct NotBlockConstant : Error {
    using Error::Error;
};

/// Lead-time vector violates some block inequality.
struct NotASolution : Error {
    using Error::Error;
};

/// A critical subgraph contains a cycle; indicates a violated invariant.
struct InternalCycle : Error {
    using Error::Error;
};

struct NotSurjective : Error {
    using Error::Error;
};

/// Oracle guard: instance too big for exhaustive enumeration.
struct TooLarge : Error {
    using Error::Error;
};

/// DAE text parse error, message carries line:column when known.
struct SyntaxError : Error {
    SyntaxError(const std::string& what, int line, int column)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what),
          line(line), column(column) {}
    explicit SyntaxError(const std::string& what) : Error("syntax error: " + what) {}
    int line = 0;
    int column = 0;
};

struct UndeclaredIdentifier : Error {
    explicit UndeclaredIdentifier(const std::string& name)
        : Error("undeclared identifier \"" + name + "\""), name(name) {}
    std::string name;
};

/// Equation count differs from variable count.
struct CountMismatch : Error {
    using Error::Error;
};

/// Malformed .sig file.
struct FormatError : Error {
    using Error::Error;
};

} // namespace sigmasa
