#pragma once

#include <stdexcept>
#include <string>

namespace cusptype {

// Every failure mode gets its own type so callers can react precisely.
// The base class keeps them all catchable in one clause.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- ring construction / arithmetic -------------------------------------
struct NotPrime : Error { using Error::Error; };
struct MixedNeedsPrimeField : Error { using Error::Error; };
struct BadModulus : Error { using Error::Error; };
struct NonUnit : Error { using Error::Error; };
// An operand is not known to enough digits to decide the result.
struct InsufficientPrecision : Error { using Error::Error; };

// --- matrix / polynomial layer -------------------------------------------
struct DimensionTooLarge : Error { using Error::Error; };
struct PrecisionTooLow : Error { using Error::Error; };
struct NotFound : Error { using Error::Error; };

// --- lattice-chain orders -------------------------------------------------
struct NotInNormalizer : Error { using Error::Error; };

// --- strata ----------------------------------------------------------------
struct ScalarEquivalent : Error { using Error::Error; };
struct InconclusiveFieldData : Error { using Error::Error; };
struct NotSimple : Error { using Error::Error; };
struct NotInSubgroup : Error { using Error::Error; };

// --- finite-group utilities -------------------------------------------------
struct NotAGroup : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };

// --- enumeration limits ------------------------------------------------------
struct SizeGuard : Error { using Error::Error; };
struct BadArgument : Error { using Error::Error; };

} // namespace cusptype
