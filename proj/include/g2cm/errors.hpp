#ifndef G2CM_ERRORS_HPP
#define G2CM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace g2cm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A predicate could not be decided from ball radii at the precision cap.
struct PrecisionExhausted : Error { using Error::Error; };

struct CompositeModulus : Error { using Error::Error; };
struct NotCM : Error { using Error::Error; };
struct NotCyclic : Error { using Error::Error; };
struct NotFundamental : Error { using Error::Error; };
struct NotUnimodular : Error { using Error::Error; };
struct RelationSearchExhausted : Error { using Error::Error; };
struct DecomposablePoint : Error { using Error::Error; };
struct RecognitionFailed : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };

} // namespace g2cm

#endif
