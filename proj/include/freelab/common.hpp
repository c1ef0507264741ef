#pragma once

#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace freelab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class ErrorCode {
    PointOnCarrier,
    TransformUndefined,
    UnsupportedCarrier,
    UnsupportedKind,
    AtomAtZero,
    InvalidScale,
    ShiftNotAllowed,
    DivergentMoment,
    NegativeMass,
    MassNotOne,
    OverlappingPieces,
    OffCarrierAtom,
    DomainViolation,
    SingularIntegral,
    EtaVanishes,
    BetaDivergent,
    BetaZero,
    CircleMeanZero,
    OrderTooSmall,
    BracketingFailed,
    RefinementNeeded,
    NonIntervalSet,
    NoConvergence,
    NotAZero,
    DivergentClassifierIntegral,
    OddOrderZero,
    NotPolynomialPiece,
    DivergentB,
    InsufficientPositivePoints,
    SupportNotCovered,
    ExtrapolationUnstable,
    DegenerateTarget,
    BadInput,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

// Thread budget for grid-parallel maps. FREELAB_THREADS wins over hardware_concurrency.
unsigned thread_budget();

// Deterministic parallel map: results land at their own index regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace freelab
