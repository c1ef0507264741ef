#include "freelab/common.hpp"

#include <algorithm>
#include <atomic>

namespace freelab {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::PointOnCarrier: return "PointOnCarrier";
        case ErrorCode::TransformUndefined: return "TransformUndefined";
        case ErrorCode::UnsupportedCarrier: return "UnsupportedCarrier";
        case ErrorCode::UnsupportedKind: return "UnsupportedKind";
        case ErrorCode::AtomAtZero: return "AtomAtZero";
        case ErrorCode::InvalidScale: return "InvalidScale";
        case ErrorCode::ShiftNotAllowed: return "ShiftNotAllowed";
        case ErrorCode::DivergentMoment: return "DivergentMoment";
        case ErrorCode::NegativeMass: return "NegativeMass";
        case ErrorCode::MassNotOne: return "MassNotOne";
        case ErrorCode::OverlappingPieces: return "OverlappingPieces";
        case ErrorCode::OffCarrierAtom: return "OffCarrierAtom";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::SingularIntegral: return "SingularIntegral";
        case ErrorCode::EtaVanishes: return "EtaVanishes";
        case ErrorCode::BetaDivergent: return "BetaDivergent";
        case ErrorCode::BetaZero: return "BetaZero";
        case ErrorCode::CircleMeanZero: return "CircleMeanZero";
        case ErrorCode::OrderTooSmall: return "OrderTooSmall";
        case ErrorCode::BracketingFailed: return "BracketingFailed";
        case ErrorCode::RefinementNeeded: return "RefinementNeeded";
        case ErrorCode::NonIntervalSet: return "NonIntervalSet";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotAZero: return "NotAZero";
        case ErrorCode::DivergentClassifierIntegral: return "DivergentClassifierIntegral";
        case ErrorCode::OddOrderZero: return "OddOrderZero";
        case ErrorCode::NotPolynomialPiece: return "NotPolynomialPiece";
        case ErrorCode::DivergentB: return "DivergentB";
        case ErrorCode::InsufficientPositivePoints: return "InsufficientPositivePoints";
        case ErrorCode::SupportNotCovered: return "SupportNotCovered";
        case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
        case ErrorCode::DegenerateTarget: return "DegenerateTarget";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Error";
}

unsigned thread_budget() {
    if (const char* env = std::getenv("FREELAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned nt = thread_budget();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    nt = std::min<std::size_t>(nt, n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace freelab
