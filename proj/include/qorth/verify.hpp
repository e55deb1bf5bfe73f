#pragma once

#include "qorth/painleve.hpp"
#include "qorth/pipeline.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qorth {

struct CheckResult {
    std::string name;
    Real max_residual;
    Real tolerance;
    bool passed = false;
    bool skipped = false;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::optional<Halt> halt;  ///< the recursion route stopped early

    bool passed() const;
    Real max_residual() const;  ///< over checks that ran
};

/// Tolerance slack per check, applied as 10^-(digits - slack).
namespace slack {
inline constexpr int kPearson = 10;
inline constexpr int kMoments = 10;
inline constexpr int kGram = 10;
inline constexpr int kLadderRelation = 12;
inline constexpr int kSystem = 15;
inline constexpr int kRoute = 25;
inline constexpr int kInitialX0 = 5;
inline constexpr int kInitialX1 = 10;
}  // namespace slack

/// Full cross-route campaign for one weight at degree N.
VerifyReport verify_weight(const WeightChoice& choice, unsigned N, const PrecisionContext& ctx,
                           const std::optional<Real>& tol_override = std::nullopt);

}  // namespace qorth
