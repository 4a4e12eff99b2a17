// Float comparisons reported as pass / fail / inconclusive.
//
// lhs < rhs passes only when (rhs - lhs) / max(|lhs|, |rhs|) exceeds the
// margin policy; it fails when the same quantity is below -policy.

#pragma once

#include "ovrank/hp.hpp"

#include <string>

namespace ovrank {

inline constexpr double kMarginPolicy = 1e-12;

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct Check {
    Verdict verdict = Verdict::inconclusive;
    HPReal lhs;
    HPReal rhs;
    HPReal relative_margin;

    bool passed() const { return verdict == Verdict::pass; }
};

Check strictly_less(const HPReal& lhs, const HPReal& rhs, double policy = kMarginPolicy);

}  // namespace ovrank
