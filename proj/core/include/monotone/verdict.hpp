#pragma once

#include <map>
#include <string>
#include <vector>

#include "monotone/errors.hpp"
#include "monotone/vec.hpp"

namespace monotone {

enum class TheoremId {
    Thm1,
    Thm2Identity,
    Thm4SM2,
    Cor5,
    Lemma6,
    Thm7a,
    Thm7b,
    Thm7c,
    Thm7d,
    RemarkChain,
    Thm8,
    Thm9,
    RegularityGap,
};

std::string to_string(TheoremId id);
TheoremId theorem_id_from_string(const std::string& s);

/// One labeled point attached to a verdict (a counterexample pair, a failed
/// query, the worst constraint).
struct Witness {
    std::string label;
    Vec v;
};

/// Outcome record of one theorem check. Structural invariant: a holding
/// verdict never carries a violation beyond its own tolerance.
class Verdict {
public:
    Verdict(TheoremId id, bool holds, double worst_violation, double tol,
            std::vector<Witness> witnesses, std::map<std::string, double> params);

    TheoremId id() const noexcept { return id_; }
    bool holds() const noexcept { return holds_; }
    double worst_violation() const noexcept { return worst_; }
    double tol() const noexcept { return tol_; }
    const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }
    const std::map<std::string, double>& params() const noexcept { return params_; }

private:
    TheoremId id_;
    bool holds_;
    double worst_;
    double tol_;
    std::vector<Witness> witnesses_;
    std::map<std::string, double> params_;
};

}  // namespace monotone
