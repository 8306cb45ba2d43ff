#ifndef CLR_CHECKS_HPP
#define CLR_CHECKS_HPP

#include "clr/numerics.hpp"

#include <string>
#include <vector>

namespace clr {

struct CheckResult {
    std::string id;
    bool pass;
    std::string detail;
};

// All invariant suites, filtered by substring match on the id ("" = all).
// Every check respects the supplied quadrature/search settings, so loosened
// tolerances genuinely propagate into the verdicts.
std::vector<CheckResult> run_checks(const std::string& only,
                                    const QuadratureSpec& quad,
                                    const SearchSpec& search);

std::vector<std::string> check_ids();

} // namespace clr

#endif
