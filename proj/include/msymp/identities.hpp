#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msymp/tensor.hpp"
#include "msymp/verdict.hpp"

namespace msymp {

struct IdentityGroup {
    std::string name;
    int cases = 0;
    std::vector<std::string> failures;  // printed residuals, empty on pass
};

struct IdentityReport {
    uint64_t seed = 0;
    int cases = 0;
    std::vector<IdentityGroup> groups;
    bool all_pass() const {
        for (const auto& g : groups)
            if (!g.failures.empty()) return false;
        return true;
    }
};

/// Randomized exterior-algebra identity suite on charts with m <= 2, n <= 3
/// and polynomial coefficients of degree <= 2. Every verdict is a symbolic
/// zero test; deterministic in (seed, cases).
IdentityReport run_identity_suite(uint64_t seed, int cases);

// test-data generators shared with the test binaries
ChartPtr random_chart(SplitMix64& rng, int max_m, int max_n);
ExprPtr random_poly(SplitMix64& rng, const std::vector<std::string>& names, int max_degree,
                    int max_terms);
DiffForm random_form(SplitMix64& rng, const ChartPtr& c, int degree, int max_coeff_degree);
MultiVector random_decomposable(SplitMix64& rng, const ChartPtr& c, int degree);

}  // namespace msymp
