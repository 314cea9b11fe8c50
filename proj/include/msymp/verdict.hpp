#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msymp/expr.hpp"

namespace msymp {

/// Deterministic RNG for probing, restarts and test-case generation.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    long long uniform_int(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

enum class Verdict { SymbolicZero, NumericZero, NonZero };

const char* verdict_name(Verdict v);  // "symbolic-zero", "numeric-zero", "nonzero"
inline bool verdict_passes(Verdict v) { return v != Verdict::NonZero; }

struct ProbeCfg {
    uint64_t seed = 0;
    double tolerance = 1e-9;
    int points = 20;
};

/// Symbolic zero test first; transcendental leftovers fall back to
/// evaluation at `points` random points in [-1.5, 1.5] per free symbol.
Verdict classify_zero(const ExprPtr& e, const ProbeCfg& cfg);

Verdict worst(Verdict a, Verdict b);

struct NamedResidual {
    std::string label;
    ExprPtr expr;
    Verdict verdict;
};

Verdict overall(const std::vector<NamedResidual>& rs);

}  // namespace msymp
