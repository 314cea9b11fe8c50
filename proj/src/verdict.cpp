#include "msymp/verdict.hpp"

#include <cmath>

namespace msymp {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::SymbolicZero: return "symbolic-zero";
        case Verdict::NumericZero: return "numeric-zero";
        case Verdict::NonZero: return "nonzero";
    }
    return "?";
}

Verdict worst(Verdict a, Verdict b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

Verdict overall(const std::vector<NamedResidual>& rs) {
    Verdict v = Verdict::SymbolicZero;
    for (const auto& r : rs) v = worst(v, r.verdict);
    return v;
}

namespace {

uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

Verdict classify_zero(const ExprPtr& e, const ProbeCfg& cfg) {
    switch (is_zero(e)) {
        case ZeroTest::Zero: return Verdict::SymbolicZero;
        case ZeroTest::NonZero: return Verdict::NonZero;
        case ZeroTest::Unknown: break;
    }
    std::set<std::string> syms;
    collect_symbols(e, syms);
    uint64_t h = cfg.seed ^ 0x5bf03635de0949e1ull;
    for (const auto& s : syms) h = fnv1a(s, h);
    SplitMix64 rng(h);
    for (int i = 0; i < cfg.points; ++i) {
        Point p;
        for (const auto& s : syms) p[s] = rng.uniform(-1.5, 1.5);
        double v = eval(e, p);
        if (!std::isfinite(v) || std::fabs(v) > cfg.tolerance) return Verdict::NonZero;
    }
    return Verdict::NumericZero;
}

}  // namespace msymp
