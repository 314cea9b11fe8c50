// Independent dense oracle for the exterior algebra: forms as fully
// antisymmetric component functions over arbitrary index tuples, with the
// operations written definitionally (shuffle sums, slot insertion,
// alternating derivative sums). Deliberately shares no code with the keyed
// implementation it cross-checks.
#pragma once

#include <map>
#include <vector>

#include "msymp/tensor.hpp"

namespace oracle {

using msymp::ExprPtr;

struct Dense {
    msymp::ChartPtr chart;
    int degree;
    std::map<std::vector<int>, ExprPtr> comp;  // sorted tuples only

    // component on an arbitrary tuple, with permutation sign
    ExprPtr value(std::vector<int> ix) const {
        int sign = 1;
        for (size_t i = 1; i < ix.size(); ++i)
            for (size_t j = i; j > 0 && ix[j - 1] > ix[j]; --j) {
                std::swap(ix[j - 1], ix[j]);
                sign = -sign;
            }
        for (size_t i = 0; i + 1 < ix.size(); ++i)
            if (ix[i] == ix[i + 1]) return msymp::zero();
        auto it = comp.find(ix);
        if (it == comp.end()) return msymp::zero();
        return sign == 1 ? it->second : msymp::neg(it->second);
    }
};

inline Dense from_form(const msymp::DiffForm& a) {
    Dense d{a.chart(), a.degree(), {}};
    for (const auto& [k, v] : a.g().coeffs()) d.comp[k.ix] = v;
    return d;
}

inline msymp::DiffForm to_form(const Dense& d) {
    msymp::DiffForm a(d.chart, d.degree);
    for (const auto& [k, v] : d.comp) a.set(std::vector<int>(k), v);
    return a;
}

inline void all_tuples(int dim, int k, std::vector<std::vector<int>>& out) {
    out.clear();
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < dim; ++i) {
            cur.push_back(i);
            gen(i + 1);
            cur.pop_back();
        }
    };
    gen(0);
}

// shuffle-sum wedge
inline Dense wedge(const Dense& a, const Dense& b) {
    Dense out{a.chart, a.degree + b.degree, {}};
    std::vector<std::vector<int>> keys;
    all_tuples(a.chart->dim(), out.degree, keys);
    for (const auto& K : keys) {
        std::vector<ExprPtr> terms;
        // choose positions for the a-block
        std::vector<int> pick(K.size(), 0);
        std::function<void(size_t, int, std::vector<int>&, std::vector<int>&, int)> go =
            [&](size_t pos, int taken, std::vector<int>& sa, std::vector<int>& sb, int inversions) {
                if (pos == K.size()) {
                    if (taken != a.degree) return;
                    ExprPtr va = a.value(sa), vb = b.value(sb);
                    if (msymp::is_zero_literal(va) || msymp::is_zero_literal(vb)) return;
                    ExprPtr t = msymp::mul(va, vb);
                    terms.push_back(inversions % 2 == 0 ? t : msymp::neg(t));
                    return;
                }
                // K[pos] goes to the a-block: it jumps over the b-elements already placed
                if (taken < a.degree) {
                    sa.push_back(K[pos]);
                    go(pos + 1, taken + 1, sa, sb, inversions + static_cast<int>(sb.size()));
                    sa.pop_back();
                }
                sb.push_back(K[pos]);
                go(pos + 1, taken, sa, sb, inversions);
                sb.pop_back();
            };
        std::vector<int> sa, sb;
        go(0, 0, sa, sb, 0);
        ExprPtr total = msymp::make_sum(terms);
        if (!msymp::is_zero_literal(total)) out.comp[K] = total;
    }
    return out;
}

// i(d/dz_j): insert j in the first slot
inline Dense contract_single(int j, const Dense& a) {
    Dense out{a.chart, a.degree - 1, {}};
    std::vector<std::vector<int>> keys;
    all_tuples(a.chart->dim(), out.degree, keys);
    for (const auto& K : keys) {
        std::vector<int> full{j};
        full.insert(full.end(), K.begin(), K.end());
        ExprPtr v = a.value(full);
        if (!msymp::is_zero_literal(v)) out.comp[K] = v;
    }
    return out;
}

// first wedge factor contracts first
inline Dense contract(const std::vector<int>& mv_key, const Dense& a) {
    Dense cur = a;
    for (int j : mv_key) cur = contract_single(j, cur);
    return cur;
}

// (da)(K) = sum_s (-1)^s d_{K_s} a(K minus K_s)
inline Dense d(const Dense& a) {
    Dense out{a.chart, a.degree + 1, {}};
    std::vector<std::vector<int>> keys;
    all_tuples(a.chart->dim(), out.degree, keys);
    for (const auto& K : keys) {
        std::vector<ExprPtr> terms;
        for (size_t s = 0; s < K.size(); ++s) {
            std::vector<int> rest;
            for (size_t q = 0; q < K.size(); ++q)
                if (q != s) rest.push_back(K[q]);
            ExprPtr dv = msymp::differentiate(a.value(rest), a.chart->name(K[s]));
            if (msymp::is_zero_literal(dv)) continue;
            terms.push_back(s % 2 == 0 ? dv : msymp::neg(dv));
        }
        ExprPtr total = msymp::make_sum(terms);
        if (!msymp::is_zero_literal(total)) out.comp[K] = total;
    }
    return out;
}

inline bool same(const Dense& a, const msymp::DiffForm& b) {
    msymp::DiffForm lhs = to_form(a);
    msymp::Graded diff = msymp::add(lhs.g(), msymp::scale(b.g(), msymp::integer(-1)));
    return diff.coeffs().empty();
}

}  // namespace oracle
