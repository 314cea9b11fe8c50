#pragma once

#include <memory>
#include <string>
#include <vector>

#include "msymp/expr.hpp"

namespace msymp {

/// A single bundle-adapted coordinate chart: m base coordinates followed by
/// n fiber coordinates. The base volume form is dx^1 ∧ ... ∧ dx^m by
/// construction. Jet names "u_<fiber>_<base>" are reserved and rejected.
class BundleChart {
public:
    BundleChart(std::vector<std::string> base, std::vector<std::string> fiber);

    int base_dim() const { return static_cast<int>(base_.size()); }
    int fiber_dim() const { return static_cast<int>(fiber_.size()); }
    int dim() const { return base_dim() + fiber_dim(); }

    const std::vector<std::string>& base_names() const { return base_; }
    const std::vector<std::string>& fiber_names() const { return fiber_; }
    const std::string& name(int i) const { return all_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& names() const { return all_; }

    bool is_fiber(int i) const { return i >= base_dim(); }
    int index_of(const std::string& name) const;  // -1 when absent
    int require_index(const std::string& name) const;

    std::string jet_name(int fiber_index, int base_index) const;

private:
    std::vector<std::string> base_, fiber_, all_;
};

using ChartPtr = std::shared_ptr<const BundleChart>;

ChartPtr make_chart(std::vector<std::string> base, std::vector<std::string> fiber);

}  // namespace msymp
