#include "msymp/chart.hpp"

#include <cctype>
#include <set>

#include "msymp/error.hpp"

namespace msymp {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return s != "sin" && s != "cos" && s != "exp";
}

}  // namespace

BundleChart::BundleChart(std::vector<std::string> base, std::vector<std::string> fiber)
    : base_(std::move(base)), fiber_(std::move(fiber)) {
    if (base_.empty() || fiber_.empty())
        throw MsympError(Errc::InvalidArgument, "chart needs at least one base and one fiber coordinate");
    std::set<std::string> seen;
    all_.reserve(base_.size() + fiber_.size());
    for (const auto& list : {base_, fiber_}) {
        for (const auto& n : list) {
            if (!valid_name(n))
                throw MsympError(Errc::InvalidArgument, "invalid coordinate name '" + n + "'");
            if (!seen.insert(n).second)
                throw MsympError(Errc::InvalidArgument, "duplicate coordinate name '" + n + "'");
            all_.push_back(n);
        }
    }
    // reserved first-jet identifiers must stay free
    for (const auto& f : fiber_)
        for (const auto& b : base_)
            if (seen.count("u_" + f + "_" + b))
                throw MsympError(Errc::InvalidArgument,
                                 "coordinate name 'u_" + f + "_" + b + "' is reserved for jet symbols");
}

int BundleChart::index_of(const std::string& name) const {
    for (size_t i = 0; i < all_.size(); ++i)
        if (all_[i] == name) return static_cast<int>(i);
    return -1;
}

int BundleChart::require_index(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw MsympError(Errc::InvalidArgument, "'" + name + "' is not a chart coordinate");
    return i;
}

std::string BundleChart::jet_name(int fiber_index, int base_index) const {
    return "u_" + name(fiber_index) + "_" + name(base_index);
}

ChartPtr make_chart(std::vector<std::string> base, std::vector<std::string> fiber) {
    return std::make_shared<const BundleChart>(std::move(base), std::move(fiber));
}

}  // namespace msymp
