#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msymp {

struct DriverOptions {
    uint64_t seed = 0;
    double tolerance = 1e-9;
};

/// exit_code: 0 all pass, 1 a check failed, 2 input error.
struct DriverResult {
    std::string json;
    int exit_code = 0;
};

DriverResult cmd_check(const std::string& file_text, const DriverOptions& opt);
DriverResult cmd_field_equations(const std::string& file_text, const std::string& section_name,
                                 const DriverOptions& opt);  // empty name: equations only
DriverResult cmd_noether(const std::string& file_text, const std::string& symmetry_name,
                         int order_max, const std::vector<std::string>& witnesses,
                         const DriverOptions& opt);
DriverResult cmd_symmetry(const std::string& file_text, const std::string& symmetry_name,
                          const std::vector<std::string>& witnesses, const DriverOptions& opt);
DriverResult cmd_conserved(const std::string& file_text, const std::string& quantity_name,
                           const std::vector<std::string>& witnesses,
                           const std::string& section_name, const DriverOptions& opt);
DriverResult cmd_action(const std::string& file_text, const std::string& section_name,
                        const std::vector<std::string>& axis_names,
                        const std::vector<std::pair<double, double>>& box, int quadrature_points,
                        const DriverOptions& opt);
DriverResult cmd_identities(uint64_t seed, int cases, const DriverOptions& opt);

const char* tool_version();

}  // namespace msymp
