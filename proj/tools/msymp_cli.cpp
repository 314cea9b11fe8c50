// Command-line front end. Talks to the engine exclusively through the
// shared-library C API in msymp.h.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "msymp.h"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open '" << path << "'\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void render_pretty(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    std::cerr << j.value("tool", "") << "  command=" << j.value("command", "") << "\n";
    if (j.contains("error")) {
        const auto& e = j["error"];
        std::cerr << "  INPUT ERROR [" << e.value("code", "") << "] " << e.value("message", "")
                  << "\n";
        return;
    }
    for (const auto& rec : j["checks"]) {
        std::string verdict = rec.value("verdict", "");
        const char* mark = verdict == "nonzero" || verdict == "error" ? "FAIL" : "pass";
        std::cerr << "  [" << mark << "] " << rec.value("name", "") << " (" << verdict << ")\n";
        if (rec.contains("order")) std::cerr << "      order: " << rec["order"] << "\n";
        if (rec.contains("xi")) std::cerr << "      xi: " << rec["xi"].dump() << "\n";
        if (rec.contains("classification"))
            std::cerr << "      classification: " << rec["classification"] << "\n";
        if (rec.contains("value")) std::cerr << "      value: " << rec["value"] << "\n";
        if (rec.contains("base_family"))
            for (const auto& eq : rec["base_family"])
                std::cerr << "      " << eq.value("label", "") << ": " << eq.value("equation", "")
                          << "\n";
        if (rec.contains("fiber_family"))
            for (const auto& eq : rec["fiber_family"])
                std::cerr << "      " << eq.value("label", "") << ": " << eq.value("equation", "")
                          << "\n";
        if (rec.contains("residuals"))
            for (const auto& r : rec["residuals"]) {
                std::string v = r.value("verdict", "");
                if (v == "nonzero")
                    std::cerr << "      residual " << r.value("label", "") << " = "
                              << r.value("expr", "") << "\n";
            }
        if (rec.contains("error"))
            std::cerr << "      error: " << rec["error"].value("message", "") << "\n";
    }
}

int emit(msymp_status st, char* json) {
    if (!json) {
        std::cerr << "internal error: " << msymp_last_error() << "\n";
        return 2;
    }
    std::fwrite(json, 1, std::strlen(json), stdout);
    std::string text = json;
    msymp_string_free(json);
    switch (st) {
        case MSYMP_OK: return 0;
        case MSYMP_CHECK_FAILED: return 1;
        default: return 2;
    }
}

struct BoxAxis {
    std::string name;
    double lo, hi;
};

std::vector<BoxAxis> parse_box(const std::vector<std::string>& specs) {
    std::vector<BoxAxis> out;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        auto colon = s.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || colon == std::string::npos) {
            std::cerr << "bad --box spec '" << s << "'; expected name=lo:hi\n";
            std::exit(2);
        }
        BoxAxis a;
        a.name = s.substr(0, eq);
        a.lo = std::stod(s.substr(eq + 1, colon - eq - 1));
        a.hi = std::stod(s.substr(colon + 1));
        out.push_back(a);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"msymp — symbolic checks for multisymplectic variational systems"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    double tolerance = 1e-9;
    bool pretty = false;
    app.add_option("--seed", seed, "RNG seed for probing and solvers");
    app.add_option("--tolerance", tolerance, "numeric zero tolerance")->default_val(1e-9);
    app.add_flag("--pretty", pretty, "human-readable rendering on stderr");

    std::string file, section, symmetry, quantity;
    std::vector<std::string> witnesses, box_specs;
    int order_max = 1, points = 32, cases = 200;
    uint64_t id_seed = 0;

    auto* c_check = app.add_subcommand("check", "structural invariants of a system file");
    c_check->add_option("file", file)->required();

    auto* c_feq = app.add_subcommand("field-equations", "variational field equations");
    c_feq->add_option("file", file)->required();
    c_feq->add_option("--section", section, "check this section against the equations");

    auto* c_noe = app.add_subcommand("noether", "Cartan symmetry order and Noether current");
    c_noe->add_option("file", file)->required();
    c_noe->add_option("--symmetry", symmetry)->required();
    c_noe->add_option("--order-max", order_max)->default_val(1);
    c_noe->add_option("--verify-with", witnesses, "witness ansatz names");

    auto* c_sym = app.add_subcommand("symmetry", "gauge/Cartan/bracket symmetry checks");
    c_sym->add_option("file", file)->required();
    c_sym->add_option("--symmetry", symmetry)->required();
    c_sym->add_option("--verify-with", witnesses);

    auto* c_con = app.add_subcommand("conserved", "conserved-quantity checks");
    c_con->add_option("file", file)->required();
    c_con->add_option("--quantity", quantity)->required();
    c_con->add_option("--verify-with", witnesses);
    c_con->add_option("--section", section, "also compute the divergence along this section");

    auto* c_act = app.add_subcommand("action", "action functional over a box");
    c_act->add_option("file", file)->required();
    c_act->add_option("--section", section)->required();
    c_act->add_option("--box", box_specs, "axis=lo:hi per base coordinate")->required();
    c_act->add_option("--points", points)->default_val(32);

    auto* c_id = app.add_subcommand("identities", "randomized exterior-algebra identity suite");
    c_id->add_option("--cases", cases)->default_val(200);

    CLI11_PARSE(app, argc, argv);
    id_seed = seed;

    msymp_options opt{seed, tolerance};
    char* json = nullptr;
    msymp_status st = MSYMP_ERR_INTERNAL;

    if (c_check->parsed()) {
        st = msymp_cmd_check(read_file(file).c_str(), &opt, &json);
    } else if (c_feq->parsed()) {
        st = msymp_cmd_field_equations(read_file(file).c_str(),
                                       section.empty() ? nullptr : section.c_str(), &opt, &json);
    } else if (c_noe->parsed()) {
        std::vector<const char*> w;
        for (const auto& s : witnesses) w.push_back(s.c_str());
        st = msymp_cmd_noether(read_file(file).c_str(), symmetry.c_str(), order_max, w.data(),
                               w.size(), &opt, &json);
    } else if (c_sym->parsed()) {
        std::vector<const char*> w;
        for (const auto& s : witnesses) w.push_back(s.c_str());
        st = msymp_cmd_symmetry(read_file(file).c_str(), symmetry.c_str(), w.data(), w.size(), &opt,
                                &json);
    } else if (c_con->parsed()) {
        std::vector<const char*> w;
        for (const auto& s : witnesses) w.push_back(s.c_str());
        st = msymp_cmd_conserved(read_file(file).c_str(), quantity.c_str(), w.data(), w.size(),
                                 section.empty() ? nullptr : section.c_str(), &opt, &json);
    } else if (c_act->parsed()) {
        auto axes = parse_box(box_specs);
        std::vector<const char*> names;
        std::vector<double> lo, hi;
        for (const auto& a : axes) {
            names.push_back(a.name.c_str());
            lo.push_back(a.lo);
            hi.push_back(a.hi);
        }
        st = msymp_cmd_action(read_file(file).c_str(), section.c_str(), names.data(), lo.data(),
                              hi.data(), names.size(), points, &opt, &json);
    } else if (c_id->parsed()) {
        st = msymp_cmd_identities(id_seed, cases, &opt, &json);
    }

    std::string text = json ? json : "";
    int code = emit(st, json);
    if (pretty && !text.empty()) render_pretty(text);
    return code;
}
