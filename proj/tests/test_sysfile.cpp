#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "msymp/driver.hpp"
#include "msymp/error.hpp"
#include "msymp/sysfile.hpp"

using namespace msymp;
using nlohmann::json;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(MSYMP_CORPUS_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMiniOscillator = R"(
chart
  base t
  fiber q p
end

theta
  p : q
  -(q^2 + p^2)/2 : t
end

section exact
  q = cos(t)
  p = -sin(t)
end

vectorfield ddt
  t = 1
end

ansatz hamilton
  q t = p
  p t = -q
end

conserved negH
  -(q^2 + p^2)/2 :
end
)";

}  // namespace

TEST_SUITE("sysfile") {

TEST_CASE("parses the corpus files") {
    for (const char* name :
         {"oscillator.msys", "free-particle.msys", "ddw-wave.msys", "premulti-degenerate.msys"}) {
        SystemFile f = parse_system_file(slurp(name));
        CHECK(f.chart != nullptr);
        auto s = build_system(f);
        CHECK(s.omega.degree() == s.m() + 1);
    }
}

TEST_CASE("model contents of the oscillator file") {
    SystemFile f = parse_system_file(kMiniOscillator);
    CHECK(f.chart->base_dim() == 1);
    CHECK(f.chart->fiber_dim() == 2);
    CHECK(f.sections.count("exact") == 1);
    CHECK(f.vectorfields.count("ddt") == 1);
    CHECK(f.ansaetze.count("hamilton") == 1);
    CHECK(f.conserved.count("negH") == 1);
    REQUIRE(f.theta.has_value());
    CHECK(f.theta->degree() == 1);
}

TEST_CASE("validation failures carry line information") {
    auto expect_syntax = [](const std::string& text) {
        try {
            (void)parse_system_file(text);
            FAIL("expected a syntax error for:\n", text);
        } catch (const MsympError& e) {
            CHECK(e.code() == Errc::SyntaxError);
        }
    };
    expect_syntax("theta\n 1 : t\nend\n");                       // missing chart
    expect_syntax("chart\n base t\n fiber q\nend\n");            // no form source
    expect_syntax("chart\n base t\n fiber q\nend\ntheta\n q^ : q\nend\n");   // bad expression
    expect_syntax("chart\n base t\n fiber q\nend\ntheta\n 1 : zz\nend\n");   // unknown name
    expect_syntax("chart\n base t\n fiber q\nend\ntheta\n 1 : q\n");         // unterminated
    expect_syntax(
        "chart\n base t x\n fiber q\nend\ntheta\n 1 : q q\nend\n");          // duplicate basis
    expect_syntax(
        "chart\n base t\n fiber q\nend\ntheta\n 1 : q\nend\nomega\n 1 : t q\nend\n");  // exclusive
    expect_syntax("chart\n base t\n fiber q\nend\ntheta\n 1 : q\nend\nsection s\n q = p\nend\n");
    expect_syntax("chart\n base t\n fiber q\nend\ntheta\n 1 : q\nend\nsection s\nend\n");
}

TEST_CASE("cmd_check on the oscillator") {
    DriverOptions opt;
    auto r = cmd_check(kMiniOscillator, opt);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.json);
    CHECK(j["command"] == "check");
    CHECK(j["timings"].is_null());
    bool saw_probe = false;
    for (const auto& rec : j["checks"]) {
        CHECK(rec["verdict"] == "symbolic-zero");
        if (rec["name"] == "nondegeneracy-probe") {
            saw_probe = true;
            CHECK(rec["classification"] == "premultisymplectic");
            for (const auto& k : rec["kernel_dims"]) CHECK(k.get<int>() == 1);
        }
        if (rec["name"] == "normal-form-extraction") {
            CHECK(rec["F"][0][0] == "-p");
            CHECK(rec["E"] == "1/2*p^2 + 1/2*q^2");
        }
    }
    CHECK(saw_probe);
}

TEST_CASE("cmd_check flags omega outside the adapted shape") {
    const char* bad = R"(
chart
  base t x
  fiber a b c
end

omega
  1 : a b c
end
)";
    DriverOptions opt;
    auto r = cmd_check(bad, opt);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.json);
    bool flagged = false;
    for (const auto& rec : j["checks"])
        if (rec["name"] == "vertical-condition" && rec["verdict"] == "nonzero") flagged = true;
    CHECK(flagged);
}

TEST_CASE("cmd_check reports non-closed omega") {
    const char* text = R"(
chart
  base t
  fiber q p
end

omega
  p : t q
end
)";
    DriverOptions opt;
    auto r = cmd_check(text, opt);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.json);
    bool closedness_fails = false;
    for (const auto& rec : j["checks"])
        if (rec["name"] == "closedness" && rec["verdict"] == "nonzero") closedness_fails = true;
    CHECK(closedness_fails);
}

TEST_CASE("cmd_check reports parse errors with exit code 2") {
    DriverOptions opt;
    auto r = cmd_check("chart\n base t\n fiber q\nend\ntheta\n q^ : q\nend\n", opt);
    CHECK(r.exit_code == 2);
    json j = json::parse(r.json);
    CHECK(j["error"]["code"] == "SyntaxError");
    CHECK(j["error"].contains("position"));
}

TEST_CASE("cmd_field_equations") {
    DriverOptions opt;
    auto good = cmd_field_equations(kMiniOscillator, "exact", opt);
    CHECK(good.exit_code == 0);
    json j = json::parse(good.json);
    bool agreement = false;
    for (const auto& rec : j["checks"]) {
        if (rec["name"] == "sect1-sect2-agreement") {
            agreement = true;
            CHECK(rec["verdict"] == "symbolic-zero");
        }
    }
    CHECK(agreement);

    std::string with_drift = std::string(kMiniOscillator) + "\nsection drift\n q = t\n p = 0\nend\n";
    auto bad = cmd_field_equations(with_drift, "drift", opt);
    CHECK(bad.exit_code == 1);

    // an unknown section is an input error
    CHECK(cmd_field_equations(kMiniOscillator, "nope", opt).exit_code == 2);
}

TEST_CASE("cmd_field_equations falls back when no coordinate data exists") {
    // omega with a triple-vertical key cannot be realized in the adapted
    // shape; the equations are skipped but section residuals still run
    const char* text = R"(
chart
  base t x
  fiber a b c
end

omega
  1 : a b c
end

section flat
  a = 0
  b = 0
  c = 0
end
)";
    DriverOptions opt;
    auto r = cmd_field_equations(text, "flat", opt);
    CHECK(r.exit_code == 1);
    json j = json::parse(r.json);
    bool euler_error = false, sect_done = false;
    for (const auto& rec : j["checks"]) {
        if (rec["name"] == "euler-equations") {
            euler_error = rec["verdict"] == "error";
            CHECK(rec["error"]["code"] == "NotInNormalForm");
        }
        if (rec["name"] == "sect1-residuals") sect_done = true;
    }
    CHECK(euler_error);
    CHECK(sect_done);
}

TEST_CASE("cmd_noether") {
    DriverOptions opt;
    auto r = cmd_noether(kMiniOscillator, "ddt", 1, {"hamilton"}, opt);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.json);
    bool current = false, conserved = false;
    for (const auto& rec : j["checks"]) {
        if (rec["name"] == "noether-current") {
            current = true;
            CHECK(rec["exact"] == true);
            REQUIRE(rec["xi"].size() == 1);
            CHECK(rec["xi"][0]["coeff"] == "-1/2*p^2 - 1/2*q^2");
        }
        if (rec["name"] == "conserved-check:hamilton") {
            conserved = true;
            CHECK(rec["verdict"] == "symbolic-zero");
        }
    }
    CHECK(current);
    CHECK(conserved);

    std::string mini(kMiniOscillator);
    std::string with_scale = mini + "\nvectorfield scaleq\n q = q\nend\n";
    auto notc = cmd_noether(with_scale, "scaleq", 4, {}, opt);
    CHECK(notc.exit_code == 1);
    json jn = json::parse(notc.json);
    CHECK(jn["checks"][0]["note"] == "NotCartanUpTo(4)");
}

TEST_CASE("cmd_symmetry and cmd_conserved") {
    DriverOptions opt;
    auto rs = cmd_symmetry(kMiniOscillator, "ddt", {"hamilton"}, opt);
    CHECK(rs.exit_code == 0);
    auto rc = cmd_conserved(kMiniOscillator, "negH", {"hamilton"}, "exact", opt);
    CHECK(rc.exit_code == 0);
    json j = json::parse(rc.json);
    bool div = false;
    for (const auto& rec : j["checks"])
        if (rec["name"] == "section-divergence") {
            div = true;
            CHECK(rec["verdict"] == "symbolic-zero");
        }
    CHECK(div);
}

TEST_CASE("cmd_action") {
    DriverOptions opt;
    auto r = cmd_action(kMiniOscillator, "exact", {"t"}, {{0.0, 2.0 * 3.14159265358979323846}}, 64,
                        opt);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.json);
    CHECK(std::fabs(j["checks"][0]["value"].get<double>()) < 1e-8);
}

TEST_CASE("cmd_identities is deterministic and honors cases=0") {
    DriverOptions opt;
    auto a = cmd_identities(5, 10, opt);
    auto b = cmd_identities(5, 10, opt);
    CHECK(a.exit_code == 0);
    CHECK(a.json == b.json);
    auto zero_cases = cmd_identities(5, 0, opt);
    CHECK(zero_cases.exit_code == 0);
}

TEST_CASE("reports are byte-identical across runs") {
    DriverOptions opt;
    opt.seed = 42;
    auto a = cmd_check(kMiniOscillator, opt);
    auto b = cmd_check(kMiniOscillator, opt);
    CHECK(a.json == b.json);
    auto n1 = cmd_noether(kMiniOscillator, "ddt", 2, {"hamilton"}, opt);
    auto n2 = cmd_noether(kMiniOscillator, "ddt", 2, {"hamilton"}, opt);
    CHECK(n1.json == n2.json);
}

}  // TEST_SUITE
