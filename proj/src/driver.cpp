#include "msymp/driver.hpp"

#include <json.hpp>

#include "msymp/error.hpp"
#include "msymp/identities.hpp"
#include "msymp/symmetry.hpp"
#include "msymp/sysfile.hpp"

namespace msymp {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "msymp 0.1.0";

std::string digest(const std::string& text) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

struct ReportBuilder {
    json root = json::object();
    bool failed = false;

    ReportBuilder(const std::string& command, const std::string& input, const DriverOptions& opt) {
        root["tool"] = kVersion;
        root["command"] = command;
        root["input_digest"] = digest(input);
        root["seed"] = opt.seed;
        root["tolerance"] = opt.tolerance;
        root["checks"] = json::array();
        root["timings"] = nullptr;
    }

    json& push(const std::string& name, Verdict v) {
        json rec = json::object();
        rec["name"] = name;
        rec["verdict"] = verdict_name(v);
        rec["residuals"] = json::array();
        if (v == Verdict::NonZero) failed = true;
        root["checks"].push_back(std::move(rec));
        return root["checks"].back();
    }

    json& push_error(const std::string& name, const MsympError& e) {
        json rec = json::object();
        rec["name"] = name;
        rec["verdict"] = "error";
        rec["error"] = json::object({{"code", errc_name(e.code())}, {"message", e.what()}});
        if (!e.terms.empty()) rec["error"]["terms"] = e.terms;
        failed = true;
        root["checks"].push_back(std::move(rec));
        return root["checks"].back();
    }

    DriverResult finish() {
        DriverResult r;
        r.json = root.dump() + "\n";
        r.exit_code = failed ? 1 : 0;
        return r;
    }
};

DriverResult input_error(const std::string& command, const std::string& input,
                         const DriverOptions& opt, const MsympError& e) {
    json root = json::object();
    root["tool"] = kVersion;
    root["command"] = command;
    root["input_digest"] = digest(input);
    root["seed"] = opt.seed;
    root["tolerance"] = opt.tolerance;
    json err = json::object();
    err["code"] = errc_name(e.code());
    err["message"] = e.what();
    if (e.code() == Errc::SyntaxError) {
        err["position"] = e.position();
        err["expected"] = e.expected();
    }
    root["error"] = std::move(err);
    DriverResult r;
    r.json = root.dump() + "\n";
    r.exit_code = 2;
    return r;
}

void add_residuals(json& rec, const std::vector<NamedResidual>& rs) {
    for (const auto& r : rs) {
        rec["residuals"].push_back(json::object(
            {{"label", r.label}, {"expr", to_string(r.expr)}, {"verdict", verdict_name(r.verdict)}}));
    }
}

json form_json(const DiffForm& a) {
    json arr = json::array();
    for (const auto& [k, v] : a.g().coeffs()) {
        json basis = json::array();
        for (int i : k.ix) basis.push_back(a.chart()->name(i));
        arr.push_back(json::object({{"basis", basis}, {"coeff", to_string(v)}}));
    }
    return arr;
}

ProbeCfg probe_cfg(const DriverOptions& opt) {
    ProbeCfg cfg;
    cfg.seed = opt.seed;
    cfg.tolerance = opt.tolerance;
    return cfg;
}

// display normalization: flip the sign when the leading canonical term is negative
ExprPtr display_sign(const ExprPtr& e) {
    if (e->kind == Kind::Sum || e->kind == Kind::Product || e->kind == Kind::Rational) {
        Rational c;
        ExprPtr mono;
        const ExprPtr& probe = e->kind == Kind::Sum ? e->kids[0] : e;
        split_term(probe, c, mono);
        if (c.sign() < 0) return neg(e);
    }
    return e;
}

const MultiVector& find_vectorfield(const SystemFile& f, const std::string& name) {
    auto it = f.vectorfields.find(name);
    if (it == f.vectorfields.end())
        throw MsympError(Errc::InvalidArgument, "unknown vector field '" + name + "'");
    return it->second;
}

const Section& find_section(const SystemFile& f, const std::string& name) {
    auto it = f.sections.find(name);
    if (it == f.sections.end())
        throw MsympError(Errc::InvalidArgument, "unknown section '" + name + "'");
    return it->second;
}

std::vector<std::pair<std::string, DecomposableAnsatz>> gather_witnesses(
    const SystemFile& f, const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, DecomposableAnsatz>> out;
    for (const auto& n : names) {
        auto it = f.ansaetze.find(n);
        if (it == f.ansaetze.end())
            throw MsympError(Errc::InvalidArgument, "unknown ansatz '" + n + "'");
        out.emplace_back(n, it->second);
    }
    return out;
}

}  // namespace

const char* tool_version() { return kVersion; }

DriverResult cmd_check(const std::string& file_text, const DriverOptions& opt) {
    SystemFile f;
    try {
        f = parse_system_file(file_text);
    } catch (const MsympError& e) {
        return input_error("check", file_text, opt, e);
    }
    ReportBuilder rb("check", file_text, opt);
    ProbeCfg cfg = probe_cfg(opt);

    PremultisymplecticSystem s;
    try {
        s = build_system(f);
    } catch (const MsympError& e) {
        rb.push_error("system-construction", e);
        return rb.finish();
    }
    rb.push("system-construction", Verdict::SymbolicZero);

    {
        DiffForm d = exterior_derivative(s.omega);
        Verdict v = Verdict::SymbolicZero;
        std::vector<NamedResidual> rs;
        for (const auto& [k, e] : d.g().coeffs()) {
            Verdict ve = classify_zero(e, cfg);
            v = worst(v, ve);
            if (ve == Verdict::NonZero) {
                std::string label;
                for (int i : k.ix) label += "d" + s.chart->name(i) + " ";
                rs.push_back({label, e, ve});
            }
        }
        json& rec = rb.push("closedness", v);
        add_residuals(rec, rs);
    }

    if (s.m() >= 2) {
        auto bad = normal_form_violations(s.omega);
        json& rec = rb.push("vertical-condition", bad.empty() ? Verdict::SymbolicZero : Verdict::NonZero);
        if (!bad.empty()) rec["terms"] = bad;
    }

    try {
        CoordinateData data = extract_coordinate_data(s);
        json& rec = rb.push("normal-form-extraction", Verdict::SymbolicZero);
        json fj = json::array();
        for (int j = 0; j < s.n(); ++j) {
            json row = json::array();
            for (int mu = 0; mu < s.m(); ++mu)
                row.push_back(to_string(data.F[static_cast<size_t>(j)][static_cast<size_t>(mu)]));
            fj.push_back(row);
        }
        rec["F"] = fj;
        rec["E"] = to_string(data.E);
    } catch (const MsympError& e) {
        rb.push_error("normal-form-extraction", e);
    }

    {
        SplitMix64 rng(opt.seed ^ 0xa5a5a5a5ull);
        std::vector<Point> pts;
        for (int i = 0; i < 10; ++i) {
            Point p;
            for (int c = 0; c < s.chart->dim(); ++c) p[s.chart->name(c)] = rng.uniform(-1.5, 1.5);
            pts.push_back(std::move(p));
        }
        auto res = nondegeneracy_probe(s, pts, opt.tolerance);
        json& rec = rb.push("nondegeneracy-probe", Verdict::SymbolicZero);
        rec["classification"] = res.multisymplectic ? "multisymplectic" : "premultisymplectic";
        rec["kernel_dims"] = res.kernel_dims;
    }
    return rb.finish();
}

DriverResult cmd_field_equations(const std::string& file_text, const std::string& section_name,
                                 const DriverOptions& opt) {
    SystemFile f;
    try {
        f = parse_system_file(file_text);
        if (!section_name.empty()) (void)find_section(f, section_name);
    } catch (const MsympError& e) {
        return input_error("field-equations", file_text, opt, e);
    }
    ReportBuilder rb("field-equations", file_text, opt);
    ProbeCfg cfg = probe_cfg(opt);
    PremultisymplecticSystem s;
    try {
        s = build_system(f);
    } catch (const MsympError& e) {
        rb.push_error("system-construction", e);
        return rb.finish();
    }

    try {
        EulerEquations eqs = euler_equations(s);
        json& rec = rb.push("euler-equations", Verdict::SymbolicZero);
        json base = json::array(), fiber = json::array();
        for (const auto& e : eqs.base_family)
            base.push_back(json::object(
                {{"label", e.label}, {"equation", to_string(display_sign(e.expr)) + " = 0"}}));
        for (const auto& e : eqs.fiber_family)
            fiber.push_back(json::object(
                {{"label", e.label}, {"equation", to_string(display_sign(e.expr)) + " = 0"}}));
        rec["base_family"] = base;
        rec["fiber_family"] = fiber;
    } catch (const MsympError& e) {
        rb.push_error("euler-equations", e);
    }

    if (!section_name.empty()) {
        try {
            const Section& psi = find_section(f, section_name);
            FieldEquationResidual r1 = section_residual_sect1(s, psi, cfg);
            FieldEquationResidual r2 = section_residual_sect2(s, psi, cfg);
            json& rec1 = rb.push("sect1-residuals", r1.verdict());
            add_residuals(rec1, r1.entries);
            json& rec2 = rb.push("sect2-residuals", r2.verdict());
            add_residuals(rec2, r2.entries);
            // componentwise sect1_a = (-1)^m sect2_a
            std::vector<NamedResidual> agreement;
            Verdict av = Verdict::SymbolicZero;
            for (size_t i = 0; i < r1.entries.size(); ++i) {
                ExprPtr rhs = s.m() % 2 == 0 ? r2.entries[i].expr : neg(r2.entries[i].expr);
                ExprPtr d = sub(r1.entries[i].expr, rhs);
                Verdict v = classify_zero(d, cfg);
                av = worst(av, v);
                agreement.push_back({r1.entries[i].label, d, v});
            }
            json& rec3 = rb.push("sect1-sect2-agreement", av);
            add_residuals(rec3, agreement);
        } catch (const MsympError& e) {
            rb.push_error("section-residuals", e);
        }
    }
    return rb.finish();
}

DriverResult cmd_noether(const std::string& file_text, const std::string& symmetry_name,
                         int order_max, const std::vector<std::string>& witnesses,
                         const DriverOptions& opt) {
    SystemFile f;
    try {
        f = parse_system_file(file_text);
        (void)find_vectorfield(f, symmetry_name);
        (void)gather_witnesses(f, witnesses);
    } catch (const MsympError& e) {
        return input_error("noether", file_text, opt, e);
    }
    ReportBuilder rb("noether", file_text, opt);
    ProbeCfg cfg = probe_cfg(opt);
    try {
        PremultisymplecticSystem s = build_system(f);
        const MultiVector& y = find_vectorfield(f, symmetry_name);
        auto family = gather_witnesses(f, witnesses);

        CartanOrderResult ord = higher_cartan_order(s, y, order_max, cfg);
        if (!ord.found) {
            json& rec = rb.push("higher-cartan-order", Verdict::NonZero);
            rec["note"] = "NotCartanUpTo(" + std::to_string(order_max) + ")";
            return rb.finish();
        }
        {
            json& rec = rb.push("higher-cartan-order", ord.verdict);
            rec["order"] = ord.order;
        }
        NoetherReport rep = generalized_noether_current(s, y, ord.order, cfg);
        {
            json& rec = rb.push("noether-current", rep.residual_verdict);
            rec["order"] = rep.order;
            rec["gauge"] = rep.gauge;
            rec["exact"] = rep.exact;
            rec["xi"] = form_json(rep.xi);
            if (rep.zeta) rec["zeta"] = form_json(*rep.zeta);
            add_residuals(rec, rep.residuals);
        }
        rb.push("current-closedness", rep.closedness);
        if (!family.empty()) {
            auto checks = check_conserved(s, rep.xi, family, cfg);
            for (const auto& e : checks) {
                json& rec = rb.push("conserved-check:" + e.witness, e.verdict);
                rec["witness_in_kernel"] = verdict_name(e.witness_in_kernel);
                rec["residuals"].push_back(json::object(
                    {{"label", "L(X)xi"}, {"expr", to_string(e.residual)}, {"verdict", verdict_name(e.verdict)}}));
            }
        }
    } catch (const MsympError& e) {
        rb.push_error("noether", e);
    }
    return rb.finish();
}

DriverResult cmd_symmetry(const std::string& file_text, const std::string& symmetry_name,
                          const std::vector<std::string>& witnesses, const DriverOptions& opt) {
    SystemFile f;
    try {
        f = parse_system_file(file_text);
        (void)find_vectorfield(f, symmetry_name);
        (void)gather_witnesses(f, witnesses);
    } catch (const MsympError& e) {
        return input_error("symmetry", file_text, opt, e);
    }
    ReportBuilder rb("symmetry", file_text, opt);
    ProbeCfg cfg = probe_cfg(opt);
    try {
        PremultisymplecticSystem s = build_system(f);
        const MultiVector& y = find_vectorfield(f, symmetry_name);
        {
            Verdict v = gauge_check(s, y, cfg);
            json& rec = rb.push("gauge-check", Verdict::SymbolicZero);
            rec["gauge"] = v != Verdict::NonZero;
            rec["i(Y)omega"] = verdict_name(v);
        }
        {
            CartanResult c = cartan_check(s, y, cfg);
            json& rec = rb.push("cartan-check",
                                c.kind == CartanKind::NotCartan ? Verdict::NonZero : c.lie_omega);
            rec["kind"] = c.kind == CartanKind::ExactCartan
                              ? "exact-cartan"
                              : (c.kind == CartanKind::Cartan ? "cartan" : "not-cartan");
            if (c.kind == CartanKind::NotCartan) rec["residual"] = form_json(c.residual);
        }
        auto family = gather_witnesses(f, witnesses);
        if (!family.empty()) {
            auto checks = infinitesimal_symmetry_check(s, y, family, cfg);
            for (const auto& e : checks) {
                json& rec = rb.push("symmetry-check:" + e.witness, e.bracket_residual.verdict());
                rec["witness_in_kernel"] = verdict_name(e.witness_in_kernel);
                add_residuals(rec, e.bracket_residual.entries);
            }
        }
    } catch (const MsympError& e) {
        rb.push_error("symmetry", e);
    }
    return rb.finish();
}

DriverResult cmd_conserved(const std::string& file_text, const std::string& quantity_name,
                           const std::vector<std::string>& witnesses,
                           const std::string& section_name, const DriverOptions& opt) {
    SystemFile f;
    try {
        f = parse_system_file(file_text);
        if (f.conserved.find(quantity_name) == f.conserved.end())
            throw MsympError(Errc::InvalidArgument,
                             "unknown conserved quantity '" + quantity_name + "'");
        (void)gather_witnesses(f, witnesses);
        if (!section_name.empty()) (void)find_section(f, section_name);
    } catch (const MsympError& e) {
        return input_error("conserved", file_text, opt, e);
    }
    ReportBuilder rb("conserved", file_text, opt);
    ProbeCfg cfg = probe_cfg(opt);
    try {
        PremultisymplecticSystem s = build_system(f);
        auto it = f.conserved.find(quantity_name);
        if (it == f.conserved.end())
            throw MsympError(Errc::InvalidArgument, "unknown conserved quantity '" + quantity_name + "'");
        const DiffForm& xi = it->second;
        auto family = gather_witnesses(f, witnesses);
        auto checks = check_conserved(s, xi, family, cfg);
        for (const auto& e : checks) {
            json& rec = rb.push("conserved-check:" + e.witness, e.verdict);
            rec["witness_in_kernel"] = verdict_name(e.witness_in_kernel);
            rec["residuals"].push_back(json::object(
                {{"label", "L(X)xi"}, {"expr", to_string(e.residual)}, {"verdict", verdict_name(e.verdict)}}));
        }
        if (!section_name.empty()) {
            const Section& psi = find_section(f, section_name);
            SectionCurrent cur = current_on_section(xi, psi, cfg);
            json& rec = rb.push("section-divergence", cur.divergence_verdict);
            rec["divergence"] = to_string(cur.divergence);
            json flux = json::array();
            for (size_t mu = 0; mu < cur.flux.size(); ++mu)
                flux.push_back(json::object({{"axis", s.chart->name(static_cast<int>(mu))},
                                             {"component", to_string(cur.flux[mu])}}));
            rec["flux"] = flux;
        }
    } catch (const MsympError& e) {
        rb.push_error("conserved", e);
    }
    return rb.finish();
}

DriverResult cmd_action(const std::string& file_text, const std::string& section_name,
                        const std::vector<std::string>& axis_names,
                        const std::vector<std::pair<double, double>>& box, int quadrature_points,
                        const DriverOptions& opt) {
    SystemFile f;
    try {
        f = parse_system_file(file_text);
        (void)find_section(f, section_name);
    } catch (const MsympError& e) {
        return input_error("action", file_text, opt, e);
    }
    ReportBuilder rb("action", file_text, opt);
    try {
        PremultisymplecticSystem s = build_system(f);
        const Section& psi = find_section(f, section_name);
        // reorder the caller's axes into chart order
        std::vector<std::pair<double, double>> ordered(static_cast<size_t>(s.m()));
        std::vector<bool> seen(static_cast<size_t>(s.m()), false);
        if (axis_names.size() != box.size() || static_cast<int>(box.size()) != s.m())
            throw MsympError(Errc::InvalidArgument, "box needs one interval per base coordinate");
        for (size_t i = 0; i < axis_names.size(); ++i) {
            int idx = s.chart->index_of(axis_names[i]);
            if (idx < 0 || idx >= s.m())
                throw MsympError(Errc::InvalidArgument,
                                 "'" + axis_names[i] + "' is not a base coordinate");
            ordered[static_cast<size_t>(idx)] = box[i];
            seen[static_cast<size_t>(idx)] = true;
        }
        for (bool b : seen)
            if (!b) throw MsympError(Errc::InvalidArgument, "box misses a base coordinate");
        double value = action_evaluate(s, psi, ordered, quadrature_points);
        json& rec = rb.push("action", Verdict::SymbolicZero);
        rec["value"] = value;
        rec["quadrature_points"] = quadrature_points;
    } catch (const MsympError& e) {
        rb.push_error("action", e);
    }
    return rb.finish();
}

DriverResult cmd_identities(uint64_t seed, int cases, const DriverOptions& opt) {
    ReportBuilder rb("identities", "identities:" + std::to_string(seed) + ":" + std::to_string(cases),
                     opt);
    IdentityReport rep = run_identity_suite(seed, cases);
    for (const auto& g : rep.groups) {
        json& rec = rb.push(g.name, g.failures.empty() ? Verdict::SymbolicZero : Verdict::NonZero);
        rec["cases"] = g.cases;
        if (!g.failures.empty()) rec["failures"] = g.failures;
    }
    return rb.finish();
}

}  // namespace msymp
