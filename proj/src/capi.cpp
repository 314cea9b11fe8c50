#include "msymp.h"

#include <cstring>

#include "msymp/driver.hpp"
#include "msymp/error.hpp"
#include "msymp/parser.hpp"
#include "msymp/symmetry.hpp"
#include "msymp/sysfile.hpp"

struct msymp_expr {
    msymp::ExprPtr v;
};
struct msymp_chart {
    msymp::ChartPtr v;
};
struct msymp_form {
    msymp::DiffForm v;
};
struct msymp_mvec {
    msymp::MultiVector v;
};
struct msymp_section {
    msymp::Section v;
};
struct msymp_system {
    msymp::SystemFile file;
    msymp::PremultisymplecticSystem v;
};

namespace {

thread_local std::string g_last_error;

msymp_status map_error(const msymp::MsympError& e) {
    g_last_error = e.what();
    switch (e.code()) {
        case msymp::Errc::SyntaxError: return MSYMP_ERR_SYNTAX;
        case msymp::Errc::UnboundSymbol: return MSYMP_ERR_UNBOUND;
        case msymp::Errc::InvalidArgument: return MSYMP_ERR_INVALID;
        case msymp::Errc::NotPolynomial:
        case msymp::Errc::DivisionByZero:
        case msymp::Errc::ChartMismatch:
        case msymp::Errc::DegreeMismatch:
        case msymp::Errc::NoInverse:
        case msymp::Errc::InverseCheckFailed:
        case msymp::Errc::VerticalConditionViolated:
        case msymp::Errc::NotInNormalForm:
        case msymp::Errc::NotClosed:
        case msymp::Errc::HomotopyNotPolynomial:
        case msymp::Errc::NotCartan:
        case msymp::Errc::OrderMismatch:
        case msymp::Errc::MissingTheta: return MSYMP_ERR_DOMAIN;
    }
    return MSYMP_ERR_INTERNAL;
}

template <typename F>
msymp_status guarded(F&& f) {
    try {
        return f();
    } catch (const msymp::MsympError& e) {
        return map_error(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MSYMP_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<int> name_indices(const msymp::ChartPtr& c, const char* const* names, size_t k) {
    std::vector<int> ix;
    for (size_t i = 0; i < k; ++i) ix.push_back(c->require_index(names[i]));
    return ix;
}

msymp::DriverOptions to_options(const msymp_options* opt) {
    msymp::DriverOptions o;
    if (opt) {
        o.seed = opt->seed;
        o.tolerance = opt->tolerance;
    }
    return o;
}

msymp_status finish_driver(const msymp::DriverResult& r, char** json_out) {
    if (json_out) *json_out = dup_string(r.json);
    if (r.exit_code == 0) return MSYMP_OK;
    if (r.exit_code == 1) {
        g_last_error = "a check reported nonzero/error";
        return MSYMP_CHECK_FAILED;
    }
    g_last_error = "input error";
    return MSYMP_INPUT_ERROR;
}

}  // namespace

extern "C" {

const char* msymp_version(void) { return msymp::tool_version(); }

const char* msymp_last_error(void) { return g_last_error.c_str(); }

void msymp_string_free(char* s) { free(s); }

msymp_status msymp_expr_parse(const char* src, msymp_expr** out) {
    return guarded([&] {
        *out = new msymp_expr{msymp::parse_expr(src ? src : "")};
        return MSYMP_OK;
    });
}

msymp_status msymp_expr_print(const msymp_expr* e, char** out) {
    return guarded([&] {
        *out = dup_string(msymp::to_string(e->v));
        return MSYMP_OK;
    });
}

msymp_status msymp_expr_differentiate(const msymp_expr* e, const char* sym, msymp_expr** out) {
    return guarded([&] {
        *out = new msymp_expr{msymp::differentiate(e->v, sym)};
        return MSYMP_OK;
    });
}

msymp_status msymp_expr_eval(const msymp_expr* e, const char* const* names, const double* values,
                             size_t n, double* out) {
    return guarded([&] {
        msymp::Point p;
        for (size_t i = 0; i < n; ++i) p[names[i]] = values[i];
        *out = msymp::eval(e->v, p);
        return MSYMP_OK;
    });
}

msymp_status msymp_expr_is_zero(const msymp_expr* e, int* out) {
    return guarded([&] {
        switch (msymp::is_zero(e->v)) {
            case msymp::ZeroTest::Zero: *out = 0; break;
            case msymp::ZeroTest::NonZero: *out = 1; break;
            case msymp::ZeroTest::Unknown: *out = 2; break;
        }
        return MSYMP_OK;
    });
}

void msymp_expr_free(msymp_expr* e) { delete e; }

msymp_status msymp_chart_new(const char* const* base, size_t m, const char* const* fiber, size_t n,
                             msymp_chart** out) {
    return guarded([&] {
        std::vector<std::string> b, f;
        for (size_t i = 0; i < m; ++i) b.push_back(base[i]);
        for (size_t i = 0; i < n; ++i) f.push_back(fiber[i]);
        *out = new msymp_chart{msymp::make_chart(std::move(b), std::move(f))};
        return MSYMP_OK;
    });
}

void msymp_chart_free(msymp_chart* c) { delete c; }

msymp_status msymp_form_new(const msymp_chart* c, int degree, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{msymp::DiffForm(c->v, degree)};
        return MSYMP_OK;
    });
}

msymp_status msymp_form_set(msymp_form* a, const char* const* names, size_t k,
                            const msymp_expr* coeff) {
    return guarded([&] {
        a->v.set(name_indices(a->v.chart(), names, k), coeff->v);
        return MSYMP_OK;
    });
}

msymp_status msymp_form_wedge(const msymp_form* a, const msymp_form* b, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{msymp::wedge(a->v, b->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_form_d(const msymp_form* a, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{msymp::exterior_derivative(a->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_form_print(const msymp_form* a, char** out) {
    return guarded([&] {
        *out = dup_string(msymp::to_string(a->v));
        return MSYMP_OK;
    });
}

void msymp_form_free(msymp_form* a) { delete a; }

msymp_status msymp_mvec_new(const msymp_chart* c, int degree, msymp_mvec** out) {
    return guarded([&] {
        *out = new msymp_mvec{msymp::MultiVector(c->v, degree)};
        return MSYMP_OK;
    });
}

msymp_status msymp_mvec_set(msymp_mvec* x, const char* const* names, size_t k,
                            const msymp_expr* coeff) {
    return guarded([&] {
        x->v.set(name_indices(x->v.chart(), names, k), coeff->v);
        return MSYMP_OK;
    });
}

msymp_status msymp_mvec_wedge(const msymp_mvec* a, const msymp_mvec* b, msymp_mvec** out) {
    return guarded([&] {
        *out = new msymp_mvec{msymp::wedge(a->v, b->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_mvec_print(const msymp_mvec* x, char** out) {
    return guarded([&] {
        *out = dup_string(msymp::to_string(x->v));
        return MSYMP_OK;
    });
}

void msymp_mvec_free(msymp_mvec* x) { delete x; }

msymp_status msymp_contract(const msymp_mvec* x, const msymp_form* a, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{msymp::contract(x->v, a->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_lie_derivative(const msymp_mvec* x, const msymp_form* a, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{msymp::lie_derivative(x->v, a->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_sn_bracket(const msymp_mvec* y, const msymp_mvec* x, msymp_mvec** out) {
    return guarded([&] {
        *out = new msymp_mvec{msymp::sn_bracket(y->v, x->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_section_new(const msymp_chart* c, const char* const* fiber_exprs, size_t n,
                               msymp_section** out) {
    return guarded([&] {
        std::vector<msymp::ExprPtr> fns;
        for (size_t i = 0; i < n; ++i) fns.push_back(msymp::parse_expr(fiber_exprs[i]));
        *out = new msymp_section{msymp::Section(c->v, std::move(fns))};
        return MSYMP_OK;
    });
}

msymp_status msymp_section_prolong(const msymp_section* s, msymp_mvec** out) {
    return guarded([&] {
        *out = new msymp_mvec{msymp::prolong(s->v)};
        return MSYMP_OK;
    });
}

msymp_status msymp_pullback_section(const msymp_section* s, const msymp_form* a, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{msymp::pullback_form(s->v, a->v)};
        return MSYMP_OK;
    });
}

void msymp_section_free(msymp_section* s) { delete s; }

msymp_status msymp_system_parse(const char* file_text, msymp_system** out) {
    return guarded([&] {
        msymp::SystemFile f = msymp::parse_system_file(file_text ? file_text : "");
        msymp::PremultisymplecticSystem s = msymp::build_system(f);
        *out = new msymp_system{std::move(f), std::move(s)};
        return MSYMP_OK;
    });
}

msymp_status msymp_system_omega(const msymp_system* s, msymp_form** out) {
    return guarded([&] {
        *out = new msymp_form{s->v.omega};
        return MSYMP_OK;
    });
}

void msymp_system_free(msymp_system* s) { delete s; }

msymp_status msymp_cmd_check(const char* file_text, const msymp_options* opt, char** json_out) {
    return guarded([&] {
        return finish_driver(msymp::cmd_check(file_text ? file_text : "", to_options(opt)), json_out);
    });
}

msymp_status msymp_cmd_field_equations(const char* file_text, const char* section_or_null,
                                       const msymp_options* opt, char** json_out) {
    return guarded([&] {
        return finish_driver(msymp::cmd_field_equations(file_text ? file_text : "",
                                                        section_or_null ? section_or_null : "",
                                                        to_options(opt)),
                             json_out);
    });
}

msymp_status msymp_cmd_noether(const char* file_text, const char* symmetry, int order_max,
                               const char* const* witnesses, size_t n_witnesses,
                               const msymp_options* opt, char** json_out) {
    return guarded([&] {
        std::vector<std::string> wit;
        for (size_t i = 0; i < n_witnesses; ++i) wit.push_back(witnesses[i]);
        return finish_driver(msymp::cmd_noether(file_text ? file_text : "", symmetry ? symmetry : "",
                                                order_max, wit, to_options(opt)),
                             json_out);
    });
}

msymp_status msymp_cmd_symmetry(const char* file_text, const char* symmetry,
                                const char* const* witnesses, size_t n_witnesses,
                                const msymp_options* opt, char** json_out) {
    return guarded([&] {
        std::vector<std::string> wit;
        for (size_t i = 0; i < n_witnesses; ++i) wit.push_back(witnesses[i]);
        return finish_driver(msymp::cmd_symmetry(file_text ? file_text : "",
                                                 symmetry ? symmetry : "", wit, to_options(opt)),
                             json_out);
    });
}

msymp_status msymp_cmd_conserved(const char* file_text, const char* quantity,
                                 const char* const* witnesses, size_t n_witnesses,
                                 const char* section_or_null, const msymp_options* opt,
                                 char** json_out) {
    return guarded([&] {
        std::vector<std::string> wit;
        for (size_t i = 0; i < n_witnesses; ++i) wit.push_back(witnesses[i]);
        return finish_driver(
            msymp::cmd_conserved(file_text ? file_text : "", quantity ? quantity : "", wit,
                                 section_or_null ? section_or_null : "", to_options(opt)),
            json_out);
    });
}

msymp_status msymp_cmd_action(const char* file_text, const char* section,
                              const char* const* axis_names, const double* lo, const double* hi,
                              size_t n_axes, int quadrature_points, const msymp_options* opt,
                              char** json_out) {
    return guarded([&] {
        std::vector<std::string> axes;
        std::vector<std::pair<double, double>> box;
        for (size_t i = 0; i < n_axes; ++i) {
            axes.push_back(axis_names[i]);
            box.emplace_back(lo[i], hi[i]);
        }
        return finish_driver(msymp::cmd_action(file_text ? file_text : "", section ? section : "",
                                               axes, box, quadrature_points, to_options(opt)),
                             json_out);
    });
}

msymp_status msymp_cmd_identities(uint64_t seed, int cases, const msymp_options* opt,
                                  char** json_out) {
    return guarded([&] {
        return finish_driver(msymp::cmd_identities(seed, cases, to_options(opt)), json_out);
    });
}

}  // extern "C"
