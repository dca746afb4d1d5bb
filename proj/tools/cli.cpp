#include "cli.hpp"

#include "ulinf/ainf.hpp"
#include "ulinf/defcomplex.hpp"
#include "ulinf/geometry.hpp"
#include "ulinf/io.hpp"
#include "ulinf/structures.hpp"
#include "ulinf/transfer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ulinf::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

json names_of(const GradedSpace& v, const std::vector<int>& idx) {
    json a = json::array();
    for (int i : idx) a.push_back(v.name(i));
    return a;
}

json witness_json(const GradedSpace& v, const Residual& r) {
    auto e = r.map.first_nonzero();
    json w = {{"kind", r.kind == ResidualKind::Ell ? "ell" : "q"}, {"arity", r.arity}, {"in", names_of(v, e->in)}};
    w["out"] = e->out == kScalarSlot ? json(nullptr) : json(v.name(e->out));
    w["value"] = to_string(e->value);
    return w;
}

// {"passed", "up_to", "witness"?} for a residual list.
json residual_check(const GradedSpace& v, const std::vector<Residual>& rs, int up_to) {
    json c = {{"up_to", up_to}, {"passed", true}};
    for (const auto& r : rs)
        if (!r.vanishes()) {
            c["passed"] = false;
            c["witness"] = witness_json(v, r);
            break;
        }
    return c;
}

json poly_json(const PolyFunction& p) {
    json a = json::array();
    for (const auto& [m, c] : p.terms()) a.push_back({{"monomial", names_of(p.space(), m)}, {"coeff", to_string(c)}});
    return a;
}

json field_json(const PolyVectorField& f) {
    json a = json::array();
    for (int i = 0; i < f.dim(); ++i)
        for (const auto& [m, c] : f.component(i).terms())
            a.push_back({{"component", f.space().name(i)},
                         {"monomial", names_of(f.space(), m)},
                         {"coeff", to_string(c)}});
    return a;
}

json cochains_json(const CycFamily& f) {
    json a = json::array();
    for (const auto& [bd, c] : f)
        for (const auto& [k, v] : c.reps())
            a.push_back({{"m", bd.first}, {"n", bd.second}, {"key", names_of(*c.space_ptr(), k)}, {"value", to_string(v)}});
    return a;
}

// Default residual bound: high enough to see every quadratic term of the equations.
int complete_bound(const ULinfStructure& s) {
    int top = 1;
    for (const auto& [n, m] : s.base.ell) top = std::max(top, 2 * n);
    for (const auto& [n, m] : s.q) top = std::max(top, 2 * n + 2);
    return top;
}

struct Outcome {
    json report;
    int code = kPass;
};

Outcome cmd_verify(const std::string& path, std::optional<int> max_arity) {
    ULinfStructure s = load_structure(read_file(path));
    const int up_to = max_arity.value_or(complete_bound(s));
    if (up_to < 1) throw ValidationError("--max-arity must be >= 1");
    const GradedSpace& v = s.space();
    Outcome o;
    json& r = o.report;
    json linf = residual_check(v, linf_residuals(s.base, up_to), up_to);
    json q = residual_check(v, ulinf_residuals(s, up_to), up_to);
    GeometricReport geo = check_geometric_unimodularity(s);
    json g = {{"passed", geo.unimodular}};
    if (!geo.unimodular) g["div_f_Q"] = poly_json(geo.div_f_Q);
    const bool agree = q["passed"].get<bool>() == geo.unimodular;
    r["checks"] = {{"linf_residuals", linf}, {"ulinf_residuals", q}, {"geometric", g}, {"routes_agree", agree}};

    // Strict Lie algebras additionally get the trace witness of ad.
    bool lie = s.q.empty() && s.base.d().is_zero();
    for (const auto& e : v.basis()) lie = lie && e.degree == 0;
    for (const auto& [n, m] : s.base.ell) lie = lie && (n == 2 || m.is_zero());
    if (lie && v.dim() > 0) {
        LieConstants L;
        for (const auto& e : v.basis()) L.names.push_back(e.name);
        for (const auto& e : unshifted_from_shifted(v, s.base.ell_at(2))) {
            L.L[{e.in[0], e.in[1], e.out}] += e.value;
            L.L[{e.in[1], e.in[0], e.out}] -= e.value;
        }
        UnimodularVerdict u = is_unimodular_lie(L);
        json lj = {{"unimodular", u.unimodular}};
        if (!u.unimodular)
            lj["witness"] = {{"basis_index", u.witness + 1}, {"name", v.name(u.witness)}, {"trace", to_string(u.trace)}};
        r["lie_trace"] = lj;
    }
    const bool ok = linf["passed"].get<bool>() && q["passed"].get<bool>() && geo.unimodular && agree;
    o.code = ok ? kPass : kFail;
    return o;
}

Outcome cmd_transfer(const std::string& retract_path, const std::string& structure_path, int max_arity,
                     const std::string& out_path) {
    if (max_arity < 1) throw ValidationError("--max-arity must be >= 1");
    ULinfStructure s = load_structure(read_file(structure_path));
    RetractFile rf = load_retract(read_file(retract_path));
    if (!(rf.data.big == s.space())) throw ValidationError("retract big space differs from the structure's basis");
    if (!rf.has_big_d)
        for (int j = 0; j < s.space().dim(); ++j) rf.data.dV[j] = s.base.d().eval_basis({j});
    TransferResult t = transfer(s, rf.data, max_arity);
    Outcome o;
    const GradedSpace& u = t.structure.space();
    std::vector<Residual> ell, q;
    for (const auto& r : t.residuals) (r.kind == ResidualKind::Ell ? ell : q).push_back(r);
    json checks = {{"linf_residuals", residual_check(u, ell, max_arity)},
                   {"ulinf_residuals", residual_check(u, q, max_arity)}};
    o.report["checks"] = checks;
    o.report["verified"] = t.verified;
    const std::string text = save_structure(t.structure);
    if (out_path.empty()) {
        o.report["structure"] = json::parse(text);
    } else {
        write_file(out_path, text);
        o.report["output"] = out_path;
    }
    o.code = t.verified ? kPass : kFail;
    return o;
}

Outcome cmd_charclass(const std::string& path, int max_weight, const std::string& out_path) {
    ULinfStructure s = load_structure(read_file(path));
    CocycleClassReport c = extend_to_unimodular(s.base, max_weight);
    Outcome o;
    json& r = o.report;
    r["cocycle"] = poly_json(c.cocycle);
    r["closed"] = c.closed;
    r["truncation_weight"] = c.truncation_weight;
    r["unknowns"] = c.unknowns;
    r["equations"] = c.equations;
    r["rank"] = c.rank;
    r["vanishes"] = c.witness_f.has_value();
    if (c.witness_f) {
        r["witness_f"] = poly_json(*c.witness_f);
        if (!out_path.empty()) {
            Geometry g = to_geometry(s.base);
            write_file(out_path, save_structure(from_geometry(g.Q, *c.witness_f, s.space())));
            r["output"] = out_path;
        }
    } else {
        json cert = json::array();
        for (const auto& [m, v] : c.certificate)
            cert.push_back({{"monomial", names_of(*s.shifted(), m)}, {"value", to_string(v)}});
        r["certificate"] = cert;
    }
    o.code = c.witness_f ? kPass : kFail;
    return o;
}

Outcome cmd_mc_check(const std::string& structure_path, const std::string& deformation_path) {
    ULinfStructure s = load_structure(read_file(structure_path));
    ULinfStructure d = load_structure(read_file(deformation_path));
    if (!(d.space() == s.space())) throw ValidationError("deformation basis differs from the structure's basis");
    DefContext ctx(s);
    Geometry dg = to_geometry(d);
    DefElement e{dg.Q, dg.f};
    DefElement res = mc_residual(e, ctx);
    PolyVectorField Q = ctx.Q() + dg.Q;
    PolyFunction f = ctx.f() + dg.f;
    const bool deformed_ok = bracket(Q, Q).is_zero() && divergence(Q, f).is_zero();
    Outcome o;
    json& r = o.report;
    r["maurer_cartan"] = res.is_zero();
    if (!res.is_zero()) r["residual"] = {{"field", field_json(res.v)}, {"function", poly_json(res.g)}};
    r["deformed_structure_unimodular"] = deformed_ok;
    r["routes_agree"] = deformed_ok == res.is_zero();
    o.code = res.is_zero() && deformed_ok ? kPass : kFail;
    return o;
}

Outcome cmd_ainf_class(const std::string& path, int max_bidegree) {
    AInfStructure s = load_ainf(read_file(path));
    for (const auto& res : ainf_check(s, std::max(1, 2 * s.max_arity() - 1)))
        if (!res.vanishes()) {
            auto e = res.map.first_nonzero();
            std::ostringstream msg;
            msg << "not an A-infinity structure: [G,G] has a nonzero arity-" << res.arity << " component at (";
            for (size_t i = 0; i < e->in.size(); ++i) msg << (i ? " " : "") << s.shifted->name(e->in[i]);
            msg << ") -> " << s.shifted->name(e->out) << " = " << to_string(e->value);
            throw ValidationError(msg.str());
        }
    CyclicClassReport c = cyclic_class_vanishes(s, max_bidegree);
    Outcome o;
    json& r = o.report;
    r["max_bidegree"] = c.max_bidegree;
    r["wheel_class"] = cochains_json(c.gamma_wheel);
    r["unknowns"] = c.unknowns;
    r["equations"] = c.equations;
    r["rank"] = c.rank;
    r["vanishes"] = c.vanishes;
    if (c.witness) {
        r["witness"] = cochains_json(*c.witness);
    } else {
        json cert = json::array();
        for (const auto& e : c.certificate)
            cert.push_back({{"m", e.m}, {"n", e.n}, {"key", names_of(*s.shifted, e.key)}, {"value", to_string(e.value)}});
        r["certificate"] = cert;
    }
    o.code = c.vanishes ? kPass : kFail;
    return o;
}

Outcome cmd_uass_verify(const std::string& path) {
    AssociativeAlgebra a = load_algebra(read_file(path));
    UassVerdict u = uass_check(a);
    Outcome o;
    o.report["unimodular"] = u.unimodular;
    if (!u.unimodular)
        o.report["witness"] = {{"basis_index", u.witness + 1},
                               {"name", a.names[u.witness]},
                               {"side", u.left ? "left" : "right"},
                               {"trace", to_string(u.trace)}};
    o.code = u.unimodular ? kPass : kFail;
    return o;
}

void render_text(std::ostream& out, const json& j, int indent) {
    const std::string pad(indent, ' ');
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
            out << pad << k << ":\n";
            render_text(out, v, indent + 2);
        } else if (v.is_array()) {
            out << pad << k << ": " << (v.empty() ? "[]" : "") << "\n";
            for (const auto& e : v) out << pad << "  - " << e.dump() << "\n";
        } else if (v.is_string()) {
            out << pad << k << ": " << v.get<std::string>() << "\n";
        } else {
            out << pad << k << ": " << v.dump() << "\n";
        }
    }
}

void emit(std::ostream& out, const json& report, const std::string& format) {
    if (format == "text")
        render_text(out, report, 0);
    else
        out << report.dump(2) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks, transfer and characteristic classes for unimodular L-infinity and A-infinity algebras",
                 "ulinf"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

    std::string file, file2, out_path;
    std::optional<int> max_arity;
    int max_weight = 0, max_bidegree = 0, transfer_arity = 0;

    auto* verify = app.add_subcommand("verify", "Check the L-infinity and unimodularity equations");
    verify->add_option("file", file, "Structure file")->required();
    verify->add_option("--max-arity", max_arity, "Highest residual arity (default: complete)");

    auto* transfer_cmd = app.add_subcommand("transfer", "Transfer a structure along a retract");
    transfer_cmd->add_option("retract", file, "Retract file")->required();
    transfer_cmd->add_option("structure", file2, "Structure file on the big space")->required();
    transfer_cmd->add_option("--max-arity", transfer_arity, "Highest transferred arity")->required();
    transfer_cmd->add_option("--out", out_path, "Write the transferred structure here");

    auto* charclass = app.add_subcommand("charclass", "Decide whether div Q is a coboundary");
    charclass->add_option("file", file, "Structure file")->required();
    charclass->add_option("--max-weight", max_weight, "Polynomial weight truncation")->required();
    charclass->add_option("--out", out_path, "Write the extended unimodular structure here");

    auto* mc = app.add_subcommand("mc-check", "Maurer-Cartan check for a deformation");
    mc->add_option("structure", file, "Unimodular structure file")->required();
    mc->add_option("deformation", file2, "Deformation in structure-file form")->required();

    auto* ainf = app.add_subcommand("ainf-class", "Unimodular cyclic characteristic class of an A-infinity algebra");
    ainf->add_option("file", file, "A-infinity or algebra file")->required();
    ainf->add_option("--max-bidegree", max_bidegree, "Truncation m + n <= B")->required();

    auto* uass = app.add_subcommand("uass-verify", "Trace conditions for an associative algebra");
    uass->add_option("file", file, "Algebra file")->required();

    for (auto* sub : {verify, transfer_cmd, charclass, mc, ainf, uass})
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }

    std::string name;
    for (auto* sub : app.get_subcommands()) name = sub->get_name();
    json report = {{"command", name}};
    const auto t0 = std::chrono::steady_clock::now();
    int code = kPass;
    try {
        Outcome o;
        if (*verify) o = cmd_verify(file, max_arity);
        else if (*transfer_cmd) o = cmd_transfer(file, file2, transfer_arity, out_path);
        else if (*charclass) o = cmd_charclass(file, max_weight, out_path);
        else if (*mc) o = cmd_mc_check(file, file2);
        else if (*ainf) o = cmd_ainf_class(file, max_bidegree);
        else o = cmd_uass_verify(file);
        report.update(o.report);
        code = o.code;
        report["status"] = code == kPass ? "pass" : "fail";
    } catch (const ValidationError& e) {
        code = kInputError;
        report["status"] = "error";
        report["error"] = e.what();
        err << "ulinf " << name << ": " << e.what() << "\n";
    }
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    emit(out, report, format);
    return code;
}

}  // namespace ulinf::cli
