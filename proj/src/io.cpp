#include "ulinf/io.hpp"

#include <json.hpp>

#include <set>

namespace ulinf {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        const size_t upto = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + e.what());
    }
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

Scalar read_coeff(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const std::exception&) {
            throw ValidationError(where + ": bad rational \"" + j.get<std::string>() + "\"");
        }
    }
    if (j.is_number_integer()) return parse_scalar(std::to_string(j.get<long long>()));
    throw ValidationError(where + ": coefficients must be rational strings");
}

GradedSpace read_basis(const json& j, const std::string& where) {
    const json& b = require(j, "basis", where);
    if (!b.is_array()) throw ValidationError(where + ": \"basis\" must be a list");
    std::vector<BasisElement> out;
    std::set<std::string> names;
    for (size_t i = 0; i < b.size(); ++i) {
        const std::string w = where + ".basis[" + std::to_string(i) + "]";
        const json& name = require(b[i], "name", w);
        const json& deg = require(b[i], "degree", w);
        if (!name.is_string() || !deg.is_number_integer()) throw ValidationError(w + ": name/degree types");
        if (!names.insert(name.get<std::string>()).second)
            throw ValidationError(w + ": duplicate basis name \"" + name.get<std::string>() + "\"");
        out.push_back({name.get<std::string>(), deg.get<int>()});
    }
    return GradedSpace(out);
}

json basis_json(const GradedSpace& v) {
    json b = json::array();
    for (const auto& e : v.basis()) b.push_back({{"name", e.name}, {"degree", e.degree}});
    return b;
}

int index_of(const GradedSpace& v, const json& name, const std::string& where) {
    if (!name.is_string()) throw ValidationError(where + ": basis names must be strings");
    auto i = v.find(name.get<std::string>());
    if (!i) throw ValidationError(where + ": unknown basis element \"" + name.get<std::string>() + "\"");
    return *i;
}

std::vector<int> read_inputs(const GradedSpace& v, const json& e, const std::string& where) {
    const json& in = require(e, "in", where);
    std::vector<int> out;
    if (in.is_string()) {
        out.push_back(index_of(v, in, where));
    } else if (in.is_array()) {
        for (const auto& n : in) out.push_back(index_of(v, n, where));
    } else {
        throw ValidationError(where + ": \"in\" must be a name or a list of names");
    }
    return out;
}

// Reads entries of one map into m. Symmetric maps detect repeated orbits; inputs repeating an
// element that is odd in W are rejected since the value is forced to vanish.
void read_entries(const json& list, const GradedSpace& v, MultiMap& m, Convention conv, const std::string& where,
                  std::set<std::pair<std::vector<int>, int>>& seen) {
    if (!list.is_array()) throw ValidationError(where + ": entries must be a list");
    const GradedSpace& w = m.space();
    for (size_t i = 0; i < list.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        const json& e = list[i];
        std::vector<int> in = read_inputs(v, e, at);
        if (static_cast<int>(in.size()) != m.arity())
            throw ValidationError(at + ": expected " + std::to_string(m.arity()) + " inputs");
        int out = kScalarSlot;
        if (m.target() == Target::Space) out = index_of(v, require(e, "out", at), at);
        else if (e.contains("out")) throw ValidationError(at + ": q entries have no output");
        Scalar c = read_coeff(require(e, "coeff", at), at);

        std::vector<int> key = in;
        if (m.symmetric()) {
            std::sort(key.begin(), key.end());
            for (size_t k = 1; k < key.size(); ++k)
                if (key[k] == key[k - 1] && parity(w.degree(key[k])))
                    throw ValidationError(at + ": repeated input \"" + v.name(key[k]) +
                                          "\" forces this value to vanish");
        }
        if (!seen.insert({key, out}).second)
            throw ValidationError(at + ": duplicate entry for the same inputs and output");
        if (conv == Convention::UnshiftedAntisymmetric) c *= decalage_sign(v, in);
        try {
            m.add_term(in, out, c);
        } catch (const ValidationError& err) {
            throw ValidationError(at + ": " + err.what());
        }
    }
}

int read_arity(const std::string& key, const std::string& where) {
    try {
        size_t pos = 0;
        int n = std::stoi(key, &pos);
        if (pos != key.size() || n < 1) throw std::invalid_argument(key);
        return n;
    } catch (const std::exception&) {
        throw ValidationError(where + ": arity key \"" + key + "\" is not a positive integer");
    }
}

Convention read_convention(const json& j) {
    if (!j.contains("convention")) return Convention::Shifted;
    const json& c = j.at("convention");
    if (c == "shifted") return Convention::Shifted;
    if (c == "unshifted-antisymmetric") return Convention::UnshiftedAntisymmetric;
    throw ValidationError("unknown convention " + c.dump());
}

// d of a space description, as a degree-1 symmetric map.
MultiMap read_d(const json& j, const GradedSpace& v, const SpacePtr& w, Convention conv, const std::string& where,
                std::set<std::pair<std::vector<int>, int>>& seen) {
    MultiMap d(w, 1, Target::Space, 1);
    if (j.contains("d")) read_entries(j.at("d"), v, d, conv, where + ".d", seen);
    return d;
}

json entries_json(const GradedSpace& v, const MultiMap& m) {
    json list = json::array();
    for (const auto& [in, val] : m.table())
        for (const auto& [o, c] : val) {
            json e;
            json names = json::array();
            for (int i : in) names.push_back(v.name(i));
            e["in"] = names;
            if (o != kScalarSlot) e["out"] = v.name(o);
            e["coeff"] = to_string(c);
            list.push_back(e);
        }
    return list;
}

LinearMap read_matrix(const json& j, const GradedSpace& from, const GradedSpace& to, const std::string& where) {
    LinearMap m(from.dim());
    if (j.is_object() && j.contains("dense")) {
        const json& rows = j.at("dense");
        if (!rows.is_array() || static_cast<int>(rows.size()) != to.dim())
            throw ValidationError(where + ": dense matrix needs " + std::to_string(to.dim()) + " rows");
        for (int r = 0; r < to.dim(); ++r) {
            if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != from.dim())
                throw ValidationError(where + ": row " + std::to_string(r) + " needs " +
                                      std::to_string(from.dim()) + " entries");
            for (int c = 0; c < from.dim(); ++c) {
                Scalar x = read_coeff(rows[r][c], where);
                if (x != 0) m[c][r] = x;
            }
        }
        return m;
    }
    if (!j.is_array()) throw ValidationError(where + ": matrix must be a sparse list or {\"dense\": rows}");
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        int c = index_of(from, require(j[i], "from", at), at);
        int r = index_of(to, require(j[i], "to", at), at);
        if (!seen.insert({r, c}).second) throw ValidationError(at + ": duplicate matrix entry");
        Scalar x = read_coeff(require(j[i], "coeff", at), at);
        if (x != 0) m[c][r] = x;
    }
    return m;
}

LinearMap linear_of(const MultiMap& d) {
    LinearMap out(d.space().dim());
    for (int j = 0; j < d.space().dim(); ++j) out[j] = d.eval_basis({j});
    return out;
}

}  // namespace

ULinfStructure load_structure(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ValidationError("structure file must be a JSON object");
    const Convention conv = read_convention(j);
    GradedSpace v = read_basis(j, "structure");
    ULinfStructure s = make_ulinf(v);
    const SpacePtr& w = s.shifted();
    std::map<int, std::set<std::pair<std::vector<int>, int>>> seen;
    MultiMap d = read_d(j, v, w, conv, "structure", seen[1]);
    std::map<int, MultiMap> ell;
    ell.emplace(1, d);
    if (j.contains("ell")) {
        const json& e = j.at("ell");
        if (!e.is_object()) throw ValidationError("structure.ell must map arities to entry lists");
        for (const auto& [key, list] : e.items()) {
            const int n = read_arity(key, "structure.ell");
            auto it = ell.try_emplace(n, w, n, Target::Space, 1).first;
            read_entries(list, v, it->second, conv, "structure.ell." + key, seen[n]);
        }
    }
    for (auto& [n, m] : ell)
        if (!m.is_zero()) set_ell(s.base, m);
    if (j.contains("q")) {
        const json& q = j.at("q");
        if (!q.is_object()) throw ValidationError("structure.q must map arities to entry lists");
        std::map<int, std::set<std::pair<std::vector<int>, int>>> seen_q;
        for (const auto& [key, list] : q.items()) {
            const int n = read_arity(key, "structure.q");
            MultiMap m(w, n, Target::Scalars, 0);
            read_entries(list, v, m, conv, "structure.q." + key, seen_q[n]);
            if (!m.is_zero()) set_q(s, m);
        }
    }
    return s;
}

std::string save_structure(const ULinfStructure& s) {
    json j;
    j["convention"] = "shifted";
    j["basis"] = basis_json(s.space());
    j["d"] = entries_json(s.space(), s.base.d());
    json ell = json::object(), q = json::object();
    for (const auto& [n, m] : s.base.ell)
        if (n >= 2 && !m.is_zero()) ell[std::to_string(n)] = entries_json(s.space(), m);
    for (const auto& [n, m] : s.q)
        if (!m.is_zero()) q[std::to_string(n)] = entries_json(s.space(), m);
    j["ell"] = ell;
    j["q"] = q;
    return j.dump(2) + "\n";
}

RetractFile load_retract(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ValidationError("retract file must be a JSON object");
    const Convention conv = read_convention(j);
    RetractFile out;
    RetractData& r = out.data;
    const json& big = require(j, "big", "retract");
    const json& small = require(j, "small", "retract");
    r.big = read_basis(big, "retract.big");
    r.small = read_basis(small, "retract.small");
    auto wb = std::make_shared<const GradedSpace>(shift_structure(r.big).first);
    auto ws = std::make_shared<const GradedSpace>(shift_structure(r.small).first);
    std::set<std::pair<std::vector<int>, int>> seen_b, seen_s;
    out.has_big_d = big.contains("d");
    r.dV = linear_of(read_d(big, r.big, wb, conv, "retract.big", seen_b));
    r.dU = linear_of(read_d(small, r.small, ws, conv, "retract.small", seen_s));
    r.f = read_matrix(require(j, "f", "retract"), r.small, r.big, "retract.f");
    r.g = read_matrix(require(j, "g", "retract"), r.big, r.small, "retract.g");
    r.h = read_matrix(require(j, "h", "retract"), r.big, r.big, "retract.h");
    return out;
}

bool is_algebra_file(const std::string& text) {
    json j = parse_json(text);
    return j.is_object() && j.contains("product");
}

AssociativeAlgebra load_algebra(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ValidationError("algebra file must be a JSON object");
    GradedSpace v = read_basis(j, "algebra");
    AssociativeAlgebra a;
    for (const auto& e : v.basis()) {
        if (e.degree != 0) throw ValidationError("algebra.basis: \"" + e.name + "\" must have degree 0");
        a.names.push_back(e.name);
    }
    const json& p = require(j, "product", "algebra");
    if (!p.is_array()) throw ValidationError("algebra.product must be a list");
    for (size_t i = 0; i < p.size(); ++i) {
        const std::string at = "algebra.product[" + std::to_string(i) + "]";
        std::vector<int> in = read_inputs(v, p[i], at);
        if (in.size() != 2) throw ValidationError(at + ": products take two inputs");
        int o = index_of(v, require(p[i], "out", at), at);
        Scalar c = read_coeff(require(p[i], "coeff", at), at);
        if (!a.mu.emplace(std::make_tuple(in[0], in[1], o), c).second)
            throw ValidationError(at + ": duplicate entry for the same inputs and output");
    }
    for (auto it = a.mu.begin(); it != a.mu.end();) it = it->second == 0 ? a.mu.erase(it) : std::next(it);
    return a;
}

AInfStructure load_ainf(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw ValidationError("A-infinity file must be a JSON object");
    if (j.contains("product")) {
        if (j.contains("gamma")) throw ValidationError("give either \"gamma\" or \"product\", not both");
        return from_associative(load_algebra(text));
    }
    if (j.contains("convention") && j.at("convention") != "shifted")
        throw ValidationError("A-infinity files use the shifted convention");
    GradedSpace v = read_basis(j, "ainf");
    AInfStructure s = make_ainf(v);
    const json& g = require(j, "gamma", "ainf");
    if (!g.is_object()) throw ValidationError("ainf.gamma must map arities to entry lists");
    for (const auto& [key, list] : g.items()) {
        const int n = read_arity(key, "ainf.gamma");
        MultiMap m(s.shifted, n, Target::Space, 1, false);
        std::set<std::pair<std::vector<int>, int>> seen;
        read_entries(list, v, m, Convention::Shifted, "ainf.gamma." + key, seen);
        set_gamma(s, m);
    }
    return s;
}

std::string save_ainf(const AInfStructure& s) {
    json j;
    j["convention"] = "shifted";
    j["basis"] = basis_json(s.space);
    json g = json::object();
    for (const auto& [n, m] : s.gamma) g[std::to_string(n)] = entries_json(s.space, m);
    j["gamma"] = g;
    return j.dump(2) + "\n";
}

}  // namespace ulinf
