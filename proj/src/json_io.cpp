#include "ratrec/json_io.hpp"

#include <algorithm>

#include "ratrec/errors.hpp"
#include "ratrec/parse.hpp"

namespace ratrec {

Json field_to_json(const FieldTag& field) {
    if (field.is_rationals()) return "Q";
    return Json{{"Fp", field.p}};
}

FieldTag field_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return FieldTag::rationals();
    if (j.is_object() && j.contains("Fp")) return FieldTag::prime(j["Fp"].get<unsigned long>());
    throw Error("field must be \"Q\" or {\"Fp\": p}");
}

Json circuit_to_json(const Circuit& c) {
    Json gates = Json::array();
    for (const auto& g : c.gates()) {
        switch (g.kind) {
            case Gate::Kind::input:
                gates.push_back(Json{{"op", "input"}, {"label", g.label}});
                break;
            case Gate::Kind::constant:
                gates.push_back(Json{{"op", "const"}, {"value", g.value.to_string()}});
                break;
            case Gate::Kind::add:
                gates.push_back(Json{{"op", "add"}, {"l", g.lhs}, {"r", g.rhs}});
                break;
            case Gate::Kind::mul:
                gates.push_back(Json{{"op", "mul"}, {"l", g.lhs}, {"r", g.rhs}});
                break;
        }
    }
    return Json{{"field", field_to_json(c.field())}, {"gates", gates},
                {"outputs", c.outputs()}};
}

Circuit circuit_from_json(const Json& j) {
    FieldTag field = field_from_json(j.at("field"));
    Circuit c(field);
    std::uint32_t next_id = 0;
    for (const auto& g : j.at("gates")) {
        std::string op = g.at("op").get<std::string>();
        std::uint32_t id;
        if (op == "input") {
            id = c.add_input(g.at("label").get<std::string>());
        } else if (op == "const") {
            id = c.add_constant(parse_scalar(g.at("value").get<std::string>(), field));
        } else if (op == "add" || op == "mul") {
            std::uint32_t l = g.at("l").get<std::uint32_t>();
            std::uint32_t r = g.at("r").get<std::uint32_t>();
            if (l >= next_id || r >= next_id) throw Error("forward gate reference rejected");
            id = op == "add" ? c.add_add(l, r) : c.add_mul(l, r);
        } else {
            throw Error("unknown gate op '" + op + "'");
        }
        (void)id;
        ++next_id;
    }
    std::vector<std::uint32_t> outputs;
    for (const auto& o : j.at("outputs")) outputs.push_back(o.get<std::uint32_t>());
    c.set_outputs(std::move(outputs));
    return c;
}

namespace {

std::vector<std::pair<std::string, std::uint32_t>> update_bindings(
    const std::vector<std::string>& names, std::uint32_t eq, bool extended) {
    std::vector<std::pair<std::string, std::uint32_t>> b;
    std::uint32_t k = (std::uint32_t)names.size();
    for (std::uint32_t i = 0; i < k; ++i) b.emplace_back(names[i], i);
    if (extended)
        for (std::uint32_t i = 0; i < eq; ++i)
            b.emplace_back("z" + std::to_string(i + 1), k + i);
    return b;
}

// formal variables of custom initial values: x1..xk, with "x" as an alias
// for x1 so the single-variable form reads naturally
std::vector<std::pair<std::string, std::uint32_t>> custom_init_bindings(std::uint32_t k) {
    std::vector<std::pair<std::string, std::uint32_t>> b;
    for (std::uint32_t i = 0; i < k; ++i) b.emplace_back("x" + std::to_string(i + 1), i);
    if (k >= 1) b.emplace_back("x", 0);
    return b;
}

}  // namespace

SystemFile system_from_json(const Json& j, std::optional<FieldTag> field_override) {
    FieldTag field = field_override ? *field_override : field_from_json(j.at("field"));
    std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
    std::uint32_t k = (std::uint32_t)names.size();
    bool extended = j.value("extended", false);

    std::uint32_t main = 0;
    if (j.contains("main")) {
        std::string mname = j.at("main").get<std::string>();
        auto it = std::find(names.begin(), names.end(), mname);
        if (it == names.end()) throw Error("main sequence '" + mname + "' not in names");
        main = (std::uint32_t)(it - names.begin());
    }

    const Json& ju = j.at("updates");
    if (ju.size() != names.size()) throw Error("one update per sequence required");
    std::vector<Update> updates(names.size(), Update{});
    std::vector<bool> defined(names.size(), false);
    for (const auto& u : ju) {
        std::string uname = u.at("name").get<std::string>();
        auto it = std::find(names.begin(), names.end(), uname);
        if (it == names.end()) throw Error("update for unknown sequence '" + uname + "'");
        std::uint32_t eq = (std::uint32_t)(it - names.begin());
        if (defined[eq]) throw Error("duplicate update for '" + uname + "'");
        defined[eq] = true;
        if (u.contains("expr")) {
            std::uint32_t width = extended ? k + eq : k;
            updates[eq] = Update::rational(parse_expr_bound(
                u.at("expr").get<std::string>(), update_bindings(names, eq, extended),
                width, field));
        } else if (u.contains("circuit")) {
            Circuit c = circuit_from_json(u.at("circuit"));
            check_same_field(field, c.field(), "update circuit");
            updates[eq] = Update::from_circuit(std::move(c));
        } else {
            throw Error("update needs 'expr' or 'circuit'");
        }
    }

    InitialCondition init = InitialCondition::symbolic();
    const Json& ji = j.at("initial");
    if (ji.contains("numeric")) {
        std::vector<ExactScalar> vals;
        for (const auto& s : ji.at("numeric"))
            vals.push_back(parse_scalar(s.get<std::string>(), field));
        init = InitialCondition::numeric(std::move(vals));
    } else if (ji.contains("symbolic_custom")) {
        std::vector<RationalFunction> vals;
        for (const auto& s : ji.at("symbolic_custom"))
            vals.push_back(parse_expr_bound(s.get<std::string>(), custom_init_bindings(k), k,
                                            field));
        init = InitialCondition::symbolic_custom(std::move(vals));
    } else if (!(ji.contains("symbolic") && ji.at("symbolic").get<bool>())) {
        throw Error("initial must be numeric, symbolic or symbolic_custom");
    }

    SystemFile out{RecSystem(field, std::move(names), std::move(updates), extended, main),
                   std::move(init), j.contains("meta") ? j.at("meta") : Json()};
    return out;
}

Json system_to_json(const SystemFile& f) {
    const RecSystem& sys = f.system;
    Json updates = Json::array();
    std::uint32_t k = sys.k();
    for (std::uint32_t i = 0; i < k; ++i) {
        const Update& u = sys.updates()[i];
        if (u.rf) {
            std::vector<std::string> names = sys.names();
            for (std::uint32_t z = 0; z < i; ++z) names.push_back("z" + std::to_string(z + 1));
            updates.push_back(
                Json{{"name", sys.names()[i]}, {"expr", u.rf->to_string(names)}});
        } else {
            updates.push_back(
                Json{{"name", sys.names()[i]}, {"circuit", circuit_to_json(*u.circuit)}});
        }
    }
    Json initial;
    switch (f.init.kind) {
        case InitialCondition::Kind::numeric: {
            Json vals = Json::array();
            for (const auto& v : f.init.values) vals.push_back(v.to_string());
            initial = Json{{"numeric", vals}};
            break;
        }
        case InitialCondition::Kind::symbolic:
            initial = Json{{"symbolic", true}};
            break;
        case InitialCondition::Kind::symbolic_custom: {
            Json vals = Json::array();
            std::vector<std::string> xs;
            for (std::uint32_t i = 0; i < k; ++i) xs.push_back("x" + std::to_string(i + 1));
            for (const auto& v : f.init.symbolic_values) vals.push_back(v.to_string(xs));
            initial = Json{{"symbolic_custom", vals}};
            break;
        }
    }
    Json out{{"field", field_to_json(sys.field())},
             {"names", sys.names()},
             {"main", sys.names()[sys.main_index()]},
             {"extended", sys.extended()},
             {"updates", updates},
             {"initial", initial}};
    if (!f.meta.is_null()) out["meta"] = f.meta;
    return out;
}

PRecurrence precurrence_from_json(const Json& j) {
    PRecurrence rec;
    rec.d = j.at("d").get<std::uint32_t>();
    for (const auto& s : j.at("coeffs")) {
        auto rf = parse_expr(s.get<std::string>(), {"n"}, FieldTag::rationals());
        if (!rf.is_polynomial()) throw Error("recurrence coefficients must be polynomials");
        rec.coeffs.push_back(rf.num());
    }
    for (const auto& s : j.at("initial"))
        rec.initial.push_back(parse_scalar(s.get<std::string>(), FieldTag::rationals()));
    return rec;
}

Json verdict_to_json(const ZeronessVerdict& v) {
    switch (v.kind) {
        case ZeronessVerdict::Kind::zero:
            return Json{{"verdict", "zero"}, {"bound", v.bound}};
        case ZeronessVerdict::Kind::nonzero:
            return Json{{"verdict", "nonzero"}, {"n", v.n}, {"value", v.value.to_string()}};
        case ZeronessVerdict::Kind::all_zero_up_to:
            return Json{{"verdict", "all_zero_up_to"}, {"bound", v.bound}};
        case ZeronessVerdict::Kind::division_by_zero:
            return Json{{"verdict", "division_by_zero"}, {"n", v.n}, {"equation", v.equation}};
    }
    throw Error("unreachable");
}

Json flatten_result_to_json(const FlattenResult& r) {
    std::vector<std::string> ys;
    for (std::uint32_t i = 0; i <= r.m + 1; ++i) ys.push_back("y" + std::to_string(i));
    return Json{{"m", r.m},
                {"R", Json{{"num", r.r.num().to_string(ys)}, {"den", r.r.den().to_string(ys)}}},
                {"cancelling", r.cancelling.to_string(ys)},
                {"verified", r.verified},
                {"trdegs", r.trdegs},
                {"bound", r.bound_used}};
}

Json reduction_to_json(const ReductionOutput& r) {
    Json seq = Json::object();
    for (const auto& [name, role] : r.sequence_map) seq[name] = role;
    Json meta{{"k", r.k}, {"horizon", r.horizon}, {"sequence_map", seq}};
    Json sys = system_to_json(SystemFile{r.system, r.init, Json()});
    sys["meta"] = meta;
    return sys;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ratrec
