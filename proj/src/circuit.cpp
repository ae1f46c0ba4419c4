#include "ratrec/circuit.hpp"

#include <algorithm>
#include <cctype>

#include "ratrec/errors.hpp"

namespace ratrec {

void Circuit::check_ref_(std::uint32_t id) const {
    if (id >= gates_.size()) throw Error("gate operand references a later gate");
}

std::uint32_t Circuit::add_input(const std::string& label) {
    gates_.push_back(Gate{Gate::Kind::input, label, ExactScalar(field_), 0, 0});
    return (std::uint32_t)gates_.size() - 1;
}

std::uint32_t Circuit::add_constant(const ExactScalar& value) {
    check_same_field(field_, value.field(), "constant gate");
    gates_.push_back(Gate{Gate::Kind::constant, "", value, 0, 0});
    return (std::uint32_t)gates_.size() - 1;
}

std::uint32_t Circuit::add_add(std::uint32_t l, std::uint32_t r) {
    check_ref_(l);
    check_ref_(r);
    gates_.push_back(Gate{Gate::Kind::add, "", ExactScalar(field_), l, r});
    return (std::uint32_t)gates_.size() - 1;
}

std::uint32_t Circuit::add_mul(std::uint32_t l, std::uint32_t r) {
    check_ref_(l);
    check_ref_(r);
    gates_.push_back(Gate{Gate::Kind::mul, "", ExactScalar(field_), l, r});
    return (std::uint32_t)gates_.size() - 1;
}

std::uint32_t Circuit::add_sub(std::uint32_t l, std::uint32_t r) {
    std::uint32_t minus_one = add_constant(ExactScalar(field_, -1L));
    return add_add(l, add_mul(minus_one, r));
}

void Circuit::set_outputs(std::vector<std::uint32_t> outputs) {
    for (auto id : outputs) check_ref_(id);
    if (outputs.empty()) throw Error("circuit needs at least one output");
    outputs_ = std::move(outputs);
}

std::uint32_t Circuit::single_output() const {
    if (outputs_.size() != 1) throw Error("circuit has multiple outputs");
    return outputs_[0];
}

std::vector<std::string> Circuit::input_labels() const {
    std::vector<std::string> labels;
    for (const auto& g : gates_)
        if (g.kind == Gate::Kind::input &&
            std::find(labels.begin(), labels.end(), g.label) == labels.end())
            labels.push_back(g.label);
    return labels;
}

namespace {

template <class V, class MakeConst, class LookupInput>
std::vector<V> eval_gates(const std::vector<Gate>& gates, MakeConst make_const,
                          LookupInput lookup) {
    std::vector<V> vals;
    vals.reserve(gates.size());
    for (const auto& g : gates) {
        switch (g.kind) {
            case Gate::Kind::input:
                vals.push_back(lookup(g.label));
                break;
            case Gate::Kind::constant:
                vals.push_back(make_const(g.value));
                break;
            case Gate::Kind::add:
                vals.push_back(vals[g.lhs] + vals[g.rhs]);
                break;
            case Gate::Kind::mul:
                vals.push_back(vals[g.lhs] * vals[g.rhs]);
                break;
        }
    }
    return vals;
}

}  // namespace

std::vector<ExactScalar> Circuit::eval_all(
    const std::map<std::string, ExactScalar>& inputs) const {
    if (outputs_.empty()) throw Error("circuit has no designated output");
    auto vals = eval_gates<ExactScalar>(
        gates_, [](const ExactScalar& c) { return c; },
        [&](const std::string& label) {
            auto it = inputs.find(label);
            if (it == inputs.end()) throw Error("missing input '" + label + "'");
            check_same_field(field_, it->second.field(), "circuit input");
            return it->second;
        });
    std::vector<ExactScalar> out;
    for (auto id : outputs_) out.push_back(vals[id]);
    return out;
}

ExactScalar Circuit::eval(const std::map<std::string, ExactScalar>& inputs) const {
    single_output();
    return eval_all(inputs)[0];
}

std::vector<RationalFunction> Circuit::eval_symbolic(
    const std::map<std::string, RationalFunction>& inputs) const {
    if (outputs_.empty()) throw Error("circuit has no designated output");
    std::uint32_t nvars = 0;
    for (const auto& [label, v] : inputs) {
        (void)label;
        nvars = std::max(nvars, v.nvars());
    }
    auto vals = eval_gates<RationalFunction>(
        gates_,
        [&](const ExactScalar& c) { return RationalFunction::constant(field_, nvars, c); },
        [&](const std::string& label) {
            auto it = inputs.find(label);
            if (it == inputs.end()) throw Error("missing input '" + label + "'");
            check_same_field(field_, it->second.field(), "circuit input");
            return it->second;
        });
    std::vector<RationalFunction> out;
    for (auto id : outputs_) out.push_back(vals[id]);
    return out;
}

Polynomial Circuit::to_polynomial(const std::vector<std::string>& var_names,
                                  std::size_t max_terms) const {
    if (max_terms == 0) throw Error("max_terms must be positive");
    std::uint32_t nvars = (std::uint32_t)var_names.size();
    std::vector<Polynomial> vals;
    vals.reserve(gates_.size());
    for (const Gate& g : gates_) {
        switch (g.kind) {
            case Gate::Kind::input: {
                auto it = std::find(var_names.begin(), var_names.end(), g.label);
                if (it == var_names.end())
                    throw Error("input '" + g.label + "' has no variable");
                vals.push_back(Polynomial::variable(
                    field_, nvars, (std::uint32_t)(it - var_names.begin())));
                break;
            }
            case Gate::Kind::constant:
                vals.push_back(Polynomial::constant(field_, nvars, g.value));
                break;
            case Gate::Kind::add:
                vals.push_back(vals[g.lhs] + vals[g.rhs]);
                break;
            case Gate::Kind::mul:
                vals.push_back(vals[g.lhs] * vals[g.rhs]);
                break;
        }
        if (vals.back().term_count() > max_terms)
            throw ResourceLimit("term budget exceeded while expanding circuit");
    }
    return vals[single_output()];
}

Polynomial Circuit::to_polynomial(std::size_t max_terms) const {
    return to_polynomial(input_labels(), max_terms);
}

CircuitStats Circuit::stats() const {
    std::vector<std::size_t> depth(gates_.size(), 0);
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        if (g.kind == Gate::Kind::add || g.kind == Gate::Kind::mul)
            depth[i] = 1 + std::max(depth[g.lhs], depth[g.rhs]);
    }
    std::size_t d = 0;
    for (auto id : outputs_) d = std::max(d, depth[id]);
    return CircuitStats{gates_.size(), d};
}

Circuit fuse_extended(const std::vector<Circuit>& circuits) {
    if (circuits.empty()) throw Error("nothing to fuse");
    FieldTag field = circuits.front().field();
    std::size_t k = circuits.size();
    Circuit fused(field);

    std::map<std::string, std::uint32_t> x_inputs;   // merged x gates
    std::vector<std::uint32_t> eq_output(k);

    auto parse_indexed = [&](const std::string& label, char prefix) -> long {
        if (label.size() < 2 || label[0] != prefix) return -1;
        for (std::size_t i = 1; i < label.size(); ++i)
            if (!std::isdigit((unsigned char)label[i])) return -1;
        return std::stol(label.substr(1));
    };

    for (std::size_t i = 0; i < k; ++i) {
        const Circuit& c = circuits[i];
        check_same_field(field, c.field(), "fuse");
        std::vector<std::uint32_t> remap(c.gates().size());
        for (std::uint32_t gi = 0; gi < c.gates().size(); ++gi) {
            const Gate& g = c.gates()[gi];
            switch (g.kind) {
                case Gate::Kind::input: {
                    long zi = parse_indexed(g.label, 'z');
                    if (zi >= 1) {
                        if ((std::size_t)zi > i)
                            throw Error("cyclic dependency: equation " + std::to_string(i + 1) +
                                        " reads z" + std::to_string(zi));
                        remap[gi] = eq_output[zi - 1];
                        break;
                    }
                    long xi = parse_indexed(g.label, 'x');
                    if (xi < 1 || (std::size_t)xi > k)
                        throw Error("fuse: unexpected input label '" + g.label + "'");
                    auto it = x_inputs.find(g.label);
                    remap[gi] = it != x_inputs.end() ? it->second
                                                     : (x_inputs[g.label] = fused.add_input(g.label));
                    break;
                }
                case Gate::Kind::constant:
                    remap[gi] = fused.add_constant(g.value);
                    break;
                case Gate::Kind::add:
                    remap[gi] = fused.add_add(remap[g.lhs], remap[g.rhs]);
                    break;
                case Gate::Kind::mul:
                    remap[gi] = fused.add_mul(remap[g.lhs], remap[g.rhs]);
                    break;
            }
        }
        eq_output[i] = remap[c.single_output()];
    }
    std::vector<std::uint32_t> outs(eq_output.begin(), eq_output.end());
    fused.set_outputs(std::move(outs));
    return fused;
}

}  // namespace ratrec
