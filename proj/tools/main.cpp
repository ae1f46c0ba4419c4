#include <CLI11.hpp>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ratrec/flatten.hpp"
#include "ratrec/json_io.hpp"
#include "ratrec/qbf.hpp"
#include "ratrec/zeroness.hpp"

using namespace ratrec;

namespace {

// exit codes: 0 success / affirmative, 1 semantic negative,
// 2 input or format error, 3 resource limit or division-by-zero event
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kResource = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = dump_canonical(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write '" + out_path + "'");
        out << text;
    }
}

FieldTag parse_field_flag(const std::string& s) {
    if (s == "q" || s == "Q") return FieldTag::rationals();
    if (s == "f2" || s == "F2") return FieldTag::prime(2);
    if (s.rfind("fp:", 0) == 0) return FieldTag::prime(std::stoul(s.substr(3)));
    throw Error("unknown field '" + s + "' (expected q, f2 or fp:P)");
}

SystemFile load_system(const std::string& path, const std::string& field_flag = "") {
    Json j = Json::parse(read_file(path));
    std::optional<FieldTag> override;
    if (!field_flag.empty()) override = parse_field_flag(field_flag);
    return system_from_json(j, override);
}

Json rows_to_json(const std::vector<std::vector<ExactScalar>>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(v.to_string());
        out.push_back(r);
    }
    return out;
}

int cmd_eval(const std::string& system_path, std::size_t steps, const std::string& field_flag,
             const std::string& out_path) {
    SystemFile f = load_system(system_path, field_flag);
    auto rows = evaluate(f.system, f.init, steps);
    Json main_col = Json::array();
    for (const auto& row : rows) main_col.push_back(row[f.system.main_index()].to_string());
    emit(Json{{"field", field_to_json(f.system.field())},
              {"names", f.system.names()},
              {"main", f.system.names()[f.system.main_index()]},
              {"rows", rows_to_json(rows)},
              {"main_column", main_col}},
         out_path);
    return kOk;
}

int cmd_symbolic(const std::string& system_path, std::size_t steps,
                 const std::string& out_path) {
    SystemFile f = load_system(system_path);
    auto trace = symbolic_evaluate(f.system, f.init, steps);
    std::vector<std::string> xs;
    for (std::uint32_t i = 0; i < f.system.k(); ++i) xs.push_back("x" + std::to_string(i + 1));
    Json rows = Json::array();
    for (const auto& row : trace.rows()) {
        Json r = Json::array();
        for (const auto& v : row)
            r.push_back(Json{{"num", v.num().to_string(xs)}, {"den", v.den().to_string(xs)}});
        rows.push_back(r);
    }
    emit(Json{{"names", f.system.names()},
              {"main", f.system.names()[f.system.main_index()]},
              {"rows", rows}},
         out_path);
    return kOk;
}

int cmd_flatten(const std::string& system_path, std::size_t depth_limit, std::uint64_t seed,
                const std::string& out_path) {
    SystemFile f = load_system(system_path);
    FlattenOptions opt;
    opt.depth_limit = depth_limit;
    opt.seed = seed;
    FlattenResult res = flatten(f.system, f.init, opt);
    emit(flatten_result_to_json(res), out_path);
    return kOk;
}

int cmd_zeroness(const std::string& system_path, const std::string& mode,
                 std::optional<std::size_t> bound, const std::string& out_path) {
    SystemFile f = load_system(system_path);
    ZeronessVerdict v{ZeronessVerdict::Kind::zero, 0, ExactScalar(f.system.field()), 0, 0};
    if (mode == "finite")
        v = zeroness_finite_field(f.system, f.init);
    else if (mode == "prefix")
        v = prefix_zero_check(f.system, f.init, bound);
    else
        throw Error("mode must be finite or prefix");
    emit(verdict_to_json(v), out_path);
    switch (v.kind) {
        case ZeronessVerdict::Kind::nonzero:
            return kNegative;
        case ZeronessVerdict::Kind::division_by_zero:
            return kResource;
        default:
            return kOk;
    }
}

int cmd_skolem(const std::string& system_path, std::size_t bound, const std::string& out_path) {
    SystemFile f = load_system(system_path);
    auto hit = skolem_search(f.system, f.init, bound);
    if (hit) {
        emit(Json{{"found", true}, {"n", *hit}}, out_path);
        return kOk;
    }
    emit(Json{{"found", false}, {"bound", bound}}, out_path);
    return kNegative;
}

int cmd_qbf_compile(const std::string& formula_path, const std::string& field_flag,
                    const std::string& out_path) {
    auto f = parse_qbf(read_file(formula_path));
    auto red = compile_qbf(f, parse_field_flag(field_flag));
    emit(reduction_to_json(red), out_path);
    return kOk;
}

int cmd_qbf_check(const std::vector<std::string>& formula_paths, bool oracle,
                  const std::string& field_flag, unsigned jobs, const std::string& out_path) {
    FieldTag field = parse_field_flag(field_flag);
    std::vector<Json> results(formula_paths.size());
    std::vector<int> codes(formula_paths.size(), kOk);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= formula_paths.size()) return;
            try {
                auto f = parse_qbf(read_file(formula_paths[i]));
                auto res = check_validity_via_sequence(f, field, oracle);
                Json r{{"formula", formula_paths[i]}, {"valid", res.valid}};
                if (res.oracle_agrees) r["oracle_agrees"] = *res.oracle_agrees;
                results[i] = std::move(r);
                codes[i] = res.valid ? kOk : kNegative;
            } catch (const Error& e) {
                results[i] = Json{{"formula", formula_paths[i]}, {"error", e.what()}};
                codes[i] = kInputError;
            }
        }
    };
    if (jobs <= 1 || formula_paths.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, formula_paths.size()); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    int code = kOk;
    for (int c : codes) code = std::max(code, c);
    if (formula_paths.size() == 1)
        emit(results[0], out_path);
    else
        emit(Json{{"results", results}}, out_path);
    return code;
}

int cmd_convert_prec(const std::string& input_path, const std::string& out_path) {
    PRecurrence rec = precurrence_from_json(Json::parse(read_file(input_path)));
    auto [sys, init] = from_precursive(rec);
    emit(system_to_json(SystemFile{std::move(sys), std::move(init), Json()}), out_path);
    return kOk;
}

int cmd_counterexample(std::uint32_t d, const std::string& out_path) {
    auto [sys, init] = counterexample_system(d);
    emit(system_to_json(SystemFile{std::move(sys), std::move(init), Json()}), out_path);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with rational recursive sequences"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized pre-checks (exact paths are seed-independent)");

    std::string system_path, out_path, field_flag, mode = "finite", input_path;
    std::vector<std::string> formula_paths;
    std::size_t steps = 0, bound = 0, depth_limit = 64;
    std::uint32_t d = 1;
    unsigned jobs = 1;
    bool oracle = false;
    std::optional<std::size_t> opt_bound;

    auto* ev = app.add_subcommand("eval", "evaluate a system numerically");
    ev->add_option("--system", system_path)->required();
    ev->add_option("--steps", steps)->required();
    ev->add_option("--field", field_flag, "override the system field (q, f2, fp:P)");
    ev->add_option("--out", out_path);

    auto* sym = app.add_subcommand("symbolic", "evaluate a system symbolically");
    sym->add_option("--system", system_path)->required();
    sym->add_option("--steps", steps)->required();
    sym->add_option("--out", out_path);

    auto* fl = app.add_subcommand("flatten", "extract the simple recursion of the main sequence");
    fl->add_option("--system", system_path)->required();
    fl->add_option("--depth-limit", depth_limit);
    fl->add_option("--out", out_path);

    auto* ze = app.add_subcommand("zeroness", "zeroness probes");
    ze->add_option("--system", system_path)->required();
    ze->add_option("--mode", mode, "finite or prefix")->required();
    ze->add_option("--bound", bound);
    ze->add_option("--out", out_path);

    auto* sk = app.add_subcommand("skolem", "bounded search for a zero of the main sequence");
    sk->add_option("--system", system_path)->required();
    sk->add_option("--bound", bound)->required();
    sk->add_option("--out", out_path);

    auto* qc = app.add_subcommand("qbf-compile", "compile a QBF to a polyrec system");
    qc->add_option("--formula", formula_paths)->required();
    qc->add_option("--field", field_flag)->required();
    qc->add_option("--out", out_path)->required();

    auto* qk = app.add_subcommand("qbf-check", "decide QBF validity via the compiled sequence");
    qk->add_option("--formula", formula_paths)->required();
    qk->add_flag("--oracle", oracle, "cross-check against the brute-force oracle");
    qk->add_option("--jobs", jobs);
    qk->add_option("--field", field_flag);
    qk->add_option("--out", out_path);

    auto* cp = app.add_subcommand("convert-prec", "convert a P-recurrence to a ratrec system");
    cp->add_option("--input", input_path)->required();
    cp->add_option("--out", out_path)->required();

    auto* cx = app.add_subcommand("counterexample", "emit the naive-probe counterexample system");
    cx->add_option("--d", d)->required();
    cx->add_option("--out", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ev->parsed()) return cmd_eval(system_path, steps, field_flag, out_path);
        if (sym->parsed()) return cmd_symbolic(system_path, steps, out_path);
        if (fl->parsed()) return cmd_flatten(system_path, depth_limit, seed, out_path);
        if (ze->parsed()) {
            if (ze->count("--bound")) opt_bound = bound;
            return cmd_zeroness(system_path, mode, opt_bound, out_path);
        }
        if (sk->parsed()) return cmd_skolem(system_path, bound, out_path);
        if (qc->parsed()) return cmd_qbf_compile(formula_paths.at(0), field_flag, out_path);
        if (qk->parsed())
            return cmd_qbf_check(formula_paths, oracle,
                                 field_flag.empty() ? "f2" : field_flag, jobs, out_path);
        if (cp->parsed()) return cmd_convert_prec(input_path, out_path);
        if (cx->parsed()) return cmd_counterexample(d, out_path);
    } catch (const StepDivisionByZero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const IllDefinedSymbolicStep& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
