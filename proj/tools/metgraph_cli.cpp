// Command-line front end: parses graph files, dispatches to the library,
// and prints results as text or JSON.

#include <cstdio>
#include <iostream>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "metgraph/circuit.hpp"
#include "metgraph/error.hpp"
#include "metgraph/graph_io.hpp"
#include "metgraph/tau.hpp"

namespace {

using json = nlohmann::json;
using namespace metgraph;

struct Options {
    std::string input;
    bool use_float = false;
    bool json_output = false;
    int digits = 12;
    std::string method = "pinv";  // tau: pinv | circuit | both
    bool original = false;        // canmeasure: pull back to the input graph
    std::string u, v, z;          // vertex labels for resistance/voltage
};

template <class S>
std::string fmt(const S& x, int digits) {
    if constexpr (ScalarOps<S>::exact) {
        return to_fraction_string(x) + " (= " + to_decimal_string(x, digits) + ")";
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        return buf;
    }
}

template <class S>
std::string fmt(const ResistanceValue<S>& r, int digits) {
    return r.infinite ? std::string("inf") : fmt(r.value, digits);
}

template <class S>
json scalar_json(const S& x, int digits) {
    if constexpr (ScalarOps<S>::exact)
        return json{{"exact", to_fraction_string(x)}, {"decimal", to_decimal_string(x, digits)}};
    else
        return json(x);
}

template <class S>
json scalar_json(const ResistanceValue<S>& r, int digits) {
    if (r.infinite) return json{{"infinite", true}};
    return scalar_json(r.value, digits);
}

json graph_json(const MetrizedGraph& g) {
    json vertices = json::array();
    for (std::size_t i = 0; i < g.vertex_count(); ++i) vertices.push_back(g.vertex_label(i));
    json edges = json::array();
    for (const Edge& e : g.edges())
        edges.push_back({{"u", g.vertex_label(e.u)},
                         {"v", g.vertex_label(e.v)},
                         {"length", to_fraction_string(e.length)}});
    return json{{"vertices", vertices}, {"edges", edges}, {"optimal", g.optimal()}};
}

json checks_json(const CheckReport& report) {
    json items = json::array();
    for (const CheckItem& item : report.items) {
        json entry{{"name", item.name},
                   {"status", item.skipped ? "skip" : item.pass ? "pass" : "fail"}};
        if (!item.note.empty()) entry["note"] = item.note;
        items.push_back(entry);
    }
    return items;
}

void emit_json(const MetrizedGraph& computed_on, bool use_float, json result, json checks) {
    json doc{{"graph", graph_json(computed_on)},
             {"backend", use_float ? "float" : "exact"},
             {"result", std::move(result)},
             {"checks", std::move(checks)}};
    std::cout << doc.dump(2) << "\n";
}

/// Loads, validates, and optimalizes when the verb needs an optimal vertex
/// set. The notice goes to stderr so that stdout stays machine-readable.
struct PreparedGraph {
    MetrizedGraph original;
    MetrizedGraph optimal;
    SubdivisionMap map;
};

PreparedGraph prepare(const std::string& path) {
    PreparedGraph prepared;
    prepared.original = load_graph(path);
    ValidationReport report = prepared.original.validate();
    if (!report.ok()) throw Error(report.violations.front());
    auto [optimal, map] = optimalize(prepared.original);
    if (!map.is_identity())
        std::cerr << "note: input graph was optimalized (" << map.added_vertices.size()
                  << " vertices added)\n";
    prepared.optimal = std::move(optimal);
    prepared.map = std::move(map);
    return prepared;
}

std::size_t resolve_vertex(const MetrizedGraph& g, const std::string& label) {
    if (auto idx = g.find_vertex(label)) return *idx;
    throw Error("unknown vertex '" + label + "'");
}

template <class S>
int run_tau(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    LaplacianPair<S> pair = build_pair<S>(prepared.optimal);

    std::optional<TauReport<S>> pinv_report, circuit_report;
    if (opt.method != "circuit") pinv_report = tau_pinv(prepared.optimal, pair);
    if (opt.method != "pinv") circuit_report = tau_circuit<S>(prepared.optimal, 0, pair.field);
    if (pinv_report && circuit_report &&
        !pair.field.equal(pinv_report->tau, circuit_report->tau))
        throw Error("pseudo-inverse and circuit tau values disagree");

    const TauReport<S>& main_report = pinv_report ? *pinv_report : *circuit_report;
    if (opt.json_output) {
        json result{{"tau", scalar_json(main_report.tau, opt.digits)},
                    {"method", tau_method_name(main_report.method)},
                    {"lower_bound", scalar_json(main_report.lower_bound, opt.digits)},
                    {"total_length", scalar_json(main_report.total_length, opt.digits)}};
        if (pinv_report && circuit_report) result["methods_agree"] = true;
        emit_json(prepared.optimal, opt.use_float, std::move(result), json::array());
    } else {
        std::cout << fmt(main_report.tau, opt.digits) << "\n";
        if (pinv_report && circuit_report)
            std::cout << "circuit: " << fmt(circuit_report->tau, opt.digits)
                      << "\nmethods agree\n";
    }
    return 0;
}

template <class S>
int run_resistance(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    std::size_t u = resolve_vertex(prepared.optimal, opt.u);
    std::size_t v = resolve_vertex(prepared.optimal, opt.v);
    LaplacianPair<S> pair = build_pair<S>(prepared.optimal);
    S r = resistance(pair, u, v);
    if (opt.json_output)
        emit_json(prepared.optimal, opt.use_float,
                  json{{"resistance", scalar_json(r, opt.digits)}}, json::array());
    else
        std::cout << fmt(r, opt.digits) << "\n";
    return 0;
}

template <class S>
int run_voltage(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    std::size_t z = resolve_vertex(prepared.optimal, opt.z);
    std::size_t x = resolve_vertex(prepared.optimal, opt.u);
    std::size_t y = resolve_vertex(prepared.optimal, opt.v);
    LaplacianPair<S> pair = build_pair<S>(prepared.optimal);
    S j = voltage(pair, z, x, y);
    if (opt.json_output)
        emit_json(prepared.optimal, opt.use_float, json{{"voltage", scalar_json(j, opt.digits)}},
                  json::array());
    else
        std::cout << fmt(j, opt.digits) << "\n";
    return 0;
}

template <class S>
int run_laplacian(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    LaplacianPair<S> pair = build_pair<S>(prepared.optimal);
    const std::size_t n = pair.order();
    if (opt.json_output) {
        json vertex_index = json::array();
        for (std::size_t i = 0; i < n; ++i) vertex_index.push_back(prepared.optimal.vertex_label(i));
        auto matrix_json = [&](const Matrix<S>& m) {
            json rows = json::array();
            for (std::size_t i = 0; i < n; ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < n; ++j) row.push_back(scalar_json(m(i, j), opt.digits));
                rows.push_back(row);
            }
            return rows;
        };
        emit_json(prepared.optimal, opt.use_float,
                  json{{"vertex_index", vertex_index},
                       {"laplacian", matrix_json(pair.lap)},
                       {"pseudo_inverse", matrix_json(pair.pinv)}},
                  json::array());
        return 0;
    }
    auto print_matrix = [&](const Matrix<S>& m) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j) std::cout << " ";
                if constexpr (ScalarOps<S>::exact)
                    std::cout << to_fraction_string(m(i, j));
                else
                    std::cout << fmt(m(i, j), opt.digits);
            }
            std::cout << "\n";
        }
    };
    std::cout << "L:\n";
    print_matrix(pair.lap);
    std::cout << "L+:\n";
    print_matrix(pair.pinv);
    return 0;
}

template <class S>
int run_canmeasure(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    LaplacianPair<S> pair = build_pair<S>(prepared.optimal);
    CanonicalMeasure<S> measure = canonical_measure(prepared.optimal, pair);
    const MetrizedGraph* on = &prepared.optimal;
    if (opt.original) {
        measure = measure_pullback(measure, prepared.map);
        on = &prepared.original;
    }
    if (opt.json_output) {
        json coefficients = json::object();
        for (std::size_t p = 0; p < on->vertex_count(); ++p)
            coefficients[on->vertex_label(p)] = scalar_json(measure.vertex_coefficients[p], opt.digits);
        json densities = json::array();
        for (std::size_t i = 0; i < on->edge_count(); ++i) {
            const Edge& e = on->edge(i);
            densities.push_back({{"u", on->vertex_label(e.u)},
                                 {"v", on->vertex_label(e.v)},
                                 {"length", to_fraction_string(e.length)},
                                 {"density", scalar_json(measure.edge_densities[i], opt.digits)}});
        }
        emit_json(*on, opt.use_float,
                  json{{"vertex_coefficients", coefficients},
                       {"edge_densities", densities},
                       {"mass", scalar_json(measure.mass, opt.digits)}},
                  json::array());
        return 0;
    }
    for (std::size_t p = 0; p < on->vertex_count(); ++p)
        std::cout << "vertex " << on->vertex_label(p) << ": "
                  << fmt(measure.vertex_coefficients[p], opt.digits) << "\n";
    for (std::size_t i = 0; i < on->edge_count(); ++i) {
        const Edge& e = on->edge(i);
        std::cout << "edge " << on->vertex_label(e.u) << " " << on->vertex_label(e.v)
                  << " (length " << to_fraction_string(e.length)
                  << "): density " << fmt(measure.edge_densities[i], opt.digits) << "\n";
    }
    std::cout << "mass: " << fmt(measure.mass, opt.digits) << "\n";
    return 0;
}

template <class S>
int run_edgedata(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    std::vector<EdgeTableRow<S>> rows = edge_table<S>(prepared.original);
    if (opt.json_output) {
        json table = json::array();
        for (const EdgeTableRow<S>& row : rows) {
            const Edge& e = prepared.original.edge(row.edge_index);
            table.push_back({{"u", prepared.original.vertex_label(e.u)},
                             {"v", prepared.original.vertex_label(e.v)},
                             {"length", scalar_json(row.length, opt.digits)},
                             {"complement_resistance",
                              scalar_json(row.complement_resistance, opt.digits)},
                             {"density", scalar_json(row.density, opt.digits)}});
        }
        emit_json(prepared.original, opt.use_float, json{{"edges", table}}, json::array());
        return 0;
    }
    std::cout << "edge\tu\tv\tlength\tR_i\tdensity\n";
    for (const EdgeTableRow<S>& row : rows) {
        const Edge& e = prepared.original.edge(row.edge_index);
        std::cout << row.edge_index << "\t" << prepared.original.vertex_label(e.u) << "\t"
                  << prepared.original.vertex_label(e.v) << "\t" << fmt(row.length, opt.digits)
                  << "\t" << fmt(row.complement_resistance, opt.digits) << "\t"
                  << fmt(row.density, opt.digits) << "\n";
    }
    return 0;
}

template <class S>
int run_check(const Options& opt) {
    PreparedGraph prepared = prepare(opt.input);
    LaplacianPair<S> pair = build_pair<S>(prepared.optimal);

    CheckReport report = matrix_checks(pair);
    CheckReport identities = identity_suite(prepared.optimal, pair);
    report.items.insert(report.items.end(), identities.items.begin(), identities.items.end());

    // Cycle-rank identity: sum L/(L+R) = e - v + 1, bridges contributing 0.
    {
        S sum = cycle_rank_sum(prepared.optimal, pair);
        long rank = static_cast<long>(prepared.optimal.edge_count()) -
                    static_cast<long>(prepared.optimal.vertex_count()) + 1;
        report.items.push_back(CheckItem{"sum L/(L+R) = e - v + 1",
                                         pair.field.equal(sum, scalar_ratio<S>(rank, 1)), false, ""});
    }
    // Both tau routes agree.
    {
        TauReport<S> via_pinv = tau_pinv(prepared.optimal, pair);
        TauReport<S> via_circuit = tau_circuit<S>(prepared.optimal, 0, pair.field);
        report.items.push_back(CheckItem{"tau: pseudo-inverse route = circuit route",
                                         pair.field.equal(via_pinv.tau, via_circuit.tau), false, ""});
    }

    if (opt.json_output) {
        emit_json(prepared.optimal, opt.use_float, json{{"all_pass", report.all_pass()}},
                  checks_json(report));
    } else {
        for (const CheckItem& item : report.items)
            std::cout << (item.skipped ? "SKIP" : item.pass ? "PASS" : "FAIL") << "  " << item.name
                      << (item.note.empty() ? "" : "  [" + item.note + "]") << "\n";
        std::cout << (report.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return report.all_pass() ? 0 : 1;
}

int run_optimalize(const Options& opt) {
    MetrizedGraph graph = load_graph(opt.input);
    ValidationReport validation = graph.validate();
    if (!validation.ok()) throw Error(validation.violations.front());
    auto [optimal, map] = optimalize(graph);
    if (opt.json_output) {
        json result{{"added_vertices", map.added_vertices.size()},
                    {"text", serialize_graph(optimal)}};
        emit_json(optimal, opt.use_float, std::move(result), json::array());
    } else {
        std::cout << serialize_graph(optimal);
    }
    return 0;
}

const char* kDemoK5 = R"(# complete graph on 5 vertices, all edge lengths 1/10
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
edge 1 2 1/10
edge 1 3 1/10
edge 1 4 1/10
edge 1 5 1/10
edge 2 3 1/10
edge 2 4 1/10
edge 2 5 1/10
edge 3 4 1/10
edge 3 5 1/10
edge 4 5 1/10
)";

const char* kDemoFig2 = R"(# three vertices; two parallel edges, one self-loop; total length 1
vertex 1
vertex 2
vertex 3
edge 1 3 1/9
edge 2 3 1/9
edge 1 2 2/9
edge 1 2 2/9
edge 3 3 1/3
)";

int write_demo(const std::string& which, std::string output) {
    const char* text = nullptr;
    if (which == "k5") text = kDemoK5;
    else if (which == "fig2") text = kDemoFig2;
    else throw Error("unknown demo '" + which + "' (expected k5 or fig2)");
    if (output.empty()) output = which + ".graph";
    std::ofstream file(output);
    if (!file) throw Error("cannot write '" + output + "'");
    file << text;
    std::cout << output << "\n";
    return 0;
}

template <int (*ExactFn)(const Options&), int (*FloatFn)(const Options&)>
int dispatch(const Options& opt) {
    return opt.use_float ? FloatFn(opt) : ExactFn(opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metrized-graph invariants: Laplacian, effective resistance, "
                 "canonical measure, and the tau constant"};
    app.require_subcommand(0, 1);

    std::string demo, demo_output;
    app.add_option("--demo", demo, "write a bundled example graph (k5 or fig2) to disk");
    app.add_option("--output", demo_output, "output path for --demo");

    Options opt;
    int verb = -1;
    auto add_common = [&](CLI::App* sub, bool with_method = false) {
        sub->add_option("file", opt.input, "graph file")->required();
        sub->add_flag("--float{true},--exact{false}", opt.use_float,
                      "scalar backend (default: exact rationals)");
        sub->add_flag("--json", opt.json_output, "emit one JSON document");
        sub->add_option("--digits", opt.digits, "significant digits for decimals")
            ->check(CLI::Range(1, 50));
        if (with_method)
            sub->add_option("--method", opt.method, "pinv | circuit | both")
                ->check(CLI::IsMember({"pinv", "circuit", "both"}));
    };

    CLI::App* tau_cmd = app.add_subcommand("tau", "tau constant of the graph");
    add_common(tau_cmd, true);
    tau_cmd->callback([&] { verb = 0; });

    CLI::App* res_cmd = app.add_subcommand("resistance", "effective resistance between two vertices");
    add_common(res_cmd);
    res_cmd->add_option("u", opt.u, "first vertex label")->required();
    res_cmd->add_option("v", opt.v, "second vertex label")->required();
    res_cmd->callback([&] { verb = 1; });

    CLI::App* volt_cmd = app.add_subcommand("voltage", "voltage j_z(x,y)");
    add_common(volt_cmd);
    volt_cmd->add_option("z", opt.z, "reference vertex label")->required();
    volt_cmd->add_option("x", opt.u, "measurement vertex label")->required();
    volt_cmd->add_option("y", opt.v, "current-entry vertex label")->required();
    volt_cmd->callback([&] { verb = 2; });

    CLI::App* lap_cmd = app.add_subcommand("laplacian", "Laplacian matrix and its pseudo-inverse");
    add_common(lap_cmd);
    lap_cmd->callback([&] { verb = 3; });

    CLI::App* can_cmd = app.add_subcommand("canmeasure", "canonical measure");
    add_common(can_cmd);
    can_cmd->add_flag("--original", opt.original, "pull the measure back to the input graph");
    can_cmd->callback([&] { verb = 4; });

    CLI::App* edge_cmd = app.add_subcommand("edgedata", "per-edge lengths, complement resistances, densities");
    add_common(edge_cmd);
    edge_cmd->callback([&] { verb = 5; });

    CLI::App* check_cmd = app.add_subcommand("check", "run the matrix and identity verification suite");
    add_common(check_cmd);
    check_cmd->callback([&] { verb = 6; });

    CLI::App* optimalize_cmd = app.add_subcommand("optimalize", "rewrite to an optimal vertex set");
    add_common(optimalize_cmd);
    optimalize_cmd->callback([&] { verb = 7; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (!demo.empty()) return write_demo(demo, demo_output);
        switch (verb) {
            case 0: return dispatch<run_tau<Rational>, run_tau<double>>(opt);
            case 1: return dispatch<run_resistance<Rational>, run_resistance<double>>(opt);
            case 2: return dispatch<run_voltage<Rational>, run_voltage<double>>(opt);
            case 3: return dispatch<run_laplacian<Rational>, run_laplacian<double>>(opt);
            case 4: return dispatch<run_canmeasure<Rational>, run_canmeasure<double>>(opt);
            case 5: return dispatch<run_edgedata<Rational>, run_edgedata<double>>(opt);
            case 6: return dispatch<run_check<Rational>, run_check<double>>(opt);
            case 7: return run_optimalize(opt);
            default:
                std::cerr << app.help() << "\n";
                return 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
